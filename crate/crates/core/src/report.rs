//! Report assembly for the command-line front end. Every command returns a
//! [`Report`] that renders either as JSON or as markdown; both renderings
//! are built from the same data and contain no timestamps or paths.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algebra::LieAlgebra;
use crate::corpus::{CorpusError, SpaceDocument};
use crate::homspace::{ReductiveSpace, SamplingConfig, SpaceError, Verdict};
use crate::linalg::{Subspace, Vector};
use crate::scalar::{format_scalar, parse_scalar, rational_sqrt};
use crate::spectral::{char_poly, fitting, is_compact_vector, spectrum_is_pure_imaginary, SpectralAnalysis};
use crate::theorems::{self, Context, Finding, Status, TheoremError};

pub const TOOL: &str = "kvfcl";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Theorem(#[from] TheoremError),
    #[error("invalid field `{text}`: {reason}")]
    Field { text: String, reason: String },
}

/// A parsed input document with the digest of its bytes.
pub struct Input {
    pub document: SpaceDocument,
    pub space: ReductiveSpace,
    pub sha256: String,
}

impl Input {
    pub fn from_text(text: &str) -> Result<Self, ReportError> {
        let document = SpaceDocument::from_json(text)?;
        let space = document.build()?;
        Ok(Self {
            document,
            space,
            sha256: hex::encode(Sha256::digest(text.as_bytes())),
        })
    }

    pub fn load(path: &Path) -> Result<Self, ReportError> {
        let text = std::fs::read_to_string(path).map_err(|e| CorpusError::Io(e.to_string()))?;
        Self::from_text(&text)
    }

    pub fn from_document(doc: &SpaceDocument) -> Result<Self, ReportError> {
        Self::from_text(&doc.to_json())
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.space.algebra()
    }

    /// Parses `c1,...,cn` or a single basis name.
    pub fn parse_field(&self, text: &str) -> Result<Vector, ReportError> {
        parse_field(self.algebra(), text)
    }
}

/// Parses a field given as comma-separated rationals or as a basis name.
pub fn parse_field(alg: &LieAlgebra, text: &str) -> Result<Vector, ReportError> {
    let err = |reason: String| ReportError::Field {
        text: text.to_string(),
        reason,
    };
    let trimmed = text.trim();
    if let Some(i) = alg.names().iter().position(|n| n == trimmed) {
        return Ok(alg.e(i));
    }
    let coords = trimmed
        .split(',')
        .map(|t| parse_scalar(t.trim()).map_err(|e| err(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != alg.dim() {
        return Err(err(format!("expected {} coordinates, got {}", alg.dim(), coords.len())));
    }
    Ok(Vector::new(coords))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Parameters {
    pub samples: usize,
    pub order: usize,
    pub seed: u64,
    pub tol: f64,
    pub go: bool,
    pub statements: String,
    pub fields: Vec<String>,
}

impl Default for Parameters {
    fn default() -> Self {
        let cfg = SamplingConfig::default();
        Self {
            samples: cfg.samples,
            order: cfg.order,
            seed: cfg.seed,
            tol: cfg.tol,
            go: false,
            statements: "all".into(),
            fields: Vec::new(),
        }
    }
}

impl Parameters {
    pub fn sampling(&self) -> SamplingConfig {
        SamplingConfig {
            samples: self.samples,
            order: self.order,
            seed: self.seed,
            tol: self.tol,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Section {
    pub title: String,
    pub lines: Vec<String>,
    pub data: Value,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub certified: usize,
    pub refuted: usize,
    pub undecided: usize,
    pub skipped: usize,
    pub passed: usize,
    pub failed: usize,
    pub vacuous: usize,
    pub reported: usize,
    pub counterexamples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputInfo {
    pub name: String,
    pub dimension: usize,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: InputInfo,
    pub parameters: Parameters,
    pub sections: Vec<Section>,
    pub findings: Vec<Finding>,
    pub summary: Summary,
    pub exit_code: i32,
}

impl Report {
    fn new(command: &str, input: &Input, parameters: &Parameters) -> Self {
        Self {
            tool: TOOL.into(),
            version: VERSION.into(),
            command: command.into(),
            input: InputInfo {
                name: input.document.name.clone(),
                dimension: input.document.dimension,
                sha256: input.sha256.clone(),
            },
            parameters: parameters.clone(),
            sections: Vec::new(),
            findings: Vec::new(),
            summary: Summary::default(),
            exit_code: 0,
        }
    }

    fn section(&mut self, title: &str, lines: Vec<String>, data: Value) {
        self.sections.push(Section {
            title: title.into(),
            lines,
            data,
        });
    }

    fn count_verdict(&mut self, v: &Verdict) {
        match v {
            Verdict::CertifiedTrue { .. } => self.summary.certified += 1,
            Verdict::RefutedAt { .. } => self.summary.refuted += 1,
            Verdict::UndecidedPassedSamples { .. } => self.summary.undecided += 1,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {} {}: {}", self.tool, self.command, self.input.name);
        let _ = writeln!(out);
        let _ = writeln!(out, "- version: {}", self.version);
        let _ = writeln!(out, "- input sha256: `{}`", self.input.sha256);
        let _ = writeln!(out, "- dimension: {}", self.input.dimension);
        let p = &self.parameters;
        let _ = writeln!(
            out,
            "- parameters: samples={}, order={}, seed={}, tol={:e}, go={}, statements={}",
            p.samples, p.order, p.seed, p.tol, p.go, p.statements
        );
        if !p.fields.is_empty() {
            let _ = writeln!(out, "- fields: {}", p.fields.join("; "));
        }
        for s in &self.sections {
            let _ = writeln!(out, "\n## {}\n", s.title);
            for l in &s.lines {
                let _ = writeln!(out, "- {l}");
            }
        }
        if !self.findings.is_empty() {
            let _ = writeln!(out, "\n## Findings\n");
            let _ = writeln!(out, "| statement | field | premise | status | verdict |");
            let _ = writeln!(out, "|---|---|---|---|---|");
            for f in &self.findings {
                let field = f
                    .inputs
                    .get("field")
                    .and_then(Value::as_str)
                    .unwrap_or("-");
                let verdict = f
                    .verdict
                    .as_ref()
                    .map(verdict_tag)
                    .unwrap_or("-");
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} |",
                    f.statement_id,
                    field,
                    enum_name(&f.premise),
                    enum_name(&f.status),
                    verdict
                );
            }
        }
        let s = &self.summary;
        let _ = writeln!(out, "\n## Summary\n");
        let _ = writeln!(
            out,
            "- verdicts: certified={}, refuted={}, undecided={}, skipped={}",
            s.certified, s.refuted, s.undecided, s.skipped
        );
        let _ = writeln!(
            out,
            "- findings: passed={}, failed={}, vacuous={}, reported={}, counterexamples={}",
            s.passed, s.failed, s.vacuous, s.reported, s.counterexamples
        );
        let _ = writeln!(out, "- exit code: {}", self.exit_code);
        out
    }
}

fn enum_name<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(Value::String(s)) => s,
        _ => String::new(),
    }
}

fn verdict_tag(v: &Verdict) -> &'static str {
    match v {
        Verdict::CertifiedTrue { .. } => "certified_true",
        Verdict::RefutedAt { .. } => "refuted_at",
        Verdict::UndecidedPassedSamples { .. } => "undecided_passed_samples",
    }
}

fn names(alg: &LieAlgebra, s: &Subspace) -> Vec<String> {
    s.basis().iter().map(|v| alg.render(v)).collect()
}

fn describe(alg: &LieAlgebra, s: &Subspace) -> String {
    if s.is_zero() {
        "0".into()
    } else {
        format!("span{{{}}}", names(alg, s).join(", "))
    }
}

pub fn cmd_inspect(input: &Input, parameters: &Parameters) -> Report {
    let mut r = Report::new("inspect", input, parameters);
    let alg = input.algebra();
    let space = &input.space;
    let center = alg.center();
    let derived = alg.derived_algebra();
    let radical = alg.radical();
    let nilradical = alg.nilradical();
    let cn = alg.center_of_nilradical();
    let mut lines = vec![
        format!("dimension: {}", alg.dim()),
        format!("basis: {}", alg.names().join(", ")),
        format!("center: {}", describe(alg, &center)),
        format!("derived algebra: {}", describe(alg, &derived)),
        format!("solvable: {}", alg.is_solvable(&Subspace::full(alg.dim())).unwrap_or(false)),
        format!("nilpotent: {}", alg.is_nilpotent(&Subspace::full(alg.dim())).unwrap_or(false)),
        format!("semisimple: {}", alg.is_semisimple()),
    ];
    let fmt_result = |res: &Result<Subspace, _>| match res {
        Ok(s) => describe(alg, s),
        Err(e) => format!("undecided ({e})"),
    };
    lines.push(format!("radical: {}", fmt_result(&radical)));
    lines.push(format!("nilradical: {}", fmt_result(&nilradical)));
    lines.push(format!("center of nilradical: {}", fmt_result(&cn)));
    let data = json!({
        "dimension": alg.dim(),
        "basis": alg.names(),
        "center": names(alg, &center),
        "derived_algebra": names(alg, &derived),
        "semisimple": alg.is_semisimple(),
        "radical": radical.as_ref().map(|s| names(alg, s)).ok(),
        "nilradical": nilradical.as_ref().map(|s| names(alg, s)).ok(),
        "center_of_nilradical": cn.as_ref().map(|s| names(alg, s)).ok(),
    });
    r.section("Structure", lines, data);

    let decl = alg.declared();
    let mut lines = Vec::new();
    let mut data = Map::new();
    let mut note = |key: &str, present: bool| {
        let state = if present { "verified" } else { "not declared" };
        lines.push(format!("{key}: {state}"));
        data.insert(key.into(), json!(state));
    };
    note("radical", decl.radical.is_some());
    note("nilradical", decl.nilradical.is_some());
    note("levi", decl.levi.is_some());
    note("center", decl.center.is_some());
    note("direct_sum", !decl.direct_sum.is_empty());
    note("abelian_ideals", !decl.abelian_ideals.is_empty());
    let go = match space.declared_go() {
        Some(g) => g.to_string(),
        None => "not declared".into(),
    };
    lines.push(format!("go: {go}"));
    data.insert("go".into(), json!(space.declared_go()));
    r.section("Declared data", lines, Value::Object(data));

    match alg.levi_report() {
        Ok(levi) => {
            let lines = vec![
                format!("levi factor: {}", describe(alg, &levi.levi)),
                format!("simple ideals: {}", levi.simple_ideals.len()),
                format!("compact part: {}", describe(alg, &levi.compact)),
                format!("noncompact part: {}", describe(alg, &levi.noncompact)),
            ];
            let data = json!({
                "levi": names(alg, &levi.levi),
                "simple_ideals": levi.simple_ideals.iter().map(|s| json!({
                    "basis": names(alg, &s.space),
                    "compact": s.compact,
                })).collect::<Vec<_>>(),
                "compact": names(alg, &levi.compact),
                "noncompact": names(alg, &levi.noncompact),
            });
            r.section("Levi decomposition", lines, data);
        }
        Err(e) => r.section("Levi decomposition", vec![format!("unavailable: {e}")], Value::Null),
    }

    let k = space.metric().rows();
    let metric: Vec<Vec<String>> = (0..k)
        .map(|i| (0..k).map(|j| format_scalar(&space.metric()[(i, j)])).collect())
        .collect();
    let lines = vec![
        format!("h: {}", describe(alg, space.h())),
        format!("m frame: {}", space.m_frame().iter().map(|v| alg.render(v)).collect::<Vec<_>>().join(", ")),
        format!("metric: {}", metric.iter().map(|r| format!("[{}]", r.join(", "))).collect::<Vec<_>>().join(" ")),
    ];
    let data = json!({
        "h": names(alg, space.h()),
        "m_frame": space.m_frame().iter().map(|v| alg.render(v)).collect::<Vec<_>>(),
        "metric": metric,
    });
    r.section("Reductive decomposition", lines, data);
    r
}

/// Eigenvalues of `ad(X)` read off the factorization of its characteristic
/// polynomial, e.g. `{0, ±i}`.
pub fn spectrum_string(alg: &LieAlgebra, x: &Vector) -> String {
    let p = char_poly(&alg.ad(x));
    let mut parts = Vec::new();
    for (f, _) in p.factor() {
        match f.degree() {
            Some(1) => parts.push(format_scalar(&-f.coeff(0))),
            Some(2) if f.coeff(1) == num_traits::Zero::zero() && f.coeff(0) > num_traits::Zero::zero() => {
                match rational_sqrt(&f.coeff(0)) {
                    Some(b) if b == num_traits::One::one() => parts.push("±i".into()),
                    Some(b) => parts.push(format!("±{}i", format_scalar(&b))),
                    None => parts.push(format!("±i√{}", format_scalar(&f.coeff(0)))),
                }
            }
            _ => parts.push(format!("roots of {}", f.render("λ"))),
        }
    }
    format!("{{{}}}", parts.join(", "))
}

/// One-line summary as printed by `spectrum`.
pub fn spectrum_line(alg: &LieAlgebra, x: &Vector) -> String {
    let l = alg.ad(x);
    let pure = spectrum_is_pure_imaginary(&char_poly(&l)).unwrap_or(false);
    let fit = fitting(&l);
    format!(
        "pure imaginary: {} (spectrum {}); Fitting: A1={}, A2={}, k={}; compact vector: {}",
        pure,
        spectrum_string(alg, x),
        fit.a1.dim(),
        fit.a2.dim(),
        fit.exponent,
        is_compact_vector(alg, x)
    )
}

pub fn cmd_spectrum(input: &Input, parameters: &Parameters, x: &Vector) -> Report {
    let mut r = Report::new("spectrum", input, parameters);
    let alg = input.algebra();
    let mut lines = vec![format!("field: {}", alg.render(x)), spectrum_line(alg, x)];
    let mut data = Map::new();
    data.insert("field".into(), json!(alg.render(x)));
    data.insert("summary".into(), json!(spectrum_line(alg, x)));
    match SpectralAnalysis::new(alg, x) {
        Ok(a) => {
            lines.push(format!("characteristic polynomial: {}", a.char_poly.render("λ")));
            lines.push(format!("minimal polynomial: {}", a.min_poly.render("λ")));
            for rs in &a.root_spaces {
                let beta = rs
                    .beta_sq
                    .as_ref()
                    .map(|b| format!("β²={}", format_scalar(b)))
                    .unwrap_or_else(|| format!("factor {}", rs.factor.render("μ")));
                lines.push(format!("root space {beta}: dim {}", rs.space.dim()));
            }
            lines.push(match &a.sigma_error {
                None => "sigma: defined".into(),
                Some(e) => format!("sigma: {e}"),
            });
            data.insert("char_poly".into(), json!(a.char_poly.render("λ")));
            data.insert("min_poly".into(), json!(a.min_poly.render("λ")));
            data.insert("pure_imaginary".into(), json!(a.pure_imaginary()));
            data.insert("fitting_exponent".into(), json!(a.fitting.exponent));
            data.insert("a1".into(), json!(names(alg, &a.fitting.a1)));
            data.insert("a2".into(), json!(names(alg, &a.fitting.a2)));
            data.insert(
                "root_spaces".into(),
                json!(a
                    .root_spaces
                    .iter()
                    .map(|rs| json!({
                        "factor": rs.factor.render("μ"),
                        "beta_sq": rs.beta_sq.as_ref().map(format_scalar),
                        "dim": rs.space.dim(),
                        "basis": names(alg, &rs.space),
                    }))
                    .collect::<Vec<_>>()),
            );
            data.insert("sigma_defined".into(), json!(a.sigma.is_some()));
            data.insert("compact_vector".into(), json!(a.is_compact()));
        }
        Err(e) => {
            lines.push(format!("root-space analysis unavailable: {e}"));
            data.insert("error".into(), json!(e.to_string()));
        }
    }
    r.section("Spectrum", lines, Value::Object(data));
    r
}

pub fn cmd_check(input: &Input, parameters: &Parameters, x: &Vector) -> Report {
    let mut r = Report::new("check", input, parameters);
    let alg = input.algebra();
    let cfg = parameters.sampling();
    let verdict = input
        .space
        .check_constant_length(x, &cfg)
        .unwrap_or_else(|_| input.space.sampled_constant_length(x, &cfg));
    let mut lines = vec![format!("field: {}", alg.render(x)), verdict.render(alg)];
    if !verdict.is_refuted() && !verdict.is_certified() {
        lines.push(format!(
            "max residual over samples: {:e}",
            input.space.max_length_residual(x, &cfg)
        ));
    }
    r.count_verdict(&verdict);
    if verdict.is_refuted() {
        r.exit_code = 1;
    }
    let data = json!({ "field": alg.render(x), "verdict": verdict, "rendered": verdict.render(alg) });
    r.section("Constant length", lines, data);
    if parameters.go {
        let go = input.space.check_go(&cfg);
        let line = match &go {
            Verdict::UndecidedPassedSamples { n_samples, .. } => {
                format!("GO-consistent ({n_samples} samples)")
            }
            other => other.render(alg),
        };
        r.count_verdict(&go);
        if go.is_refuted() {
            r.exit_code = 1;
        }
        r.section("Geodesic orbit", vec![line], json!({ "verdict": go }));
    }
    r
}

/// Runs the selected statements over the default fields plus `extra`.
pub fn cmd_verify(input: &Input, parameters: &Parameters, extra: &[Vector]) -> Result<Report, ReportError> {
    let mut r = Report::new("verify", input, parameters);
    let ids: Vec<String> = if parameters.statements.trim() == "all" {
        Vec::new()
    } else {
        parameters
            .statements
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect()
    };
    let ctx = Context::new(input.document.name.clone(), &input.space, parameters.sampling());
    let fields = theorems::default_fields(&input.space, extra);
    let findings = theorems::verify_all(&ctx, &ids, &fields)?;
    let alg = input.algebra();
    r.section(
        "Fields",
        fields.iter().map(|v| alg.render(v)).collect(),
        json!(fields),
    );
    for f in &findings {
        match f.status {
            Status::Passed => r.summary.passed += 1,
            Status::Failed => r.summary.failed += 1,
            Status::Vacuous => r.summary.vacuous += 1,
            Status::Skipped => r.summary.skipped += 1,
            Status::Reported => r.summary.reported += 1,
        }
        if let Some(v) = &f.verdict {
            r.count_verdict(v);
        }
    }
    r.summary.counterexamples = theorems::counterexamples(&findings);
    let failed: Vec<String> = findings
        .iter()
        .filter(|f| f.status == Status::Failed)
        .map(|f| {
            let field = f.inputs.get("field").and_then(Value::as_str).unwrap_or("-");
            let witness = f.verdict.as_ref().map(|v| v.render(alg)).unwrap_or_default();
            format!("{} at {field}: {witness}", f.statement_id)
        })
        .collect();
    if !failed.is_empty() {
        r.exit_code = 1;
        r.section("Refutations", failed.clone(), json!(failed));
    }
    r.findings = findings;
    Ok(r)
}
