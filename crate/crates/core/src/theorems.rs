//! Statement verifiers. Each registry entry checks one structural claim
//! about constant-length Killing fields on a space and returns a
//! [`Finding`] recording the premise it established, the outcome and
//! machine-readable evidence.

use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::algebra::LieAlgebra;
use crate::homspace::{rng_for, Form, ReductiveSpace, SamplingConfig, Verdict, Witness};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::scalar::{format_scalar, frac, int, Scalar};
use crate::spectral::{char_poly, fitting, root_beta, spectrum_is_pure_imaginary, SpectralAnalysis};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("unknown statement `{0}`")]
    UnknownStatement(String),
    #[error("statement `{0}` needs a field X")]
    MissingInput(String),
    #[error("missing declaration: {0}")]
    MissingDeclaration(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Passed,
    Failed,
    Vacuous,
    Skipped,
    Reported,
}

/// Strength of the constant-length antecedent established for a field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Premise {
    Certified,
    SamplingConsistent,
    Refuted,
    NotRequired,
}

impl Premise {
    pub fn of(v: &Verdict) -> Self {
        match v {
            Verdict::CertifiedTrue { .. } => Premise::Certified,
            Verdict::UndecidedPassedSamples { .. } => Premise::SamplingConsistent,
            Verdict::RefutedAt { .. } => Premise::Refuted,
        }
    }

    pub fn holds(self) -> bool {
        matches!(self, Premise::Certified | Premise::SamplingConsistent)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Finding {
    pub statement_id: String,
    pub inputs: Map<String, Value>,
    pub status: Status,
    pub premise: Premise,
    pub verdict: Option<Verdict>,
    pub evidence: Map<String, Value>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Checked once per field `X`.
    Field,
    /// Checked once per space.
    Space,
    /// Pure arithmetic identity.
    Identity,
}

pub struct Statement {
    pub id: &'static str,
    pub scope: Scope,
    pub summary: &'static str,
}

/// Every registered statement, in report order.
pub const REGISTRY: &[Statement] = &[
    Statement { id: "thm-1.1", scope: Scope::Field, summary: "constant-length X has pure imaginary ad-spectrum" },
    Statement { id: "lemma-2.2", scope: Scope::Field, summary: "first and second order conditions g([Y,X],X)=0, g([Z,[Y,X]],X)+g([Y,X],[Z,X])=0" },
    Statement { id: "prop-2.3", scope: Scope::Field, summary: "[X,g] and its centralizer translates are orthogonal to X on M" },
    Statement { id: "thm-2.4", scope: Scope::Field, summary: "ideals u_i containing [X,g_i] are pairwise orthogonal on M" },
    Statement { id: "prop-2.5", scope: Scope::Field, summary: "ad(X) is skew on [X,g] on M" },
    Statement { id: "prop-2.6", scope: Scope::Field, summary: "no nonzero real eigenvalue; X commutes with admissible invariant subspaces and abelian ideals" },
    Statement { id: "prop-2.6-1", scope: Scope::Field, summary: "ad(X) has no nonzero real eigenvalue" },
    Statement { id: "thm-2.7", scope: Scope::Field, summary: "Fitting exponent at most 2; 2-dimensional blocks are isotropic rotations" },
    Statement { id: "thm-2.7-det", scope: Scope::Identity, summary: "the 3x3 block system has determinant -2a(a^2+b^2)^4" },
    Statement { id: "prop-2.8", scope: Scope::Field, summary: "graded brackets land in root spaces |b_i-b_j| and b_i+b_j" },
    Statement { id: "prop-2.9", scope: Scope::Field, summary: "ideals J, I and J~ built from C(n(g)), A1, A2" },
    Statement { id: "prop-2.11", scope: Scope::Field, summary: "root spaces are pairwise orthogonal on M" },
    Statement { id: "prop-2.12", scope: Scope::Field, summary: "A1 = g forces X into the nilradical" },
    Statement { id: "lemma-3.1", scope: Scope::Space, summary: "geodesic-orbit criterion agrees with the declared flag" },
    Statement { id: "thm-3.4", scope: Scope::Space, summary: "abelian ideals of a geodesic-orbit space have constant length" },
    Statement { id: "cor-3.5", scope: Scope::Space, summary: "non-semisimple geodesic-orbit spaces carry a nonzero constant-length field" },
    Statement { id: "prop-3.7", scope: Scope::Space, summary: "noncompact Levi part commutes with the radical" },
    Statement { id: "prop-3.8", scope: Scope::Space, summary: "nilradical is at most two-step nilpotent" },
    Statement { id: "thm-3.9", scope: Scope::Field, summary: "X in n(g) has constant length iff X is in C(n(g))" },
    Statement { id: "cor-3.10", scope: Scope::Space, summary: "every abelian ideal lies in C(n(g))" },
    Statement { id: "prop-3.12", scope: Scope::Field, summary: "constant length with A1 = g iff X in C(n(g))" },
    Statement { id: "struct-radical", scope: Scope::Space, summary: "[g, r(g)] is contained in n(g)" },
    Statement { id: "conj-1.2", scope: Scope::Field, summary: "probe: constant-length X in a semisimple algebra is a compact vector" },
    Statement { id: "conj-3.6", scope: Scope::Field, summary: "probe: on geodesic-orbit spaces n(g) lies in A1" },
];

pub fn statement(id: &str) -> Option<&'static Statement> {
    REGISTRY.iter().find(|s| s.id == id)
}

/// A space under verification together with its sampling parameters.
pub struct Context<'a> {
    pub name: String,
    pub space: &'a ReductiveSpace,
    pub cfg: SamplingConfig,
    premises: RefCell<HashMap<Vector, Verdict>>,
}

impl<'a> Context<'a> {
    pub fn new(name: impl Into<String>, space: &'a ReductiveSpace, cfg: SamplingConfig) -> Self {
        Self {
            name: name.into(),
            space,
            cfg,
            premises: RefCell::new(HashMap::new()),
        }
    }

    pub fn alg(&self) -> &LieAlgebra {
        self.space.algebra()
    }

    /// Constant-length verdict for `x`, computed once per context.
    pub fn premise(&self, x: &Vector) -> Verdict {
        if let Some(v) = self.premises.borrow().get(x) {
            return v.clone();
        }
        let v = self
            .space
            .check_constant_length(x, &self.cfg)
            .unwrap_or_else(|_| self.space.sampled_constant_length(x, &self.cfg));
        self.premises.borrow_mut().insert(x.clone(), v.clone());
        v
    }

    fn inputs(&self, x: Option<&Vector>) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("space".into(), json!(self.name));
        if let Some(x) = x {
            m.insert("field".into(), json!(self.alg().render(x)));
            m.insert("field_coords".into(), json!(x));
        }
        m
    }

    fn go(&self) -> Result<bool, TheoremError> {
        self.space
            .declared_go()
            .ok_or_else(|| TheoremError::MissingDeclaration("go".into()))
    }

    fn nilradical(&self) -> Result<Subspace, TheoremError> {
        self.alg()
            .nilradical()
            .map_err(|_| TheoremError::MissingDeclaration("nilradical".into()))
    }

    fn center_of_nilradical(&self) -> Result<Subspace, TheoremError> {
        self.alg()
            .center_of_nilradical()
            .map_err(|_| TheoremError::MissingDeclaration("nilradical".into()))
    }

    fn forms(&self, forms: &[Form], tag: u64, ev: &mut Map<String, Value>) -> bool {
        ev.insert("forms_checked".into(), json!(forms.len()));
        if forms.is_empty() {
            return true;
        }
        let (verdict, idx) = self.space.check_forms_on_m(forms, &self.cfg, tag);
        if let Some(i) = idx {
            ev.insert("failing_form".into(), json!(render_form(self.alg(), &forms[i])));
        }
        let ok = !verdict.is_refuted();
        ev.insert("on_m".into(), serde_json::to_value(&verdict).unwrap_or(Value::Null));
        ok
    }
}

fn render_form(alg: &LieAlgebra, f: &Form) -> String {
    let mut parts: Vec<String> = f
        .terms
        .iter()
        .map(|(c, u, v)| {
            let coef = if c.is_one() { String::new() } else { format!("{c}*") };
            format!("{coef}g({}, {})", alg.render(u), alg.render(v))
        })
        .collect();
    if !f.constant.is_zero() {
        parts.push(format!("-{}", f.constant));
    }
    parts.join(" + ")
}

fn subspace_json(alg: &LieAlgebra, s: &Subspace) -> Value {
    json!(s.basis().iter().map(|v| alg.render(v)).collect::<Vec<_>>())
}

fn span_of(x: &Vector) -> Subspace {
    Subspace::span(x.len(), std::slice::from_ref(x))
}

fn finding(
    ctx: &Context,
    id: &str,
    x: Option<&Vector>,
    status: Status,
    premise: Premise,
    verdict: Option<Verdict>,
    evidence: Map<String, Value>,
) -> Finding {
    Finding {
        statement_id: id.to_string(),
        inputs: ctx.inputs(x),
        status,
        premise,
        verdict,
        evidence,
    }
}

fn pass_fail(ok: bool) -> Status {
    if ok {
        Status::Passed
    } else {
        Status::Failed
    }
}

/// Runs one statement. Field statements require `x`.
pub fn verify<'v>(id: &str, ctx: &Context, x: Option<&'v Vector>) -> Result<Finding, TheoremError> {
    let st = statement(id).ok_or_else(|| TheoremError::UnknownStatement(id.to_string()))?;
    let need = |x: Option<&'v Vector>| x.ok_or_else(|| TheoremError::MissingInput(id.to_string()));
    match st.id {
        "thm-1.1" => Ok(thm_1_1(ctx, need(x)?)),
        "lemma-2.2" => Ok(lemma_2_2(ctx, need(x)?)),
        "prop-2.3" => Ok(prop_2_3(ctx, need(x)?)),
        "thm-2.4" => thm_2_4(ctx, need(x)?),
        "prop-2.5" => Ok(prop_2_5(ctx, need(x)?)),
        "prop-2.6" => Ok(prop_2_6(ctx, need(x)?, false)),
        "prop-2.6-1" => Ok(prop_2_6(ctx, need(x)?, true)),
        "thm-2.7" => Ok(thm_2_7(ctx, need(x)?)),
        "thm-2.7-det" => Ok(thm_2_7_det(ctx)),
        "prop-2.8" => Ok(prop_2_8(ctx, need(x)?)),
        "prop-2.9" => prop_2_9(ctx, need(x)?),
        "prop-2.11" => Ok(prop_2_11(ctx, need(x)?)),
        "prop-2.12" => prop_2_12(ctx, need(x)?),
        "lemma-3.1" => Ok(lemma_3_1(ctx)),
        "thm-3.4" => thm_3_4(ctx),
        "cor-3.5" => cor_3_5(ctx),
        "prop-3.7" => prop_3_7(ctx),
        "prop-3.8" => prop_3_8(ctx),
        "thm-3.9" => thm_3_9(ctx, need(x)?),
        "cor-3.10" => cor_3_10(ctx),
        "prop-3.12" => prop_3_12(ctx, need(x)?),
        "struct-radical" => struct_radical(ctx),
        "conj-1.2" => Ok(conj_1_2(ctx, need(x)?)),
        "conj-3.6" => conj_3_6(ctx, need(x)?),
        other => Err(TheoremError::UnknownStatement(other.to_string())),
    }
}

/// Like [`verify`], but a missing declaration becomes a `skipped` finding.
pub fn verify_or_skip(id: &str, ctx: &Context, x: Option<&Vector>) -> Result<Finding, TheoremError> {
    match verify(id, ctx, x) {
        Err(TheoremError::MissingDeclaration(name)) => {
            let mut ev = Map::new();
            ev.insert("missing_declaration".into(), json!(name));
            Ok(finding(ctx, id, x, Status::Skipped, Premise::NotRequired, None, ev))
        }
        other => other,
    }
}

/// Runs the given statements (all when `ids` is empty) over `fields`,
/// in registry order.
pub fn verify_all(ctx: &Context, ids: &[String], fields: &[Vector]) -> Result<Vec<Finding>, TheoremError> {
    for id in ids {
        if statement(id).is_none() {
            return Err(TheoremError::UnknownStatement(id.clone()));
        }
    }
    let mut out = Vec::new();
    for st in REGISTRY {
        if !ids.is_empty() && !ids.iter().any(|i| i == st.id) {
            continue;
        }
        match st.scope {
            Scope::Field => {
                for x in fields {
                    out.push(verify_or_skip(st.id, ctx, Some(x))?);
                }
            }
            Scope::Space | Scope::Identity => out.push(verify_or_skip(st.id, ctx, None)?),
        }
    }
    Ok(out)
}

/// Conjecture probes over the given fields.
pub fn probe_conjectures(ctx: &Context, fields: &[Vector]) -> Vec<Finding> {
    let mut out = Vec::new();
    for id in ["conj-1.2", "conj-3.6"] {
        for x in fields {
            if let Ok(f) = verify_or_skip(id, ctx, Some(x)) {
                out.push(f);
            }
        }
    }
    out
}

/// Basis vectors, a basis of `C(n(g))` and bases of declared abelian
/// ideals, followed by `extra`, without repetition.
pub fn default_fields(space: &ReductiveSpace, extra: &[Vector]) -> Vec<Vector> {
    let alg = space.algebra();
    let mut out: Vec<Vector> = Vec::new();
    let mut push = |v: &Vector| {
        if !v.is_zero() && !out.contains(v) {
            out.push(v.clone());
        }
    };
    for v in alg.basis() {
        push(&v);
    }
    if let Ok(c) = alg.center_of_nilradical() {
        for v in c.basis() {
            push(v);
        }
    }
    for a in &alg.declared().abelian_ideals {
        for v in a.basis() {
            push(v);
        }
    }
    for v in extra {
        push(v);
    }
    out
}

fn premise_for(ctx: &Context, x: &Vector) -> (Premise, Verdict) {
    let v = ctx.premise(x);
    (Premise::of(&v), v)
}

/// Status of a conditional statement: vacuous when the premise failed.
fn conditional(premise: Premise, ok: bool) -> Status {
    if premise.holds() {
        pass_fail(ok)
    } else {
        Status::Vacuous
    }
}

fn thm_1_1(ctx: &Context, x: &Vector) -> Finding {
    let (premise, verdict) = premise_for(ctx, x);
    let p = char_poly(&ctx.alg().ad(x));
    let pure = spectrum_is_pure_imaginary(&p).unwrap_or(false);
    let mut ev = Map::new();
    ev.insert("char_poly".into(), json!(p.render("λ")));
    ev.insert("pure_imaginary".into(), json!(pure));
    let status = conditional(premise, pure);
    finding(ctx, "thm-1.1", Some(x), status, premise, Some(verdict), ev)
}

fn lemma_2_2(ctx: &Context, x: &Vector) -> Finding {
    let (premise, verdict) = premise_for(ctx, x);
    let mut ev = Map::new();
    if !premise.holds() {
        return finding(ctx, "lemma-2.2", Some(x), Status::Vacuous, premise, Some(verdict), ev);
    }
    let alg = ctx.alg();
    let basis = alg.basis();
    let mut taylor_nonzero = 0usize;
    for z in &basis {
        for k in 1..=ctx.cfg.order {
            if !ctx.space.taylor_condition(x, z, k).is_zero() {
                taylor_nonzero += 1;
            }
        }
    }
    ev.insert("taylor_orders".into(), json!(ctx.cfg.order));
    ev.insert("taylor_nonzero".into(), json!(taylor_nonzero));
    let mut forms = Vec::new();
    for y in &basis {
        let yx = alg.bracket(y, x);
        if yx.is_zero() {
            continue;
        }
        forms.push(Form::inner(&yx, x));
        for z in &basis {
            let zyx = alg.bracket(z, &yx);
            let zx = alg.bracket(z, x);
            forms.push(Form::inner(&zyx, x).plus(int(1), &yx, &zx));
        }
    }
    let ok = ctx.forms(&forms, 22, &mut ev) && taylor_nonzero == 0;
    finding(ctx, "lemma-2.2", Some(x), pass_fail(ok), premise, Some(verdict), ev)
}

fn prop_2_3(ctx: &Context, x: &Vector) -> Finding {
    let (premise, verdict) = premise_for(ctx, x);
    let mut ev = Map::new();
    let alg = ctx.alg();
    let image = alg.ad(x).image();
    let cent = alg.centralizer(x);
    ev.insert("x_g_dim".into(), json!(image.dim()));
    ev.insert("centralizer_dim".into(), json!(cent.dim()));
    if !premise.holds() {
        return finding(ctx, "prop-2.3", Some(x), Status::Vacuous, premise, Some(verdict), ev);
    }
    let mut forms: Vec<Form> = image.basis().iter().map(|v| Form::inner(x, v)).collect();
    for z in cent.basis() {
        for v in image.basis() {
            let w = alg.bracket(z, v);
            if !w.is_zero() {
                forms.push(Form::inner(x, &w));
            }
        }
    }
    let ok = ctx.forms(&forms, 23, &mut ev);
    finding(ctx, "prop-2.3", Some(x), pass_fail(ok), premise, Some(verdict), ev)
}

fn thm_2_4(ctx: &Context, x: &Vector) -> Result<Finding, TheoremError> {
    let alg = ctx.alg();
    let parts = alg.declared().direct_sum.clone();
    if parts.len() < 2 {
        return Err(TheoremError::MissingDeclaration("direct_sum".into()));
    }
    let (premise, verdict) = premise_for(ctx, x);
    let mut ev = Map::new();
    let span = span_of(x);
    let us: Vec<Subspace> = parts
        .iter()
        .map(|gi| alg.smallest_ideal_containing(gi, &alg.bracket_spaces(&span, gi)))
        .collect();
    let all_ideals = us.iter().all(|u| alg.is_ideal(u));
    ev.insert("u_dims".into(), json!(us.iter().map(|u| u.dim()).collect::<Vec<_>>()));
    ev.insert("u_are_ideals".into(), json!(all_ideals));
    if !premise.holds() {
        return Ok(finding(ctx, "thm-2.4", Some(x), Status::Vacuous, premise, Some(verdict), ev));
    }
    let mut forms = Vec::new();
    for i in 0..us.len() {
        for j in i + 1..us.len() {
            for a in us[i].basis() {
                for b in us[j].basis() {
                    forms.push(Form::inner(a, b));
                }
            }
        }
    }
    let ok = ctx.forms(&forms, 24, &mut ev) && all_ideals;
    Ok(finding(ctx, "thm-2.4", Some(x), pass_fail(ok), premise, Some(verdict), ev))
}

fn prop_2_5(ctx: &Context, x: &Vector) -> Finding {
    let (premise, verdict) = premise_for(ctx, x);
    let mut ev = Map::new();
    if !premise.holds() {
        return finding(ctx, "prop-2.5", Some(x), Status::Vacuous, premise, Some(verdict), ev);
    }
    let alg = ctx.alg();
    let image = alg.ad(x).image();
    let b = image.basis();
    let mut forms = Vec::new();
    for i in 0..b.len() {
        for j in i..b.len() {
            let xv = alg.bracket(x, &b[i]);
            let xw = alg.bracket(x, &b[j]);
            forms.push(Form::inner(&xv, &b[j]).plus(int(1), &b[i], &xw));
        }
    }
    let ok = ctx.forms(&forms, 25, &mut ev);
    finding(ctx, "prop-2.5", Some(x), pass_fail(ok), premise, Some(verdict), ev)
}

fn prop_2_6(ctx: &Context, x: &Vector, first_only: bool) -> Finding {
    let id = if first_only { "prop-2.6-1" } else { "prop-2.6" };
    let (premise, verdict) = premise_for(ctx, x);
    let alg = ctx.alg();
    let l = alg.ad(x);
    let p = char_poly(&l);
    let r = p.strip_zero_roots();
    let real_roots = r.count_real_roots(None, None);
    let mut ev = Map::new();
    ev.insert("char_poly".into(), json!(p.render("λ")));
    ev.insert("nonzero_real_eigenvalues".into(), json!(real_roots));
    ev.insert(
        "rational_real_eigenvalues".into(),
        json!(r.rational_roots().iter().map(format_scalar).collect::<Vec<_>>()),
    );
    let mut ok = real_roots == 0;
    if !first_only {
        let image = l.image();
        let mut part2_checked = 0;
        let mut part2_ok = true;
        for z in alg.basis() {
            let xz = alg.bracket(x, &z);
            if image.contains(&alg.bracket(&xz, &z)) {
                part2_checked += 1;
                part2_ok &= xz.is_zero();
            }
        }
        ev.insert("part2_checked".into(), json!(part2_checked));
        ev.insert("part2_holds".into(), json!(part2_ok));
        let span = span_of(x);
        let mut candidates: Vec<(String, Subspace)> = alg
            .declared()
            .abelian_ideals
            .iter()
            .enumerate()
            .map(|(i, a)| (format!("abelian_ideal_{i}"), a.clone()))
            .collect();
        if let Ok(c) = alg.center_of_nilradical() {
            candidates.push(("center_of_nilradical".into(), c));
        }
        if image.is_invariant_under(&l) && image.contains_subspace(&alg.bracket_spaces(&image, &image)) {
            candidates.push(("x_g".into(), image.clone()));
        }
        let mut commuting = Map::new();
        let mut part34_ok = true;
        for (name, a) in &candidates {
            let c = alg.bracket_spaces(&span, a).is_zero();
            part34_ok &= c;
            commuting.insert(name.clone(), json!(c));
        }
        ev.insert("commutes_with".into(), Value::Object(commuting));
        ok = ok && part2_ok && part34_ok;
    }
    finding(ctx, id, Some(x), conditional(premise, ok), premise, Some(verdict), ev)
}

/// The 3×3 matrix of the linear system for `(g(U,U), g(U,V), g(V,V))`
/// attached to a 2-dimensional block with eigenvalues `α ± βi`.
pub fn block_system_matrix(alpha: &Scalar, beta: &Scalar) -> Matrix {
    let (a, b) = (alpha, beta);
    let a2 = a * a;
    let b2 = b * b;
    let three = int(3);
    let two = int(2);
    let p = a * (&a2 - &b2);
    let q = b * (&(&three * &a2) - &b2);
    let r = &(&two * a) * &b2;
    let s = &(&two * a) * &(&a2 - &(&three * &b2));
    Matrix::from_rows(vec![
        vec![p.clone(), -q.clone(), r.clone()],
        vec![r, q.clone(), p],
        vec![q.clone(), s, -q],
    ])
}

/// `(det, −2α(α²+β²)⁴)` for the block system.
pub fn block_determinant(alpha: &Scalar, beta: &Scalar) -> (Scalar, Scalar) {
    let det = block_system_matrix(alpha, beta).determinant();
    let s = alpha * alpha + beta * beta;
    let expected = -(int(2) * alpha) * &s * &s * &s * &s;
    (det, expected)
}

fn det_evidence(alpha: &Scalar, beta: &Scalar) -> (bool, Value) {
    let (det, expected) = block_determinant(alpha, beta);
    let ok = det == expected;
    (
        ok,
        json!({
            "alpha": format_scalar(alpha),
            "beta": format_scalar(beta),
            "det": format_scalar(&det),
            "expected": format_scalar(&expected),
        }),
    )
}

/// Rational `(α, β)` pairs, `β ≠ 0`, drawn from the context seed.
pub fn random_alpha_beta(seed: u64, count: usize) -> Vec<(Scalar, Scalar)> {
    (0..count)
        .map(|i| {
            let mut rng = rng_for(seed, 7, i as u64);
            let a = frac(rng.random_range(-30..=30), rng.random_range(1..=12));
            let mut b = int(0);
            while b.is_zero() {
                b = frac(rng.random_range(-30..=30), rng.random_range(1..=12));
            }
            (a, b)
        })
        .collect()
}

fn thm_2_7_det(ctx: &Context) -> Finding {
    let mut pairs = vec![(int(1), int(2))];
    pairs.extend(random_alpha_beta(ctx.cfg.seed, 8));
    let mut ok = true;
    let mut cases = Vec::new();
    for (a, b) in &pairs {
        let (good, v) = det_evidence(a, b);
        ok &= good;
        cases.push(v);
    }
    let mut ev = Map::new();
    ev.insert("cases".into(), Value::Array(cases));
    let mut inputs = Map::new();
    inputs.insert("alpha".into(), json!("1"));
    inputs.insert("beta".into(), json!("2"));
    inputs.insert("random_pairs".into(), json!(pairs.len() - 1));
    Finding {
        statement_id: "thm-2.7-det".into(),
        inputs,
        status: pass_fail(ok),
        premise: Premise::NotRequired,
        verdict: None,
        evidence: ev,
    }
}

fn thm_2_7(ctx: &Context, x: &Vector) -> Finding {
    let (premise, verdict) = premise_for(ctx, x);
    let alg = ctx.alg();
    let n = alg.dim();
    let l = alg.ad(x);
    let l2 = &l * &l;
    let l3 = &l2 * &l;
    let fit = fitting(&l);
    let ker_stable = l3.kernel() == l2.kernel();
    let a2 = l2.image();
    let a2_invertible = a2
        .restrict(&l)
        .map(|m| !m.determinant().is_zero())
        .unwrap_or(false);
    let pure = spectrum_is_pure_imaginary(&char_poly(&l)).unwrap_or(false);
    let mut ev = Map::new();
    ev.insert("fitting_exponent".into(), json!(fit.exponent));
    ev.insert("ker_l3_eq_ker_l2".into(), json!(ker_stable));
    ev.insert("a1_dim".into(), json!(l2.kernel().dim()));
    ev.insert("a2_dim".into(), json!(a2.dim()));
    ev.insert("l_invertible_on_a2".into(), json!(a2_invertible));
    ev.insert("zero_real_parts".into(), json!(pure));
    let (det_ok, det_case) = det_evidence(&int(1), &int(2));
    ev.insert("determinant_identity".into(), det_case);
    if !premise.holds() {
        return finding(ctx, "thm-2.7", Some(x), Status::Vacuous, premise, Some(verdict), ev);
    }
    let mut forms = Vec::new();
    let mut blocks = 0usize;
    let mut skipped_blocks = 0usize;
    if let Ok(roots) = crate::spectral::root_spaces(&l, &a2) {
        for r in roots {
            let Some(beta_sq) = r.beta_sq.clone() else {
                skipped_blocks += 1;
                continue;
            };
            let k = (&l2 + &Matrix::identity(n).scale(&beta_sq)).kernel();
            let mut us: Vec<Vector> = k.basis().to_vec();
            let b = k.basis();
            for i in 0..b.len() {
                for j in i + 1..b.len() {
                    us.push(&b[i] + &b[j]);
                }
            }
            for u in &us {
                let lu = l.apply(u);
                blocks += 1;
                forms.push(Form::inner(u, &lu));
                forms.push(Form {
                    terms: vec![(beta_sq.clone(), u.clone(), u.clone()), (-Scalar::one(), lu.clone(), lu)],
                    constant: Scalar::zero(),
                });
            }
        }
    }
    ev.insert("blocks".into(), json!(blocks));
    ev.insert("blocks_without_rational_beta_sq".into(), json!(skipped_blocks));
    let on_m = ctx.forms(&forms, 27, &mut ev);
    let ok = fit.exponent <= 2 && ker_stable && a2_invertible && pure && det_ok && on_m;
    finding(ctx, "thm-2.7", Some(x), pass_fail(ok), premise, Some(verdict), ev)
}

fn prop_2_8(ctx: &Context, x: &Vector) -> Finding {
    let (premise, verdict) = premise_for(ctx, x);
    let alg = ctx.alg();
    let mut ev = Map::new();
    let analysis = match SpectralAnalysis::new(alg, x) {
        Ok(a) => a,
        Err(e) => {
            ev.insert("error".into(), json!(e.to_string()));
            return finding(ctx, "prop-2.8", Some(x), Status::Failed, premise, Some(verdict), ev);
        }
    };
    let a1 = analysis.fitting.a1.clone();
    let a2 = analysis.fitting.a2.clone();
    let a1a2 = a2.contains_subspace(&alg.bracket_spaces(&a1, &a2));
    let v0vi = analysis
        .root_spaces
        .iter()
        .all(|r| r.space.contains_subspace(&alg.bracket_spaces(&a1, &r.space)));
    ev.insert("a1_a2_in_a2".into(), json!(a1a2));
    ev.insert("v0_vi_in_vi".into(), json!(v0vi));
    if let Some(e) = &analysis.sigma_error {
        ev.insert("sigma".into(), json!(e.to_string()));
        let status = if a2.is_zero() { Status::Vacuous } else { Status::Skipped };
        let status = if a1a2 && v0vi { status } else { Status::Failed };
        return finding(ctx, "prop-2.8", Some(x), status, premise, Some(verdict), ev);
    }
    let betas: Vec<Scalar> = analysis
        .root_spaces
        .iter()
        .map(|r| root_beta(r).expect("sigma exists only with rational betas"))
        .collect();
    let target = |b: &Scalar| -> Subspace {
        if b.is_zero() {
            return a1.clone();
        }
        betas
            .iter()
            .position(|c| c == b)
            .map(|i| analysis.root_spaces[i].space.clone())
            .unwrap_or_else(|| Subspace::zero(alg.dim()))
    };
    let mut pairs = 0usize;
    let mut graded_ok = true;
    for (i, ri) in analysis.root_spaces.iter().enumerate() {
        for (j, rj) in analysis.root_spaces.iter().enumerate() {
            let d = (&betas[i] - &betas[j]).abs_value();
            let s = &betas[i] + &betas[j];
            let (tp, tm) = (target(&d), target(&s));
            for y in ri.space.basis() {
                for z in rj.space.basis() {
                    pairs += 1;
                    match analysis.graded_bracket(alg, y, z) {
                        Ok((plus, minus)) => {
                            graded_ok &= tp.contains(&plus) && tm.contains(&minus);
                        }
                        Err(_) => graded_ok = false,
                    }
                }
            }
        }
    }
    ev.insert("pairs".into(), json!(pairs));
    ev.insert("graded_relations_hold".into(), json!(graded_ok));
    ev.insert(
        "betas".into(),
        json!(betas.iter().map(format_scalar).collect::<Vec<_>>()),
    );
    let ok = graded_ok && a1a2 && v0vi;
    finding(ctx, "prop-2.8", Some(x), pass_fail(ok), premise, Some(verdict), ev)
}

trait AbsValue {
    fn abs_value(&self) -> Scalar;
}

impl AbsValue for Scalar {
    fn abs_value(&self) -> Scalar {
        if *self < Scalar::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

fn prop_2_9(ctx: &Context, x: &Vector) -> Result<Finding, TheoremError> {
    let cn = ctx.center_of_nilradical()?;
    let (premise, verdict) = premise_for(ctx, x);
    let alg = ctx.alg();
    let mut ev = Map::new();
    if !premise.holds() {
        return Ok(finding(ctx, "prop-2.9", Some(x), Status::Vacuous, premise, Some(verdict), ev));
    }
    let l = alg.ad(x);
    let l2 = &l * &l;
    let a1 = l2.kernel();
    let a2 = l2.image();
    let ker = l.kernel();
    let image = l.image();
    let p1 = ker.contains_subspace(&cn) && a1.contains_subspace(&ker);
    let j = alg.centralizer_of(&cn);
    let p2 = alg.is_ideal(&j) && j.contains(x) && image.contains_subspace(&a2) && j.contains_subspace(&image);
    // I is tested elementwise: each candidate must be orthogonal to A2 on M.
    let la1 = a1.image_under(&l);
    let la1_a1 = alg.bracket_spaces(&la1, &a1);
    let mut required: Vec<Vector> = vec![x.clone()];
    required.extend(la1.basis().iter().cloned());
    required.extend(la1_a1.basis().iter().cloned());
    let mut forms = Vec::new();
    for y in &required {
        for w in a2.basis() {
            forms.push(Form::inner(y, w));
        }
    }
    let mut sub = Map::new();
    let p3 = ctx.forms(&forms, 29, &mut sub);
    ev.insert("i_membership".into(), Value::Object(sub));
    let jt = a2.sum(&alg.bracket_spaces(&a2, &a2));
    let jt_ideal = alg.is_ideal(&jt) && j.contains_subspace(&jt);
    let mut cn_in_i = Vec::new();
    for c in cn.basis() {
        if !a1.contains(c) {
            continue;
        }
        let fs: Vec<Form> = a2.basis().iter().map(|w| Form::inner(c, w)).collect();
        let mut scratch = Map::new();
        if ctx.forms(&fs, 291, &mut scratch) {
            cn_in_i.push(c.clone());
        }
    }
    let forms4: Vec<Form> = cn_in_i
        .iter()
        .flat_map(|c| jt.basis().iter().map(move |w| Form::inner(c, w)))
        .collect();
    let mut sub4 = Map::new();
    let p4_orth = ctx.forms(&forms4, 292, &mut sub4);
    ev.insert("i_cap_cn_orthogonal_to_jt".into(), Value::Object(sub4));
    let (ls, _) = crate::spectral::jordan_chevalley(&l).unwrap_or((l.clone(), Matrix::zeros(l.rows(), l.cols())));
    let jt_a1 = jt.intersection(&a1);
    let p5 = jt_a1.basis().iter().all(|v| ls.apply(v).is_zero() && jt.contains(&l.apply(v)));
    ev.insert("c_n_in_ker_l".into(), json!(p1));
    ev.insert("j".into(), subspace_json(alg, &j));
    ev.insert("j_ideal_contains_x_and_a2".into(), json!(p2));
    ev.insert("j_tilde_dim".into(), json!(jt.dim()));
    ev.insert("j_tilde_ideal_in_j".into(), json!(jt_ideal));
    ev.insert("c_n_elements_in_i".into(), json!(cn_in_i.len()));
    ev.insert("ls_vanishes_on_j_tilde_cap_a1".into(), json!(p5));
    let ok = p1 && p2 && p3 && jt_ideal && p4_orth && p5;
    Ok(finding(ctx, "prop-2.9", Some(x), pass_fail(ok), premise, Some(verdict), ev))
}

fn prop_2_11(ctx: &Context, x: &Vector) -> Finding {
    let (premise, verdict) = premise_for(ctx, x);
    let alg = ctx.alg();
    let mut ev = Map::new();
    if !premise.holds() {
        return finding(ctx, "prop-2.11", Some(x), Status::Vacuous, premise, Some(verdict), ev);
    }
    let l = alg.ad(x);
    let image = l.image();
    let basis = alg.basis();
    let mut forms = Vec::new();
    for y in &basis {
        let xy = alg.bracket(x, y);
        if xy.is_zero() {
            continue;
        }
        for z in &basis {
            let xz = alg.bracket(x, z);
            if !xz.is_zero() && image.contains(&alg.bracket(&xy, z)) {
                forms.push(Form::inner(&xy, &xz));
            }
        }
    }
    let part1 = forms.len();
    let a2 = (&l * &l).image();
    let roots = crate::spectral::root_spaces(&l, &a2).unwrap_or_default();
    for i in 0..roots.len() {
        for j in 0..roots.len() {
            if i == j {
                continue;
            }
            let (vi, vj) = (&roots[i].space, &roots[j].space);
            if i < j {
                for u in vi.basis() {
                    for v in vj.basis() {
                        forms.push(Form::inner(u, v));
                    }
                }
            }
            let (Some(bi), Some(bj)) = (&roots[i].beta_sq, &roots[j].beta_sq) else {
                continue;
            };
            if *bj == int(4) * bi {
                continue;
            }
            for u1 in vi.basis() {
                for u2 in vi.basis() {
                    let uu = alg.bracket(u1, u2);
                    for v in vj.basis() {
                        let uv = alg.bracket(u1, v);
                        if !uv.is_zero() {
                            forms.push(Form::inner(&uv, u2));
                        }
                        if !uu.is_zero() {
                            forms.push(Form::inner(&uu, v));
                        }
                    }
                }
            }
        }
    }
    ev.insert("part1_pairs".into(), json!(part1));
    ev.insert("root_spaces".into(), json!(roots.len()));
    let ok = ctx.forms(&forms, 211, &mut ev);
    finding(ctx, "prop-2.11", Some(x), pass_fail(ok), premise, Some(verdict), ev)
}

fn prop_2_12(ctx: &Context, x: &Vector) -> Result<Finding, TheoremError> {
    let n = ctx.nilradical()?;
    let (premise, verdict) = premise_for(ctx, x);
    let alg = ctx.alg();
    let l = alg.ad(x);
    let a1_full = (&l * &l).is_zero();
    let mut ev = Map::new();
    ev.insert("a1_is_g".into(), json!(a1_full));
    let in_n = n.contains(x);
    ev.insert("x_in_nilradical".into(), json!(in_n));
    let status = if premise.holds() && a1_full {
        pass_fail(in_n)
    } else {
        Status::Vacuous
    };
    Ok(finding(ctx, "prop-2.12", Some(x), status, premise, Some(verdict), ev))
}

fn prop_3_12(ctx: &Context, x: &Vector) -> Result<Finding, TheoremError> {
    let go = ctx.go()?;
    let cn = ctx.center_of_nilradical()?;
    let (premise, verdict) = premise_for(ctx, x);
    let alg = ctx.alg();
    let l = alg.ad(x);
    let a1_full = (&l * &l).is_zero();
    let in_cn = cn.contains(x);
    let mut ev = Map::new();
    ev.insert("a1_is_g".into(), json!(a1_full));
    ev.insert("x_in_center_of_nilradical".into(), json!(in_cn));
    if !go {
        return Ok(finding(ctx, "prop-3.12", Some(x), Status::Vacuous, premise, Some(verdict), ev));
    }
    let forward = premise.holds() && a1_full;
    let backward = in_cn;
    let mut ok = true;
    if forward {
        ok &= in_cn;
    }
    if backward {
        ok &= a1_full && premise.holds();
    }
    let status = if forward || backward { pass_fail(ok) } else { Status::Vacuous };
    Ok(finding(ctx, "prop-3.12", Some(x), status, premise, Some(verdict), ev))
}

fn lemma_3_1(ctx: &Context) -> Finding {
    let verdict = ctx.space.check_go(&ctx.cfg);
    let mut ev = Map::new();
    ev.insert("declared_go".into(), json!(ctx.space.declared_go()));
    let status = match ctx.space.declared_go() {
        Some(true) => pass_fail(!verdict.is_refuted()),
        _ => Status::Reported,
    };
    finding(ctx, "lemma-3.1", None, status, Premise::NotRequired, Some(verdict), ev)
}

fn abelian_ideals_with_center(ctx: &Context) -> Vec<(String, Subspace)> {
    let alg = ctx.alg();
    let mut out: Vec<(String, Subspace)> = alg
        .declared()
        .abelian_ideals
        .iter()
        .enumerate()
        .map(|(i, a)| (format!("abelian_ideal_{i}"), a.clone()))
        .collect();
    if let Ok(c) = alg.center_of_nilradical() {
        if !c.is_zero() {
            out.push(("center_of_nilradical".into(), c));
        }
    }
    out
}

fn thm_3_4(ctx: &Context) -> Result<Finding, TheoremError> {
    let go = ctx.go()?;
    let mut ev = Map::new();
    let ideals = abelian_ideals_with_center(ctx);
    ev.insert("ideals".into(), json!(ideals.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>()));
    if !go || ideals.is_empty() {
        return Ok(finding(ctx, "thm-3.4", None, Status::Vacuous, Premise::NotRequired, None, ev));
    }
    let alg = ctx.alg();
    let mut ok = true;
    let mut forms = Vec::new();
    let mut sampled = Map::new();
    for (name, a) in &ideals {
        let certified = a.basis().iter().all(|v| {
            ctx.space
                .certificate_constant_length(v)
                .ok()
                .flatten()
                .is_some()
        });
        let refuted = a
            .basis()
            .iter()
            .any(|v| ctx.space.sampled_constant_length(v, &ctx.cfg).is_refuted());
        ok &= certified && !refuted && alg.is_ideal(a) && alg.is_abelian(a);
        sampled.insert(name.clone(), json!({"certified": certified, "sampling_refuted": refuted}));
        let b = a.basis();
        for i in 0..b.len() {
            for j in i..b.len() {
                forms.push(Form::inner(&b[i], &b[j]).minus_constant(ctx.space.inner(&b[i], &b[j])));
            }
        }
    }
    ev.insert("per_ideal".into(), Value::Object(sampled));
    ok &= ctx.forms(&forms, 34, &mut ev);
    Ok(finding(ctx, "thm-3.4", None, pass_fail(ok), Premise::NotRequired, None, ev))
}

fn cor_3_5(ctx: &Context) -> Result<Finding, TheoremError> {
    let go = ctx.go()?;
    let alg = ctx.alg();
    let mut ev = Map::new();
    let semisimple = alg.is_semisimple();
    ev.insert("semisimple".into(), json!(semisimple));
    if !go || semisimple {
        return Ok(finding(ctx, "cor-3.5", None, Status::Vacuous, Premise::NotRequired, None, ev));
    }
    let ideal = match alg.center_of_nilradical() {
        Ok(c) if !c.is_zero() => c,
        _ => {
            let r = alg.radical().map_err(|_| TheoremError::MissingDeclaration("radical".into()))?;
            let series = alg.derived_series(&r).unwrap_or_default();
            series
                .iter()
                .rev()
                .find(|s| !s.is_zero())
                .cloned()
                .unwrap_or_else(|| Subspace::zero(alg.dim()))
        }
    };
    let Some(x) = ideal.basis().first().cloned() else {
        return Ok(finding(ctx, "cor-3.5", None, Status::Failed, Premise::NotRequired, None, ev));
    };
    let abelian_ideal = alg.is_ideal(&ideal) && alg.is_abelian(&ideal);
    let verdict = ctx.space.sampled_constant_length(&x, &ctx.cfg);
    ev.insert("field".into(), json!(alg.render(&x)));
    ev.insert("abelian_ideal".into(), subspace_json(alg, &ideal));
    let ok = abelian_ideal && !verdict.is_refuted();
    Ok(finding(ctx, "cor-3.5", None, pass_fail(ok), Premise::NotRequired, Some(verdict), ev))
}

fn prop_3_7(ctx: &Context) -> Result<Finding, TheoremError> {
    let go = ctx.go()?;
    let alg = ctx.alg();
    let report = alg
        .levi_report()
        .map_err(|_| TheoremError::MissingDeclaration("levi".into()))?;
    let r = alg.radical().map_err(|_| TheoremError::MissingDeclaration("radical".into()))?;
    let mut ev = Map::new();
    ev.insert("compact_dim".into(), json!(report.compact.dim()));
    ev.insert("noncompact_dim".into(), json!(report.noncompact.dim()));
    ev.insert("radical_dim".into(), json!(r.dim()));
    let commute = alg.bracket_spaces(&report.noncompact, &r).is_zero();
    ev.insert("noncompact_commutes_with_radical".into(), json!(commute));
    let status = if go { pass_fail(commute) } else { Status::Vacuous };
    Ok(finding(ctx, "prop-3.7", None, status, Premise::NotRequired, None, ev))
}

fn prop_3_8(ctx: &Context) -> Result<Finding, TheoremError> {
    let go = ctx.go()?;
    let n = ctx.nilradical()?;
    let alg = ctx.alg();
    let class = alg.nilpotency_class(&n).ok().flatten();
    let mut ev = Map::new();
    ev.insert("nilradical_dim".into(), json!(n.dim()));
    ev.insert("nilpotency_class".into(), json!(class));
    let ok = class.is_some_and(|c| c <= 2);
    let status = if go { pass_fail(ok) } else { Status::Vacuous };
    Ok(finding(ctx, "prop-3.8", None, status, Premise::NotRequired, None, ev))
}

fn thm_3_9(ctx: &Context, x: &Vector) -> Result<Finding, TheoremError> {
    let go = ctx.go()?;
    let n = ctx.nilradical()?;
    let cn = ctx.center_of_nilradical()?;
    let mut ev = Map::new();
    let in_n = n.contains(x);
    let in_cn = cn.contains(x);
    ev.insert("x_in_nilradical".into(), json!(in_n));
    ev.insert("x_in_center_of_nilradical".into(), json!(in_cn));
    if !go || !in_n {
        return Ok(finding(ctx, "thm-3.9", Some(x), Status::Vacuous, Premise::NotRequired, None, ev));
    }
    let verdict = ctx.premise(x);
    let premise = Premise::of(&verdict);
    let ok = if in_cn {
        let sampled = ctx.space.sampled_constant_length(x, &ctx.cfg);
        ev.insert("sampling_refuted".into(), json!(sampled.is_refuted()));
        verdict.is_certified() && !sampled.is_refuted()
    } else {
        let exact = match &verdict {
            Verdict::RefutedAt { witness, lhs, rhs } => {
                let word_exact = match witness {
                    Witness::Word { word } => word.is_exact(),
                    _ => true,
                };
                word_exact && lhs.is_exact() && rhs.is_exact()
            }
            _ => false,
        };
        ev.insert("exact_refutation".into(), json!(exact));
        if !exact {
            ev.insert("flag".into(), json!("no exact refutation found"));
        }
        exact
    };
    Ok(finding(ctx, "thm-3.9", Some(x), pass_fail(ok), premise, Some(verdict), ev))
}

fn cor_3_10(ctx: &Context) -> Result<Finding, TheoremError> {
    let go = ctx.go()?;
    let cn = ctx.center_of_nilradical()?;
    let alg = ctx.alg();
    let ideals = &alg.declared().abelian_ideals;
    let mut ev = Map::new();
    ev.insert("center_of_nilradical".into(), subspace_json(alg, &cn));
    ev.insert("abelian_ideals".into(), json!(ideals.len()));
    if !go || ideals.is_empty() {
        return Ok(finding(ctx, "cor-3.10", None, Status::Vacuous, Premise::NotRequired, None, ev));
    }
    let ok = ideals.iter().all(|a| cn.contains_subspace(a));
    Ok(finding(ctx, "cor-3.10", None, pass_fail(ok), Premise::NotRequired, None, ev))
}

fn struct_radical(ctx: &Context) -> Result<Finding, TheoremError> {
    let n = ctx.nilradical()?;
    let alg = ctx.alg();
    let r = alg.radical().map_err(|_| TheoremError::MissingDeclaration("radical".into()))?;
    let gr = alg.bracket_spaces(&Subspace::full(alg.dim()), &r);
    let mut ev = Map::new();
    ev.insert("radical_dim".into(), json!(r.dim()));
    ev.insert("nilradical_dim".into(), json!(n.dim()));
    ev.insert("g_r_dim".into(), json!(gr.dim()));
    let ok = n.contains_subspace(&gr) && r.contains_subspace(&n);
    Ok(finding(ctx, "struct-radical", None, pass_fail(ok), Premise::NotRequired, None, ev))
}

fn conj_1_2(ctx: &Context, x: &Vector) -> Finding {
    let (premise, verdict) = premise_for(ctx, x);
    let alg = ctx.alg();
    let mut ev = Map::new();
    let semisimple = alg.is_semisimple();
    ev.insert("semisimple".into(), json!(semisimple));
    if !premise.holds() || !semisimple {
        return finding(ctx, "conj-1.2", Some(x), Status::Vacuous, premise, Some(verdict), ev);
    }
    let compact = crate::spectral::is_compact_vector(alg, x);
    ev.insert("compact_vector".into(), json!(compact));
    ev.insert("counterexample".into(), json!(!compact));
    finding(ctx, "conj-1.2", Some(x), Status::Reported, premise, Some(verdict), ev)
}

fn conj_3_6(ctx: &Context, x: &Vector) -> Result<Finding, TheoremError> {
    let go = ctx.go()?;
    let n = ctx.nilradical()?;
    let (premise, verdict) = premise_for(ctx, x);
    let alg = ctx.alg();
    let l = alg.ad(x);
    let a1 = (&l * &l).kernel();
    let mut ev = Map::new();
    if !go || !premise.holds() {
        return Ok(finding(ctx, "conj-3.6", Some(x), Status::Vacuous, premise, Some(verdict), ev));
    }
    let inside = a1.contains_subspace(&n);
    ev.insert("nilradical_in_a1".into(), json!(inside));
    ev.insert("counterexample".into(), json!(!inside));
    Ok(finding(ctx, "conj-3.6", Some(x), Status::Reported, premise, Some(verdict), ev))
}

/// Number of probe findings flagged as counterexamples.
pub fn counterexamples(findings: &[Finding]) -> usize {
    findings
        .iter()
        .filter(|f| f.evidence.get("counterexample") == Some(&Value::Bool(true)))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn ctx_for(doc: &corpus::SpaceDocument) -> (String, ReductiveSpace) {
        (doc.name.clone(), doc.build().unwrap())
    }

    fn small() -> SamplingConfig {
        SamplingConfig {
            samples: 20,
            ..SamplingConfig::default()
        }
    }

    #[test]
    fn registry_ids_are_unique() {
        let mut ids: Vec<&str> = REGISTRY.iter().map(|s| s.id).collect();
        ids.sort();
        let before = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), before);
    }

    #[test]
    fn block_determinant_at_one_two() {
        let (det, expected) = block_determinant(&int(1), &int(2));
        assert_eq!(det, int(-1250));
        assert_eq!(expected, int(-1250));
    }

    #[test]
    fn heis_center_is_certified() {
        let (name, s) = ctx_for(&corpus::build_heis_go(1));
        let ctx = Context::new(name, &s, small());
        let f = verify("thm-3.9", &ctx, Some(&Vector::basis(4, 2))).unwrap();
        assert_eq!(f.status, Status::Passed);
        assert!(matches!(f.verdict, Some(Verdict::CertifiedTrue { .. })));
        let f = verify("thm-3.9", &ctx, Some(&Vector::basis(4, 0))).unwrap();
        assert_eq!(f.status, Status::Passed);
        assert_eq!(f.premise, Premise::Refuted);
    }

    #[test]
    fn hyperbolic_h_has_real_eigenvalue() {
        let (name, s) = ctx_for(&corpus::build_sl2_hyperbolic());
        let ctx = Context::new(name, &s, small());
        let f = verify("prop-2.6-1", &ctx, Some(&Vector::basis(3, 0))).unwrap();
        assert_eq!(f.status, Status::Vacuous);
        assert_eq!(f.premise, Premise::Refuted);
        assert_eq!(f.evidence["rational_real_eigenvalues"], json!(["-2", "2"]));
    }

    #[test]
    fn unknown_and_missing() {
        let (name, s) = ctx_for(&corpus::build_so3());
        let ctx = Context::new(name, &s, small());
        assert_eq!(
            verify("thm-9.9", &ctx, None),
            Err(TheoremError::UnknownStatement("thm-9.9".into()))
        );
        assert_eq!(
            verify("thm-1.1", &ctx, None),
            Err(TheoremError::MissingInput("thm-1.1".into()))
        );
        assert_eq!(
            verify("thm-2.4", &ctx, Some(&Vector::basis(3, 0))),
            Err(TheoremError::MissingDeclaration("direct_sum".into()))
        );
        let f = verify_or_skip("thm-2.4", &ctx, Some(&Vector::basis(3, 0))).unwrap();
        assert_eq!(f.status, Status::Skipped);
    }

    #[test]
    fn no_failures_on_small_corpus() {
        for doc in [corpus::build_so3(), corpus::build_e2_plane(), corpus::build_heis_go(1)] {
            let (name, s) = ctx_for(&doc);
            let ctx = Context::new(name, &s, small());
            let fields = default_fields(&s, &[]);
            let findings = verify_all(&ctx, &[], &fields).unwrap();
            for f in &findings {
                assert_ne!(f.status, Status::Failed, "{} on {}: {:?}", f.statement_id, doc.name, f.evidence);
            }
        }
    }
}
