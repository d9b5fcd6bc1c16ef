//! The space document format, the curated example builders and
//! load/save.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{Declared, LieAlgebra, LieError};
use crate::homspace::{ReductiveSpace, SpaceError};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::scalar::{format_scalar, int, parse_scalar, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("parse error at line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("invalid {component}: {reason}")]
    Validation { component: String, reason: String },
    #[error("i/o error: {0}")]
    Io(String),
}

fn invalid(component: &str, reason: impl fmt::Display) -> CorpusError {
    CorpusError::Validation {
        component: component.to_string(),
        reason: reason.to_string(),
    }
}

/// Rational written as `"p/q"` (or `"p"`); bare JSON integers are accepted
/// on input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub Scalar);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Rat;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational string \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<Rat, E> {
                parse_scalar(s).map(Rat).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, n: i64) -> Result<Rat, E> {
                Ok(Rat(int(n)))
            }
            fn visit_u64<E: de::Error>(self, n: u64) -> Result<Rat, E> {
                i64::try_from(n)
                    .map(|n| Rat(int(n)))
                    .map_err(|_| E::custom("integer out of range"))
            }
        }
        d.deserialize_any(V)
    }
}

/// Bracket key `"i,j"` (0-based basis indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BracketKey(pub usize, pub usize);

impl Serialize for BracketKey {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{},{}", self.0, self.1))
    }
}

impl<'de> Deserialize<'de> for BracketKey {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let bad = || de::Error::custom(format!("bracket key `{s}` is not of the form \"i,j\""));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        Ok(BracketKey(
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ))
    }
}

/// A subspace given by basis indices or by explicit rational rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubspaceSpec {
    Indices(Vec<usize>),
    Rows(Vec<Vec<Rat>>),
}

impl SubspaceSpec {
    pub fn empty() -> Self {
        SubspaceSpec::Indices(Vec::new())
    }

    pub fn all(n: usize) -> Self {
        SubspaceSpec::Indices((0..n).collect())
    }

    pub fn from_vectors(vs: &[Vector]) -> Self {
        if vs.is_empty() {
            return Self::empty();
        }
        let n = vs[0].len();
        let indices: Option<Vec<usize>> = vs
            .iter()
            .map(|v| (0..n).find(|&i| *v == Vector::basis(n, i)))
            .collect();
        match indices {
            Some(idx) => SubspaceSpec::Indices(idx),
            None => SubspaceSpec::Rows(
                vs.iter()
                    .map(|v| v.coords().iter().cloned().map(Rat).collect())
                    .collect(),
            ),
        }
    }

    pub fn from_subspace(s: &Subspace) -> Self {
        Self::from_vectors(s.basis())
    }

    /// The listed vectors, in order.
    pub fn vectors(&self, n: usize, component: &str) -> Result<Vec<Vector>, CorpusError> {
        match self {
            SubspaceSpec::Indices(idx) => idx
                .iter()
                .map(|&i| {
                    if i < n {
                        Ok(Vector::basis(n, i))
                    } else {
                        Err(invalid(component, format!("index {i} out of range")))
                    }
                })
                .collect(),
            SubspaceSpec::Rows(rows) => rows
                .iter()
                .map(|r| {
                    if r.len() == n {
                        Ok(Vector::new(r.iter().map(|q| q.0.clone()).collect()))
                    } else {
                        Err(invalid(component, format!("row of length {} in dimension {n}", r.len())))
                    }
                })
                .collect(),
        }
    }

    pub fn subspace(&self, n: usize, component: &str) -> Result<Subspace, CorpusError> {
        Ok(Subspace::span(n, &self.vectors(n, component)?))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeclaredSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radical: Option<SubspaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilradical: Option<SubspaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levi: Option<SubspaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<SubspaceSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub direct_sum: Vec<SubspaceSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub abelian_ideals: Vec<SubspaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub go: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDocument {
    pub name: String,
    pub dimension: usize,
    pub basis: Vec<String>,
    pub brackets: BTreeMap<BracketKey, Vec<(usize, Rat)>>,
    pub h: SubspaceSpec,
    pub m: SubspaceSpec,
    pub metric: Vec<Vec<Rat>>,
    #[serde(default)]
    pub declared: DeclaredSpec,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub provenance: String,
}

impl SpaceDocument {
    /// Canonical pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CorpusError> {
        serde_json::from_str(text).map_err(|e| CorpusError::Parse {
            line: e.line(),
            col: e.column(),
            message: e.to_string(),
        })
    }

    fn algebra(&self) -> Result<LieAlgebra, CorpusError> {
        let n = self.dimension;
        if self.basis.len() != n {
            return Err(invalid(
                "dimension",
                format!("{} basis names for dimension {n}", self.basis.len()),
            ));
        }
        let mut brackets = Vec::new();
        for (BracketKey(i, j), terms) in &self.brackets {
            if *i >= n || *j >= n {
                return Err(invalid("brackets", format!("key {i},{j} out of range")));
            }
            if i != j && self.brackets.contains_key(&BracketKey(*j, *i)) && i > j {
                return Err(invalid("brackets", format!("both {j},{i} and {i},{j} given")));
            }
            let mut v = Vector::zeros(n);
            for (k, c) in terms {
                if *k >= n {
                    return Err(invalid("brackets", format!("component {k} out of range in {i},{j}")));
                }
                v[*k] += &c.0;
            }
            brackets.push((*i, *j, v));
        }
        let declared = self.declared_structure()?;
        LieAlgebra::from_brackets(self.basis.clone(), &brackets, declared).map_err(lie_error)
    }

    fn declared_structure(&self) -> Result<Declared, CorpusError> {
        let n = self.dimension;
        let d = &self.declared;
        let opt = |s: &Option<SubspaceSpec>, c: &str| -> Result<Option<Subspace>, CorpusError> {
            s.as_ref().map(|s| s.subspace(n, c)).transpose()
        };
        Ok(Declared {
            radical: opt(&d.radical, "radical")?,
            nilradical: opt(&d.nilradical, "nilradical")?,
            levi: opt(&d.levi, "levi")?,
            center: opt(&d.center, "center")?,
            direct_sum: d
                .direct_sum
                .iter()
                .map(|s| s.subspace(n, "direct_sum"))
                .collect::<Result<_, _>>()?,
            abelian_ideals: d
                .abelian_ideals
                .iter()
                .map(|s| s.subspace(n, "abelian_ideals"))
                .collect::<Result<_, _>>()?,
        })
    }

    /// Validates every component and builds the space.
    pub fn build(&self) -> Result<ReductiveSpace, CorpusError> {
        let alg = self.algebra()?;
        let n = self.dimension;
        let h = self.h.vectors(n, "h")?;
        let m = self.m.vectors(n, "m")?;
        let rows: Vec<Vec<Scalar>> = self
            .metric
            .iter()
            .map(|r| r.iter().map(|q| q.0.clone()).collect())
            .collect();
        if rows.iter().any(|r| r.len() != m.len()) || rows.len() != m.len() {
            return Err(invalid("metric", format!("expected a {0}x{0} matrix", m.len())));
        }
        let metric = if rows.is_empty() {
            Matrix::zeros(0, 0)
        } else {
            Matrix::from_rows(rows)
        };
        ReductiveSpace::new(alg, h, m, metric, self.declared.go).map_err(space_error)
    }
}

fn lie_error(e: LieError) -> CorpusError {
    match e {
        LieError::DeclaredInvalid { component, reason } => CorpusError::Validation { component, reason },
        LieError::DeclaredNilradicalInvalid(reason) => invalid("nilradical", reason),
        LieError::NotComplementary | LieError::KillingDegenerateOnLevi | LieError::MissingLevi => {
            invalid("levi", e)
        }
        other => invalid("brackets", other),
    }
}

fn space_error(e: SpaceError) -> CorpusError {
    match e {
        SpaceError::Lie(l) => lie_error(l),
        SpaceError::IsotropyNotSubalgebra | SpaceError::IneffectiveAction(_) => invalid("h", e),
        SpaceError::NotComplementary | SpaceError::NotReductive => invalid("m", e),
        SpaceError::DimensionMismatch { .. } => invalid("dimension", e),
        other => invalid("metric", other),
    }
}

pub fn load(path: &Path) -> Result<(SpaceDocument, ReductiveSpace), CorpusError> {
    let text = std::fs::read_to_string(path).map_err(|e| CorpusError::Io(e.to_string()))?;
    let doc = SpaceDocument::from_json(&text)?;
    let space = doc.build()?;
    Ok((doc, space))
}

pub fn save(doc: &SpaceDocument, path: &Path) -> Result<(), CorpusError> {
    std::fs::write(path, doc.to_json()).map_err(|e| CorpusError::Io(e.to_string()))
}

fn rat_rows(m: &Matrix) -> Vec<Vec<Rat>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| Rat(m[(i, j)].clone())).collect())
        .collect()
}

fn identity_rows(k: usize) -> Vec<Vec<Rat>> {
    rat_rows(&Matrix::identity(k))
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

type BracketTable = BTreeMap<BracketKey, Vec<(usize, Rat)>>;

type BracketEntry<'a> = (usize, usize, &'a [(usize, i64)]);

fn brackets(entries: &[BracketEntry]) -> BracketTable {
    entries
        .iter()
        .map(|(i, j, terms)| {
            (
                BracketKey(*i, *j),
                terms.iter().map(|(k, c)| (*k, Rat(int(*c)))).collect(),
            )
        })
        .collect()
}

fn int_rows(rows: &[&[i64]]) -> SubspaceSpec {
    SubspaceSpec::Rows(
        rows.iter()
            .map(|r| r.iter().map(|c| Rat(int(*c))).collect())
            .collect(),
    )
}

/// Round sphere `SO(3)` with the bi-invariant metric.
pub fn build_so3() -> SpaceDocument {
    SpaceDocument {
        name: "so3".into(),
        dimension: 3,
        basis: names(&["e1", "e2", "e3"]),
        brackets: brackets(&[
            (0, 1, &[(2, 1)]),
            (0, 2, &[(1, -1)]),
            (1, 2, &[(0, 1)]),
        ]),
        h: SubspaceSpec::empty(),
        m: SubspaceSpec::all(3),
        metric: identity_rows(3),
        declared: DeclaredSpec {
            radical: Some(SubspaceSpec::empty()),
            levi: Some(SubspaceSpec::all(3)),
            go: Some(true),
            ..DeclaredSpec::default()
        },
        provenance: "compact simple group with bi-invariant metric".into(),
    }
}

/// Hyperbolic plane `SL(2)/SO(2)` with the Killing metric scaled by 1/8.
pub fn build_sl2_hyperbolic() -> SpaceDocument {
    SpaceDocument {
        name: "sl2_hyperbolic".into(),
        dimension: 3,
        basis: names(&["h", "e", "f"]),
        brackets: brackets(&[
            (0, 1, &[(1, 2)]),
            (0, 2, &[(2, -2)]),
            (1, 2, &[(0, 1)]),
        ]),
        h: int_rows(&[&[0, 1, -1]]),
        m: int_rows(&[&[1, 0, 0], &[0, 1, 1]]),
        metric: identity_rows(2),
        declared: DeclaredSpec {
            radical: Some(SubspaceSpec::empty()),
            levi: Some(SubspaceSpec::all(3)),
            go: Some(true),
            ..DeclaredSpec::default()
        },
        provenance: "symmetric space of noncompact type; metric is the Killing form on m divided by 8".into(),
    }
}

/// Euclidean plane `E(2)/SO(2)`.
pub fn build_e2_plane() -> SpaceDocument {
    SpaceDocument {
        name: "e2_plane".into(),
        dimension: 3,
        basis: names(&["r", "x", "y"]),
        brackets: brackets(&[(0, 1, &[(2, 1)]), (0, 2, &[(1, -1)])]),
        h: SubspaceSpec::Indices(vec![0]),
        m: SubspaceSpec::Indices(vec![1, 2]),
        metric: identity_rows(2),
        declared: DeclaredSpec {
            radical: Some(SubspaceSpec::all(3)),
            nilradical: Some(SubspaceSpec::Indices(vec![1, 2])),
            levi: Some(SubspaceSpec::empty()),
            abelian_ideals: vec![SubspaceSpec::Indices(vec![1, 2])],
            go: Some(true),
            ..DeclaredSpec::default()
        },
        provenance: "flat symmetric space; translations form an abelian ideal".into(),
    }
}

/// Heisenberg group `H_{2n+1}` as `(H_{2n+1} ⋊ SO(2))/SO(2)`, the
/// derivation rotating every pair `(e_{2i-1}, e_{2i})`. Panics if `n == 0`.
pub fn build_heis_go(n: usize) -> SpaceDocument {
    assert!(n >= 1, "build_heis_go needs n >= 1");
    let z = 2 * n;
    let d = 2 * n + 1;
    let mut basis: Vec<String> = (1..=2 * n + 1).map(|i| format!("e{i}")).collect();
    basis.push("D".into());
    let mut br = BTreeMap::new();
    for i in 0..n {
        let (a, b) = (2 * i, 2 * i + 1);
        br.insert(BracketKey(a, b), vec![(z, Rat(int(1)))]);
        br.insert(BracketKey(a, d), vec![(b, Rat(int(-1)))]);
        br.insert(BracketKey(b, d), vec![(a, Rat(int(1)))]);
    }
    SpaceDocument {
        name: format!("heis_go_{n}"),
        dimension: 2 * n + 2,
        basis,
        brackets: br,
        h: SubspaceSpec::Indices(vec![d]),
        m: SubspaceSpec::Indices((0..=z).collect()),
        metric: identity_rows(2 * n + 1),
        declared: DeclaredSpec {
            radical: Some(SubspaceSpec::all(2 * n + 2)),
            nilradical: Some(SubspaceSpec::Indices((0..=z).collect())),
            levi: Some(SubspaceSpec::empty()),
            go: Some(true),
            ..DeclaredSpec::default()
        },
        provenance: format!("Heisenberg nilmanifold of dimension {} with a rotating derivation", 2 * n + 1),
    }
}

/// Riemannian product of two documented spaces. Names of the second factor
/// that collide with the first get a trailing `'`. Structural data absent
/// from a factor is computed where the library can decide it.
pub fn build_direct_sum(a: &SpaceDocument, b: &SpaceDocument) -> Result<SpaceDocument, CorpusError> {
    let sa = a.build()?;
    let sb = b.build()?;
    let (na, nb) = (a.dimension, b.dimension);
    let n = na + nb;
    let mut basis = a.basis.clone();
    for name in &b.basis {
        let mut nm = name.clone();
        while basis.contains(&nm) {
            nm.push('\'');
        }
        basis.push(nm);
    }
    let mut br = a.brackets.clone();
    for (BracketKey(i, j), terms) in &b.brackets {
        br.insert(
            BracketKey(i + na, j + na),
            terms.iter().map(|(k, c)| (k + na, c.clone())).collect(),
        );
    }
    let lift = |va: Vec<Vector>, vb: Vec<Vector>| {
        let mut out: Vec<Vector> = va.iter().map(|v| embed(v, 0, n)).collect();
        out.extend(vb.iter().map(|v| embed(v, na, n)));
        out
    };
    let h = lift(sa.h_basis().to_vec(), sb.h_basis().to_vec());
    let m = lift(sa.m_frame().to_vec(), sb.m_frame().to_vec());
    let mut metric = Matrix::zeros(m.len(), m.len());
    let ka = sa.m_frame().len();
    for i in 0..ka {
        for j in 0..ka {
            metric[(i, j)] = sa.metric()[(i, j)].clone();
        }
    }
    for i in 0..sb.m_frame().len() {
        for j in 0..sb.m_frame().len() {
            metric[(ka + i, ka + j)] = sb.metric()[(i, j)].clone();
        }
    }
    let (ga, gb) = (sa.algebra(), sb.algebra());
    let pair = |x: Option<Subspace>, y: Option<Subspace>| {
        x.zip(y).map(|(x, y)| {
            SubspaceSpec::from_vectors(&lift(x.basis().to_vec(), y.basis().to_vec()))
        })
    };
    let levi_of = |g: &LieAlgebra| -> Option<Subspace> {
        g.declared().levi.clone().or_else(|| {
            let r = g.radical().ok()?;
            if r.is_zero() {
                Some(Subspace::full(g.dim()))
            } else if r.is_full() {
                Some(Subspace::zero(g.dim()))
            } else {
                None
            }
        })
    };
    let mut abelian_ideals = Vec::new();
    for s in &ga.declared().abelian_ideals {
        abelian_ideals.push(SubspaceSpec::from_vectors(&lift(s.basis().to_vec(), vec![])));
    }
    for s in &gb.declared().abelian_ideals {
        abelian_ideals.push(SubspaceSpec::from_vectors(&lift(vec![], s.basis().to_vec())));
    }
    let go = match (a.declared.go, b.declared.go) {
        (Some(x), Some(y)) => Some(x && y),
        (Some(false), None) | (None, Some(false)) => Some(false),
        _ => None,
    };
    let doc = SpaceDocument {
        name: format!("{}_plus_{}", a.name, b.name),
        dimension: n,
        basis,
        brackets: br,
        h: SubspaceSpec::from_vectors(&h),
        m: SubspaceSpec::from_vectors(&m),
        metric: rat_rows(&metric),
        declared: DeclaredSpec {
            radical: pair(ga.radical().ok(), gb.radical().ok()),
            nilradical: pair(ga.nilradical().ok(), gb.nilradical().ok()),
            levi: pair(levi_of(ga), levi_of(gb)),
            center: None,
            direct_sum: vec![
                SubspaceSpec::Indices((0..na).collect()),
                SubspaceSpec::Indices((na..n).collect()),
            ],
            abelian_ideals,
            go,
        },
        provenance: format!("Riemannian product of {} and {}", a.name, b.name),
    };
    doc.build()?;
    Ok(doc)
}

fn embed(v: &Vector, offset: usize, total: usize) -> Vector {
    let mut w = Vector::zeros(total);
    for (i, c) in v.coords().iter().enumerate() {
        w[offset + i] = c.clone();
    }
    w
}

/// The shipped corpus, in a fixed order.
pub fn corpus() -> Vec<SpaceDocument> {
    let so3 = build_so3();
    let e2 = build_e2_plane();
    vec![
        so3.clone(),
        build_sl2_hyperbolic(),
        e2.clone(),
        build_heis_go(1),
        build_heis_go(2),
        build_direct_sum(&so3, &so3).expect("so3 + so3 is valid"),
        build_direct_sum(&e2, &so3).expect("e2 + so3 is valid"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builder_validates() {
        for doc in corpus() {
            let s = doc.build().unwrap_or_else(|e| panic!("{}: {e}", doc.name));
            assert_eq!(s.dim(), doc.dimension);
        }
    }

    #[test]
    fn builder_shapes() {
        let e2 = build_e2_plane().build().unwrap();
        assert_eq!(e2.algebra().declared().abelian_ideals[0].dim(), 2);
        let h = build_heis_go(1);
        assert_eq!(h.dimension, 4);
        assert_eq!(h.basis, names(&["e1", "e2", "e3", "D"]));
        let s = h.build().unwrap();
        assert_eq!(s.m(), &Subspace::coordinate(4, &[0, 1, 2]));
        assert_eq!(
            s.algebra().center_of_nilradical().unwrap(),
            Subspace::coordinate(4, &[2])
        );
        let sum = build_direct_sum(&build_so3(), &build_so3()).unwrap();
        assert_eq!(sum.dimension, 6);
        assert_eq!(sum.declared.direct_sum.len(), 2);
        assert_eq!(sum.basis[3], "e1'");
        let s = sum.build().unwrap();
        assert_eq!(s.algebra().declared().direct_sum.len(), 2);
    }

    #[test]
    fn round_trip_is_byte_stable() {
        for doc in corpus() {
            let text = doc.to_json();
            let back = SpaceDocument::from_json(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn parse_errors_are_positioned() {
        let text = build_so3().to_json().replace("\"-1\"", "\"3/0\"");
        match SpaceDocument::from_json(&text) {
            Err(CorpusError::Parse { line, col, message }) => {
                assert!(line > 1 && col > 0);
                assert!(message.contains("zero denominator"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_declarations_rejected() {
        let mut doc = build_e2_plane();
        doc.declared.nilradical = Some(SubspaceSpec::Indices(vec![0]));
        match doc.build() {
            Err(CorpusError::Validation { component, .. }) => assert_eq!(component, "nilradical"),
            other => panic!("unexpected {other:?}"),
        }
        let mut doc = build_e2_plane();
        doc.metric[0][0] = Rat(int(2));
        match doc.build() {
            Err(CorpusError::Validation { component, .. }) => assert_eq!(component, "metric"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
