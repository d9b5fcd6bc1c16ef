//! Reductive homogeneous spaces `(G/H, g)` given by `𝔤 = 𝔥 ⊕ 𝔪` and an
//! `Ad(H)`-invariant inner product on `𝔪`, with the constant-length and
//! geodesic-orbit decision procedures.

use nalgebra::DMatrix;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{LieAlgebra, LieError};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::scalar::{format_scalar, frac, int, random_nonzero_rational, to_f64, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("isotropy is not a subalgebra")]
    IsotropyNotSubalgebra,
    #[error("isotropy and complement do not span the algebra as a direct sum")]
    NotComplementary,
    #[error("[h, m] is not contained in m")]
    NotReductive,
    #[error("metric must be {expected}x{expected}, found {rows}x{cols}")]
    MetricShape { expected: usize, rows: usize, cols: usize },
    #[error("metric is not symmetric positive definite")]
    MetricNotPositiveDefinite,
    #[error("metric is not invariant: isotropy {z}, frame vectors {x}, {y}; residual {residual}")]
    MetricNotInvariant { z: usize, x: usize, y: usize, residual: Scalar },
    #[error("isotropy contains the nonzero ideal {0:?}")]
    IneffectiveAction(Vec<Vector>),
    #[error("certificate needs a declared geodesic-orbit flag")]
    GoStatusUnknown,
    #[error("expected a vector of dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Exponential parameter of one factor of a group word.
#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Exact(Scalar),
    Float(f64),
}

impl Param {
    pub fn to_f64(&self) -> f64 {
        match self {
            Param::Exact(q) => to_f64(q),
            Param::Float(x) => *x,
        }
    }
}

impl std::fmt::Display for Param {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Param::Exact(q) => write!(f, "{q}"),
            Param::Float(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Param::Exact(q) => s.serialize_str(&format_scalar(q)),
            Param::Float(x) => s.serialize_f64(*x),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Factor {
    pub direction: Vector,
    pub t: Param,
}

/// The group element `exp(t_1 Z_1) exp(t_2 Z_2) ⋯`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct GroupWord(pub Vec<Factor>);

impl GroupWord {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn single(direction: Vector, t: Param) -> Self {
        Self(vec![Factor { direction, t }])
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.0.iter().all(|f| matches!(f.t, Param::Exact(_)))
    }

    /// The word `w · self`.
    pub fn prepend(&self, w: &GroupWord) -> GroupWord {
        let mut out = w.0.clone();
        out.extend(self.0.iter().cloned());
        GroupWord(out)
    }

    /// `(Z_1,t_1)(Z_2,t_2)…` with directions in basis names; `e` for the
    /// identity.
    pub fn render(&self, alg: &LieAlgebra) -> String {
        if self.0.is_empty() {
            return "e".into();
        }
        self.0
            .iter()
            .map(|f| format!("({},{})", alg.render(&f.direction), f.t))
            .collect()
    }
}

/// A value computed either exactly or in floating point.
#[derive(Clone, Debug, PartialEq)]
pub enum Evaluated {
    Exact(Scalar),
    Approx(f64),
}

impl Evaluated {
    pub fn to_f64(&self) -> f64 {
        match self {
            Evaluated::Exact(q) => to_f64(q),
            Evaluated::Approx(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Evaluated::Exact(_))
    }

    /// Exact inequality when both sides are exact; otherwise
    /// `|a − b| > tol · max(1, |a|, |b|)`.
    pub fn differs(&self, other: &Evaluated, tol: f64) -> bool {
        match (self, other) {
            (Evaluated::Exact(a), Evaluated::Exact(b)) => a != b,
            _ => {
                let (a, b) = (self.to_f64(), other.to_f64());
                let scale = 1f64.max(a.abs()).max(b.abs());
                let close = (a - b).abs() <= tol * scale;
                !close
            }
        }
    }

    pub fn add(&self, other: &Evaluated) -> Evaluated {
        match (self, other) {
            (Evaluated::Exact(a), Evaluated::Exact(b)) => Evaluated::Exact(a + b),
            _ => Evaluated::Approx(self.to_f64() + other.to_f64()),
        }
    }
}

impl std::fmt::Display for Evaluated {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Evaluated::Exact(q) => write!(f, "{q}"),
            Evaluated::Approx(x) => write!(f, "{x:.12e}"),
        }
    }
}

impl Serialize for Evaluated {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Evaluated::Exact(q) => s.serialize_str(&format_scalar(q)),
            Evaluated::Approx(x) => s.serialize_f64(*x),
        }
    }
}

/// `Ad(a⁻¹)` for a group word, exact when possible.
#[derive(Clone, Debug)]
pub enum AdAction {
    Exact(Matrix),
    Approx(DMatrix<f64>),
}

impl AdAction {
    pub fn apply(&self, x: &Vector) -> Translated {
        match self {
            AdAction::Exact(m) => Translated::Exact(m.apply(x)),
            AdAction::Approx(m) => {
                let v = nalgebra::DVector::from_vec(x.to_f64());
                Translated::Approx((m * v).iter().copied().collect())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Translated {
    Exact(Vector),
    Approx(Vec<f64>),
}

impl Translated {
    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            Translated::Exact(v) => v.to_f64(),
            Translated::Approx(v) => v.clone(),
        }
    }
}

/// Why a constant-length claim holds without sampling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    AbelianIdeal,
    CenterNilradical,
    Central,
}

impl std::fmt::Display for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Certificate::AbelianIdeal => "AbelianIdeal",
            Certificate::CenterNilradical => "CenterNilradical",
            Certificate::Central => "Central",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Word { word: GroupWord },
    Infinitesimal { direction: Vector, order: usize },
    TangentVector { v: Vector },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    CertifiedTrue {
        certificate: Certificate,
    },
    RefutedAt {
        witness: Witness,
        lhs: Evaluated,
        rhs: Evaluated,
    },
    UndecidedPassedSamples {
        n_samples: usize,
        order: usize,
        tolerance: f64,
    },
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::RefutedAt { .. })
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::CertifiedTrue { .. })
    }

    /// Short human-readable rendering, e.g. `RefutedAt word (e2,1): F=2 vs 1`.
    pub fn render(&self, alg: &LieAlgebra) -> String {
        match self {
            Verdict::CertifiedTrue { certificate } => format!("CertifiedTrue ({certificate})"),
            Verdict::RefutedAt { witness, lhs, rhs } => {
                let w = match witness {
                    Witness::Word { word } => format!("word {}", word.render(alg)),
                    Witness::Infinitesimal { direction, order } => format!(
                        "infinitesimal direction {} order {order}",
                        alg.render(direction)
                    ),
                    Witness::TangentVector { v } => format!("tangent vector {}", alg.render(v)),
                };
                format!("RefutedAt {w}: F={lhs} vs {rhs}")
            }
            Verdict::UndecidedPassedSamples {
                n_samples,
                order,
                tolerance,
            } => format!(
                "UndecidedPassedSamples (samples={n_samples}, order={order}, tol={tolerance:e})"
            ),
        }
    }
}

/// `Σ c·g(U, V) − constant`, a function on `M` built from Killing fields.
#[derive(Clone, Debug, PartialEq)]
pub struct Form {
    pub terms: Vec<(Scalar, Vector, Vector)>,
    pub constant: Scalar,
}

impl Form {
    pub fn inner(u: &Vector, v: &Vector) -> Self {
        Self {
            terms: vec![(int(1), u.clone(), v.clone())],
            constant: Scalar::zero(),
        }
    }

    pub fn plus(mut self, c: Scalar, u: &Vector, v: &Vector) -> Self {
        self.terms.push((c, u.clone(), v.clone()));
        self
    }

    pub fn minus_constant(mut self, c: Scalar) -> Self {
        self.constant = c;
        self
    }
}

/// Sampling parameters shared by every "on M" check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SamplingConfig {
    pub samples: usize,
    pub order: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        Self {
            samples: 200,
            order: 6,
            seed: 0,
            tol: 1e-9,
        }
    }
}

const TAYLOR_REPLAY: [(i64, i64); 6] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)];
const RANDOM_TAYLOR_DIRECTIONS: usize = 8;
const MAX_WORD_LEN: usize = 3;
const RATIONAL_BOUND: i64 = 9;

/// Stream tags keep the RNG draws of different procedures independent.
mod stream {
    pub const TAYLOR: u64 = 1;
    pub const WORDS: u64 = 2;
    pub const GO: u64 = 3;
    pub const ON_M: u64 = 4;
}

pub fn rng_for(seed: u64, tag: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((tag << 40) ^ index);
    rng
}

#[derive(Clone, Debug)]
pub struct ReductiveSpace {
    algebra: LieAlgebra,
    h_basis: Vec<Vector>,
    m_frame: Vec<Vector>,
    h: Subspace,
    m: Subspace,
    metric: Matrix,
    declared_go: Option<bool>,
    /// Rows map a vector of `𝔤` to its `𝔪`-frame coordinates along `𝔥`.
    to_frame: Matrix,
    /// `⟨proj_m X, proj_m Y⟩ = Xᵀ G Y`.
    gram: Matrix,
    gram_f64: DMatrix<f64>,
}

impl ReductiveSpace {
    /// Validates `𝔤 = 𝔥 ⊕ 𝔪` with the metric given in the coordinates of
    /// `m_frame`.
    pub fn new(
        algebra: LieAlgebra,
        h_basis: Vec<Vector>,
        m_frame: Vec<Vector>,
        metric: Matrix,
        declared_go: Option<bool>,
    ) -> Result<Self, SpaceError> {
        let n = algebra.dim();
        for v in h_basis.iter().chain(&m_frame) {
            if v.len() != n {
                return Err(SpaceError::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
        }
        let h = Subspace::span(n, &h_basis);
        let m = Subspace::span(n, &m_frame);
        if h.dim() != h_basis.len() || m.dim() != m_frame.len() {
            return Err(SpaceError::NotComplementary);
        }
        if !algebra.is_subalgebra(&h) {
            return Err(SpaceError::IsotropyNotSubalgebra);
        }
        if h.dim() + m.dim() != n || !h.is_direct_sum_with(&m) {
            return Err(SpaceError::NotComplementary);
        }
        if !m.contains_subspace(&algebra.bracket_spaces(&h, &m)) {
            return Err(SpaceError::NotReductive);
        }
        let k = m.dim();
        if metric.rows() != k || metric.cols() != k {
            return Err(SpaceError::MetricShape {
                expected: k,
                rows: metric.rows(),
                cols: metric.cols(),
            });
        }
        if !metric.is_positive_definite() {
            return Err(SpaceError::MetricNotPositiveDefinite);
        }
        let mut cols = h_basis.clone();
        cols.extend(m_frame.iter().cloned());
        let inv = Matrix::from_columns(n, &cols)
            .inverse()
            .ok_or(SpaceError::NotComplementary)?;
        let frame_rows: Vec<Vector> = (h.dim()..n).map(|i| inv.row(i)).collect();
        let to_frame = Matrix::from_row_vectors(n, &frame_rows);
        let gram = &(&to_frame.transpose() * &metric) * &to_frame;
        let ideal = algebra.largest_ideal_in(&h);
        if !ideal.is_zero() {
            return Err(SpaceError::IneffectiveAction(ideal.basis().to_vec()));
        }
        let space = Self {
            gram_f64: gram.to_f64(),
            algebra,
            h_basis,
            m_frame,
            h,
            m,
            metric,
            declared_go,
            to_frame,
            gram,
        };
        space.check_invariance()?;
        Ok(space)
    }

    fn check_invariance(&self) -> Result<(), SpaceError> {
        for (zi, z) in self.h_basis.iter().enumerate() {
            for (xi, x) in self.m_frame.iter().enumerate() {
                for (yi, y) in self.m_frame.iter().enumerate().skip(xi) {
                    let zx = self.algebra.bracket(z, x);
                    let zy = self.algebra.bracket(z, y);
                    let residual = &self.inner(&zx, y) + &self.inner(x, &zy);
                    if !residual.is_zero() {
                        return Err(SpaceError::MetricNotInvariant {
                            z: zi,
                            x: xi,
                            y: yi,
                            residual,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn h(&self) -> &Subspace {
        &self.h
    }

    pub fn m(&self) -> &Subspace {
        &self.m
    }

    pub fn h_basis(&self) -> &[Vector] {
        &self.h_basis
    }

    pub fn m_frame(&self) -> &[Vector] {
        &self.m_frame
    }

    pub fn metric(&self) -> &Matrix {
        &self.metric
    }

    pub fn declared_go(&self) -> Option<bool> {
        self.declared_go
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `proj_m X` along `𝔥`.
    pub fn project(&self, x: &Vector) -> Vector {
        Vector::combination(
            self.dim(),
            self.to_frame.apply(x).coords().iter().zip(&self.m_frame),
        )
    }

    /// `⟨proj_m X, proj_m Y⟩` at the base point.
    pub fn inner(&self, x: &Vector, y: &Vector) -> Scalar {
        self.gram.bilinear(x, y)
    }

    fn inner_translated(&self, x: &Translated, y: &Translated) -> Evaluated {
        match (x, y) {
            (Translated::Exact(a), Translated::Exact(b)) => Evaluated::Exact(self.inner(a, b)),
            _ => {
                let a = nalgebra::DVector::from_vec(x.to_f64());
                let b = nalgebra::DVector::from_vec(y.to_f64());
                Evaluated::Approx(a.dot(&(&self.gram_f64 * b)))
            }
        }
    }

    /// `Ad(a⁻¹)` for `a = exp(t_1 Z_1)⋯exp(t_k Z_k)`: the factor
    /// `exp(−t_1 ad Z_1)` acts first. Exact when every parameter is exact and
    /// every `ad Z_i` is nilpotent.
    pub fn ad_inverse(&self, word: &GroupWord) -> AdAction {
        let n = self.dim();
        let exact: Option<Vec<Matrix>> = word
            .0
            .iter()
            .map(|f| match &f.t {
                Param::Exact(t) => {
                    let a = self.algebra.ad(&f.direction).scale(&-t);
                    nilpotent_exp(&a)
                }
                Param::Float(_) => None,
            })
            .collect();
        if let Some(factors) = exact {
            let mut acc = Matrix::identity(n);
            for f in factors {
                acc = &f * &acc;
            }
            return AdAction::Exact(acc);
        }
        let mut acc = DMatrix::<f64>::identity(n, n);
        for f in &word.0 {
            let a = self.algebra.ad(&f.direction).to_f64() * (-f.t.to_f64());
            acc = a.exp() * acc;
        }
        AdAction::Approx(acc)
    }

    /// `Ad(a⁻¹) X`.
    pub fn translate(&self, word: &GroupWord, x: &Vector) -> Translated {
        self.ad_inverse(word).apply(x)
    }

    /// `g_{aH}(X̃, Ỹ) = ⟨proj_m Ad(a⁻¹)X, proj_m Ad(a⁻¹)Y⟩`.
    pub fn metric_at(&self, word: &GroupWord, x: &Vector, y: &Vector) -> Evaluated {
        let act = self.ad_inverse(word);
        self.metric_with(&act, x, y)
    }

    pub fn metric_with(&self, act: &AdAction, x: &Vector, y: &Vector) -> Evaluated {
        self.inner_translated(&act.apply(x), &act.apply(y))
    }

    /// `k`-th derivative at `t = 0` of `|proj_m exp(t ad Z) X|²`.
    pub fn taylor_condition(&self, x: &Vector, z: &Vector, k: usize) -> Scalar {
        let l = self.algebra.ad(z);
        let mut powers = vec![x.clone()];
        for _ in 0..k {
            let next = l.apply(powers.last().unwrap());
            powers.push(next);
        }
        let mut total = Scalar::zero();
        let mut binom = int(1);
        for j in 0..=k {
            total += &binom * self.inner(&powers[j], &powers[k - j]);
            binom = binom * int((k - j) as i64) / int(j as i64 + 1);
        }
        total
    }

    /// Structural reason for `X` to have constant length, if one applies.
    pub fn certificate_constant_length(
        &self,
        x: &Vector,
    ) -> Result<Option<Certificate>, SpaceError> {
        let alg = &self.algebra;
        let in_abelian = alg.declared().abelian_ideals.iter().any(|a| a.contains(x));
        let in_cn = alg
            .center_of_nilradical()
            .map(|c| c.contains(x))
            .unwrap_or(false);
        match self.declared_go {
            Some(true) if in_abelian => return Ok(Some(Certificate::AbelianIdeal)),
            Some(true) if in_cn => return Ok(Some(Certificate::CenterNilradical)),
            _ => {}
        }
        if alg.center().contains(x) {
            return Ok(Some(Certificate::Central));
        }
        if self.declared_go.is_none() && (in_abelian || in_cn) {
            return Err(SpaceError::GoStatusUnknown);
        }
        Ok(None)
    }

    fn random_direction(&self, rng: &mut ChaCha8Rng, space: &Subspace) -> Vector {
        loop {
            let coeffs: Vec<Scalar> = space
                .basis()
                .iter()
                .map(|_| frac(rng.random_range(-RATIONAL_BOUND..=RATIONAL_BOUND), RATIONAL_BOUND))
                .collect();
            let v = Vector::combination(self.dim(), coeffs.iter().zip(space.basis()));
            if !v.is_zero() {
                return v;
            }
        }
    }

    /// Exact word with nilpotent directions drawn from `nil`.
    fn exact_word(&self, rng: &mut ChaCha8Rng, nil: &Subspace) -> GroupWord {
        let len = rng.random_range(1..=MAX_WORD_LEN);
        GroupWord(
            (0..len)
                .map(|_| Factor {
                    direction: self.random_direction(rng, nil),
                    t: Param::Exact(random_nonzero_rational(rng, RATIONAL_BOUND)),
                })
                .collect(),
        )
    }

    fn float_word(&self, rng: &mut ChaCha8Rng) -> GroupWord {
        let full = Subspace::full(self.dim());
        let len = rng.random_range(1..=MAX_WORD_LEN);
        GroupWord(
            (0..len)
                .map(|_| Factor {
                    direction: self.random_direction(rng, &full),
                    t: Param::Float(rng.random_range(-2.0..=2.0)),
                })
                .collect(),
        )
    }

    /// Sample word number `index` of the shared schedule: even indices are
    /// exact nilpotent words when a nonzero nilradical is known, the rest
    /// are floating words.
    pub fn sample_word(&self, seed: u64, tag: u64, index: usize) -> GroupWord {
        let mut rng = rng_for(seed, tag, index as u64);
        match self.algebra.nilradical() {
            Ok(nil) if !nil.is_zero() && index.is_multiple_of(2) => self.exact_word(&mut rng, &nil),
            _ => self.float_word(&mut rng),
        }
    }

    /// Decides whether `X` has constant length on `M`: certificate, then
    /// exact Taylor conditions, then sampled group words.
    pub fn check_constant_length(
        &self,
        x: &Vector,
        cfg: &SamplingConfig,
    ) -> Result<Verdict, SpaceError> {
        self.check_vector(x)?;
        if let Some(certificate) = self.certificate_constant_length(x)? {
            return Ok(Verdict::CertifiedTrue { certificate });
        }
        Ok(self.sampled_constant_length(x, cfg))
    }

    /// The certificate-free part of [`check_constant_length`]: exact Taylor
    /// conditions, then sampled group words.
    ///
    /// [`check_constant_length`]: Self::check_constant_length
    pub fn sampled_constant_length(&self, x: &Vector, cfg: &SamplingConfig) -> Verdict {
        if let Some(v) = self.taylor_refutation(x, cfg) {
            return v;
        }
        let base = Evaluated::Exact(self.inner(x, x));
        for idx in 0..cfg.samples {
            let word = self.sample_word(cfg.seed, stream::WORDS, idx);
            let value = self.metric_at(&word, x, x);
            if value.differs(&base, cfg.tol) {
                return Verdict::RefutedAt {
                    witness: Witness::Word { word },
                    lhs: value,
                    rhs: base,
                };
            }
        }
        Verdict::UndecidedPassedSamples {
            n_samples: cfg.samples,
            order: cfg.order,
            tolerance: cfg.tol,
        }
    }

    fn check_vector(&self, x: &Vector) -> Result<(), SpaceError> {
        if x.len() != self.dim() {
            return Err(SpaceError::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        Ok(())
    }

    fn taylor_refutation(&self, x: &Vector, cfg: &SamplingConfig) -> Option<Verdict> {
        let n = self.dim();
        let full = Subspace::full(n);
        let mut rng = rng_for(cfg.seed, stream::TAYLOR, 0);
        let mut directions = self.algebra.basis();
        for _ in 0..RANDOM_TAYLOR_DIRECTIONS {
            directions.push(self.random_direction(&mut rng, &full));
        }
        for z in directions {
            for k in 1..=cfg.order {
                let value = self.taylor_condition(x, &z, k);
                if !value.is_zero() {
                    return Some(self.replay_infinitesimal(x, &z, k, value, cfg.tol));
                }
            }
        }
        None
    }

    /// Turns a nonzero Taylor coefficient into a group-word witness when
    /// one of a few one-factor words already shows the change in length.
    fn replay_infinitesimal(
        &self,
        x: &Vector,
        z: &Vector,
        k: usize,
        value: Scalar,
        tol: f64,
    ) -> Verdict {
        let base = Evaluated::Exact(self.inner(x, x));
        let nilpotent = self.algebra.is_ad_nilpotent(z);
        for (p, q) in TAYLOR_REPLAY {
            let t = if nilpotent {
                Param::Exact(frac(p, q))
            } else {
                Param::Float(p as f64 / q as f64)
            };
            let word = GroupWord::single(z.clone(), t);
            let value = self.metric_at(&word, x, x);
            if value.differs(&base, tol) {
                return Verdict::RefutedAt {
                    witness: Witness::Word { word },
                    lhs: value,
                    rhs: base,
                };
            }
        }
        Verdict::RefutedAt {
            witness: Witness::Infinitesimal {
                direction: z.clone(),
                order: k,
            },
            lhs: Evaluated::Exact(value),
            rhs: Evaluated::Exact(Scalar::zero()),
        }
    }

    /// Tangent vectors probed by the geodesic-orbit check.
    fn go_probe(&self, cfg: &SamplingConfig, index: usize) -> Vector {
        let k = self.m_frame.len();
        if index < k {
            return self.m_frame[index].clone();
        }
        let pairs = k * k.saturating_sub(1) / 2;
        if index < k + pairs {
            let mut r = index - k;
            for i in 0..k {
                let row = k - i - 1;
                if r < row {
                    return &self.m_frame[i] + &self.m_frame[i + 1 + r];
                }
                r -= row;
            }
        }
        let mut rng = rng_for(cfg.seed, stream::GO, index as u64);
        self.random_direction(&mut rng, &self.m)
    }

    /// For `v ∈ 𝔪`, the exact geodesic-orbit test: some `Z ∈ 𝔥` with
    /// `⟨[Y, v+Z]_m, v⟩ = 0` for every basis vector `Y`. Returns the
    /// solution or the infeasibility value.
    pub fn go_vector_solution(&self, v: &Vector) -> Result<Vector, Scalar> {
        let n = self.dim();
        let rows: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let y = self.algebra.e(i);
                self.h_basis
                    .iter()
                    .map(|h| self.inner(&self.algebra.bracket(&y, h), v))
                    .collect()
            })
            .collect();
        let b = Vector::new(
            (0..n)
                .map(|i| -self.inner(&self.algebra.bracket(&self.algebra.e(i), v), v))
                .collect(),
        );
        let a = if self.h_basis.is_empty() {
            Matrix::zeros(n, 0)
        } else {
            Matrix::from_rows(rows)
        };
        match a.solve(&b) {
            Some(c) => Ok(Vector::combination(n, c.coords().iter().zip(&self.h_basis))),
            None => Err(a
                .infeasibility_certificate(&b)
                .map(|(_, r)| r)
                .unwrap_or_else(Scalar::zero)),
        }
    }

    /// Geodesic-orbit consistency over basis vectors, pairwise sums and
    /// `cfg.samples` random vectors of `𝔪`.
    pub fn check_go(&self, cfg: &SamplingConfig) -> Verdict {
        let k = self.m_frame.len();
        let total = k + k * k.saturating_sub(1) / 2 + cfg.samples;
        for idx in 0..total {
            let v = self.go_probe(cfg, idx);
            if let Err(residual) = self.go_vector_solution(&v) {
                return Verdict::RefutedAt {
                    witness: Witness::TangentVector { v },
                    lhs: Evaluated::Exact(residual),
                    rhs: Evaluated::Exact(Scalar::zero()),
                };
            }
        }
        Verdict::UndecidedPassedSamples {
            n_samples: total,
            order: 0,
            tolerance: 0.0,
        }
    }

    /// Checks `lhs(a) = rhs(a)` at the identity and at the sampled words.
    pub fn check_on_m<F>(&self, cfg: &SamplingConfig, tag: u64, f: F) -> Verdict
    where
        F: Fn(&AdAction) -> (Evaluated, Evaluated),
    {
        let id = GroupWord::identity();
        let mut words = vec![id];
        words.extend((0..cfg.samples).map(|i| self.sample_word(cfg.seed, stream::ON_M ^ (tag << 8), i)));
        for word in words {
            let act = self.ad_inverse(&word);
            let (lhs, rhs) = f(&act);
            if lhs.differs(&rhs, cfg.tol) {
                return Verdict::RefutedAt {
                    witness: Witness::Word { word },
                    lhs,
                    rhs,
                };
            }
        }
        Verdict::UndecidedPassedSamples {
            n_samples: cfg.samples + 1,
            order: 0,
            tolerance: cfg.tol,
        }
    }

    /// Value of `Σ c·g(Ũ, Ṽ) − constant` at the point `a·H`.
    pub fn eval_form(&self, act: &AdAction, form: &Form) -> Evaluated {
        let mut acc = Evaluated::Exact(-form.constant.clone());
        for (c, u, v) in &form.terms {
            let val = match self.metric_with(act, u, v) {
                Evaluated::Exact(q) => Evaluated::Exact(c * q),
                Evaluated::Approx(x) => Evaluated::Approx(to_f64(c) * x),
            };
            acc = acc.add(&val);
        }
        acc
    }

    /// Checks that every form vanishes at the identity and at the sampled
    /// words. Returns the verdict and, on refutation, the index of the
    /// failing form.
    pub fn check_forms_on_m(
        &self,
        forms: &[Form],
        cfg: &SamplingConfig,
        tag: u64,
    ) -> (Verdict, Option<usize>) {
        let mut words = vec![GroupWord::identity()];
        words.extend(
            (0..cfg.samples).map(|i| self.sample_word(cfg.seed, stream::ON_M ^ (tag << 8), i)),
        );
        let zero = Evaluated::Exact(Scalar::zero());
        for word in words {
            let act = self.ad_inverse(&word);
            for (idx, form) in forms.iter().enumerate() {
                let value = self.eval_form(&act, form);
                if value.differs(&zero, cfg.tol) {
                    return (
                        Verdict::RefutedAt {
                            witness: Witness::Word { word },
                            lhs: value,
                            rhs: zero,
                        },
                        Some(idx),
                    );
                }
            }
        }
        (
            Verdict::UndecidedPassedSamples {
                n_samples: cfg.samples + 1,
                order: 0,
                tolerance: cfg.tol,
            },
            None,
        )
    }

    /// `g(Ũ, Ṽ) = 0` at every sampled point of `M`.
    pub fn orthogonal_on_m(&self, u: &Vector, v: &Vector, cfg: &SamplingConfig) -> Verdict {
        self.check_on_m(cfg, 0, |act| {
            (self.metric_with(act, u, v), Evaluated::Exact(Scalar::zero()))
        })
    }

    /// `g(Ũ, Ũ) = g(Ṽ, Ṽ)` at every sampled point of `M`.
    pub fn equal_length_on_m(&self, u: &Vector, v: &Vector, cfg: &SamplingConfig) -> Verdict {
        self.check_on_m(cfg, 1, |act| {
            (self.metric_with(act, u, u), self.metric_with(act, v, v))
        })
    }

    /// Floating-point `|proj_m X|²` at a sampled point, for reporting.
    pub fn length_sq_at(&self, word: &GroupWord, x: &Vector) -> Evaluated {
        self.metric_at(word, x, x)
    }

    /// Largest absolute residual `|F(a) − F(e)|` over the sampled words,
    /// in floating point.
    pub fn max_length_residual(&self, x: &Vector, cfg: &SamplingConfig) -> f64 {
        let base = to_f64(&self.inner(x, x));
        (0..cfg.samples)
            .map(|i| {
                let w = self.sample_word(cfg.seed, stream::WORDS, i);
                (self.metric_at(&w, x, x).to_f64() - base).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// `exp(A)` as a finite series when `A` is nilpotent.
pub fn nilpotent_exp(a: &Matrix) -> Option<Matrix> {
    let n = a.rows();
    if !a.pow(n as u32).is_zero() {
        return None;
    }
    let mut acc = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for j in 1..n.max(1) {
        term = (&term * a).scale(&frac(1, j as i64));
        if term.is_zero() {
            break;
        }
        acc = &acc + &term;
    }
    Some(acc)
}
