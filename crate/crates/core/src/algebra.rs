//! Finite-dimensional real Lie algebras given by rational structure
//! constants, and the structural computations built on them: ideals,
//! derived and lower central series, the radical (Cartan criterion),
//! compute-or-verify nilradicals and verified Levi factors.

use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{Matrix, Subspace, Vector};
use crate::scalar::{int, Scalar};
use crate::spectral::min_poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("structure constant index out of range: [{i}, {j}]")]
    IndexOutOfRange { i: usize, j: usize },
    #[error("antisymmetry fails for [e{i}, e{j}]")]
    AntisymmetryViolation { i: usize, j: usize },
    #[error("Jacobi identity fails for (e{i}, e{j}, e{k}); residual {residual}")]
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
        residual: Vector,
    },
    #[error("subspace is not a subalgebra")]
    NotASubalgebra,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("radical is not nilpotent and no nilradical was declared")]
    NilradicalUndecided,
    #[error("declared nilradical rejected: {0}")]
    DeclaredNilradicalInvalid(String),
    #[error("declared {component} rejected: {reason}")]
    DeclaredInvalid { component: String, reason: String },
    #[error("Levi factor and radical are not complementary")]
    NotComplementary,
    #[error("Killing form is degenerate on the Levi factor")]
    KillingDegenerateOnLevi,
    #[error("no Levi factor declared")]
    MissingLevi,
}

/// Structural data shipped with an algebra. Every entry is verified when the
/// algebra is constructed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Declared {
    pub radical: Option<Subspace>,
    pub nilradical: Option<Subspace>,
    pub levi: Option<Subspace>,
    pub center: Option<Subspace>,
    pub direct_sum: Vec<Subspace>,
    pub abelian_ideals: Vec<Subspace>,
}

/// One simple (over ℚ-rational splitting) ideal of a Levi factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleIdeal {
    pub space: Subspace,
    pub compact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviReport {
    pub levi: Subspace,
    pub simple_ideals: Vec<SimpleIdeal>,
    pub compact: Subspace,
    pub noncompact: Subspace,
}

#[derive(Debug)]
pub struct LieAlgebra {
    dim: usize,
    names: Vec<String>,
    /// `table[i * dim + j] = [e_i, e_j]`
    table: Vec<Vector>,
    ad_basis: Vec<Matrix>,
    declared: Declared,
    killing: OnceLock<Matrix>,
    radical: OnceLock<Result<Subspace, LieError>>,
    nilradical: OnceLock<Result<Subspace, LieError>>,
}

impl Clone for LieAlgebra {
    fn clone(&self) -> Self {
        Self {
            dim: self.dim,
            names: self.names.clone(),
            table: self.table.clone(),
            ad_basis: self.ad_basis.clone(),
            declared: self.declared.clone(),
            killing: self.killing.clone(),
            radical: self.radical.clone(),
            nilradical: self.nilradical.clone(),
        }
    }
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.table == other.table && self.declared == other.declared
    }
}

impl LieAlgebra {
    /// Builds an algebra from the full table `table[i][j] = [e_i, e_j]`,
    /// checking antisymmetry and the Jacobi identity exactly.
    pub fn new(
        names: Vec<String>,
        table: Vec<Vec<Vector>>,
        declared: Declared,
    ) -> Result<Self, LieError> {
        let dim = names.len();
        if table.len() != dim {
            return Err(LieError::DimensionMismatch {
                expected: dim,
                found: table.len(),
            });
        }
        let mut flat = Vec::with_capacity(dim * dim);
        for row in table {
            if row.len() != dim {
                return Err(LieError::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            for v in row {
                if v.len() != dim {
                    return Err(LieError::DimensionMismatch {
                        expected: dim,
                        found: v.len(),
                    });
                }
                flat.push(v);
            }
        }
        for i in 0..dim {
            for j in i..dim {
                if flat[i * dim + j] != -&flat[j * dim + i] {
                    return Err(LieError::AntisymmetryViolation { i, j });
                }
            }
        }
        let ad_basis = (0..dim)
            .map(|i| Matrix::from_columns(dim, &flat[i * dim..(i + 1) * dim]))
            .collect();
        let alg = Self {
            dim,
            names,
            table: flat,
            ad_basis,
            declared: Declared::default(),
            killing: OnceLock::new(),
            radical: OnceLock::new(),
            nilradical: OnceLock::new(),
        };
        alg.check_jacobi()?;
        alg.with_declared(declared)
    }

    /// Builds an algebra from brackets `[e_i, e_j] = v` listed once per
    /// unordered pair; the rest of the table follows by antisymmetry.
    pub fn from_brackets(
        names: Vec<String>,
        brackets: &[(usize, usize, Vector)],
        declared: Declared,
    ) -> Result<Self, LieError> {
        let dim = names.len();
        let mut table = vec![vec![Vector::zeros(dim); dim]; dim];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim {
                return Err(LieError::IndexOutOfRange { i, j });
            }
            if v.len() != dim {
                return Err(LieError::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            if i == j {
                if !v.is_zero() {
                    return Err(LieError::AntisymmetryViolation { i, j });
                }
                continue;
            }
            table[i][j] = v.clone();
            table[j][i] = -v;
        }
        Self::new(names, table, declared)
    }

    fn check_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (self.e(i), self.e(j), self.e(k));
                    let a = self.bracket(&ei, &self.bracket(&ej, &ek));
                    let b = self.bracket(&ej, &self.bracket(&ek, &ei));
                    let c = self.bracket(&ek, &self.bracket(&ei, &ej));
                    let residual = &(&a + &b) + &c;
                    if !residual.is_zero() {
                        return Err(LieError::JacobiViolation { i, j, k, residual });
                    }
                }
            }
        }
        Ok(())
    }

    /// Attaches declared structural data after verifying each entry.
    pub fn with_declared(mut self, declared: Declared) -> Result<Self, LieError> {
        self.declared = Declared::default();
        self.nilradical = OnceLock::new();
        let invalid = |component: &str, reason: String| LieError::DeclaredInvalid {
            component: component.to_string(),
            reason,
        };
        let check_dim = |component: &str, s: &Subspace| {
            if s.ambient_dim() == self.dim {
                Ok(())
            } else {
                Err(invalid(component, format!("ambient dimension {}", s.ambient_dim())))
            }
        };
        if let Some(c) = &declared.center {
            check_dim("center", c)?;
            if *c != self.center() {
                return Err(invalid("center", "differs from the computed center".into()));
            }
        }
        if let Some(r) = &declared.radical {
            check_dim("radical", r)?;
            let computed = self.radical()?;
            if *r != computed {
                return Err(invalid("radical", "differs from the computed radical".into()));
            }
        }
        for (idx, a) in declared.abelian_ideals.iter().enumerate() {
            check_dim("abelian_ideals", a)?;
            if !self.is_ideal(a) {
                return Err(invalid("abelian_ideals", format!("entry {idx} is not an ideal")));
            }
            if !self.is_abelian(a) {
                return Err(invalid("abelian_ideals", format!("entry {idx} is not abelian")));
            }
        }
        if !declared.direct_sum.is_empty() {
            let parts = &declared.direct_sum;
            let mut total = Subspace::zero(self.dim);
            let mut dims = 0;
            for (idx, p) in parts.iter().enumerate() {
                check_dim("direct_sum", p)?;
                if !self.is_ideal(p) {
                    return Err(invalid("direct_sum", format!("summand {idx} is not an ideal")));
                }
                for q in &parts[idx + 1..] {
                    if !self.bracket_spaces(p, q).is_zero() {
                        return Err(invalid("direct_sum", "summands do not commute".into()));
                    }
                }
                total = total.sum(p);
                dims += p.dim();
            }
            if !total.is_full() || dims != self.dim {
                return Err(invalid("direct_sum", "summands do not form a direct sum equal to the algebra".into()));
            }
        }
        if let Some(n) = &declared.nilradical {
            check_dim("nilradical", n)?;
            self.verify_nilradical(n)
                .map_err(|e| invalid("nilradical", e.to_string()))?;
        }
        if let Some(s) = &declared.levi {
            check_dim("levi", s)?;
            self.verify_levi(s).map_err(|e| invalid("levi", e.to_string()))?;
        }
        self.declared = declared;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn declared(&self) -> &Declared {
        &self.declared
    }

    /// `i`-th basis vector.
    pub fn e(&self, i: usize) -> Vector {
        Vector::basis(self.dim, i)
    }

    pub fn basis(&self) -> Vec<Vector> {
        (0..self.dim).map(|i| self.e(i)).collect()
    }

    /// `[e_i, e_j]`
    pub fn structure(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim + j]
    }

    /// Lie bracket. Panics on a dimension mismatch; see
    /// [`checked_bracket`](Self::checked_bracket).
    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        assert_eq!(x.len(), self.dim, "bracket: left operand dimension");
        assert_eq!(y.len(), self.dim, "bracket: right operand dimension");
        let mut out = Vector::zeros(self.dim);
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() || i == j {
                    continue;
                }
                out.add_scaled(&(&x[i] * &y[j]), self.structure(i, j));
            }
        }
        out
    }

    pub fn checked_bracket(&self, x: &Vector, y: &Vector) -> Result<Vector, LieError> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(LieError::DimensionMismatch {
                    expected: self.dim,
                    found: v.len(),
                });
            }
        }
        Ok(self.bracket(x, y))
    }

    /// Matrix of `ad(X)`; column `j` holds `[X, e_j]`.
    pub fn ad(&self, x: &Vector) -> Matrix {
        assert_eq!(x.len(), self.dim, "ad: dimension mismatch");
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, c) in x.coords().iter().enumerate() {
            if !c.is_zero() {
                m = &m + &self.ad_basis[i].scale(c);
            }
        }
        m
    }

    pub fn ad_basis(&self, i: usize) -> &Matrix {
        &self.ad_basis[i]
    }

    pub fn is_ad_nilpotent(&self, x: &Vector) -> bool {
        self.ad(x).pow(self.dim as u32).is_zero()
    }

    /// Gram matrix of the Killing form `κ(X, Y) = tr(ad X ad Y)`.
    pub fn killing_form(&self) -> &Matrix {
        self.killing.get_or_init(|| {
            let n = self.dim;
            let mut k = Matrix::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    let t = (&self.ad_basis[i] * &self.ad_basis[j]).trace();
                    k[(i, j)] = t.clone();
                    k[(j, i)] = t;
                }
            }
            k
        })
    }

    pub fn killing(&self, x: &Vector, y: &Vector) -> Scalar {
        self.killing_form().bilinear(x, y)
    }

    pub fn center(&self) -> Subspace {
        self.centralizer_of(&Subspace::full(self.dim))
    }

    pub fn centralizer(&self, x: &Vector) -> Subspace {
        self.ad(x).kernel()
    }

    /// `{Y : [S, Y] = 0}`
    pub fn centralizer_of(&self, s: &Subspace) -> Subspace {
        let mut rows = Vec::new();
        for b in s.basis() {
            rows.extend(self.ad(b).row_vectors());
        }
        Matrix::from_row_vectors(self.dim, &rows).kernel()
    }

    /// `span{[s, t] : s ∈ S, t ∈ T}`
    pub fn bracket_spaces(&self, s: &Subspace, t: &Subspace) -> Subspace {
        let mut out = Vec::new();
        for a in s.basis() {
            for b in t.basis() {
                let c = self.bracket(a, b);
                if !c.is_zero() {
                    out.push(c);
                }
            }
        }
        Subspace::span(self.dim, &out)
    }

    pub fn derived_algebra(&self) -> Subspace {
        let full = Subspace::full(self.dim);
        self.bracket_spaces(&full, &full)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.contains_subspace(&self.bracket_spaces(s, s))
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.contains_subspace(&self.bracket_spaces(&Subspace::full(self.dim), s))
    }

    pub fn is_abelian(&self, s: &Subspace) -> bool {
        self.bracket_spaces(s, s).is_zero()
    }

    /// `S, [S,S], [[S,S],[S,S]], …` until it stabilizes.
    pub fn derived_series(&self, s: &Subspace) -> Result<Vec<Subspace>, LieError> {
        if !self.is_subalgebra(s) {
            return Err(LieError::NotASubalgebra);
        }
        let mut series = vec![s.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.bracket_spaces(last, last);
            if &next == last {
                break;
            }
            let done = next.is_zero();
            series.push(next);
            if done {
                break;
            }
        }
        Ok(series)
    }

    /// `S, [S,S], [S,[S,S]], …` until it stabilizes.
    pub fn lower_central_series(&self, s: &Subspace) -> Result<Vec<Subspace>, LieError> {
        if !self.is_subalgebra(s) {
            return Err(LieError::NotASubalgebra);
        }
        let mut series = vec![s.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.bracket_spaces(s, last);
            if &next == last {
                break;
            }
            let done = next.is_zero();
            series.push(next);
            if done {
                break;
            }
        }
        Ok(series)
    }

    pub fn is_solvable(&self, s: &Subspace) -> Result<bool, LieError> {
        Ok(self.derived_series(s)?.last().unwrap().is_zero())
    }

    pub fn is_nilpotent(&self, s: &Subspace) -> Result<bool, LieError> {
        Ok(self.lower_central_series(s)?.last().unwrap().is_zero())
    }

    /// Nilpotency class: number of nonzero steps after `S` in the lower
    /// central series (0 for abelian). `None` if not nilpotent.
    pub fn nilpotency_class(&self, s: &Subspace) -> Result<Option<usize>, LieError> {
        let series = self.lower_central_series(s)?;
        if !series.last().unwrap().is_zero() {
            return Ok(None);
        }
        Ok(Some(series.iter().filter(|t| !t.is_zero()).count()))
    }

    /// Radical as the Killing-orthogonal of the derived algebra.
    pub fn radical(&self) -> Result<Subspace, LieError> {
        self.radical
            .get_or_init(|| {
                let k = self.killing_form();
                let rows: Vec<Vector> = self
                    .derived_algebra()
                    .basis()
                    .iter()
                    .map(|d| k.apply(d))
                    .collect();
                let r = Matrix::from_row_vectors(self.dim, &rows).kernel();
                if !self.is_ideal(&r) || !self.is_solvable(&r).unwrap_or(false) {
                    return Err(LieError::InternalInconsistency(
                        "Killing-orthogonal of [g,g] is not a solvable ideal".into(),
                    ));
                }
                Ok(r)
            })
            .clone()
    }

    pub fn is_semisimple(&self) -> bool {
        self.radical().is_ok_and(|r| r.is_zero())
    }

    /// Nilradical: the radical itself when it is nilpotent, otherwise the
    /// verified declaration.
    pub fn nilradical(&self) -> Result<Subspace, LieError> {
        self.nilradical
            .get_or_init(|| {
                let r = self.radical()?;
                if self.is_nilpotent(&r)? {
                    return Ok(r);
                }
                match &self.declared.nilradical {
                    Some(n) => {
                        self.verify_nilradical(n)?;
                        Ok(n.clone())
                    }
                    None => Err(LieError::NilradicalUndecided),
                }
            })
            .clone()
    }

    /// Checks a nilradical candidate: nilpotent ideal inside the radical,
    /// containing `[g, r(g)]`, with every complement representative in the
    /// radical having non-nilpotent `ad`. Refutation is sound; acceptance is
    /// exact only when the complement in the radical is at most
    /// one-dimensional.
    pub fn verify_nilradical(&self, n: &Subspace) -> Result<(), LieError> {
        let bad = |s: &str| Err(LieError::DeclaredNilradicalInvalid(s.to_string()));
        if !self.is_ideal(n) {
            return bad("not an ideal");
        }
        if !self.is_nilpotent(n)? {
            return bad("not nilpotent");
        }
        let r = self.radical()?;
        if !r.contains_subspace(n) {
            return bad("not contained in the radical");
        }
        let gr = self.bracket_spaces(&Subspace::full(self.dim), &r);
        if !n.contains_subspace(&gr) {
            return bad("does not contain [g, r(g)]");
        }
        for rep in r.complement_representatives(n) {
            if self.is_ad_nilpotent(&rep) {
                return bad("a complement element of the radical has nilpotent ad");
            }
        }
        Ok(())
    }

    /// Center `C(n(g))` of the nilradical.
    pub fn center_of_nilradical(&self) -> Result<Subspace, LieError> {
        let n = self.nilradical()?;
        Ok(n.intersection(&self.centralizer_of(&n)))
    }

    /// Matrix of `ad(x)` restricted to a subalgebra containing `x`, in the
    /// subalgebra's echelon coordinates.
    pub fn restricted_ad(&self, s: &Subspace, x: &Vector) -> Option<Matrix> {
        s.restrict(&self.ad(x))
    }

    /// Killing form of the subalgebra `s` itself (traces taken on `s`).
    pub fn intrinsic_killing_form(&self, s: &Subspace) -> Option<Matrix> {
        let ads: Vec<Matrix> = s
            .basis()
            .iter()
            .map(|b| self.restricted_ad(s, b))
            .collect::<Option<_>>()?;
        let k = s.dim();
        let mut out = Matrix::zeros(k, k);
        for i in 0..k {
            for j in i..k {
                let t = (&ads[i] * &ads[j]).trace();
                out[(i, j)] = t.clone();
                out[(j, i)] = t;
            }
        }
        Some(out)
    }

    /// Verifies a Levi factor candidate and splits it into compact and
    /// noncompact parts.
    pub fn verify_levi(&self, s: &Subspace) -> Result<LeviReport, LieError> {
        if !self.is_subalgebra(s) {
            return Err(LieError::NotASubalgebra);
        }
        let r = self.radical()?;
        if !s.is_direct_sum_with(&r) || s.dim() + r.dim() != self.dim {
            return Err(LieError::NotComplementary);
        }
        let gram = gram_matrix(self.killing_form(), s);
        if gram.determinant().is_zero() {
            return Err(LieError::KillingDegenerateOnLevi);
        }
        let ideals = self.split_semisimple(s)?;
        let mut compact = Subspace::zero(self.dim);
        let mut noncompact = Subspace::zero(self.dim);
        let mut simple_ideals = Vec::new();
        for space in ideals {
            let kf = self
                .intrinsic_killing_form(&space)
                .ok_or_else(|| LieError::InternalInconsistency("ideal not closed".into()))?;
            let is_compact = kf.scale(&-Scalar::one()).is_positive_definite();
            if is_compact {
                compact = compact.sum(&space);
            } else {
                noncompact = noncompact.sum(&space);
            }
            simple_ideals.push(SimpleIdeal {
                space,
                compact: is_compact,
            });
        }
        Ok(LeviReport {
            levi: s.clone(),
            simple_ideals,
            compact,
            noncompact,
        })
    }

    /// Verified report for the declared Levi factor.
    pub fn levi_report(&self) -> Result<LeviReport, LieError> {
        let s = self.declared.levi.as_ref().ok_or(LieError::MissingLevi)?;
        self.verify_levi(s)
    }

    /// Splits a semisimple subalgebra into ideals via the primary
    /// decomposition of a generic element of its centroid (the commutant
    /// of `ad(s)` inside `End(s)`).
    fn split_semisimple(&self, s: &Subspace) -> Result<Vec<Subspace>, LieError> {
        let k = s.dim();
        if k == 0 {
            return Ok(Vec::new());
        }
        let ads: Vec<Matrix> = s
            .basis()
            .iter()
            .map(|b| self.restricted_ad(s, b))
            .collect::<Option<_>>()
            .ok_or(LieError::NotASubalgebra)?;
        // Unknown T (k×k, row-major index a*k+b); equations (T·A - A·T) = 0.
        let mut rows = Vec::new();
        for a_mat in &ads {
            for i in 0..k {
                for j in 0..k {
                    let mut row = Vector::zeros(k * k);
                    // (T A)_{ij} = Σ_l T_{il} A_{lj}
                    for l in 0..k {
                        row[i * k + l] += &a_mat[(l, j)];
                    }
                    // (A T)_{ij} = Σ_l A_{il} T_{lj}
                    for l in 0..k {
                        row[l * k + j] -= &a_mat[(i, l)];
                    }
                    rows.push(row);
                }
            }
        }
        let centroid = Matrix::from_row_vectors(k * k, &rows).kernel();
        let to_matrix = |v: &Vector| {
            let mut m = Matrix::zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    m[(i, j)] = v[i * k + j].clone();
                }
            }
            m
        };
        let mut best: Vec<Subspace> = vec![Subspace::full(k)];
        for attempt in 0..4i64 {
            let weights: Vec<Scalar> = (0..centroid.dim())
                .map(|c| int(1 + (c as i64 + 1) * (attempt * 3 + 2) % 17))
                .collect();
            let t = to_matrix(&Vector::combination(
                k * k,
                weights.iter().zip(centroid.basis()),
            ));
            let mp = min_poly(&t);
            let parts: Vec<Subspace> = mp
                .factor()
                .into_iter()
                .map(|(f, m)| f.pow(m).eval_matrix(&t).kernel())
                .collect();
            if parts.len() > best.len() {
                best = parts;
            }
            if best.len() == centroid.dim() {
                break;
            }
        }
        let lift = |local: &Subspace| {
            let vs: Vec<Vector> = local
                .basis()
                .iter()
                .map(|c| Vector::combination(self.dim, c.coords().iter().zip(s.basis())))
                .collect();
            Subspace::span(self.dim, &vs)
        };
        let ideals: Vec<Subspace> = best.iter().map(lift).collect();
        for i in &ideals {
            if !self.is_subalgebra(i) || !s.contains_subspace(&self.bracket_spaces(s, i)) {
                return Err(LieError::InternalInconsistency(
                    "centroid component is not an ideal".into(),
                ));
            }
        }
        Ok(ideals)
    }

    /// Smallest ideal of the subalgebra `ambient` that contains `seed`.
    pub fn smallest_ideal_containing(&self, ambient: &Subspace, seed: &Subspace) -> Subspace {
        let mut cur = seed.clone();
        loop {
            let next = cur.sum(&self.bracket_spaces(ambient, &cur));
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Largest ideal of the algebra contained in `s`.
    pub fn largest_ideal_in(&self, s: &Subspace) -> Subspace {
        let mut cur = s.clone();
        loop {
            let ann = Matrix::from_row_vectors(self.dim, cur.annihilator().basis());
            let mut rows = Vec::new();
            for i in 0..self.dim {
                let m = &ann * &self.ad_basis[i];
                rows.extend(m.row_vectors());
            }
            rows.extend(ann.row_vectors());
            let next = Matrix::from_row_vectors(self.dim, &rows).kernel();
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Basis-name rendering of a vector, e.g. `e1 + 2e3` or `(1/2)x - y`.
    pub fn render(&self, v: &Vector) -> String {
        let mut s = String::new();
        for (i, c) in v.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                if mag.is_integer() {
                    s.push_str(&mag.to_string());
                } else {
                    s.push_str(&format!("({mag})"));
                }
            }
            s.push_str(&self.names[i]);
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

/// Gram matrix of a bilinear form restricted to a subspace's basis.
pub fn gram_matrix(form: &Matrix, s: &Subspace) -> Matrix {
    let b = s.basis();
    let mut g = Matrix::zeros(b.len(), b.len());
    for i in 0..b.len() {
        for j in 0..b.len() {
            g[(i, j)] = form.bilinear(&b[i], &b[j]);
        }
    }
    g
}
