//! Spectral analysis of `L = ad(X)`: characteristic and minimal
//! polynomials, the exact pure-imaginary-spectrum test, Fitting and
//! Jordan–Chevalley decompositions, root spaces of `L²` and the complex
//! structure `σ`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::LieAlgebra;
use crate::linalg::{Matrix, Subspace, Vector};
use crate::poly::RationalPolynomial;
use crate::scalar::{int, rational_sqrt, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("the zero polynomial has no spectrum")]
    ZeroPolynomial,
    #[error("beta^2 = {beta_sq} is not the square of a rational")]
    IrrationalBeta { beta_sq: Scalar },
    #[error("root-space factor {factor} is not linear in mu")]
    NonLinearFactor { factor: String },
    #[error("beta^2 = {beta_sq} is not positive")]
    NonPositiveBeta { beta_sq: Scalar },
    #[error("A2 is zero")]
    EmptyA2,
    #[error("vector is not in a root space")]
    NotInRootSpace,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// Characteristic polynomial `det(λI − A)` by Faddeev–LeVerrier.
pub fn char_poly(a: &Matrix) -> RationalPolynomial {
    assert!(a.is_square(), "char_poly: square matrix required");
    let n = a.rows();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        m = &(a * &m) + &Matrix::identity(n).scale(&coeffs[n - k + 1]);
        coeffs[n - k] = -(a * &m).trace() / int(k as i64);
    }
    RationalPolynomial::new(coeffs)
}

/// Minimal polynomial: first linear dependency among `I, A, A², …`.
pub fn min_poly(a: &Matrix) -> RationalPolynomial {
    assert!(a.is_square(), "min_poly: square matrix required");
    let n = a.rows();
    let flat = |m: &Matrix| {
        let mut v = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                v.push(m[(i, j)].clone());
            }
        }
        Vector::new(v)
    };
    let mut powers = vec![flat(&Matrix::identity(n))];
    let mut current = Matrix::identity(n);
    for _ in 1..=n {
        current = &current * a;
        let target = flat(&current);
        if let Some(c) = Matrix::from_columns(n * n, &powers).solve(&target) {
            let mut coeffs: Vec<Scalar> = c.coords().iter().map(|x| -x).collect();
            coeffs.push(Scalar::one());
            return RationalPolynomial::new(coeffs);
        }
        powers.push(target);
    }
    unreachable!("Cayley-Hamilton bounds the minimal polynomial degree")
}

/// True iff every complex root of `p` lies on the imaginary axis.
pub fn spectrum_is_pure_imaginary(p: &RationalPolynomial) -> Result<bool, SpectralError> {
    if p.is_zero() {
        return Err(SpectralError::ZeroPolynomial);
    }
    let r = p.strip_zero_roots();
    if r.is_constant() {
        return Ok(true);
    }
    let Some(s) = r.even_part_in_square() else {
        return Ok(false);
    };
    let sf = s.squarefree_part();
    let deg = sf.degree().unwrap_or(0);
    Ok(sf.count_real_roots(None, Some(&Scalar::zero())) == deg)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fitting {
    pub a1: Subspace,
    pub a2: Subspace,
    pub exponent: usize,
}

/// Fitting decomposition at the smallest stabilizing exponent `k ≥ 1`.
pub fn fitting(l: &Matrix) -> Fitting {
    let n = l.rows();
    let mut k = 1;
    let mut power = l.clone();
    let mut kernel = power.kernel();
    loop {
        let next = &power * l;
        let next_kernel = next.kernel();
        if next_kernel == kernel || k >= n.max(1) {
            return Fitting {
                a1: kernel,
                a2: power.image(),
                exponent: k,
            };
        }
        power = next;
        kernel = next_kernel;
        k += 1;
    }
}

/// Semisimple and nilpotent parts, `Ls` obtained by Newton iteration on
/// the square-free part of the characteristic polynomial.
pub fn jordan_chevalley(l: &Matrix) -> Result<(Matrix, Matrix), SpectralError> {
    let n = l.rows();
    let p = char_poly(l).squarefree_part();
    let dp = p.derivative();
    let mut ls = l.clone();
    for _ in 0..=usize::BITS {
        let val = p.eval_matrix(&ls);
        if val.is_zero() {
            let ln = l - &ls;
            if !ln.pow(n as u32).is_zero() || !ls.commutator(&ln).is_zero() {
                return Err(SpectralError::InternalInconsistency(
                    "Jordan-Chevalley parts fail their defining relations".into(),
                ));
            }
            for v in l.kernel().basis() {
                if !ls.apply(v).is_zero() || !ln.apply(v).is_zero() {
                    return Err(SpectralError::InternalInconsistency(
                        "Jordan-Chevalley parts do not vanish on Ker(L)".into(),
                    ));
                }
            }
            return Ok((ls, ln));
        }
        let inv = dp.eval_matrix(&ls).inverse().ok_or_else(|| {
            SpectralError::InternalInconsistency("Newton step is singular".into())
        })?;
        ls = &ls - &(&val * &inv);
    }
    Err(SpectralError::InternalInconsistency(
        "Newton iteration did not converge".into(),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootSpace {
    /// Irreducible monic factor in `μ = λ²`.
    pub factor: RationalPolynomial,
    pub multiplicity: usize,
    pub space: Subspace,
    #[serde(with = "opt_scalar")]
    pub beta_sq: Option<Scalar>,
}

mod opt_scalar {
    use super::Scalar;
    use crate::scalar::format_scalar;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &Option<Scalar>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_some(&format_scalar(v)),
            None => s.serialize_none(),
        }
    }
}

/// Primary decomposition of `a2` under `L²`.
pub fn root_spaces(l: &Matrix, a2: &Subspace) -> Result<Vec<RootSpace>, SpectralError> {
    if a2.is_zero() {
        return Ok(Vec::new());
    }
    let l2 = l * l;
    let restricted = a2.restrict(&l2).ok_or_else(|| {
        SpectralError::InternalInconsistency("A2 is not invariant under L".into())
    })?;
    let mut out: Vec<RootSpace> = char_poly(&restricted)
        .factor()
        .into_iter()
        .map(|(f, mult)| {
            let space = f.pow(mult).eval_matrix(&l2).kernel();
            let beta_sq = (f.degree() == Some(1)).then(|| f.coeff(0));
            RootSpace {
                factor: f,
                multiplicity: mult,
                space,
                beta_sq,
            }
        })
        .collect();
    let total = out
        .iter()
        .fold(Subspace::zero(a2.ambient_dim()), |acc, r| acc.sum(&r.space));
    if total != *a2 || out.iter().map(|r| r.space.dim()).sum::<usize>() != a2.dim() {
        return Err(SpectralError::InternalInconsistency(
            "root spaces do not decompose A2".into(),
        ));
    }
    out.sort_by(|a, b| match (&a.beta_sq, &b.beta_sq) {
        (Some(x), Some(y)) => x.cmp(y),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => a.factor.coeffs().cmp(b.factor.coeffs()),
    });
    Ok(out)
}

/// Rational `β` of a root space, when it exists.
pub fn root_beta(r: &RootSpace) -> Result<Scalar, SpectralError> {
    let beta_sq = r.beta_sq.clone().ok_or_else(|| SpectralError::NonLinearFactor {
        factor: r.factor.render("μ"),
    })?;
    if !beta_sq.is_positive() {
        return Err(SpectralError::NonPositiveBeta { beta_sq });
    }
    rational_sqrt(&beta_sq).ok_or(SpectralError::IrrationalBeta { beta_sq })
}

/// `σ = Ls/β_j` on each `V_j`, zero on `A1`, as a matrix on the whole
/// algebra. `σ² = −Id` on `A2` is checked.
pub fn sigma(
    ls: &Matrix,
    a1: &Subspace,
    a2: &Subspace,
    roots: &[RootSpace],
) -> Result<Matrix, SpectralError> {
    if a2.is_zero() {
        return Err(SpectralError::EmptyA2);
    }
    let n = ls.rows();
    let mut domain = Vec::with_capacity(n);
    let mut images = Vec::with_capacity(n);
    for v in a1.basis() {
        domain.push(v.clone());
        images.push(Vector::zeros(n));
    }
    for r in roots {
        let beta = root_beta(r)?;
        let inv = beta.recip();
        for v in r.space.basis() {
            domain.push(v.clone());
            images.push(ls.apply(v).scale(&inv));
        }
    }
    let b = Matrix::from_columns(n, &domain);
    let b_inv = b.inverse().ok_or_else(|| {
        SpectralError::InternalInconsistency("A1 and root spaces do not span".into())
    })?;
    let s = &Matrix::from_columns(n, &images) * &b_inv;
    let s2 = &s * &s;
    for v in a2.basis() {
        if s2.apply(v) != -v {
            return Err(SpectralError::InternalInconsistency(
                "sigma^2 is not -Id on A2".into(),
            ));
        }
    }
    Ok(s)
}

/// Index of the root space containing `y`, if any.
pub fn root_space_of(roots: &[RootSpace], y: &Vector) -> Option<usize> {
    roots.iter().position(|r| r.space.contains(y))
}

/// Everything the spectral module knows about one element `X`.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralAnalysis {
    pub x: Vector,
    pub l: Matrix,
    pub char_poly: RationalPolynomial,
    pub min_poly: RationalPolynomial,
    pub fitting: Fitting,
    pub ls: Matrix,
    pub ln: Matrix,
    pub root_spaces: Vec<RootSpace>,
    pub sigma: Option<Matrix>,
    #[serde(serialize_with = "ser_sigma_error")]
    pub sigma_error: Option<SpectralError>,
}

fn ser_sigma_error<S: serde::Serializer>(
    e: &Option<SpectralError>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match e {
        Some(e) => s.serialize_some(&e.to_string()),
        None => s.serialize_none(),
    }
}

impl SpectralAnalysis {
    pub fn new(alg: &LieAlgebra, x: &Vector) -> Result<Self, SpectralError> {
        let l = alg.ad(x);
        let char_poly = char_poly(&l);
        let min_poly = min_poly(&l);
        if !min_poly.divides(&char_poly) {
            return Err(SpectralError::InternalInconsistency(
                "minimal polynomial does not divide the characteristic polynomial".into(),
            ));
        }
        let fitting = fitting(&l);
        let (ls, ln) = jordan_chevalley(&l)?;
        let root_spaces = root_spaces(&l, &fitting.a2)?;
        let (sigma, sigma_error) = match sigma(&ls, &fitting.a1, &fitting.a2, &root_spaces) {
            Ok(s) => (Some(s), None),
            Err(e) => (None, Some(e)),
        };
        Ok(Self {
            x: x.clone(),
            l,
            char_poly,
            min_poly,
            fitting,
            ls,
            ln,
            root_spaces,
            sigma,
            sigma_error,
        })
    }

    pub fn pure_imaginary(&self) -> bool {
        spectrum_is_pure_imaginary(&self.char_poly).unwrap_or(false)
    }

    pub fn is_compact(&self) -> bool {
        self.min_poly.is_squarefree() && self.pure_imaginary()
    }

    /// `(plus, minus)` of `[Y, Z] = plus + minus` with
    /// `plus = ½([Y,Z] + [σY,σZ])`.
    pub fn graded_bracket(
        &self,
        alg: &LieAlgebra,
        y: &Vector,
        z: &Vector,
    ) -> Result<(Vector, Vector), SpectralError> {
        let sigma = match (&self.sigma, &self.sigma_error) {
            (Some(s), _) => s,
            (None, Some(e)) => return Err(e.clone()),
            (None, None) => return Err(SpectralError::EmptyA2),
        };
        let i = root_space_of(&self.root_spaces, y).ok_or(SpectralError::NotInRootSpace)?;
        let j = root_space_of(&self.root_spaces, z).ok_or(SpectralError::NotInRootSpace)?;
        let bi = root_beta(&self.root_spaces[i])?;
        let bj = root_beta(&self.root_spaces[j])?;
        let yz = alg.bracket(y, z);
        let syz = alg.bracket(&sigma.apply(y), &sigma.apply(z));
        let half = Scalar::new(1.into(), 2.into());
        let plus = (&yz + &syz).scale(&half);
        let minus = &yz - &plus;
        let ls2 = &self.ls * &self.ls;
        let d = &bi - &bj;
        let s = &bi + &bj;
        if ls2.apply(&plus) != plus.scale(&-(&d * &d)) || ls2.apply(&minus) != minus.scale(&-(&s * &s)) {
            return Err(SpectralError::InternalInconsistency(
                "graded bracket components have the wrong Ls^2 eigenvalues".into(),
            ));
        }
        Ok((plus, minus))
    }
}

pub fn is_compact_vector(alg: &LieAlgebra, x: &Vector) -> bool {
    let l = alg.ad(x);
    min_poly(&l).is_squarefree() && spectrum_is_pure_imaginary(&char_poly(&l)).unwrap_or(false)
}

/// Largest `|Re λ|` over the floating-point eigenvalues of `m`.
pub fn float_max_real_part(m: &Matrix) -> f64 {
    if m.rows() == 0 {
        return 0.0;
    }
    m.to_f64()
        .complex_eigenvalues()
        .iter()
        .map(|c| c.re.abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Declared;

    fn alg(names: &[&str], brackets: &[(usize, usize, &[i64])]) -> LieAlgebra {
        let bs: Vec<_> = brackets
            .iter()
            .map(|(i, j, v)| (*i, *j, Vector::from_ints(v)))
            .collect();
        LieAlgebra::from_brackets(
            names.iter().map(|s| s.to_string()).collect(),
            &bs,
            Declared::default(),
        )
        .unwrap()
    }

    fn so3() -> LieAlgebra {
        alg(
            &["e1", "e2", "e3"],
            &[(0, 1, &[0, 0, 1]), (1, 2, &[1, 0, 0]), (2, 0, &[0, 1, 0])],
        )
    }

    fn e2() -> LieAlgebra {
        alg(&["r", "x", "y"], &[(0, 1, &[0, 0, 1]), (0, 2, &[0, -1, 0])])
    }

    #[test]
    fn characteristic_polynomials() {
        let g = so3();
        assert_eq!(char_poly(&g.ad(&g.e(0))), RationalPolynomial::from_ints(&[0, 1, 0, 1]));
        let z = Matrix::zeros(3, 3);
        assert_eq!(char_poly(&z), RationalPolynomial::from_ints(&[0, 0, 0, 1]));
        assert_eq!(min_poly(&z), RationalPolynomial::from_ints(&[0, 1]));
        let d = Matrix::from_int_rows(&[&[0, 0, 0], &[0, 2, 0], &[0, 0, -2]]);
        assert_eq!(char_poly(&d), RationalPolynomial::from_ints(&[0, -4, 0, 1]));
    }

    #[test]
    fn pure_imaginary_decisions() {
        let t = |c: &[i64]| spectrum_is_pure_imaginary(&RationalPolynomial::from_ints(c)).unwrap();
        assert!(t(&[0, 1, 0, 1]));
        assert!(!t(&[0, -4, 0, 1]));
        assert!(t(&[4, 0, 5, 0, 1]));
        assert!(t(&[0, 0, 1]));
        assert!(!t(&[1, 1]));
        // (λ²+1)² has a repeated imaginary pair
        assert!(t(&[1, 0, 2, 0, 1]));
        // λ⁴ + 1 has roots off both axes
        assert!(!t(&[1, 0, 0, 0, 1]));
        assert_eq!(
            spectrum_is_pure_imaginary(&RationalPolynomial::zero()),
            Err(SpectralError::ZeroPolynomial)
        );
    }

    #[test]
    fn fitting_examples() {
        let e = e2();
        let f = fitting(&e.ad(&e.e(1)));
        assert!(f.a1.is_full() && f.a2.is_zero());
        assert_eq!(f.exponent, 2);
        let g = so3();
        let f = fitting(&g.ad(&g.e(0)));
        assert_eq!(f.a1, Subspace::coordinate(3, &[0]));
        assert_eq!(f.a2, Subspace::coordinate(3, &[1, 2]));
        assert_eq!(f.exponent, 1);
    }

    #[test]
    fn jordan_chevalley_examples() {
        let e = e2();
        let l = e.ad(&e.e(1));
        let (ls, ln) = jordan_chevalley(&l).unwrap();
        assert!(ls.is_zero());
        assert_eq!(ln, l);
        let g = so3();
        let l = g.ad(&g.e(0));
        let (ls, ln) = jordan_chevalley(&l).unwrap();
        assert_eq!(ls, l);
        assert!(ln.is_zero());
        // ad(r + x) on e(2): semisimple part is ad(r) conjugated
        let l = e.ad(&(&e.e(0) + &e.e(1)));
        let (ls, ln) = jordan_chevalley(&l).unwrap();
        assert_eq!(&ls + &ln, l);
        assert!(min_poly(&ls).is_squarefree());
    }

    #[test]
    fn root_spaces_and_sigma() {
        let g = so3();
        let a = SpectralAnalysis::new(&g, &g.e(0)).unwrap();
        assert_eq!(a.root_spaces.len(), 1);
        assert_eq!(a.root_spaces[0].beta_sq, Some(int(1)));
        let s = a.sigma.clone().unwrap();
        assert_eq!(s.apply(&g.e(1)), g.e(2));
        assert_eq!(s.apply(&g.e(2)), -&g.e(1));
        let a2x = SpectralAnalysis::new(&g, &g.e(0).scale(&int(2))).unwrap();
        assert_eq!(a2x.root_spaces[0].beta_sq, Some(int(4)));
        assert_eq!(a2x.sigma.unwrap(), a.sigma.unwrap());
        let c = SpectralAnalysis::new(&g, &Vector::zeros(3)).unwrap();
        assert!(c.root_spaces.is_empty());
        assert_eq!(c.sigma_error, Some(SpectralError::EmptyA2));
    }

    #[test]
    fn irrational_beta_reported() {
        let l = Matrix::from_int_rows(&[&[0, -2], &[1, 0]]);
        let f = fitting(&l);
        let roots = root_spaces(&l, &f.a2).unwrap();
        assert_eq!(roots[0].beta_sq, Some(int(2)));
        let (ls, _) = jordan_chevalley(&l).unwrap();
        assert_eq!(
            sigma(&ls, &f.a1, &f.a2, &roots),
            Err(SpectralError::IrrationalBeta { beta_sq: int(2) })
        );
    }

    #[test]
    fn graded_brackets() {
        let g = so3();
        let a = SpectralAnalysis::new(&g, &g.e(0)).unwrap();
        let (plus, minus) = a.graded_bracket(&g, &g.e(1), &g.e(2)).unwrap();
        assert_eq!(plus, g.e(0));
        assert!(minus.is_zero());
        let (p, m) = a.graded_bracket(&g, &g.e(1), &g.e(1)).unwrap();
        assert!(p.is_zero() && m.is_zero());
        assert_eq!(
            a.graded_bracket(&g, &g.e(0), &g.e(1)),
            Err(SpectralError::NotInRootSpace)
        );
    }

    #[test]
    fn compact_vectors() {
        let g = so3();
        assert!(is_compact_vector(&g, &g.e(0)));
        let e = e2();
        assert!(!is_compact_vector(&e, &e.e(1)));
        assert!(is_compact_vector(&e, &e.e(0)));
        let s = alg(
            &["h", "e", "f"],
            &[(0, 1, &[0, 2, 0]), (0, 2, &[0, 0, -2]), (1, 2, &[1, 0, 0])],
        );
        assert!(!is_compact_vector(&s, &s.e(0)));
        assert!(is_compact_vector(&s, &(&s.e(1) - &s.e(2))));
    }

    #[test]
    fn float_cross_check() {
        let g = so3();
        assert!(float_max_real_part(&g.ad(&g.e(0))) < 1e-12);
        let d = Matrix::from_int_rows(&[&[2, 0], &[0, -2]]);
        assert!((float_max_real_part(&d) - 2.0).abs() < 1e-12);
    }
}
