//! Univariate polynomials with rational coefficients.
//!
//! Besides ring arithmetic this module provides Sturm-sequence real root
//! counting and factorization into irreducibles over ℚ (rational roots by the
//! rational root theorem, higher-degree factors by Kronecker's method).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::linalg::Matrix;
use crate::scalar::{format_scalar, int, Scalar};

/// Coefficients are stored lowest degree first with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPolynomial {
    coeffs: Vec<Scalar>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate.
    pub fn x() -> Self {
        Self::monomial(Scalar::one(), 1)
    }

    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x - root`
    pub fn linear_root(root: &Scalar) -> Self {
        Self::new(vec![-root, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.degree().unwrap();
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() * &lead_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
            rem.pop();
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Exact quotient; panics when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + crate::scalar::to_f64(c))
    }

    /// Evaluates the polynomial at a square matrix (Horner scheme).
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &Matrix::identity(n).scale(c);
        }
        acc
    }

    /// Multiplicity of the root `0`.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides out the largest power of the indeterminate.
    pub fn strip_zero_roots(&self) -> Self {
        let m = self.zero_root_multiplicity();
        Self::new(self.coeffs[m.min(self.coeffs.len())..].to_vec())
    }

    /// True when only even powers occur.
    pub fn is_even(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| k % 2 == 0 || c.is_zero())
    }

    /// For an even polynomial `r(λ)`, the polynomial `s` with `r(λ) = s(λ²)`.
    pub fn even_part_in_square(&self) -> Option<Self> {
        self.is_even()
            .then(|| Self::new(self.coeffs.iter().step_by(2).cloned().collect()))
    }

    /// `s(λ²)` from `s(μ)`.
    pub fn compose_square(&self) -> Self {
        let mut out = vec![Scalar::zero(); self.coeffs.len() * 2];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[2 * k] = c.clone();
        }
        Self::new(out)
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }

    /// Sturm chain `p, p', -rem(p, p'), …`.
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone()];
        if self.is_zero() {
            return seq;
        }
        let d = self.derivative();
        if d.is_zero() {
            return seq;
        }
        seq.push(d);
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&-Scalar::one()));
        }
        seq
    }

    /// Number of distinct real roots in `(lower, upper]`; `None` bounds mean
    /// `-∞` / `+∞`. The lower endpoint must not be a root.
    pub fn count_real_roots(&self, lower: Option<&Scalar>, upper: Option<&Scalar>) -> usize {
        assert!(!self.is_zero(), "root count of the zero polynomial");
        let seq = self.sturm_sequence();
        let at = |bound: Option<&Scalar>, upper_side: bool| -> usize {
            let signs: Vec<i8> = seq
                .iter()
                .map(|p| match bound {
                    Some(x) => sign(&p.eval(x)),
                    None => {
                        let lc = sign(&p.leading());
                        let odd = p.degree().unwrap_or(0) % 2 == 1;
                        if upper_side || !odd {
                            lc
                        } else {
                            -lc
                        }
                    }
                })
                .collect();
            sign_variations(&signs)
        };
        let lo = at(lower, false);
        let hi = at(upper, true);
        lo.saturating_sub(hi)
    }

    /// Rational roots (distinct).
    pub fn rational_roots(&self) -> Vec<Scalar> {
        let mut roots = Vec::new();
        if self.is_constant() {
            return roots;
        }
        if self.coeff(0).is_zero() {
            roots.push(Scalar::zero());
        }
        let prim = primitive_integer_coeffs(&self.strip_zero_roots());
        if prim.len() <= 1 {
            return roots;
        }
        let a0 = prim[0].abs();
        let an = prim.last().unwrap().abs();
        let ps = divisors(&a0);
        let qs = divisors(&an);
        let mut seen = std::collections::BTreeSet::new();
        for p in &ps {
            for q in &qs {
                for s in [1i64, -1] {
                    let cand = BigRational::new(p * BigInt::from(s), q.clone());
                    if seen.insert(cand.clone()) && self.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// Yun's square-free decomposition: `self = c · Π f_i^i` with pairwise
    /// coprime square-free monic `f_i`. Returns `(f_i, i)` for non-constant
    /// `f_i`.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.exact_div(&a0);
        let c = fp.exact_div(&a0);
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            let b_next = b.exact_div(&a);
            let c_next = d.exact_div(&a);
            d = c_next.sub(&b_next.derivative());
            if !a.is_constant() {
                out.push((a.monic(), i));
            }
            b = b_next;
            i += 1;
        }
        out
    }

    /// Monic irreducible factors over ℚ with multiplicities, sorted by
    /// degree then coefficients.
    pub fn factor(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        for (part, mult) in self.squarefree_decomposition() {
            for f in factor_squarefree(&part) {
                out.push((f, mult));
            }
        }
        out.sort_by(|a, b| poly_order(&a.0, &b.0));
        out
    }

    /// Renders with the given variable name, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
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
            let coeff_text = format_scalar(&mag);
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                s.push_str(&coeff_text);
            } else if mag.is_one() {
                s.push_str(&mono);
            } else if mag.is_integer() {
                s.push_str(&format!("{coeff_text}{mono}"));
            } else {
                s.push_str(&format!("({coeff_text}){mono}"));
            }
        }
        s
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("λ"))
    }
}

impl Serialize for RationalPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::scalar::serde_scalars::serialize(&self.coeffs, s)
    }
}

fn sign(x: &Scalar) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_variations(signs: &[i8]) -> usize {
    let nz: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

fn poly_order(a: &RationalPolynomial, b: &RationalPolynomial) -> std::cmp::Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
}

/// Integer coefficients of the primitive integer multiple of `p` (positive
/// leading coefficient).
fn primitive_integer_coeffs(p: &RationalPolynomial) -> Vec<BigInt> {
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut out: Vec<BigInt> = if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|c| c / &g).collect()
    };
    if out.last().is_some_and(Signed::is_negative) {
        out.iter_mut().for_each(|c| *c = -c.clone());
    }
    out
}

/// Positive divisors of `n` (n > 0) by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Upper bound on candidate tuples examined per factor degree in Kronecker's
/// method.
const KRONECKER_BUDGET: usize = 400_000;

fn factor_squarefree(p: &RationalPolynomial) -> Vec<RationalPolynomial> {
    let mut out = Vec::new();
    let mut rest = p.monic();
    for r in rest.rational_roots() {
        let lin = RationalPolynomial::linear_root(&r);
        rest = rest.exact_div(&lin);
        out.push(lin);
    }
    let mut stack = vec![rest];
    while let Some(f) = stack.pop() {
        let Some(deg) = f.degree() else { continue };
        if deg == 0 {
            continue;
        }
        // No rational roots remain, so degrees 2 and 3 are irreducible.
        if deg <= 3 {
            out.push(f.monic());
            continue;
        }
        match kronecker_split(&f) {
            Some((a, b)) => {
                stack.push(a.monic());
                stack.push(b.monic());
            }
            None => out.push(f.monic()),
        }
    }
    out
}

/// Searches for a factor of degree `2..=deg/2` by Kronecker's interpolation
/// method. `f` has no rational roots.
// TODO: switch to Zassenhaus (mod-p factorization + Hensel lifting) if the
// corpus ever needs factors of large height; the budget cap treats an
// unfinished search as irreducible.
fn kronecker_split(f: &RationalPolynomial) -> Option<(RationalPolynomial, RationalPolynomial)> {
    let deg = f.degree()?;
    let prim = RationalPolynomial::new(
        primitive_integer_coeffs(f)
            .into_iter()
            .map(BigRational::from_integer)
            .collect(),
    );
    for k in 2..=deg / 2 {
        // Evaluation points with the fewest divisor choices.
        let mut pts: Vec<(i64, BigInt)> = (-12i64..=12)
            .map(|a| (a, prim.eval(&int(a)).to_integer()))
            .collect();
        pts.sort_by_key(|(a, v)| (divisors(v).len(), a.abs(), *a));
        let pts: Vec<(i64, BigInt)> = pts.into_iter().take(k + 1).collect();
        let choices: Vec<Vec<BigInt>> = pts
            .iter()
            .enumerate()
            .map(|(i, (_, v))| {
                let ds = divisors(v);
                if i == 0 {
                    ds
                } else {
                    ds.iter().flat_map(|d| [d.clone(), -d.clone()]).collect()
                }
            })
            .collect();
        let total: usize = choices
            .iter()
            .map(Vec::len)
            .try_fold(1usize, |acc, n| acc.checked_mul(n))
            .unwrap_or(usize::MAX);
        if total > KRONECKER_BUDGET {
            continue;
        }
        let xs: Vec<Scalar> = pts.iter().map(|(a, _)| int(*a)).collect();
        let mut idx = vec![0usize; k + 1];
        loop {
            let ys: Vec<Scalar> = idx
                .iter()
                .zip(&choices)
                .map(|(&i, c)| BigRational::from_integer(c[i].clone()))
                .collect();
            let cand = interpolate(&xs, &ys);
            if cand.degree() == Some(k)
                && cand.coeffs.iter().all(|c| c.is_integer())
                && cand.divides(&prim)
            {
                let other = prim.exact_div(&cand);
                return Some((cand, other));
            }
            // advance mixed-radix counter
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    None
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[Scalar], ys: &[Scalar]) -> RationalPolynomial {
    let mut acc = RationalPolynomial::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = RationalPolynomial::one();
        let mut denom = Scalar::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&RationalPolynomial::linear_root(xj));
                denom *= xi - xj;
            }
        }
        acc = acc.add(&basis.scale(&(yi / denom)));
    }
    acc
}

/// Small helper used by reports: the integer value of a scalar if it fits.
pub fn small_integer(x: &Scalar) -> Option<i64> {
    x.is_integer().then(|| x.to_integer().to_i64()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    fn p(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_ints(c)
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)(x+2) and (x-1)(x+3)
        let a = p(&[-2, 1, 1]);
        let b = p(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (q, r) = p(&[1, 0, 0, 1]).div_rem(&p(&[1, 1]));
        assert_eq!(q, p(&[1, -1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn sturm_counts_distinct_roots() {
        // (x-1)(x-2)(x+3)
        let f = p(&[6, -7, 0, 1]);
        assert_eq!(f.count_real_roots(None, None), 3);
        assert_eq!(f.count_real_roots(None, Some(&int(0))), 1);
        assert_eq!(f.count_real_roots(Some(&int(0)), None), 2);
        assert_eq!(p(&[1, 0, 1]).count_real_roots(None, None), 0);
        assert_eq!(f.count_real_roots(Some(&frac(3, 2)), Some(&int(2))), 1);
    }

    #[test]
    fn squarefree_decomposition_recovers_multiplicities() {
        // (x-1)^2 (x+1)^3 x
        let f = p(&[-1, 1]).pow(2).mul(&p(&[1, 1]).pow(3)).mul(&p(&[0, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(p(&[0, 1]), 1), (p(&[-1, 1]), 2), (p(&[1, 1]), 3)]);
        assert_eq!(f.squarefree_part(), p(&[0, -1, 0, 1]));
    }

    #[test]
    fn factors_over_rationals() {
        // (x^2 - 2)(x^2 + x + 1)(2x - 1)
        let f = p(&[-2, 0, 1]).mul(&p(&[1, 1, 1])).mul(&p(&[-1, 2]));
        let fs = f.factor();
        assert_eq!(
            fs,
            vec![
                (RationalPolynomial::new(vec![frac(-1, 2), int(1)]), 1),
                (p(&[-2, 0, 1]), 1),
                (p(&[1, 1, 1]), 1),
            ]
        );
        // x^4 + 4 = (x^2 - 2x + 2)(x^2 + 2x + 2), no rational roots
        let g = p(&[4, 0, 0, 0, 1]);
        let gs = g.factor();
        assert_eq!(gs.len(), 2);
        assert_eq!(gs[0].0.mul(&gs[1].0), g);
        // x^4 + 1 is irreducible
        assert_eq!(p(&[1, 0, 0, 0, 1]).factor().len(), 1);
    }

    #[test]
    fn matrix_evaluation() {
        let m = Matrix::from_int_rows(&[&[0, -1], &[1, 0]]);
        assert!(p(&[1, 0, 1]).eval_matrix(&m).is_zero());
    }

    #[test]
    fn renders_highest_degree_first() {
        assert_eq!(p(&[0, 1, 0, 1]).to_string(), "λ^3 + λ");
        assert_eq!(p(&[0, -4, 0, 1]).to_string(), "λ^3 - 4λ");
        assert_eq!(
            RationalPolynomial::new(vec![frac(1, 2), int(-1)]).render("μ"),
            "-μ + 1/2"
        );
    }
}
