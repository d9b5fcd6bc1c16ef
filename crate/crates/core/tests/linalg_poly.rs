use kvfcl_core::scalar::{int, to_f64};
use kvfcl_core::{Matrix, RationalPolynomial, Scalar, Subspace, Vector};
use num_traits::Zero;
use proptest::prelude::*;

fn matrix(n: usize, m: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(proptest::collection::vec(-4i64..=4, m), n)
        .prop_map(|rows| Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect()))
}

fn square(n: usize) -> impl Strategy<Value = Matrix> {
    matrix(n, n)
}

fn vectors(n: usize, k: usize) -> impl Strategy<Value = Vec<Vector>> {
    proptest::collection::vec(proptest::collection::vec(-3i64..=3, n), k)
        .prop_map(|vs| vs.iter().map(|v| Vector::from_ints(v)).collect())
}

proptest! {
    #[test]
    fn rank_nullity(m in matrix(3, 5)) {
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.dim(), 5);
        for v in k.basis() {
            prop_assert!(m.apply(v).is_zero());
        }
        prop_assert_eq!(m.image().dim(), m.rank());
    }

    #[test]
    fn determinant_agrees_with_float_lu(m in square(4)) {
        let exact = to_f64(&m.determinant());
        let float = m.to_f64().determinant();
        prop_assert!((exact - float).abs() <= 1e-8 * (1.0 + exact.abs()));
    }

    #[test]
    fn determinant_is_multiplicative(a in square(3), b in square(3)) {
        prop_assert_eq!((&a * &b).determinant(), a.determinant() * b.determinant());
    }

    #[test]
    fn inverse_when_invertible(m in square(3)) {
        match m.inverse() {
            Some(inv) => prop_assert_eq!(&m * &inv, Matrix::identity(3)),
            None => prop_assert!(m.determinant().is_zero()),
        }
    }

    #[test]
    fn grassmann_formula(u in vectors(5, 3), v in vectors(5, 3)) {
        let a = Subspace::span(5, &u);
        let b = Subspace::span(5, &v);
        prop_assert_eq!(a.sum(&b).dim() + a.intersection(&b).dim(), a.dim() + b.dim());
        prop_assert!(a.contains_subspace(&a.intersection(&b)));
        prop_assert_eq!(a.annihilator().dim(), 5 - a.dim());
    }

    #[test]
    fn cayley_hamilton(m in square(4)) {
        let p = kvfcl_core::spectral::char_poly(&m);
        prop_assert!(p.eval_matrix(&m).is_zero());
        let sign = if m.rows() % 2 == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(p.eval(&Scalar::zero()) * sign, m.determinant());
        prop_assert_eq!(-p.coeff(3), m.trace());
    }

    #[test]
    fn division_identity(a in proptest::collection::vec(-5i64..=5, 1..7), b in proptest::collection::vec(-5i64..=5, 1..4)) {
        let a = RationalPolynomial::from_ints(&a);
        let b = RationalPolynomial::from_ints(&b);
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(q.mul(&b).add(&r), a.clone());
        prop_assert!(r.is_zero() || r.degree() < b.degree());
        let g = a.gcd(&b);
        prop_assert!(g.divides(&a) && g.divides(&b));
    }

    #[test]
    fn real_roots_of_split_polynomials(roots in proptest::collection::btree_set(-6i64..=6, 1..5), extra in 0u32..3) {
        // (x - r1)...(x - rk) * (x^2 + 1)^extra
        let mut p = RationalPolynomial::one();
        for r in &roots {
            p = p.mul(&RationalPolynomial::linear_root(&int(*r)));
        }
        p = p.mul(&RationalPolynomial::from_ints(&[1, 0, 1]).pow(extra as usize));
        prop_assert_eq!(p.count_real_roots(None, None), roots.len());
        let found: Vec<Scalar> = p.rational_roots();
        let expected: Vec<Scalar> = roots.iter().map(|r| int(*r)).collect();
        prop_assert_eq!(found, expected);
        let rebuilt = p
            .factor()
            .into_iter()
            .fold(RationalPolynomial::one(), |acc, (f, k)| acc.mul(&f.pow(k)));
        prop_assert_eq!(rebuilt, p.monic());
    }
}

#[test]
fn sturm_counts_in_interval() {
    // x^3 - x has roots -1, 0, 1; the count is over (lower, upper].
    let p = RationalPolynomial::from_ints(&[0, -1, 0, 1]);
    assert_eq!(p.count_real_roots(Some(&int(-1)), Some(&int(1))), 2);
    assert_eq!(p.count_real_roots(Some(&int(-2)), Some(&int(2))), 3);
    assert_eq!(p.count_real_roots(Some(&int(0)), None), 1);
}

#[test]
fn solve_and_certificate() {
    let m = Matrix::from_int_rows(&[&[1, 1], &[2, 2]]);
    assert!(m.solve(&Vector::from_ints(&[1, 2])).is_some());
    let b = Vector::from_ints(&[1, 3]);
    assert!(m.solve(&b).is_none());
    let (y, c) = m.infeasibility_certificate(&b).unwrap();
    assert!(m.transpose().apply(&y).is_zero());
    assert_eq!(y.dot(&b), c);
    assert!(!c.is_zero());
}
