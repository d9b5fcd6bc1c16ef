use kvfcl_core::corpus;
use kvfcl_core::scalar::int;
use kvfcl_core::spectral::{char_poly, fitting, jordan_chevalley, min_poly, SpectralAnalysis};
use kvfcl_core::{LieAlgebra, Matrix, RationalPolynomial, Subspace, Vector};
use proptest::prelude::*;

fn alg(doc: corpus::SpaceDocument) -> LieAlgebra {
    doc.build().unwrap().algebra().clone()
}

/// tr(ad x ad y) computed entry by entry from structure constants.
fn killing_oracle(a: &LieAlgebra, i: usize, j: usize) -> kvfcl_core::Scalar {
    let n = a.dim();
    let mut t = int(0);
    for k in 0..n {
        let inner = a.bracket(&a.e(j), &a.e(k));
        let outer = a.bracket(&a.e(i), &inner);
        t += outer.coords()[k].clone();
    }
    t
}

#[test]
fn jacobi_and_antisymmetry_on_corpus() {
    for doc in corpus::corpus() {
        let a = alg(doc);
        let b = a.basis();
        for x in &b {
            for y in &b {
                assert_eq!(a.bracket(x, y), a.bracket(y, x).scale(&int(-1)));
                for z in &b {
                    let s = &(&a.bracket(x, &a.bracket(y, z)) + &a.bracket(y, &a.bracket(z, x))) + &a.bracket(z, &a.bracket(x, y));
                    assert!(s.is_zero());
                }
            }
        }
    }
}

#[test]
fn killing_form_matches_trace_oracle() {
    for doc in corpus::corpus() {
        let a = alg(doc);
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                assert_eq!(a.killing_form()[(i, j)], killing_oracle(&a, i, j));
            }
        }
    }
    let so3 = alg(corpus::build_so3());
    assert_eq!(*so3.killing_form(), Matrix::identity(3).scale(&int(-2)));
}

#[test]
fn structure_of_small_algebras() {
    let heis = alg(corpus::build_heis_go(1));
    let z = heis.e(2);
    let n = heis.nilradical().unwrap();
    assert_eq!(n, Subspace::coordinate(4, &[0, 1, 2]));
    assert_eq!(heis.center_of_nilradical().unwrap(), Subspace::span(4, &[z]));
    assert_eq!(heis.radical().unwrap(), Subspace::full(4));
    assert_eq!(heis.nilpotency_class(&n).unwrap(), Some(2));

    let e2 = alg(corpus::build_e2_plane());
    assert_eq!(e2.nilradical().unwrap(), Subspace::coordinate(3, &[1, 2]));
    assert!(e2.is_solvable(&Subspace::full(3)).unwrap());
    assert!(!e2.is_nilpotent(&Subspace::full(3)).unwrap());

    let sl2 = alg(corpus::build_sl2_hyperbolic());
    let levi = sl2.levi_report().unwrap();
    assert!(sl2.is_semisimple());
    assert_eq!(levi.noncompact.dim(), 3);
    let so3 = alg(corpus::build_so3());
    assert_eq!(so3.levi_report().unwrap().compact.dim(), 3);

    let sum = alg(corpus::build_direct_sum(&corpus::build_e2_plane(), &corpus::build_so3()).unwrap());
    assert_eq!(sum.radical().unwrap(), Subspace::coordinate(6, &[0, 1, 2]));
    let rep = sum.levi_report().unwrap();
    assert_eq!(rep.compact, Subspace::coordinate(6, &[3, 4, 5]));
    let r = sum.radical().unwrap();
    assert!(sum.nilradical().unwrap().contains_subspace(&sum.bracket_spaces(&Subspace::full(6), &r)));
}

#[test]
fn rotation_generator_spectrum() {
    let so3 = alg(corpus::build_so3());
    let x = so3.e(0);
    let l = so3.ad(&x);
    assert_eq!(char_poly(&l), RationalPolynomial::from_ints(&[0, 1, 0, 1]));
    assert_eq!(min_poly(&l), RationalPolynomial::from_ints(&[0, 1, 0, 1]));
    let f = fitting(&l);
    assert_eq!((f.a1.dim(), f.a2.dim(), f.exponent), (1, 2, 1));
    let a = SpectralAnalysis::new(&so3, &x).unwrap();
    let s = a.sigma.clone().unwrap();
    let s2 = &s * &s;
    for v in f.a2.basis() {
        assert_eq!(s2.apply(v), v.scale(&int(-1)));
    }
    assert!(a.is_compact());
}

#[test]
fn nilpotent_translation_field_is_not_compact() {
    let e2 = alg(corpus::build_e2_plane());
    let x = e2.e(1);
    let a = SpectralAnalysis::new(&e2, &x).unwrap();
    assert!(a.pure_imaginary());
    assert!(!a.is_compact());
    assert_eq!(a.fitting.exponent, 2);
    assert!(!a.ln.is_zero());
}

proptest! {
    #[test]
    fn jordan_chevalley_random(rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 4)) {
        let l = Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect());
        let (s, n) = jordan_chevalley(&l).unwrap();
        prop_assert_eq!(&s + &n, l.clone());
        prop_assert!(s.commutator(&n).is_zero());
        prop_assert!(n.pow(4).is_zero());
        prop_assert!(min_poly(&s).is_squarefree());
        prop_assert_eq!(char_poly(&s), char_poly(&l));
    }

    #[test]
    fn ad_is_a_derivation(c in proptest::collection::vec(-3i64..=3, 6), d in proptest::collection::vec(-3i64..=3, 6)) {
        let a = alg(corpus::build_direct_sum(&corpus::build_e2_plane(), &corpus::build_so3()).unwrap());
        let x = Vector::from_ints(&c);
        let y = Vector::from_ints(&d);
        // ad[x,y] = [ad x, ad y]
        prop_assert_eq!(a.ad(&a.bracket(&x, &y)), a.ad(&x).commutator(&a.ad(&y)));
    }
}
