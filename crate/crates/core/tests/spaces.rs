use kvfcl_core::corpus::{self, SpaceDocument};
use kvfcl_core::homspace::{Evaluated, GroupWord, Param, ReductiveSpace, SamplingConfig, Translated, Verdict};
use kvfcl_core::scalar::{int, to_f64};
use kvfcl_core::Vector;
use tempfile::TempDir;

fn space(doc: SpaceDocument) -> ReductiveSpace {
    doc.build().unwrap()
}

#[test]
fn rotation_generator_of_plane_is_refuted_by_translation() {
    let s = space(corpus::build_e2_plane());
    let alg = s.algebra();
    let v = s.check_constant_length(&alg.e(0), &SamplingConfig::default()).unwrap();
    assert_eq!(v.render(alg), "RefutedAt word (x,1): F=1 vs 0");
    let v = s.check_constant_length(&alg.e(1), &SamplingConfig::default()).unwrap();
    assert!(v.is_certified());
}

#[test]
fn sphere_fields_have_constant_length_numerically() {
    let s = space(corpus::build_so3());
    let cfg = SamplingConfig::default();
    for x in s.algebra().basis() {
        let v = s.check_constant_length(&x, &cfg).unwrap();
        assert!(matches!(v, Verdict::UndecidedPassedSamples { n_samples: 200, .. }));
        assert!(s.max_length_residual(&x, &cfg) < 1e-12);
    }
}

#[test]
fn heisenberg_go_family_is_consistent() {
    for n in 1..=3 {
        let s = space(corpus::build_heis_go(n));
        let cfg = SamplingConfig { samples: 60, ..SamplingConfig::default() };
        assert!(!s.check_go(&cfg).is_refuted(), "heis_go_{n}");
        let z = s.algebra().e(2 * n);
        assert!(s.check_constant_length(&z, &cfg).unwrap().is_certified());
    }
}

#[test]
fn exact_translation_matches_float_exponential() {
    // Ad(exp(-tY)) is exact for nilpotent ad(Y); compare with the float exponential.
    let s = space(corpus::build_heis_go(1));
    let alg = s.algebra();
    let y = Vector::from_ints(&[1, 2, 0, 0]);
    let t = int(3);
    let word = GroupWord::single(y.clone(), Param::Exact(t.clone()));
    let x = Vector::from_ints(&[0, 1, 1, 0]);
    let Translated::Exact(exact) = s.translate(&word, &x) else {
        panic!("nilpotent words translate exactly");
    };
    let m = alg.ad(&y).to_f64() * (-to_f64(&t));
    let float = m.exp() * nalgebra::DVector::from_vec(x.to_f64());
    for (a, b) in exact.to_f64().iter().zip(float.iter()) {
        assert!((a - b).abs() < 1e-9);
    }
    let v = s.metric_at(&word, &x, &x);
    assert!(matches!(v, Evaluated::Exact(_)));
}

#[test]
fn hyperbolic_basis_fields_are_refuted() {
    let s = space(corpus::build_sl2_hyperbolic());
    for x in s.algebra().basis() {
        assert!(s.check_constant_length(&x, &SamplingConfig::default()).unwrap().is_refuted());
    }
}

#[test]
fn documents_round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    for doc in corpus::corpus() {
        let p = dir.path().join(format!("{}.json", doc.name));
        corpus::save(&doc, &p).unwrap();
        let (back, built) = corpus::load(&p).unwrap();
        assert_eq!(back, doc);
        assert_eq!(built.algebra().dim(), doc.dimension);
    }
}

#[test]
fn malformed_documents_are_rejected() {
    let mut doc = corpus::build_so3();
    doc.metric[0][0] = kvfcl_core::corpus::Rat(int(-1));
    assert!(doc.build().is_err());
    let text = corpus::build_so3().to_json().replace("\"so3\"", "\"so3\", \"extra\": 1");
    assert!(SpaceDocument::from_json(&text).is_err());
    let text = corpus::build_heis_go(1).to_json().replacen("\"1\"", "\"1/0\"", 1);
    assert!(SpaceDocument::from_json(&text).is_err());
}
