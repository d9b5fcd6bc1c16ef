use kvfcl_core::corpus;
use kvfcl_core::homspace::SamplingConfig;
use kvfcl_core::report::{cmd_check, cmd_spectrum, cmd_verify, spectrum_line, Input, Parameters};
use kvfcl_core::scalar::int;
use kvfcl_core::theorems::{self, block_determinant, Context, Premise, Status, REGISTRY};
use kvfcl_core::Vector;
use proptest::prelude::*;
use sha2::{Digest, Sha256};

fn quick() -> SamplingConfig {
    SamplingConfig { samples: 25, ..SamplingConfig::default() }
}

#[test]
fn every_statement_runs_on_every_space() {
    for doc in corpus::corpus() {
        let s = doc.build().unwrap();
        let ctx = Context::new(doc.name.clone(), &s, quick());
        let fields = vec![s.algebra().e(0)];
        let findings = theorems::verify_all(&ctx, &[], &fields).unwrap();
        assert_eq!(findings.len(), REGISTRY.len());
        for f in findings {
            assert_ne!(f.status, Status::Failed, "{} on {}", f.statement_id, doc.name);
        }
    }
}

#[test]
fn direct_sum_ideals_are_orthogonal() {
    let doc = corpus::build_direct_sum(&corpus::build_e2_plane(), &corpus::build_so3()).unwrap();
    let s = doc.build().unwrap();
    let ctx = Context::new(doc.name, &s, quick());
    let x = Vector::from_ints(&[0, 1, 0, 1, 0, 0]);
    let f = theorems::verify("thm-2.4", &ctx, Some(&x)).unwrap();
    assert_eq!(f.status, Status::Passed);
    assert_eq!(f.premise, Premise::SamplingConsistent);
}

#[test]
fn hyperbolic_real_roots_are_recorded() {
    let s = corpus::build_sl2_hyperbolic().build().unwrap();
    let ctx = Context::new("sl2_hyperbolic", &s, quick());
    let f = theorems::verify("thm-1.1", &ctx, Some(&s.algebra().e(0))).unwrap();
    assert_eq!(f.status, Status::Vacuous);
    assert_eq!(f.evidence["pure_imaginary"], false);
}

#[test]
fn nilradical_complement_is_exactly_refuted() {
    let s = corpus::build_heis_go(2).build().unwrap();
    let ctx = Context::new("heis_go_2", &s, quick());
    for i in 0..4 {
        let f = theorems::verify("thm-3.9", &ctx, Some(&s.algebra().e(i))).unwrap();
        assert_eq!(f.status, Status::Passed);
        assert_eq!(f.evidence["exact_refutation"], true);
    }
}

#[test]
fn block_determinant_known_value() {
    assert_eq!(block_determinant(&int(1), &int(2)), (int(-1250), int(-1250)));
}

proptest! {
    #[test]
    fn block_determinant_identity(a in -20i64..=20, b in 1i64..=20, d in 1i64..=7) {
        let alpha = kvfcl_core::scalar::frac(a, d);
        let beta = kvfcl_core::scalar::frac(b, d);
        let (det, expected) = block_determinant(&alpha, &beta);
        prop_assert_eq!(det, expected);
    }
}

#[test]
fn report_digest_and_renderings_agree() {
    let doc = corpus::build_heis_go(1);
    let text = doc.to_json();
    let input = Input::from_text(&text).unwrap();
    assert_eq!(input.sha256, hex::encode(Sha256::digest(text.as_bytes())));
    let params = Parameters { samples: 25, ..Parameters::default() };
    let r = cmd_verify(&input, &params, &[]).unwrap();
    let md = r.to_markdown();
    let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(json["findings"].as_array().unwrap().len(), r.findings.len());
    assert_eq!(md.matches("\n| ").count() - 1, r.findings.len());
    assert!(md.contains(&format!("passed={}", r.summary.passed)));
    assert_eq!(r.exit_code, 0);
}

#[test]
fn command_outputs() {
    let input = Input::from_document(&corpus::build_e2_plane()).unwrap();
    let x = input.parse_field("x").unwrap();
    assert_eq!(x, input.parse_field("0, 1, 0").unwrap());
    assert!(input.parse_field("1,2").is_err());
    assert_eq!(
        spectrum_line(input.algebra(), &x),
        "pure imaginary: true (spectrum {0}); Fitting: A1=3, A2=0, k=2; compact vector: false"
    );
    let p = Parameters::default();
    assert_eq!(cmd_spectrum(&input, &p, &x).exit_code, 0);
    let r = input.parse_field("r").unwrap();
    let rep = cmd_check(&input, &p, &r);
    assert_eq!(rep.exit_code, 1);
    assert_eq!(rep.summary.refuted, 1);
}
