//! Acceptance suite: one pass/fail line per criterion. Exits non-zero if
//! any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use kvfcl_core::corpus::{self, SpaceDocument};
use kvfcl_core::homspace::{ReductiveSpace, SamplingConfig, Verdict, Witness};
use kvfcl_core::report::{cmd_verify, Input, Parameters};
use kvfcl_core::scalar::{int, random_rational, to_f64};
use kvfcl_core::spectral::{char_poly, fitting, jordan_chevalley, min_poly, spectrum_is_pure_imaginary, SpectralAnalysis};
use kvfcl_core::theorems::{self, block_system_matrix, random_alpha_beta, Context, Status};
use kvfcl_core::{Matrix, Scalar, Vector};
use nalgebra::Complex;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MAX_CRIT1: Duration = Duration::from_secs(1);
const MAX_CRIT5: Duration = Duration::from_millis(100);
const MAX_CRIT6: Duration = Duration::from_secs(5);
const GO_SAMPLES: usize = 1000;
const JC_OPERATORS: usize = 100;
const DET_PAIRS: usize = 100;
const FLOAT_TOL: f64 = 1e-9;
const NEGATIVE_RESIDUAL: f64 = 1e-6;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn spaces() -> Vec<(SpaceDocument, ReductiveSpace)> {
    corpus::corpus()
        .into_iter()
        .map(|d| {
            let s = d.build().expect("corpus entry builds");
            (d, s)
        })
        .collect()
}

fn space(doc: SpaceDocument) -> ReductiveSpace {
    doc.build().expect("corpus entry builds")
}

fn certified_pairs() -> Vec<(String, ReductiveSpace, Vector)> {
    let mut out = Vec::new();
    for (doc, s) in spaces() {
        for x in theorems::default_fields(&s, &[]) {
            if let Ok(Some(_)) = s.certificate_constant_length(&x) {
                out.push((doc.name.clone(), s.clone(), x));
            }
        }
    }
    out
}

fn crit1() -> Outcome {
    let start = Instant::now();
    let pairs = certified_pairs();
    let mut bad = Vec::new();
    for (name, s, x) in &pairs {
        let p = char_poly(&s.algebra().ad(x));
        if spectrum_is_pure_imaginary(&p) != Ok(true) {
            bad.push(format!("{name}:{}", s.algebra().render(x)));
        }
    }
    let elapsed = start.elapsed();
    outcome(
        pairs.len() >= 4 && bad.is_empty() && elapsed < MAX_CRIT1,
        format!("{} certified pairs, {} not pure imaginary, {:?}", pairs.len(), bad.len(), elapsed),
    )
}

fn crit2() -> Outcome {
    let s = space(corpus::build_sl2_hyperbolic());
    let alg = s.algebra();
    let cfg = SamplingConfig::default();
    let mut refuted = 0;
    let mut notes = Vec::new();
    for x in alg.basis() {
        match s.check_constant_length(&x, &cfg) {
            Ok(Verdict::RefutedAt { lhs, rhs, .. }) => {
                let exact = lhs.is_exact() && rhs.is_exact();
                let residual = (lhs.to_f64() - rhs.to_f64()).abs();
                if exact || residual > NEGATIVE_RESIDUAL {
                    refuted += 1;
                }
                notes.push(format!("{}: {}", alg.render(&x), if exact { "exact".into() } else { format!("{residual:.3e}") }));
            }
            other => notes.push(format!("{}: {:?}", alg.render(&x), other.map(|v| v.render(alg)))),
        }
    }
    let h = alg.e(0);
    let p = char_poly(&alg.ad(&h));
    let roots = p.rational_roots();
    let real_pm2 = roots.contains(&int(2)) && roots.contains(&int(-2));
    let not_pure = spectrum_is_pure_imaginary(&p) == Ok(false);
    outcome(
        refuted == alg.dim() && real_pm2 && not_pure,
        format!("{refuted}/{} refuted ({}); ad(h) roots ±2: {real_pm2}", alg.dim(), notes.join(", ")),
    )
}

fn crit3() -> Outcome {
    let pairs = certified_pairs();
    let mut bad = 0;
    for (_, s, x) in &pairs {
        let l = s.algebra().ad(x);
        let l2 = &l * &l;
        let l3 = &l2 * &l;
        if fitting(&l).exponent > 2 || l3.kernel() != l2.kernel() {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{} certified inputs, {bad} violations", pairs.len()))
}

/// Rule of Sarrus, independent of the library's elimination.
fn sarrus(m: &Matrix) -> Scalar {
    let a = |i: usize, j: usize| m[(i, j)].clone();
    a(0, 0) * a(1, 1) * a(2, 2) + a(0, 1) * a(1, 2) * a(2, 0) + a(0, 2) * a(1, 0) * a(2, 1)
        - a(0, 2) * a(1, 1) * a(2, 0)
        - a(0, 0) * a(1, 2) * a(2, 1)
        - a(0, 1) * a(1, 0) * a(2, 2)
}

fn crit4() -> Outcome {
    let pairs = random_alpha_beta(2024, DET_PAIRS);
    let mut bad = 0;
    for (a, b) in &pairs {
        assert!(!b.is_zero());
        let m = block_system_matrix(a, b);
        let s = a * a + b * b;
        let expected = -(int(2) * a) * &s * &s * &s * &s;
        if sarrus(&m) != expected || m.determinant() != expected {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{} pairs, {bad} mismatches", pairs.len()))
}

fn crit5() -> Outcome {
    let s = space(corpus::build_heis_go(1));
    let alg = s.algebra();
    let cfg = SamplingConfig::default();
    let start = Instant::now();
    let v3 = s.check_constant_length(&alg.e(2), &cfg);
    let v1 = s.check_constant_length(&alg.e(0), &cfg);
    let v2 = s.check_constant_length(&alg.e(1), &cfg);
    let elapsed = start.elapsed();
    let exact_word = |v: &Result<Verdict, _>| match v {
        Ok(Verdict::RefutedAt { witness: Witness::Word { word }, lhs, rhs }) => {
            word.is_exact() && lhs.is_exact() && rhs.is_exact()
        }
        _ => false,
    };
    let certified = matches!(v3, Ok(Verdict::CertifiedTrue { .. }));
    let r1 = v1.as_ref().map(|v| v.render(alg)).unwrap_or_default();
    let r2 = v2.as_ref().map(|v| v.render(alg)).unwrap_or_default();
    let ok = certified
        && exact_word(&v1)
        && exact_word(&v2)
        && r1 == "RefutedAt word (e2,1): F=2 vs 1"
        && elapsed < MAX_CRIT5;
    outcome(ok, format!("e3 certified: {certified}; e1: {r1}; e2: {r2}; {elapsed:?}"))
}

fn crit6() -> Outcome {
    let cfg = SamplingConfig {
        samples: GO_SAMPLES,
        ..SamplingConfig::default()
    };
    let docs = [
        corpus::build_e2_plane(),
        corpus::build_so3(),
        corpus::build_sl2_hyperbolic(),
        corpus::build_heis_go(1),
    ];
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    for d in docs {
        let s = space(d.clone());
        let v = s.check_go(&cfg);
        let passed = matches!(v, Verdict::UndecidedPassedSamples { n_samples, .. } if n_samples >= GO_SAMPLES);
        ok &= passed;
        notes.push(format!("{}: {}", d.name, if passed { "consistent" } else { "refuted" }));
    }
    let elapsed = start.elapsed();
    outcome(ok && elapsed < MAX_CRIT6, format!("{}; {elapsed:?}", notes.join(", ")))
}

fn random_field(rng: &mut ChaCha8Rng, n: usize) -> Vector {
    loop {
        let v = Vector::new((0..n).map(|_| random_rational(rng, 5)).collect());
        if !v.is_zero() {
            return v;
        }
    }
}

/// Integer vectors of rational length, so ad(X) on so(3) has rational β.
const QUADRUPLES: [[i64; 3]; 7] = [[1, 2, 2], [2, 3, 6], [1, 4, 8], [4, 4, 7], [2, 6, 9], [3, 4, 0], [0, 5, 12]];

fn rational_length_block(rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    let q = QUADRUPLES[rng.random_range(0..QUADRUPLES.len())];
    let c = kvfcl_core::scalar::random_nonzero_rational(rng, 5);
    let mut v: Vec<Scalar> = q.iter().map(|&k| &c * int(if rng.random_bool(0.5) { k } else { -k })).collect();
    let shift = rng.random_range(0..3);
    v.rotate_left(shift);
    v
}

fn crit7() -> Outcome {
    let so3 = corpus::build_so3();
    let docs = [so3.clone(), corpus::build_direct_sum(&so3, &so3).expect("direct sum")];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    let mut bad = Vec::new();
    for d in docs {
        let s = space(d.clone());
        let alg = s.algebra();
        let mut fields = alg.basis();
        for _ in 0..5 {
            let mut coords = Vec::new();
            while coords.len() < alg.dim() {
                coords.extend(rational_length_block(&mut rng));
            }
            fields.push(Vector::new(coords));
        }
        let ctx = Context::new(d.name.clone(), &s, SamplingConfig { samples: 10, ..SamplingConfig::default() });
        for x in fields {
            checked += 1;
            let a = match SpectralAnalysis::new(alg, &x) {
                Ok(a) => a,
                Err(e) => {
                    bad.push(format!("{}: {e}", alg.render(&x)));
                    continue;
                }
            };
            let Some(sigma) = &a.sigma else {
                bad.push(format!("{}: sigma undefined", alg.render(&x)));
                continue;
            };
            let sq = sigma * sigma;
            let minus_id = a.fitting.a2.basis().iter().all(|v| sq.apply(v) == v.scale(&int(-1)));
            let a1a2 = a.fitting.a2.contains_subspace(&alg.bracket_spaces(&a.fitting.a1, &a.fitting.a2));
            let graded = match theorems::verify("prop-2.8", &ctx, Some(&x)) {
                Ok(f) => matches!(f.status, Status::Passed | Status::Vacuous),
                Err(_) => false,
            };
            if !(minus_id && a1a2 && graded) {
                bad.push(alg.render(&x));
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} fields, failures: [{}]", bad.join(", ")))
}

fn complex_eval(p: &kvfcl_core::RationalPolynomial, z: Complex<f64>) -> (Complex<f64>, f64) {
    let mut acc = Complex::new(0.0, 0.0);
    let mut scale = 0.0;
    for c in p.coeffs().iter().rev() {
        acc = acc * z + Complex::new(to_f64(c), 0.0);
        scale = scale * z.norm() + to_f64(c).abs();
    }
    (acc, scale)
}

fn crit8() -> Outcome {
    let docs: Vec<(SpaceDocument, ReductiveSpace)> = spaces();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad = Vec::new();
    for i in 0..JC_OPERATORS {
        let (doc, s) = &docs[rng.random_range(0..docs.len())];
        let alg = s.algebra();
        let x = random_field(&mut rng, alg.dim());
        let l = alg.ad(&x);
        let n = l.rows();
        let Ok((ls, ln)) = jordan_chevalley(&l) else {
            bad.push(format!("#{i} {}: no decomposition", doc.name));
            continue;
        };
        let sum_ok = &ls + &ln == l;
        let commute = (&(&ls * &ln) + &(&ln * &ls).scale(&int(-1))).is_zero();
        let nilpotent = ln.pow(n as u32).is_zero();
        let squarefree = min_poly(&ls).is_squarefree();
        let p = char_poly(&l);
        let eig = ls.to_f64().complex_eigenvalues();
        let float_ok = eig.iter().all(|z| {
            let (v, scale) = complex_eval(&p, *z);
            v.norm() <= FLOAT_TOL * scale.max(1.0)
        });
        if !(sum_ok && commute && nilpotent && squarefree && float_ok) {
            bad.push(format!(
                "#{i} {}: sum {sum_ok} commute {commute} nilpotent {nilpotent} squarefree {squarefree} float {float_ok}",
                doc.name
            ));
        }
    }
    outcome(bad.is_empty(), format!("{JC_OPERATORS} operators, failures: [{}]", bad.join("; ")))
}

fn crit9() -> Outcome {
    let mut passed = 0;
    let mut bad = Vec::new();
    for (doc, s) in spaces() {
        if s.declared_go() != Some(true) {
            continue;
        }
        let ctx = Context::new(doc.name.clone(), &s, SamplingConfig::default());
        for id in ["prop-3.7", "prop-3.8"] {
            match theorems::verify_or_skip(id, &ctx, None) {
                Ok(f) if f.status == Status::Passed => passed += 1,
                Ok(f) if f.status == Status::Skipped => {}
                Ok(f) => bad.push(format!("{id} on {}: {:?}", doc.name, f.status)),
                Err(e) => bad.push(format!("{id} on {}: {e}", doc.name)),
            }
        }
    }
    outcome(passed > 0 && bad.is_empty(), format!("{passed} checks passed, failures: [{}]", bad.join(", ")))
}

fn crit10() -> Outcome {
    let cfg = SamplingConfig {
        samples: 50,
        ..SamplingConfig::default()
    };
    let mut counter = 0;
    let mut probes = 0;
    let mut crashed = Vec::new();
    for (doc, s) in spaces() {
        let run = catch_unwind(AssertUnwindSafe(|| {
            let ctx = Context::new(doc.name.clone(), &s, cfg);
            let fields = theorems::default_fields(&s, &[]);
            theorems::probe_conjectures(&ctx, &fields)
        }));
        match run {
            Ok(findings) => {
                probes += findings.len();
                counter += theorems::counterexamples(&findings);
            }
            Err(_) => crashed.push(doc.name.clone()),
        }
    }
    outcome(
        crashed.is_empty(),
        format!("{probes} probe findings, {counter} counterexamples, crashed: [{}]", crashed.join(", ")),
    )
}

fn crit11() -> Outcome {
    let params = Parameters {
        samples: 50,
        ..Parameters::default()
    };
    let mut ok = true;
    let mut names = Vec::new();
    for doc in [corpus::build_heis_go(1), corpus::build_so3()] {
        let input = Input::from_document(&doc).expect("input");
        let a = cmd_verify(&input, &params, &[]).expect("verify");
        let b = cmd_verify(&input, &params, &[]).expect("verify");
        ok &= a.to_json() == b.to_json() && a.to_markdown() == b.to_markdown();
        names.push(doc.name);
    }
    outcome(ok, format!("byte-identical reports on {}", names.join(", ")))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("1 pure-imaginary spectrum of certified fields", crit1),
        ("2 hyperbolic plane negative control", crit2),
        ("3 Fitting exponent at most 2", crit3),
        ("4 block determinant identity", crit4),
        ("5 nilradical center vs complement on heis_go_1", crit5),
        ("6 geodesic-orbit consistency, 1000 samples", crit6),
        ("7 sigma and graded brackets", crit7),
        ("8 Jordan-Chevalley decomposition", crit8),
        ("9 structural facts of geodesic-orbit spaces", crit9),
        ("10 conjecture probes", crit10),
        ("11 deterministic reports", crit11),
    ];
    let mut failures = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let o = catch_unwind(f).unwrap_or_else(|_| outcome(false, "panicked"));
        let tag = if o.ok { "PASS" } else { "FAIL" };
        if !o.ok {
            failures += 1;
        }
        println!("[{tag}] criterion {name} ({:.2?}): {}", start.elapsed(), o.detail);
    }
    println!("acceptance: {} passed, {failures} failed", 11 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
