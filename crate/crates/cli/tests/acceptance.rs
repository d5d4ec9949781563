//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact.

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;

use gfc::commands::{cmd_scan, expand_spec, polys_hash, run_bench, verify_spec, DEFAULT_CHECKS};
use gfc::resultdoc::ResultDoc;
use gfc::specfile::SpecFile;
use gfc_core::rational::{frac, int};
use gfc_core::recurrence::identities::{
    check_gf10, check_gf11, check_gf12, check_gf9, check_solricati, IdentityCheck,
};
use gfc_core::{
    classify, expand, extract_ttrr, family_alpha, family_omega, family_omega_or_fallback, family_polys,
    verify_gf7, verify_rescaling, Check, CheckStatus, DerivedSequences, FamilyError, FamilyKind, FamilyParams,
    GenFunSpec, Knob, Poly, Rational, Verdict,
};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    frac(sign * rng.gen_range(1..=9), rng.gen_range(1..=6))
}

fn any_rational(rng: &mut impl Rng) -> Rational {
    if rng.gen_bool(0.25) {
        Rational::zero()
    } else {
        nonzero_rational(rng)
    }
}

/// `P_{n+1} = (x - beta_n) P_n - omega_n P_{n-1}` with zero betas.
fn replay(omega: impl Fn(usize) -> Rational, n_max: usize) -> Vec<Poly> {
    let mut polys = vec![Poly::one(), Poly::x()];
    for n in 1..n_max {
        let next = polys[n].shift_up() - polys[n - 1].scale(&omega(n));
        polys.push(next);
    }
    polys.truncate(n_max + 1);
    polys
}

fn quadratic_spec(params: &FamilyParams, order: usize) -> GenFunSpec {
    GenFunSpec::quadratic(family_alpha(params, order).unwrap(), params.t1.clone()).unwrap()
}

fn criterion_1_hermite() {
    let spec = SpecFile::read(&fixture("hermite.json")).unwrap().to_spec(None).unwrap();
    assert_eq!(spec.order(), 30);
    let mut fact = Rational::one();
    for n in 1..=30 {
        fact *= int(n as i64);
        assert_eq!(spec.alpha_n(n), &fact.recip());
    }
    let c = classify(&spec).unwrap();
    assert_eq!(c.verdict, Verdict::Hermite);
    let p = c.params.clone().unwrap();
    assert_eq!((p.lambda1, p.lambda2, p.t1), (int(1), int(0), int(1)));
    let rec = c.recurrence.unwrap();
    for n in 1..=29 {
        assert_eq!(rec.omega(n), Some(&int(n as i64)), "omega_{n}");
        assert_eq!(rec.beta(n), Some(&int(0)));
    }
    let ps = expand(&spec).unwrap();
    let fam = family_polys(c.params.as_ref().unwrap(), 30).unwrap();
    assert_eq!(ps, fam);
    assert_eq!(ps.polys(), replay(|n| int(n as i64), 30).as_slice());
}

fn criterion_2_legendre() {
    let spec = SpecFile::read(&fixture("legendre.json")).unwrap().to_spec(None).unwrap();
    // (1 - 2t)^{-1/2}: alpha_n = (2n)! / (2^n n!^2)
    let mut a = Rational::one();
    for n in 1..=30i64 {
        a = a * int(2 * n - 1) / int(n);
        assert_eq!(spec.alpha_n(n as usize), &a);
    }
    let c = classify(&spec).unwrap();
    assert_eq!(c.verdict, Verdict::Ultraspherical);
    assert_eq!(c.params.as_ref().unwrap().lambda, Some(frac(1, 2)));
    let rec = c.recurrence.as_ref().unwrap();
    for n in 1..=29i64 {
        assert_eq!(rec.omega(n as usize), Some(&frac(n * n, 4 * n * n - 1)), "omega_{n}");
    }
    let cert = c.certificate.as_ref().unwrap();
    assert!(cert.is_green(), "failed: {:?}", cert.failed());
    for check in Check::ALL {
        assert_eq!(cert.status(check), CheckStatus::Pass, "{check}");
    }
    let d = DerivedSequences::new(&spec, rec).unwrap();
    let IdentityCheck::Holds { instances } = check_gf12(&d) else { panic!("gf12 does not hold") };
    // T_{k+1} exists for k + 1 <= 15, and 2k + 1 <= n <= 29
    let expected: usize = (2..=14).map(|k| 29 - 2 * k).sum();
    assert_eq!(instances, expected);
    assert!(matches!(check_gf11(&d), IdentityCheck::Holds { instances: 27 }));
}

fn criterion_3_chebyshev() {
    let spec = SpecFile::read(&fixture("chebyshev.json")).unwrap().to_spec(None).unwrap();
    for n in 1..=30 {
        assert_eq!(spec.alpha_n(n), &frac(1 << (n - 1), n as i64));
    }
    let c = classify(&spec).unwrap();
    assert_eq!(c.verdict, Verdict::Chebyshev1);
    assert!(c.certificate.as_ref().unwrap().is_green());
    let rec = c.recurrence.as_ref().unwrap();
    assert_eq!(rec.omega(1), Some(&frac(1, 2)));
    for n in 2..=29 {
        assert_eq!(rec.omega(n), Some(&frac(1, 4)), "omega_{n}");
    }
    let params = c.params.as_ref().unwrap();
    assert_eq!(family_omega(params, 1), Err(FamilyError::SingularIndex(1)));
    assert_eq!(family_omega_or_fallback(params, 1).unwrap(), frac(1, 2));
    for n in 2..=29 {
        assert_eq!(family_omega(params, n).unwrap(), frac(1, 4));
    }
    let d = DerivedSequences::new(&spec, rec).unwrap();
    assert!(check_gf10(rec, &d).holds());
}

fn criterion_4_monomial() {
    let mut r = rng(4);
    for case in 0..50 {
        let alpha: Vec<Rational> =
            std::iter::once(Rational::one()).chain((1..=12).map(|_| nonzero_rational(&mut r))).collect();
        let spec = GenFunSpec::new(alpha, vec![Rational::zero(); 12], 12).unwrap();
        let ps = expand(&spec).unwrap();
        for (n, p) in ps.polys().iter().enumerate() {
            assert_eq!(p, &Poly::monomial(Rational::one(), n), "case {case}, P_{n}");
        }
        let rec = extract_ttrr(&ps).unwrap();
        assert!(rec.holds());
        assert!(rec.betas.iter().chain(&rec.omegas).all(Zero::is_zero));
        assert_eq!(classify(&spec).unwrap().verdict, Verdict::Monomial, "case {case}");
    }
}

fn criterion_5_universality() {
    let mut r = rng(5);
    for case in 0..100 {
        let alpha: Vec<Rational> =
            std::iter::once(Rational::one()).chain((1..=12).map(|_| nonzero_rational(&mut r))).collect();
        let rs: Vec<Rational> =
            std::iter::once(Rational::zero()).chain((2..=12).map(|_| any_rational(&mut r))).collect();
        let spec = GenFunSpec::new(alpha, rs, 12).unwrap();
        let ps = expand(&spec).unwrap();
        let report = verify_gf7(&spec, &ps, 11).unwrap();
        assert_eq!(report.residuals.len(), 11);
        assert!(report.passed(), "case {case}: {:?}", report.first_failure());
    }
}

fn criterion_6_rigidity() {
    let mut r = rng(6);
    for case in 0..50 {
        let alpha: Vec<Rational> =
            std::iter::once(Rational::one()).chain((1..=16).map(|_| nonzero_rational(&mut r))).collect();
        let mut rs = vec![Rational::zero(); 16];
        rs[1] = nonzero_rational(&mut r);
        for n in 3..=8 {
            if r.gen_bool(0.4) {
                rs[n - 1] = nonzero_rational(&mut r);
            }
        }
        let forced = r.gen_range(3..=8);
        rs[forced - 1] = nonzero_rational(&mut r);
        let spec = GenFunSpec::new(alpha, rs, 16).unwrap();
        let rec = extract_ttrr(&expand(&spec).unwrap()).unwrap();
        let f = rec.failure.as_ref().unwrap_or_else(|| panic!("case {case}: recurrence held"));
        assert!(f.n <= 15 && !f.residual.is_zero(), "case {case}");
    }
    let path = fixture("hermite.json");
    let values = [int(0), int(1)];
    let first = cmd_scan(&path, Knob::R(3), &values).unwrap();
    assert_eq!(first, cmd_scan(&path, Knob::R(3), &values).unwrap());
    let mut rows = csv::Reader::from_reader(first.as_bytes());
    let rows: Vec<_> = rows.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!((&rows[0][0], &rows[0][1], &rows[0][2]), ("0", "hermite", "-"));
    assert_eq!((&rows[1][0], &rows[1][1]), ("1", "not_ttrr"));
    assert!(rows[1][2].parse::<usize>().unwrap() <= 4);
    let single = cmd_scan(&path, Knob::R(4), &[int(0)]).unwrap();
    assert_eq!(single, "knob_value,verdict,first_failure_n\n0,hermite,-\n");
}

fn random_family(r: &mut impl Rng) -> FamilyParams {
    let t1 = nonzero_rational(r);
    loop {
        let params = match r.gen_range(0..3) {
            0 => FamilyParams::ultraspherical(nonzero_rational(r), nonzero_rational(r), t1.clone()),
            1 => FamilyParams::chebyshev1(nonzero_rational(r), t1.clone()),
            _ => FamilyParams::hermite(nonzero_rational(r), t1.clone()),
        };
        if let Ok(p) = params {
            return p;
        }
    }
}

fn criterion_7_identities() {
    let mut r = rng(7);
    for case in 0..30 {
        let params = random_family(&mut r);
        let spec = quadratic_spec(&params, 24);
        let ps = expand(&spec).unwrap();
        let rec = extract_ttrr(&ps).unwrap();
        assert!(rec.holds(), "case {case}");
        let d = DerivedSequences::new(&spec, &rec).unwrap();
        let checks = [
            ("gf9", check_gf9(&rec)),
            ("gf10", check_gf10(&rec, &d)),
            ("gf11", check_gf11(&d)),
            ("gf12", check_gf12(&d)),
            ("solricati", check_solricati(&d)),
        ];
        for (name, check) in checks {
            match check {
                IdentityCheck::Holds { instances } => assert!(instances > 0, "case {case}: {name} vacuous"),
                other => panic!("case {case}: {name} {other:?}"),
            }
        }
        assert!(gfc_core::is_symmetric(&ps));
        assert!(spec.r_coeffs().iter().step_by(2).all(Zero::is_zero));
        if case % 5 == 0 {
            let (doc, code) = verify_spec(&spec, &DEFAULT_CHECKS).unwrap();
            assert_eq!(code, 0, "case {case}: {:?}", doc.diagnostics);
        }
    }
}

fn criterion_8_rescaling() {
    let lambdas = [frac(1, 2), int(1), frac(3, 2), frac(5, 2)];
    let ratios = [int(1), frac(1, 4), int(9)];
    let lambda2 = int(2);
    let mut cases = Vec::new();
    for lambda in &lambdas {
        for ratio in &ratios {
            // lambda2 / (2 T1) = ratio
            let t1 = &lambda2 / (int(2) * ratio);
            let p = FamilyParams::ultraspherical(lambda * &lambda2, lambda2.clone(), t1).unwrap();
            assert_eq!(p.scale_sq, ratio.recip());
            cases.push(p);
        }
    }
    for ratio in &ratios {
        cases.push(FamilyParams::chebyshev1(lambda2.clone(), &lambda2 / (int(2) * ratio)).unwrap());
        cases.push(FamilyParams::hermite(int(1), ratio.recip()).unwrap());
    }
    let order = 14;
    let expanded: Vec<_> = cases.iter().map(|p| expand(&quadratic_spec(p, order)).unwrap()).collect();
    for (i, ps) in expanded.iter().enumerate() {
        assert!(verify_rescaling(ps, &cases[i]).unwrap(), "{:?}", cases[i]);
        for (j, other) in cases.iter().enumerate() {
            if other.kind != cases[i].kind || other.lambda != cases[i].lambda {
                assert!(!verify_rescaling(ps, other).unwrap(), "{:?} matched {:?}", cases[i], other);
            }
            if i != j {
                assert_ne!(ps, &expanded[j]);
            }
        }
    }
    assert!(cases.iter().any(|p| p.kind == FamilyKind::Chebyshev1));
}

fn criterion_9_determinism() {
    let rows = run_bench(16, 3).unwrap();
    assert_eq!(rows.iter().map(|r| r.order).collect::<Vec<_>>(), [4, 8, 16]);
    assert!(rows.iter().all(|r| r.identical));
    let again = run_bench(16, 1).unwrap();
    assert_eq!(rows.iter().map(|r| &r.hash).collect::<Vec<_>>(), again.iter().map(|r| &r.hash).collect::<Vec<_>>());

    let spec = gfc::commands::bench_spec(24);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let single = pool.install(|| polys_hash(&expand_spec(&spec).unwrap()));
    assert_eq!(single, polys_hash(&expand_spec(&spec).unwrap()));

    let mut seen = 0;
    for entry in std::fs::read_dir(fixture("")).unwrap() {
        let path = entry.unwrap().path();
        let file = SpecFile::read(&path).unwrap();
        assert_eq!(SpecFile::from_json(&file.to_json()).unwrap(), file, "{}", path.display());
        let spec = match file.to_spec(None) {
            Ok(s) => s,
            Err(e) => {
                assert_eq!(e.exit_code(), 3);
                continue;
            }
        };
        let docs = match classify(&spec) {
            Ok(c) => vec![ResultDoc::from_classification(&spec, &c), expand_spec(&spec).unwrap()],
            Err(_) => continue,
        };
        for doc in docs {
            let text = doc.to_json();
            assert!(!text.contains('.') || doc.diagnostics.iter().any(|d| d.contains('.')));
            assert_eq!(ResultDoc::from_json(&text).unwrap(), doc);
        }
        seen += 1;
    }
    assert!(seen >= 7);
}

fn main() {
    let criteria: [(&str, fn()); 9] = [
        ("1 hermite reproduction", criterion_1_hermite),
        ("2 legendre reproduction", criterion_2_legendre),
        ("3 chebyshev reproduction", criterion_3_chebyshev),
        ("4 monomial when R = 0", criterion_4_monomial),
        ("5 structural identity on random specs", criterion_5_universality),
        ("6 rigidity and scan frontier", criterion_6_rigidity),
        ("7 identity suite on random families", criterion_7_identities),
        ("8 rescaling grid", criterion_8_rescaling),
        ("9 determinism and round-trip", criterion_9_determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f));
        let secs = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("PASS criterion {name} ({secs} ms)"),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
