//! Acceptance run: one PASS/FAIL line per criterion, each with its time
//! bound. Exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use clonoid::constructions::{boolean, build_f, build_pq, independent_factors, product_algebra};
use clonoid::verify::{run_verification, VerificationReport};
use clonoid::{classify_boolean, cube_term_blocker, is_polymorphism, Budget, Verdict};

type Criterion = (u32, &'static str, u64, Box<dyn Fn() -> Outcome>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn suite(id: &str, params: &[(&str, &str)], expected_checks: Option<usize>) -> Outcome {
    let params: Vec<(String, String)> = params
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    match run_verification(id, &params, Budget::default()) {
        Err(e) => Outcome {
            pass: false,
            detail: format!("{id}: {e}"),
        },
        Ok(r) => report_outcome(&r, expected_checks),
    }
}

fn report_outcome(r: &VerificationReport, expected_checks: Option<usize>) -> Outcome {
    let passed = r.checks.iter().filter(|c| c.pass).count();
    let count_ok = expected_checks.map_or(true, |n| n == r.checks.len());
    let mut detail = format!("{passed}/{} checks", r.checks.len());
    if !count_ok {
        detail.push_str(&format!(", expected {} checks", expected_checks.unwrap()));
    }
    if let Some(c) = r.failures().next() {
        detail.push_str(&format!(
            "; first failure: {} (expected {}, actual {})",
            c.description, c.expected, c.actual
        ));
    }
    Outcome {
        pass: r.overall && count_ok,
        detail,
    }
}

fn f_grid() -> Outcome {
    let mut checks = 0;
    let mut bad = Vec::new();
    for k in 1..=5 {
        let f = build_f(2, k).unwrap();
        for n in 1..=5 {
            let pq = build_pq(n, 2, 2).unwrap();
            let got = is_polymorphism(&f, &pq).unwrap();
            let oracle = common::naive_preserves(&f, &pq);
            checks += 1;
            if got != (k != n) || oracle != got {
                bad.push(format!("f_{k} on (P_{n},Q_{n})"));
            }
        }
    }
    Outcome {
        pass: bad.is_empty() && checks == 25,
        detail: format!("{}/{checks} checks {}", checks - bad.len(), bad.join(", ")),
    }
}

fn classification() -> Outcome {
    let rows = [
        ("maj", boolean::majority(), Verdict::Finite),
        ("x+y+z", boolean::minority(), Verdict::CountablyInfinite),
        (
            "+,0,1",
            boolean::affine_with_constants(),
            Verdict::CountablyInfinite,
        ),
        ("and", boolean::meet(), Verdict::Continuum),
        (
            "and,0,1",
            boolean::meet_with_constants(),
            Verdict::Continuum,
        ),
        ("not,0", boolean::negation_with_zero(), Verdict::Continuum),
        (
            "not-implies",
            boolean::non_implication(),
            Verdict::Continuum,
        ),
        ("no ops", boolean::no_ops(), Verdict::Continuum),
    ];
    let mut bad = Vec::new();
    for (name, b, want) in &rows {
        match classify_boolean(b, 5, Budget::default()) {
            Ok(r) if r.verdict == *want => {}
            Ok(r) => bad.push(format!(
                "{name}: {} instead of {}",
                r.verdict.as_str(),
                want.as_str()
            )),
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "{}/{} rows {}",
            rows.len() - bad.len(),
            rows.len(),
            bad.join("; ")
        ),
    }
}

fn blockers() -> Outcome {
    let (b1, b2) = independent_factors();
    let rows = [
        ("and", boolean::meet(), Some(vec![0])),
        ("x+y+z", boolean::minority(), None),
        ("maj", boolean::majority(), None),
        ("B1 x B2", product_algebra(&b1, &b2).unwrap(), None),
    ];
    let mut bad = Vec::new();
    let mut closure_checks = 0;
    for (name, b, want) in &rows {
        let got = cube_term_blocker(b);
        if got.as_ref().map(|v| v.elements().to_vec()) != *want {
            bad.push(format!("{name}: got {got:?}"));
        }
        if let Some(v) = got {
            for n in 1..=4 {
                closure_checks += 1;
                if !v.t_is_subuniverse(b, n) {
                    bad.push(format!("{name}: T_{n} not closed"));
                }
            }
        }
    }
    Outcome {
        pass: bad.is_empty() && closure_checks == 4,
        detail: format!(
            "{} rows, {closure_checks} T_n checks {}",
            rows.len(),
            bad.join("; ")
        ),
    }
}

fn properties() -> Outcome {
    type Part = (&'static str, fn() -> common::Check);
    let parts: [Part; 6] = [
        ("minor functoriality", || {
            common::minor_functoriality(3, 3, 10)
        }),
        ("minor/pointwise commutation", || {
            common::pointwise_commutation(3, 3, 11)
        }),
        ("Pol minor-closure", || {
            common::pol_minor_closure(3, 3, 200, 12)
        }),
        ("closure laws", || common::closure_laws(3, 3, 13)),
        ("round trip", || common::round_trip(3, 3, 500, 14)),
        ("random cases", || common::random_cases(1000, 15)),
    ];
    let mut detail = Vec::new();
    let mut pass = true;
    for (name, run) in parts {
        let start = Instant::now();
        let r = run();
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(n) => detail.push(format!("{name} {n} ({secs:.1}s)")),
            Err(e) => {
                pass = false;
                detail.push(format!("{name} FAILED: {e}"));
            }
        }
    }
    Outcome {
        pass,
        detail: detail.join(", "),
    }
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (1, "f_k preserves (P_n,Q_n) iff k != n", 1, Box::new(f_grid)),
        (
            2,
            "e_k chain over ({0,1},+,0,1)",
            10,
            Box::new(|| suite("lemma-3.2", &[], None)),
        ),
        (
            3,
            "membership grid over ({0,1},and)",
            60,
            Box::new(|| suite("eq-4.1", &[], Some(24))),
        ),
        (
            4,
            "membership grid over ({0,1},not,0)",
            60,
            Box::new(|| suite("lemma-4.4", &[], Some(24))),
        ),
        (
            5,
            "slices over ({0,1},not-implies) preserve (P_m,Q_m)",
            120,
            Box::new(|| suite("lemma-4.5", &[], None)),
        ),
        (
            6,
            "member = bp_member over ({0,1},maj)",
            60,
            Box::new(|| suite("thm-2.1", &[("seed", "2024")], None)),
        ),
        (7, "classification table", 30, Box::new(classification)),
        (8, "blocker table", 5, Box::new(blockers)),
        (
            9,
            "separation witnesses",
            120,
            Box::new(|| suite("separation", &[], Some(18))),
        ),
        (10, "property suites", 60, Box::new(properties)),
    ];
    let mut failed = 0;
    for (n, name, bound, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(bound);
        let pass = outcome.pass && in_time;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {n:>2} {}: {name} [{:.2}s / {bound}s{}] {}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            if in_time { "" } else { ", over time" },
            outcome.detail
        );
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
