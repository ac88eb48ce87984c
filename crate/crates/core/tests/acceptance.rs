//! Acceptance criteria C1–C8, one PASS/FAIL line each. Exits nonzero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cfree::measures::{limit_experiment, LimitConfig};
use cfree::random;
use cfree::verify::{self, Check};
use num_rational::BigRational;

struct Criterion {
    id: &'static str,
    title: &'static str,
    checks: Vec<Check>,
    elapsed: Duration,
}

fn timed(id: &'static str, title: &'static str, body: impl FnOnce() -> Vec<Check>) -> Criterion {
    let start = Instant::now();
    let checks = body();
    Criterion { id, title, checks, elapsed: start.elapsed() }
}

fn runtime_check(name: &str, elapsed: Duration, limit: Duration) -> Check {
    Check {
        name: format!("{name} runtime under {}s", limit.as_secs()),
        passed: elapsed < limit,
        detail: format!("{:.2}s", elapsed.as_secs_f64()),
    }
}

fn c1() -> Criterion {
    let mut c = timed("C1", "enumeration counts", || {
        vec![verify::nc_counts(8), verify::ncl_counts(8), verify::small_class_counts()]
    });
    let rt = runtime_check("enumeration", c.elapsed, Duration::from_secs(60));
    c.checks.push(rt);
    c
}

fn c2() -> Criterion {
    timed("C2", "exact identity suite, 100 cases each", || {
        let mut rng = random::rng(2002);
        vec![
            verify::cumulant_round_trips(&mut rng, 100, 8),
            verify::kreweras_identities(7),
            verify::boxed_inverse_identity(&mut rng, 100, 6),
            verify::product_law(&mut rng, 100, 5),
            verify::fibre_decomposition(&mut rng, 100, 4),
        ]
    })
}

fn c3() -> Criterion {
    timed("C3", "T and ᶜT multiplicativity on NC_0 products", || {
        let mut rng = random::rng(2003);
        vec![verify::multiplicativity(&mut rng, 25, 5), verify::closed_product_formula(&mut rng, 25, 5)]
    })
}

fn c4() -> Criterion {
    timed("C4", "NCL three-way oracle", || {
        let mut rng = random::rng(2004);
        vec![verify::ncl_three_way(&mut rng, 25, 8), verify::ncl_witnesses(&mut rng)]
    })
}

fn c5() -> Criterion {
    timed("C5", "Σ dual route", || {
        let mut rng = random::rng(2005);
        vec![verify::sigma_dual_route(&mut rng, 25, 8)]
    })
}

fn c6() -> Criterion {
    timed("C6", "infinite divisibility", || {
        let mut rng = random::rng(2006);
        vec![
            verify::generator_roots(&mut rng, 5, 6),
            verify::semigroup_law(&mut rng, 8),
            verify::haar_absorption(&mut rng, 25, 8),
        ]
    })
}

fn c7() -> Criterion {
    let mut c = timed("C7", "limit experiment", || {
        let config = LimitConfig {
            s: 0.5,
            omega_turns: BigRational::new(1.into(), 4.into()),
            n_list: vec![4, 8, 16, 32],
            order: 5,
        };
        let report = match limit_experiment(&config) {
            Ok(r) => r,
            Err(e) => return vec![Check { name: "limit experiment".into(), passed: false, detail: e.to_string() }],
        };
        let sups: Vec<String> = report.steps.iter().map(|s| format!("n={}: {:.3e}", s.n, s.sup_gap)).collect();
        vec![
            Check {
                name: "sup_j≤4 gap strictly decreasing in n".into(),
                passed: report.gaps_strictly_decreasing,
                detail: sups.join(", "),
            },
            Check {
                name: "sup gap < 1e-2 at n = 32".into(),
                passed: report.final_sup_gap < 1e-2,
                detail: format!("{:.3e}", report.final_sup_gap),
            },
            Check {
                name: "γ_n and first two σ_n-moments move monotonically toward the fit".into(),
                passed: report.generator_monotone,
                detail: format!(
                    "fitted γ = ({:.4}, {:.4}), mass {:.4}",
                    report.fitted.gamma[0], report.fitted.gamma[1], report.fitted.mass
                ),
            },
        ]
    });
    let rt = runtime_check("limit experiment", c.elapsed, Duration::from_secs(120));
    c.checks.push(rt);
    c
}

fn c8() -> Criterion {
    timed("C8", "Toeplitz PSD gate on convolution outputs", || {
        let mut rng = random::rng(2008);
        vec![verify::convolution_psd(&mut rng, 50, 8, 1e-7), verify::pair_algebra(&mut rng, 10, 6)]
    })
}

fn main() -> ExitCode {
    let criteria = [c1(), c2(), c3(), c4(), c5(), c6(), c7(), c8()];
    let mut failed = 0;
    for c in &criteria {
        let passed = c.checks.iter().all(|ch| ch.passed);
        if !passed {
            failed += 1;
        }
        let tag = if passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {} {} ({:.2}s)", c.id, c.title, c.elapsed.as_secs_f64());
        for ch in &c.checks {
            println!("       {ch}");
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
