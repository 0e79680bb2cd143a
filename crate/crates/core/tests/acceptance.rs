//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gammatri::triangles::{f_triangle_from_h, gamma_from_h, gamma_triangle_from_h, h_triangle_from_f, GammaVector};
use gammatri::verify::{
    a3_example, binomial_identity, carlitz, polygon_family, properties, series_identities, tables, three_way,
    Check,
};
use gammatri::{BigInt, GammaTriangle, IntPoly2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    summary: String,
    failures: Vec<String>,
}

fn from_checks(checks: Vec<Check>) -> Outcome {
    let total = checks.len();
    let failures: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    Outcome {
        passed: total > 0 && failures.is_empty(),
        summary: format!("{}/{total} checks", total - failures.len()),
        failures,
    }
}

fn random_f_triangle(rng: &mut ChaCha8Rng, d: usize) -> IntPoly2 {
    let mut terms = Vec::new();
    for i in 0..=d {
        for j in 0..=d - i {
            terms.push(((i, j), BigInt::from(rng.gen_range(-50i64..=50))));
        }
    }
    IntPoly2::from_terms(terms)
}

fn random_gamma_triangle(rng: &mut ChaCha8Rng, d: usize) -> GammaTriangle {
    let mut terms = Vec::new();
    for i in 0..=d / 2 {
        for j in 0..=d - 2 * i {
            terms.push(((i, j), BigInt::from(rng.gen_range(-30i64..=30))));
        }
    }
    GammaTriangle::new(IntPoly2::from_terms(terms), d).expect("entries lie in the triangle")
}

/// F↔H, h↔γ and H↔Γ on seeded random inputs with `d <= 8`.
fn round_trips(cases: usize) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut fh, mut hg, mut hgam) = (Vec::new(), Vec::new(), Vec::new());
    for case in 0..cases {
        let d = rng.gen_range(0..=8usize);

        let f = random_f_triangle(&mut rng, d);
        let back = h_triangle_from_f(&f, d).and_then(|h| f_triangle_from_h(&h, d));
        if back.as_ref() != Ok(&f) {
            fh.push(format!("case {case}, d = {d}, F = {f}"));
        }

        let entries: Vec<BigInt> = (0..=d / 2).map(|_| BigInt::from(rng.gen_range(-40i64..=40))).collect();
        let gv = GammaVector { degree: d, entries };
        let again = gamma_from_h(&gv.to_h(), d).map(|g| g.entries);
        if again.as_ref() != Ok(&gv.entries) {
            hg.push(format!("case {case}, d = {d}, γ = {:?}", gv.entries));
        }

        let g = random_gamma_triangle(&mut rng, d);
        let back = gamma_triangle_from_h(&g.to_h_triangle(), d);
        if back.as_ref() != Ok(&g) {
            hgam.push(format!("case {case}, d = {d}, Γ = {}", g.poly()));
        }
    }
    [("F <-> H", fh), ("h <-> γ", hg), ("H <-> Γ", hgam)]
        .into_iter()
        .map(|(name, bad)| {
            Check::new(
                format!("random round trip {name} ({cases} cases)"),
                bad.is_empty(),
                bad.join("; "),
            )
        })
        .collect()
}

fn timed(limit: Duration, checks: impl FnOnce() -> Vec<Check>) -> Outcome {
    let start = Instant::now();
    let mut outcome = from_checks(checks());
    let elapsed = start.elapsed();
    if elapsed > limit {
        outcome.passed = false;
        outcome.failures.push(format!("took {elapsed:?}, limit {limit:?}"));
    }
    outcome.summary = format!("{}, {:.2?}", outcome.summary, elapsed);
    outcome
}

type Criterion = (&'static str, Box<dyn FnOnce() -> Outcome>);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("polygon family n = 3..12", Box::new(|| from_checks(polygon_family()))),
        ("A3 example matrices", Box::new(|| from_checks(a3_example()))),
        (
            "three-way Γ agreement A1..A6",
            Box::new(|| timed(Duration::from_secs(30), || three_way(6))),
        ),
        ("stored tables reproduced", Box::new(|| from_checks(tables()))),
        ("series identities at order 24", Box::new(|| from_checks(series_identities(24)))),
        ("Carlitz convolutions k <= 6, m <= 6, l <= 6", Box::new(|| from_checks(carlitz(6, 6, 6)))),
        ("binomial identity n <= 40", Box::new(|| from_checks(binomial_identity(40)))),
        (
            "property suites",
            Box::new(|| {
                let mut checks = properties(6);
                checks.extend(round_trips(200));
                from_checks(checks)
            }),
        ),
    ];
    let mut all = true;
    for (n, (name, run)) in criteria.into_iter().enumerate() {
        let outcome = run();
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        println!("{status} criterion {}: {name} ({})", n + 1, outcome.summary);
        for f in &outcome.failures {
            println!("    {f}");
        }
        all &= outcome.passed;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
