//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hyperfns::eisenstein::EtaVector;
use hyperfns::fixtures;
use hyperfns::fourier::{
    hy_ratio_refinement, paley_wiener_check, plancherel_check, rl_decay_profile, Profile, QuadratureConfig,
    RadialProfile, XI_MAX,
};
use hyperfns::verify::{self, Check};
use hyperfns::{KType, Space, C64};

fn sp(p: u32, q: u32) -> Space {
    Space::new(p, q).expect("valid space")
}

struct Outcome {
    pass: bool,
    summary: String,
}

fn from_checks(checks: &[Check], tol: Option<f64>) -> Outcome {
    let pass = checks.iter().all(|c| match tol {
        Some(t) => c.passes_at(t),
        None => c.pass,
    });
    let summary = checks
        .iter()
        .map(|c| format!("{} {:.2e}/{:e} n={}", c.name, c.worst, tol.unwrap_or(c.tol), c.samples))
        .collect::<Vec<_>>()
        .join("; ");
    let failures: Vec<String> = checks.iter().filter(|c| !c.pass).map(|c| format!("[{}]", c)).collect();
    let summary = if failures.is_empty() { summary } else { format!("{summary} {}", failures.join(" ")) };
    Outcome { pass, summary }
}

const ROUTE_SPACES: [(u32, u32); 4] = [(2, 1), (3, 2), (5, 3), (7, 2)];

fn route_spaces() -> Vec<Space> {
    ROUTE_SPACES.iter().map(|&(p, q)| sp(p, q)).collect()
}

fn dual_route() -> Outcome {
    from_checks(&[verify::dual_route(&route_spaces(), None)], None)
}

fn ode_residuals() -> Outcome {
    let spaces = route_spaces();
    let with_k: Vec<(Space, KType)> = spaces
        .iter()
        .flat_map(|s| {
            [(1, 0), (0, 2), (2, 1)].into_iter().map(|(k, l)| KType::new(k, l)).filter(|k| k.validate(s).is_ok()).map(|k| (*s, k))
        })
        .collect();
    from_checks(
        &[verify::ode_residual_eisenstein(&spaces, &with_k), verify::ode_residual_phi(&spaces, &with_k)],
        None,
    )
}

fn classifier() -> Outcome {
    let mut rng = verify::rng(verify::DEFAULT_SEED);
    from_checks(&verify::classify_empirics(&[sp(3, 2), sp(7, 2)], None, 5.0, 20, &mut rng), None)
}

fn catalog() -> Outcome {
    let cases = [(sp(3, 2), None), (sp(5, 3), None), (sp(7, 3), None), (sp(3, 1), Some(KType::new(0, 4)))];
    from_checks(&[verify::catalog_scan(&cases)], None)
}

fn functional_equations() -> Outcome {
    let spaces = [sp(2, 1), sp(4, 1), sp(3, 2), sp(5, 3), sp(7, 2), sp(3, 3)];
    let mut rng = verify::rng(verify::DEFAULT_SEED);
    let checks = [
        verify::functional_equation(&spaces, None, 200, &mut rng),
        verify::conjugation(&spaces, None, 200, &mut rng),
        verify::c_product(&spaces, None, 200, &mut rng),
    ];
    from_checks(&checks, Some(1e-7))
}

fn jacobi() -> Outcome {
    from_checks(&[verify::jacobi_identity(&[sp(2, 3), sp(3, 3)])], Some(1e-8))
}

fn harnesses() -> Outcome {
    let quad = QuadratureConfig::default();
    let smooth = Profile::smooth_bump(1.0, 2.0).unwrap();
    let poly = Profile::polynomial_bump(0.5, 2.0).unwrap();
    let mut notes = Vec::new();
    let mut pass = true;
    let mut fail = |ok: bool, note: String| {
        pass &= ok;
        notes.push(if ok { note } else { format!("FAILED {note}") });
    };

    // Plancherel: ‖ℱf‖ ≤ ‖f‖₂‖η‖ for every test profile.
    let two_orbit = sp(4, 1);
    let plancherel_cases = [
        (sp(3, 2), RadialProfile::uniform(&sp(3, 2), smooth.clone()), "smooth (3,2)"),
        (sp(3, 2), RadialProfile::uniform(&sp(3, 2), poly.clone()), "poly (3,2)"),
        (sp(7, 2), RadialProfile::uniform(&sp(7, 2), smooth.clone()), "smooth (7,2)"),
        (two_orbit, RadialProfile::new(&two_orbit, vec![smooth.clone(), poly.clone()]).unwrap(), "mixed (4,1)"),
    ];
    for (s, f, label) in &plancherel_cases {
        let eta = match s.n_orbits() {
            2 => EtaVector::new(s, vec![C64::new(1.0, 0.0), C64::new(0.5, -0.5)]).unwrap(),
            _ => EtaVector::ones(s),
        };
        match plancherel_check(s, f, &eta, XI_MAX, &quad) {
            Ok(rep) => fail(rep.lhs <= rep.rhs, format!("plancherel {label} ratio {:.4}", rep.ratio)),
            Err(e) => fail(false, format!("plancherel {label}: {e}")),
        }
    }

    // Hausdorff–Young: finite ratio, stable under ξ_max 100 → 200.
    let s = sp(3, 2);
    let f = RadialProfile::uniform(&s, smooth.clone());
    let eta = EtaVector::ones(&s);
    for (r, lambda0) in [(1.0, 0.5), (1.5, 0.2), (2.0, 0.0)] {
        match hy_ratio_refinement(&s, None, &f, r, lambda0, 5.0, &eta, XI_MAX, &quad) {
            Ok([half, full]) => {
                let finite = half.ratio.is_finite() && full.ratio.is_finite() && full.ratio > 0.0;
                let change = (full.ratio / half.ratio).max(half.ratio / full.ratio);
                fail(finite && change < 2.0, format!("hy r={r} ratio {:.4e} change {change:.4}", full.ratio));
            }
            Err(e) => fail(false, format!("hy r={r}: {e}")),
        }
    }

    // Riemann–Lebesgue: decay along λ₀ + iξ.
    let heights: Vec<f64> = (0..8).map(|j| 2f64.powi(j)).chain([1.0, 100.0]).collect();
    match rl_decay_profile(&s, None, &f, 1.5, 0.2, &heights, &eta, &quad) {
        Ok(v) => {
            let (at1, at100) = (v[8], v[9]);
            fail(at100 < 0.01 * at1, format!("rl |F(0.2+100i)|/|F(0.2+i)| {:.2e}", at100 / at1));
            let early = v[..=2].iter().cloned().fold(0.0, f64::max);
            let late = v[5..8].iter().cloned().fold(0.0, f64::max);
            fail(late < early, format!("rl dyadic envelope {:.2e} < {:.2e}", late, early));
        }
        Err(e) => fail(false, format!("rl: {e}")),
    }

    // Paley–Wiener: fitted exponential rate against the support end.
    let big_r = 3.0;
    let grid: Vec<C64> = (0..=18)
        .map(|i| -6.0 + 0.5 * i as f64)
        .flat_map(|re| (-6..=6).map(move |j| C64::new(re, j as f64 + 0.25)))
        .collect();
    match paley_wiener_check(&s, &f, 2, big_r, &grid, &eta, &quad) {
        Ok(fit) => fail(
            fit.rate <= fit.support_end + 0.05,
            format!("pw rate {:.3} (unweighted {:.3}) vs support end {}", fit.rate, fit.raw_rate, fit.support_end),
        ),
        Err(e) => fail(false, format!("pw: {e}")),
    }
    Outcome { pass, summary: notes.join("; ") }
}

fn fixture_conformance() -> Outcome {
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    let mut n = 0;
    for suite in fixtures::SUITES {
        match fixtures::load_suite(suite) {
            Ok(recs) => {
                for rec in &recs {
                    n += 1;
                    let c = fixtures::check(rec);
                    worst = worst.max(c.rel_err / c.tol);
                    if !c.pass {
                        failures.push(format!("{} rel {:.2e}{}", c.case_id, c.rel_err, c.error.map(|e| format!(" ({e})")).unwrap_or_default()));
                    }
                }
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    Outcome {
        pass: failures.is_empty() && n > 0,
        summary: format!("{n} records, worst error {worst:.2e} of tolerance {}", failures.join("; ")),
    }
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome, Option<u64>); 8] = [
        (1, "dual-route agreement", dual_route, Some(30)),
        (2, "ODE residuals", ode_residuals, Some(60)),
        (3, "classifier vs empirics", classifier, None),
        (4, "catalog correctness", catalog, None),
        (5, "functional equations", functional_equations, None),
        (6, "Jacobi cross-check", jacobi, None),
        (7, "Fourier harnesses", harnesses, Some(300)),
        (8, "fixture conformance", fixture_conformance, None),
    ];
    let mut all = true;
    for (n, name, run, limit) in criteria {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let in_time = limit.map_or(true, |s| took <= Duration::from_secs(s));
        let pass = out.pass && in_time;
        all &= pass;
        let budget = limit.map(|s| format!(", budget {s}s")).unwrap_or_default();
        println!(
            "criterion {n} {}: {name}: {} ({:.1}s{budget})",
            if pass { "PASS" } else { "FAIL" },
            out.summary,
            took.as_secs_f64()
        );
    }
    if all { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
