use super::{singular_distance, Check, Tally, GRID_EXCLUSION};
use crate::eisenstein::{c_function, EtaVector};
use crate::error::Result;
use crate::fixtures::{fourier_inputs, load_suite};
use crate::fourier::{fourier_transform, jacobian, norm_lr, Profile, QuadratureConfig, RadialProfile};
use crate::space::{KType, Space};
use crate::value::{rel_diff, C64};

pub const SYMMETRY_TOL: f64 = 1e-7;
pub const KTYPE_TOL: f64 = 1e-9;
pub const MEASURE_TOL: f64 = 1e-9;

const POINTS: [(f64, f64); 5] = [(0.3, 1.0), (-0.7, 2.5), (1.1, -0.4), (0.2, 4.0), (-1.6, -1.3)];

/// Test data: one bump per orbit, different on the two orbits when q = 1.
fn test_profile(space: &Space) -> RadialProfile {
    let profiles = [Profile::smooth_bump(1.0, 2.0), Profile::polynomial_bump(0.5, 1.5)];
    let per_orbit = (0..space.n_orbits()).map(|i| profiles[i].clone().expect("valid bump")).collect();
    RadialProfile::new(space, per_orbit).expect("one profile per orbit")
}

fn test_eta(space: &Space) -> EtaVector {
    let comps = [C64::new(1.0, 0.5), C64::new(-0.3, 2.0)];
    EtaVector::new(space, comps[..space.n_orbits()].to_vec()).expect("one component per orbit")
}

/// ℱf(−λ)(η) = ℱf(λ)(C°(−1, λ)η) at regular points.
pub fn transform_symmetry(spaces: &[Space], ktype: Option<KType>) -> Check {
    let mut tally = Tally::new();
    let quad = QuadratureConfig::default();
    for s in spaces {
        let kt = ktype.filter(|k| k.validate(s).is_ok());
        let (f, eta) = (test_profile(s), test_eta(s));
        for &(re, im) in &POINTS {
            let lam = C64::new(re, im);
            if singular_distance(s, kt, lam) < GRID_EXCLUSION {
                continue;
            }
            let at = || format!("{s} lambda={lam}");
            let c = c_function(s, kt, lam).value;
            let sides = fourier_transform(s, kt, &f, -lam, &eta, &quad)
                .and_then(|l| Ok((l, fourier_transform(s, kt, &f, lam, &eta.scale(c), &quad)?)));
            match sides {
                Ok((l, r)) => tally.record(rel_diff(l.value, r.value), at),
                Err(e) => tally.error(e, at),
            }
        }
    }
    tally.finish("transform_symmetry", SYMMETRY_TOL)
}

/// Halving the quadrature target moves each transform fixture by less than
/// the error estimate reported at the original target.
pub fn quadrature_convergence() -> Check {
    let mut tally = Tally::new();
    let target = QuadratureConfig::default().target_abs_err;
    let recs = match load_suite("fourier") {
        Ok(r) => r,
        Err(e) => {
            tally.error(e, || "fourier fixtures".into());
            return tally.finish("quadrature_convergence", 1.0);
        }
    };
    for rec in &recs {
        let at = || rec.case_id.clone();
        let res = fourier_inputs(rec).and_then(|(s, kt, f, lam, eta)| {
            let coarse = fourier_transform(&s, kt, &f, lam, &eta, &QuadratureConfig::default().with_target(target))?;
            let fine = fourier_transform(&s, kt, &f, lam, &eta, &QuadratureConfig::default().with_target(target / 2.0))?;
            Ok((coarse, fine))
        });
        match res {
            Ok((c, f)) => tally.record((c.value - f.value).norm() / c.abs_err, at),
            Err(e) => tally.error(e, at),
        }
    }
    tally.finish("quadrature_convergence", 1.0)
}

/// K-type (0, 0) gives the K-invariant transform.
pub fn ktype_consistency(spaces: &[Space]) -> Check {
    let mut tally = Tally::new();
    let quad = QuadratureConfig::default();
    for s in spaces {
        let (f, eta) = (test_profile(s), test_eta(s));
        for &(re, im) in &POINTS {
            let lam = C64::new(re, im);
            let at = || format!("{s} lambda={lam}");
            let res = fourier_transform(s, Some(KType::new(0, 0)), &f, lam, &eta, &quad)
                .and_then(|a| Ok((a, fourier_transform(s, None, &f, lam, &eta, &quad)?)));
            match res {
                Ok((a, b)) => tally.record(rel_diff(a.value, b.value), at),
                Err(e) => tally.error(e, at),
            }
        }
    }
    tally.finish("ktype_consistency", KTYPE_TOL)
}

/// Composite Simpson rule for Σ_w ∫ |f_w|² J, independent of the adaptive rule.
fn simpson_norm_sq(space: &Space, f: &RadialProfile) -> f64 {
    const N: usize = 20_000;
    let mut total = 0.0;
    for &w in space.orbits() {
        let prof = f.orbit(w);
        let Some((a, b)) = prof.support() else { continue };
        let h = (b - a) / N as f64;
        let g = |t: f64| prof.eval(t).powi(2) * jacobian(space, t);
        let mut s = g(a) + g(b);
        for i in 1..N {
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * g(a + i as f64 * h);
        }
        total += s * h / 3.0;
    }
    total
}

/// ‖f‖₂² by the library against direct quadrature of |f|²J summed over orbits.
pub fn measure_consistency(spaces: &[Space]) -> Check {
    let mut tally = Tally::new();
    for s in spaces {
        let f = test_profile(s);
        let at = || format!("{s}");
        let res: Result<f64> = norm_lr(s, &f, 2.0, &QuadratureConfig::default());
        match res {
            Ok(n) => tally.record((n * n - simpson_norm_sq(s, &f)).abs() / (n * n), at),
            Err(e) => tally.error(e, at),
        }
    }
    tally.finish("measure_consistency", MEASURE_TOL)
}
