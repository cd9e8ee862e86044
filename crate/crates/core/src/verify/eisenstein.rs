use std::f64::consts::LN_2;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::hcseries::{RESIDUAL_STEP, RESIDUAL_TOL};
use super::{lambda_grid, singular_distance, Check, Tally, GRID_EXCLUSION, GRID_T};
use crate::eisenstein::{
    c_function, classify_bounded, conjugation_sides, functional_equation_sides, jacobi_phi, ode_residual,
    pole_catalog, Boundedness, CatalogSet, Eisenstein, EtaVector, Regularized,
};
use crate::space::{KType, Orbit, Space};
use crate::specfun::gamma;
use crate::value::{rel_diff, Status, C64};

pub const DUAL_ROUTE_TOL: f64 = 1e-8;
pub const FUNCTIONAL_EQUATION_TOL: f64 = 1e-8;
pub const CONJUGATION_TOL: f64 = 1e-9;
pub const C_PRODUCT_TOL: f64 = 1e-10;
pub const ASYMPTOTIC_TOL: f64 = 1e-3;
pub const JACOBI_TOL: f64 = 1e-8;

fn max_rel(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| rel_diff(*x, *y)).fold(0.0, f64::max)
}

/// The requested K-type where it is valid on the space, else K-invariant.
fn ktype_on(space: &Space, ktype: Option<KType>) -> Option<KType> {
    ktype.filter(|k| k.validate(space).is_ok())
}

/// Closed hypergeometric form against the Harish-Chandra expansion.
pub fn dual_route(spaces: &[Space], ktype: Option<KType>) -> Check {
    let mut tally = Tally::new();
    for s in spaces {
        let kt = ktype_on(s, ktype);
        for lam in lambda_grid(s, kt) {
            let mut e = Eisenstein::new(*s, kt, lam);
            for &t in &GRID_T {
                let at = || format!("{s} lambda={lam} t={t}");
                match (e.closed(t), e.series(t)) {
                    (Ok(a), Ok(b)) => tally.record(rel_diff(a.value, b.value), at),
                    (Err(err), _) | (_, Err(err)) => tally.error(err, at),
                }
            }
        }
    }
    tally.finish("dual_route", DUAL_ROUTE_TOL)
}

/// Radial eigen-equation residual of E° on the test grid.
pub fn ode_residual_eisenstein(spaces: &[Space], with_k: &[(Space, KType)]) -> Check {
    let mut tally = Tally::new();
    let cases = spaces.iter().map(|s| (*s, None)).chain(with_k.iter().map(|(s, k)| (*s, Some(*k))));
    for (s, kt) in cases {
        let eta = EtaVector::ones(&s);
        for lam in lambda_grid(&s, kt) {
            for &t in &GRID_T {
                let at = || format!("{s} {kt:?} lambda={lam} t={t}");
                match ode_residual(&s, kt, lam, &eta, Orbit::Plus, t, RESIDUAL_STEP) {
                    Ok(r) => tally.record(r, at),
                    Err(e) => tally.error(e, at),
                }
            }
        }
    }
    tally.finish("eisenstein_ode_residual", RESIDUAL_TOL)
}

/// A random λ in [−2.5, 2.5]² away from singular points, t ∈ [0.2, 4] and η.
fn sample_point(rng: &mut ChaCha8Rng, s: &Space, kt: Option<KType>) -> (C64, f64, EtaVector) {
    let lam = loop {
        let lam = C64::new(rng.gen_range(-2.5..2.5), rng.gen_range(-2.5..2.5));
        if singular_distance(s, kt, lam) >= GRID_EXCLUSION {
            break lam;
        }
    };
    let t = rng.gen_range(0.2..4.0);
    let comps = (0..s.n_orbits()).map(|_| C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect();
    (lam, t, EtaVector::new(s, comps).expect("component count matches"))
}

/// E°(−λ, η) = E°(λ, C°(−1, λ)η) on random regular points.
pub fn functional_equation(spaces: &[Space], ktype: Option<KType>, n: usize, rng: &mut ChaCha8Rng) -> Check {
    let mut tally = Tally::new();
    for i in 0..n {
        let s = &spaces[i % spaces.len()];
        let kt = ktype_on(s, ktype);
        let (lam, t, eta) = sample_point(rng, s, kt);
        let at = || format!("{s} lambda={lam} t={t}");
        match functional_equation_sides(s, kt, lam, &eta, t) {
            Ok(Some((l, r))) => tally.record(max_rel(&l, &r), at),
            Ok(None) => {}
            Err(e) => tally.error(e, at),
        }
    }
    tally.finish("functional_equation", FUNCTIONAL_EQUATION_TOL)
}

/// conj(E°(−λ̄, η)) = E°(−λ, η̄) on random regular points.
pub fn conjugation(spaces: &[Space], ktype: Option<KType>, n: usize, rng: &mut ChaCha8Rng) -> Check {
    let mut tally = Tally::new();
    for i in 0..n {
        let s = &spaces[i % spaces.len()];
        let kt = ktype_on(s, ktype);
        let (lam, t, eta) = sample_point(rng, s, kt);
        let at = || format!("{s} lambda={lam} t={t}");
        match conjugation_sides(s, kt, lam, &eta, t) {
            Ok((l, r)) => tally.record(max_rel(&l, &r), at),
            Err(e) => tally.error(e, at),
        }
    }
    tally.finish("conjugation", CONJUGATION_TOL)
}

/// c(λ)c(−λ) = 1 on random regular points.
pub fn c_product(spaces: &[Space], ktype: Option<KType>, n: usize, rng: &mut ChaCha8Rng) -> Check {
    let mut tally = Tally::new();
    for i in 0..n {
        let s = &spaces[i % spaces.len()];
        let kt = ktype_on(s, ktype);
        let (lam, _, _) = sample_point(rng, s, kt);
        let prod = c_function(s, kt, lam).value * c_function(s, kt, -lam).value;
        tally.record((prod - 1.0).norm(), || format!("{s} lambda={lam}"));
    }
    tally.finish("c_product", C_PRODUCT_TOL)
}

/// |c(iξ)| = 1 and c(−iξ) = conj(c(iξ)) for real ξ ≠ 0.
pub fn unitary_axis(spaces: &[Space], ktype: Option<KType>) -> Check {
    let mut tally = Tally::new();
    for s in spaces {
        let kt = ktype_on(s, ktype);
        for j in 1..=80 {
            let xi = j as f64 * 0.25;
            for sign in [1.0, -1.0] {
                let lam = C64::new(0.0, sign * xi);
                let c = c_function(s, kt, lam).value;
                let cm = c_function(s, kt, -lam).value;
                let d = (c.norm() - 1.0).abs().max(rel_diff(cm, c.conj())).max((c * cm - 1.0).norm());
                tally.record(d, || format!("{s} xi={}", lam.im));
            }
        }
    }
    tally.finish("unitary_axis", C_PRODUCT_TOL)
}

pub const ASYMPTOTIC_T: f64 = 30.0;

/// e^{(ρ−λ)t}E°(λ)(t) → 1 as t → ∞ for Re λ > 0, checked at t = 30.
pub fn asymptotic_limit(spaces: &[Space], ktype: Option<KType>) -> Check {
    let mut tally = Tally::new();
    for s in spaces {
        let kt = ktype_on(s, ktype);
        let rho = s.rho_f64();
        for &re in &[0.25, 0.5, 1.0, 1.5, 2.0] {
            for &im in &[-1.0, 0.0, 1.0] {
                let lam = C64::new(re, im);
                if singular_distance(s, kt, lam) < GRID_EXCLUSION {
                    continue;
                }
                let t = ASYMPTOTIC_T;
                let at = || format!("{s} lambda={lam}");
                match Eisenstein::new(*s, kt, lam).eval(t) {
                    Ok(v) => tally.record((v.value * ((rho - lam) * t).exp() - 1.0).norm(), at),
                    Err(e) => tally.error(e, at),
                }
            }
        }
    }
    tally.finish("asymptotic_limit", ASYMPTOTIC_TOL)
}

/// Points and heights for the growth envelope.
#[derive(Debug, Clone, Copy)]
pub struct GrowthGrid {
    /// Re λ runs over −R + (j + re_shift)·2R/re_steps.
    pub re_steps: usize,
    pub re_shift: f64,
    pub im: &'static [f64],
    pub t_step: f64,
    pub t_max: f64,
}

/// The grid M was fitted on.
pub const GROWTH_FIT_GRID: GrowthGrid = GrowthGrid {
    re_steps: 48,
    re_shift: 0.0,
    im: &[0.0, 0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0, 8.0],
    t_step: 0.1,
    t_max: 50.0,
};
/// A disjoint grid on which the frozen M is checked.
pub const GROWTH_CHECK_GRID: GrowthGrid =
    GrowthGrid { re_steps: 8, re_shift: 0.5, im: &[0.25, 1.0, 3.5, 8.0], t_step: 0.3, t_max: 50.0 };

/// M in |p_R(λ)E°(λ, η)(t)| ≤ M‖η‖(1+|λ|)^{deg p_R}(1+t)e^{(|Re λ|−ρ)t},
/// fitted on [`GROWTH_FIT_GRID`] over the default spaces of the
/// asymptotics suite with R = 3. The largest fitted value is 3.06e3, at
/// (3,3) near λ = 0; other spaces need less. Other spaces or R may need a
/// larger M, since |p_R| near the origin grows with ρ and R.
pub const GROWTH_M: f64 = 5e3;

/// Largest ratio of |p_R E°| to the envelope without M over the grid.
pub fn growth_envelope(spaces: &[Space], ktype: Option<KType>, r: f64, grid: &GrowthGrid) -> Check {
    let mut tally = Tally::new();
    for s in spaces {
        let kt = ktype_on(s, ktype);
        let rho = s.rho_f64();
        let step = 2.0 * r / grid.re_steps as f64;
        for i in 0..=grid.re_steps {
            let re = -r + step * (i as f64 + grid.re_shift);
            if re > r {
                continue;
            }
            for &im in grid.im {
                let lam = C64::new(re, im);
                let mut reg = match Regularized::new(*s, kt, r, lam) {
                    Ok(reg) => reg,
                    Err(e) => {
                        tally.error(e, || format!("{s} lambda={lam}"));
                        continue;
                    }
                };
                let weight = (1.0 + lam.norm()).powi(reg.poly.degree() as i32);
                let n = (grid.t_max / grid.t_step).round() as usize;
                for j in 0..=n {
                    let t = j as f64 * grid.t_step;
                    let at = || format!("{s} lambda={lam} t={t}");
                    match reg.eval(t) {
                        Ok(v) => {
                            let env = weight * (1.0 + t) * ((re.abs() - rho) * t).exp();
                            tally.record(v.value.norm() / env, at);
                        }
                        Err(e) => tally.error(e, at),
                    }
                }
            }
        }
    }
    tally.finish("growth_envelope", GROWTH_M)
}

/// For p ≤ q: E°(λ)(t) = 2^{λ−ρ}Γ((λ+ρ)/2)Γ((λ−ρ+q)/2)/(Γ(λ)Γ(q/2)) φ^{(α,β)}_{−iλ}(t)
/// with α = q/2 − 1, β = p/2 − 1.
pub fn jacobi_identity(spaces: &[Space]) -> Check {
    let mut tally = Tally::new();
    for s in spaces {
        let (p, q) = (s.p as f64, s.q as f64);
        let rho = s.rho_f64();
        let (alpha, beta) = (q / 2.0 - 1.0, p / 2.0 - 1.0);
        for lam in lambda_grid(s, None) {
            let at = || format!("{s} lambda={lam}");
            let pref = (|| -> crate::error::Result<C64> {
                Ok(((lam - rho) * LN_2).exp() * gamma((lam + rho) / 2.0)? * gamma((lam - rho + q) / 2.0)?
                    / (gamma(lam)? * gamma(C64::new(q / 2.0, 0.0))?))
            })();
            let pref = match pref {
                Ok(v) => v,
                Err(e) => {
                    tally.error(e, at);
                    continue;
                }
            };
            let mut e = Eisenstein::new(*s, None, lam);
            let mu = C64::new(0.0, -1.0) * lam;
            for &t in &GRID_T {
                let at = || format!("{s} lambda={lam} t={t}");
                match (e.eval(t), jacobi_phi(alpha, beta, mu, t)) {
                    (Ok(a), Ok(b)) => tally.record(rel_diff(a.value, pref * b.value), at),
                    (Err(err), _) | (_, Err(err)) => tally.error(err, at),
                }
            }
        }
    }
    tally.finish("jacobi_identity", JACOBI_TOL)
}

pub const TREND_TOL: f64 = 1.05;
pub const SLOPE_TOL: f64 = 0.25;
pub const ZERO_TOL: f64 = 1e-10;
/// Unbounded samples keep |Re λ₀| at least this far above ρ so that the
/// target slope |Re λ₀| − ρ is not itself close to zero.
pub const SLOPE_MARGIN: f64 = 0.3;

fn sup_on(reg: &mut Regularized, a: f64, b: f64) -> crate::error::Result<f64> {
    let n = ((b - a) / 0.05).round() as usize;
    let mut m = 0.0f64;
    for j in 0..=n {
        m = m.max(reg.eval(a + (b - a) * j as f64 / n as f64)?.value.norm());
    }
    Ok(m)
}

fn log_slope(reg: &mut Regularized, a: f64, b: f64) -> crate::error::Result<f64> {
    let n = ((b - a) / 0.25).round() as usize;
    let mut pts = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let t = a + (b - a) * j as f64 / n as f64;
        pts.push((t, reg.eval(t)?.value.norm().ln()));
    }
    let k = pts.len() as f64;
    let (mt, my) = (pts.iter().map(|p| p.0).sum::<f64>() / k, pts.iter().map(|p| p.1).sum::<f64>() / k);
    let sxy: f64 = pts.iter().map(|p| (p.0 - mt) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mt) * (p.0 - mt)).sum();
    Ok(sxy / sxx)
}

/// Empirical behavior of p_R E° against [`classify_bounded`]: seeded
/// samples of each class at every space.
pub fn classify_empirics(
    spaces: &[Space],
    ktype: Option<KType>,
    r: f64,
    per_class: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Check> {
    let mut bounded = Tally::new();
    let mut unbounded = Tally::new();
    let mut zero = Tally::new();
    for s in spaces {
        let kt = ktype_on(s, ktype);
        let rho = s.rho_f64();
        let (mut nb, mut nu) = (0, 0);
        while nb < per_class || nu < per_class {
            let lam = C64::new(rng.gen_range(-r..r), rng.gen_range(-3.0..3.0));
            let class = match classify_bounded(s, kt, r, lam) {
                Ok(c) => c,
                Err(e) => {
                    bounded.error(e, || format!("{s} lambda={lam}"));
                    break;
                }
            };
            let at = || format!("{s} lambda={lam}");
            match class {
                Boundedness::Bounded if nb < per_class => {
                    nb += 1;
                    let res = Regularized::new(*s, kt, r, lam)
                        .and_then(|mut reg| Ok(sup_on(&mut reg, 40.0, 50.0)? / sup_on(&mut reg, 30.0, 40.0)?));
                    match res {
                        Ok(ratio) => bounded.record(ratio, at),
                        Err(e) => bounded.error(e, at),
                    }
                }
                Boundedness::Unbounded if nu < per_class && lam.re.abs() >= rho + SLOPE_MARGIN => {
                    nu += 1;
                    let target = lam.re.abs() - rho;
                    match Regularized::new(*s, kt, r, lam).and_then(|mut reg| log_slope(&mut reg, 20.0, 40.0)) {
                        Ok(slope) => unbounded.record((slope - target).abs() / target, at),
                        Err(e) => unbounded.error(e, at),
                    }
                }
                _ => {}
            }
        }
        // −ℕ₀ ∩ {Re λ ≥ −R} is finite; cycle through it with fresh η.
        let n_max = r.floor() as i64;
        for i in 0..per_class {
            let lam = C64::new(-((i as i64) % (n_max + 1)) as f64, 0.0);
            let at = || format!("{s} lambda={lam}");
            let eta = C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            match classify_bounded(s, kt, r, lam) {
                Ok(Boundedness::IdenticallyZero) => {}
                Ok(other) => {
                    zero.record(f64::INFINITY, || format!("{s} lambda={lam} classified {other}"));
                    continue;
                }
                Err(e) => {
                    zero.error(e, at);
                    continue;
                }
            }
            let res = Regularized::new(*s, kt, r, lam).and_then(|mut reg| {
                let mut m = 0.0f64;
                for j in 0..=100 {
                    m = m.max((reg.eval(j as f64 * 0.5)?.value * eta).norm());
                }
                Ok(m / eta.norm())
            });
            match res {
                Ok(m) => zero.record(m, at),
                Err(e) => zero.error(e, at),
            }
        }
    }
    vec![
        bounded.finish("bounded_no_growth", TREND_TOL),
        unbounded.finish("unbounded_slope", SLOPE_TOL),
        zero.finish("identically_zero", ZERO_TOL),
    ]
}

pub const SPIKE: f64 = 1e6;
pub const TROUGH: f64 = 1e-6;
pub const CATALOG_TOL: f64 = 2e-2;

/// Real-axis scan of |c| on [−10, 10] with step 1e−2: spikes lie near
/// catalog poles of c and troughs near catalog zeros.
pub fn catalog_scan(cases: &[(Space, Option<KType>)]) -> Check {
    let mut tally = Tally::new();
    for (s, kt) in cases {
        let cat = pole_catalog(s, *kt);
        for i in -1000..=1000 {
            let lam = C64::new(i as f64 / 100.0, 0.0);
            let c = c_function(s, *kt, lam);
            let mag = c.value.norm();
            let at = || format!("{s} {kt:?} lambda={}", lam.re);
            if c.status == Status::Pole || c.status == Status::OverflowGuarded || mag > SPIKE {
                tally.record(cat.distance(CatalogSet::CPoles, lam), at);
            } else if c.status == Status::Zero || mag < TROUGH {
                tally.record(cat.distance(CatalogSet::CZeros, lam), at);
            }
        }
    }
    tally.finish("catalog_scan", CATALOG_TOL)
}
