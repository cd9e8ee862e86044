use std::f64::consts::PI;

use super::{lambda_grid, Check, Tally, GRID_T};
use crate::eisenstein::{radial_residual, SERIES_TOL};
use crate::hcseries::{gamma_coeffs, gamma_tilde, tail_exponent, PhiSeries};
use crate::space::{KType, Space};
use crate::value::{rel_diff, C64};

pub const RESIDUAL_TOL: f64 = 1e-5;
pub const RESIDUAL_STEP: f64 = 1e-3;

/// M in |(λ−λ₀)Γ_m(λ)| ≤ M(1+m)^χ, χ = [`tail_exponent`]. Fitted over
/// (2,1), (3,2), (5,3), (7,2), λ₀ ∈ {1/2, …, 20}, |λ−λ₀| = 1e−4, m ≤ 200
/// (largest observed 0.083) and rounded up.
pub const GAMMA_REG_M: f64 = 0.1;

/// |L Φ_λ − (λ²−ρ²)Φ_λ| / (1+|Φ_λ|) on the test grid, K-invariant and with K-types.
pub fn ode_residual_phi(spaces: &[Space], with_k: &[(Space, KType)]) -> Check {
    let mut tally = Tally::new();
    let cases = spaces.iter().map(|s| (*s, None)).chain(with_k.iter().map(|(s, k)| (*s, Some(*k))));
    for (s, kt) in cases {
        for lam in lambda_grid(&s, kt) {
            let mut phi = PhiSeries::new(s, kt, lam);
            for &t in &GRID_T {
                let at = || format!("{s} {kt:?} lambda={lam} t={t}");
                match radial_residual(&s, kt, lam, t, RESIDUAL_STEP, |x| Ok(phi.eval(x, SERIES_TOL)?.value)) {
                    Ok(r) => tally.record(r, at),
                    Err(e) => tally.error(e, at),
                }
            }
        }
    }
    tally.finish("phi_series_ode_residual", RESIDUAL_TOL)
}

const SCAN_STEP: f64 = 0.01;
const SCAN_OFFSET: f64 = 0.003;
/// A spike is a local maximum at least this factor above the median of the
/// scan within ±0.5. Zeros of Γ_m barely move the median.
const SPIKE_CONTRAST: f64 = 10.0;
const SPIKE_WINDOW: usize = 50;
pub const POLE_CONTAINMENT_TOL: f64 = 1e-2;

/// Spikes of |Γ_m| along the real axis lie within 1e−2 of {1/2, 1, …, m/2}.
///
/// The metric is the distance from each spike to the nearest admissible
/// half-integer.
pub fn gamma_pole_containment(spaces: &[Space], ms: &[usize]) -> Check {
    let mut tally = Tally::new();
    let n_max = ms.iter().copied().max().unwrap_or(0);
    for s in spaces {
        let n = ((n_max as f64 / 2.0 + 2.0) / SCAN_STEP) as usize;
        let xs: Vec<f64> = (0..n).map(|i| SCAN_OFFSET + i as f64 * SCAN_STEP).collect();
        let tables: Vec<Vec<f64>> = xs
            .iter()
            .map(|&x| gamma_coeffs(s, None, C64::new(x, 0.0), n_max).values.iter().map(|v| v.norm()).collect())
            .collect();
        for &m in ms {
            let v: Vec<f64> = tables.iter().map(|t| t[m]).collect();
            for i in 1..v.len() - 1 {
                let local_max = v[i] >= v[i - 1] && v[i] >= v[i + 1];
                let lo = i.saturating_sub(SPIKE_WINDOW);
                let hi = (i + SPIKE_WINDOW + 1).min(v.len());
                let mut window = v[lo..hi].to_vec();
                window.sort_by(f64::total_cmp);
                if local_max && v[i] >= SPIKE_CONTRAST * window[window.len() / 2] {
                    let x = xs[i];
                    let nearest = ((2.0 * x).round().clamp(1.0, m as f64)) / 2.0;
                    tally.record((x - nearest).abs(), || format!("{s} m={m} spike at {x:.3}"));
                }
            }
        }
    }
    tally.finish("gamma_pole_containment", POLE_CONTAINMENT_TOL)
}

/// max_m |(λ−λ₀)Γ_m(λ)| / (M(1+m)^χ) on small circles around λ₀ ∈ {1/2, …, 20}.
pub fn gamma_regularized_bound(spaces: &[Space], m_max: usize) -> Check {
    let mut tally = Tally::new();
    for s in spaces {
        let chi = tail_exponent(s, None);
        for j in 1..=40 {
            let l0 = C64::new(j as f64 / 2.0, 0.0);
            for &r in &[1e-3, 1e-5] {
                for a in 0..4 {
                    let lam = l0 + C64::from_polar(r, PI * (a as f64 + 0.25) / 2.0);
                    let table = gamma_coeffs(s, None, lam, m_max);
                    for (m, g) in table.values.iter().enumerate() {
                        let bound = GAMMA_REG_M * (1.0 + m as f64).powf(chi);
                        tally.record(((lam - l0) * g).norm() / bound, || format!("{s} lambda0={} r={r} m={m}", l0.re));
                    }
                }
            }
        }
    }
    tally.finish("gamma_regularized_bound", 1.0)
}

pub const REDUCTION_TOL: f64 = 1e-12;

/// Coefficient tables with K-type (0,0) equal the K-invariant ones.
pub fn k_invariant_reduction(spaces: &[Space]) -> Check {
    let mut tally = Tally::new();
    let trivial = Some(KType::new(0, 0));
    for s in spaces {
        for lam in [C64::new(0.7, 0.3), C64::new(-1.2, 2.0), C64::new(0.0, 5.0)] {
            let pairs = [
                (gamma_coeffs(s, trivial, lam, 60), gamma_coeffs(s, None, lam, 60)),
                (gamma_tilde(s, trivial, lam, 60), gamma_tilde(s, None, lam, 60)),
            ];
            for (a, b) in &pairs {
                for (m, (x, y)) in a.values.iter().zip(&b.values).enumerate() {
                    let d = if *y == C64::new(0.0, 0.0) { x.norm() } else { rel_diff(*x, *y) };
                    tally.record(d, || format!("{s} lambda={lam} m={m}"));
                }
            }
        }
    }
    tally.finish("k_invariant_reduction", REDUCTION_TOL)
}
