use std::f64::consts::PI;

use serde::Serialize;

use super::profile::{Profile, RadialProfile};
use super::quadrature::{integrate, QuadratureConfig};
use super::transform::{fourier_transform, fourier_transform_regularized, norm_lr};
use crate::eisenstein::{p_r_poly, EtaVector};
use crate::error::{Error, Result};
use crate::space::{KType, Space};
use crate::value::C64;

/// Default truncation of line integrals.
pub const XI_MAX: f64 = 200.0;

/// Relative accuracy of the outer ξ-integrals. The harnesses compare
/// quantities that differ by far more than this.
const LINE_REL_TOL: f64 = 1e-7;

/// Outcome of one inequality harness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HarnessReport {
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub xi_max: f64,
    /// Estimated contribution to lhs from |ξ| > xi_max.
    pub tail_estimate: f64,
}

impl HarnessReport {
    fn new(lhs: f64, rhs: f64, xi_max: f64, tail_estimate: f64) -> Self {
        let ratio = if rhs > 0.0 { lhs / rhs } else if lhs == 0.0 { 0.0 } else { f64::INFINITY };
        HarnessReport { lhs, rhs, ratio, xi_max, tail_estimate }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Step of the sampling grid used for suprema over a line.
const SUP_STEP: f64 = 0.125;

/// ∫ g over the dyadic pieces [0, ξ/8], [ξ/8, ξ/4], [ξ/4, ξ/2], [ξ/2, ξ].
fn dyadic_pieces<G: FnMut(f64) -> Result<f64>>(mut g: G, xi_max: f64, scale: f64) -> Result<[f64; 4]> {
    let cuts = [0.0, xi_max / 8.0, xi_max / 4.0, xi_max / 2.0, xi_max];
    let mut parts = [0.0; 4];
    for i in 0..4 {
        let (a, b) = (cuts[i], cuts[i + 1]);
        let cfg = QuadratureConfig {
            panels: ((b - a) / 8.0).ceil().max(1.0) as usize,
            nodes_per_panel: 32,
            target_abs_err: (LINE_REL_TOL * scale).max(f64::MIN_POSITIVE),
        };
        parts[i] = integrate(|x| Ok(C64::new(g(x)?, 0.0)), a, b, &[], &cfg)?.value.re;
    }
    Ok(parts)
}

/// Integral up to the end of piece `last` and the geometric extrapolation
/// of what lies beyond (∞ if the last two pieces do not decrease).
fn truncated(parts: &[f64; 4], last: usize) -> (f64, f64) {
    let total = parts[..=last].iter().sum();
    let (p1, p2) = (parts[last - 1], parts[last]);
    let tail = if p2 <= 0.0 {
        0.0
    } else if p2 < p1 {
        let q = p2 / p1;
        p2 * q / (1.0 - q)
    } else {
        f64::INFINITY
    };
    (total, tail)
}

/// Largest g on a uniform grid over [0, ξ/2] and over [0, ξ].
fn dyadic_sup<G: FnMut(f64) -> Result<f64>>(mut g: G, xi_max: f64) -> Result<[f64; 2]> {
    let n = (xi_max / SUP_STEP).ceil() as usize;
    let mut sup = [0.0f64; 2];
    for i in 0..=n {
        let xi = xi_max * i as f64 / n as f64;
        let v = g(xi)?;
        if 2 * i <= n {
            sup[0] = sup[0].max(v);
        }
        sup[1] = sup[1].max(v);
    }
    Ok(sup)
}

/// Truncated Plancherel integral (∫_{−ξ_max}^{ξ_max} |ℱf(iξ)(η)|² dξ/2π)^{1/2}
/// against ‖f‖₂‖η‖.
///
/// |ℱf(−iξ)(η)| = |ℱf(iξ)(η)| because C°(−1, iξ) is c(iξ)·Id with
/// |c(iξ)| = 1, so only ξ ≥ 0 is integrated.
pub fn plancherel_check(
    space: &Space,
    f: &RadialProfile,
    eta: &EtaVector,
    xi_max: f64,
    quad: &QuadratureConfig,
) -> Result<HarnessReport> {
    let rhs = norm_lr(space, f, 2.0, quad)? * eta.norm();
    if f.is_zero() || rhs == 0.0 {
        return Ok(HarnessReport::new(0.0, rhs, xi_max, 0.0));
    }
    let parts = dyadic_pieces(
        |xi| Ok(fourier_transform(space, None, f, C64::new(0.0, xi), eta, quad)?.value.norm_sqr()),
        xi_max,
        rhs * rhs,
    )?;
    let (int, tail) = truncated(&parts, 3);
    let lhs = (int / PI).sqrt();
    let full = ((int + tail) / PI).sqrt();
    Ok(HarnessReport::new(lhs, rhs, xi_max, full - lhs))
}

/// Conjugate exponent r' of r ∈ [1, 2].
pub fn conjugate_exponent(r: f64) -> f64 {
    if r == 1.0 { f64::INFINITY } else { r / (r - 1.0) }
}

fn check_sr(space: &Space, r: f64, lambda0: f64, strict: bool) -> Result<()> {
    let bound = (2.0 / r - 1.0) * space.rho_f64();
    let ok = if strict { lambda0.abs() < bound } else { lambda0.abs() <= bound + 1e-12 };
    if !ok {
        return Err(Error::DomainViolation { lambda0, r });
    }
    Ok(())
}

/// Empirical Hausdorff–Young ratio
/// (∫ |p_R(−λ)ℱf(λ)(η)/(1+λ)^d|^{r'} dξ/2π)^{1/r'} / (‖f‖_r‖η‖), λ = λ₀+iξ,
/// d = deg p_R. For r = 1 the left side is the supremum over the line.
#[allow(clippy::too_many_arguments)]
pub fn hy_ratio(
    space: &Space,
    ktype: Option<KType>,
    f: &RadialProfile,
    r: f64,
    lambda0: f64,
    big_r: f64,
    eta: &EtaVector,
    xi_max: f64,
    quad: &QuadratureConfig,
) -> Result<HarnessReport> {
    Ok(hy_ratio_refinement(space, ktype, f, r, lambda0, big_r, eta, xi_max, quad)?[1])
}

/// [`hy_ratio`] truncated at ξ_max/2 and at ξ_max, from one set of samples.
#[allow(clippy::too_many_arguments)]
pub fn hy_ratio_refinement(
    space: &Space,
    ktype: Option<KType>,
    f: &RadialProfile,
    r: f64,
    lambda0: f64,
    big_r: f64,
    eta: &EtaVector,
    xi_max: f64,
    quad: &QuadratureConfig,
) -> Result<[HarnessReport; 2]> {
    if !(1.0..=2.0).contains(&r) {
        return Err(Error::InvalidParameters(format!("need 1 ≤ r ≤ 2, got {r}")));
    }
    check_sr(space, r, lambda0, false)?;
    if lambda0 > big_r + 1e-12 {
        return Err(Error::DomainViolation { lambda0, r });
    }
    let rhs = norm_lr(space, f, r, quad)? * eta.norm();
    if f.is_zero() || rhs == 0.0 {
        return Ok([0.5, 1.0].map(|s| HarnessReport::new(0.0, rhs, s * xi_max, 0.0)));
    }
    let d = p_r_poly(space, ktype, big_r).degree() as i32;
    let rp = conjugate_exponent(r);
    let weight = |xi: f64| -> Result<f64> {
        let lam = C64::new(lambda0, xi);
        let v = fourier_transform_regularized(space, ktype, f, big_r, lam, eta, quad)?.value;
        Ok((v / (1.0 + lam).powi(d)).norm())
    };
    if !rp.is_finite() {
        let mut sup = [0.0f64; 2];
        for sign in [1.0, -1.0] {
            let s = dyadic_sup(|xi| weight(sign * xi), xi_max)?;
            sup = [sup[0].max(s[0]), sup[1].max(s[1])];
        }
        return Ok([0, 1].map(|i| HarnessReport::new(sup[i], rhs, (0.5 + 0.5 * i as f64) * xi_max, 0.0)));
    }
    let mut parts = [0.0; 4];
    for sign in [1.0, -1.0] {
        let g = |xi: f64| weight(sign * xi).map(|v| v.powf(rp));
        // The scale only sets the absolute target; a rough one suffices.
        // ℱf vanishes at λ = 0 when E°(0) does, so sample a few heights.
        let mut scale = f64::MIN_POSITIVE;
        for xi in [0.0, 1.0, 2.0, 4.0] {
            scale = scale.max(g(xi)?);
        }
        let p = dyadic_pieces(g, xi_max, scale)?;
        for i in 0..4 {
            parts[i] += p[i];
        }
    }
    Ok([2, 3].map(|last| {
        let (int, tail) = truncated(&parts, last);
        let lhs = (int / (2.0 * PI)).powf(1.0 / rp);
        let full = ((int + tail) / (2.0 * PI)).powf(1.0 / rp);
        HarnessReport::new(lhs, rhs, xi_max / (1 << (3 - last)) as f64, full - lhs)
    }))
}

/// |ℱf(λ₀+iξ_j)(η)| at the given heights, for λ₀ in the open strip S_r, 1 ≤ r < 2.
pub fn rl_decay_profile(
    space: &Space,
    ktype: Option<KType>,
    f: &RadialProfile,
    r: f64,
    lambda0: f64,
    heights: &[f64],
    eta: &EtaVector,
    quad: &QuadratureConfig,
) -> Result<Vec<f64>> {
    if !(1.0..2.0).contains(&r) {
        return Err(Error::InvalidParameters(format!("need 1 ≤ r < 2, got {r}")));
    }
    check_sr(space, r, lambda0, true)?;
    heights
        .iter()
        .map(|&xi| Ok(fourier_transform(space, ktype, f, C64::new(lambda0, xi), eta, quad)?.value.norm()))
        .collect()
}

/// Fit of |p_R(−λ)ℱf(λ)(η)| ≤ M(1+|λ|)^{−n}e^{b|Re λ|}‖η‖ over a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PaleyWienerFit {
    /// Least M for which the bound holds on the grid, with b the support end.
    pub m: f64,
    /// Exponential rate: least-squares slope against |Re λ| of
    /// log max_{Im λ}|p_R(−λ)ℱf(λ)η|(1+|λ|)^{−deg p_R}.
    pub rate: f64,
    /// The same slope without removing the polynomial weights.
    pub raw_rate: f64,
    pub support_end: f64,
    pub rate_ok: bool,
}

/// Tolerance on the fitted rate relative to the support end.
pub const PW_RATE_SLACK: f64 = 0.05;

pub fn paley_wiener_check(
    space: &Space,
    f: &RadialProfile,
    n: u32,
    big_r: f64,
    grid: &[C64],
    eta: &EtaVector,
    quad: &QuadratureConfig,
) -> Result<PaleyWienerFit> {
    if f.profiles().iter().any(|p| !matches!(p, Profile::SmoothBump { .. } | Profile::Zero)) {
        return Err(Error::InvalidParameters("Paley–Wiener check needs smooth bump profiles".into()));
    }
    if let Some(bad) = grid.iter().find(|l| l.re > big_r + 1e-12) {
        return Err(Error::OutOfDomain(bad.re));
    }
    let b = f.support_end();
    let eta_norm = eta.norm();
    if f.is_zero() || eta_norm == 0.0 {
        return Ok(PaleyWienerFit {
            m: 0.0,
            rate: f64::NEG_INFINITY,
            raw_rate: f64::NEG_INFINITY,
            support_end: b,
            rate_ok: true,
        });
    }
    // On a finite grid the weights p_R(−λ)(1+|λ|)^n tilt the raw slope by
    // roughly (deg p_R + n)/|λ|. Dividing by (1+|λ|)^{deg p_R + n}, a
    // polynomial majorant of the same degree that never vanishes, removes
    // the tilt without changing the exponential type.
    let deg = p_r_poly(space, None, big_r).degree() as i32;
    let mut m = 0.0f64;
    let mut levels: Vec<(f64, f64, f64)> = Vec::new();
    for &lam in grid {
        let v = fourier_transform_regularized(space, None, f, big_r, lam, eta, quad)?.value.norm();
        let g = v * (1.0 + lam.norm()).powi(n as i32) / eta_norm;
        m = m.max(g * (-b * lam.re.abs()).exp());
        let h = g / (1.0 + lam.norm()).powi(deg + n as i32);
        let x = lam.re.abs();
        match levels.iter_mut().find(|(y, _, _)| (y - x).abs() < 1e-9) {
            Some(level) => {
                level.1 = level.1.max(g);
                level.2 = level.2.max(h);
            }
            None => levels.push((x, g, h)),
        }
    }
    let fit = |pick: fn(&(f64, f64, f64)) -> f64| {
        let pts: Vec<(f64, f64)> = levels.iter().filter(|l| pick(l) > 0.0).map(|l| (l.0, pick(l).ln())).collect();
        slope(&pts)
    };
    let rate = fit(|l| l.2);
    let raw_rate = fit(|l| l.1);
    Ok(PaleyWienerFit { m, rate, raw_rate, support_end: b, rate_ok: rate <= b + PW_RATE_SLACK })
}

fn slope(pts: &[(f64, f64)]) -> f64 {
    if pts.len() < 2 {
        return f64::NAN;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump(s: &Space) -> RadialProfile {
        RadialProfile::uniform(s, Profile::smooth_bump(1.0, 2.0).unwrap())
    }

    #[test]
    fn zero_profile_reports_zero() {
        let s = Space::new(3, 2).unwrap();
        let eta = EtaVector::ones(&s);
        let q = QuadratureConfig::default();
        let z = RadialProfile::zero(&s);
        let p = plancherel_check(&s, &z, &eta, 50.0, &q).unwrap();
        assert_eq!((p.lhs, p.rhs), (0.0, 0.0));
        assert_eq!(hy_ratio(&s, None, &z, 1.5, 0.0, 2.0, &eta, 50.0, &q).unwrap().ratio, 0.0);
        assert!(rl_decay_profile(&s, None, &z, 1.5, 0.0, &[1.0, 2.0], &eta, &q).unwrap().iter().all(|v| *v == 0.0));
        let pw = paley_wiener_check(&s, &z, 2, 2.0, &[C64::new(1.0, 1.0)], &eta, &q).unwrap();
        assert_eq!(pw.m, 0.0);
    }

    #[test]
    fn plancherel_holds_and_grows_with_xi_max() {
        let s = Space::new(3, 2).unwrap();
        let eta = EtaVector::ones(&s);
        let q = QuadratureConfig::default();
        let a = plancherel_check(&s, &bump(&s), &eta, 20.0, &q).unwrap();
        let b = plancherel_check(&s, &bump(&s), &eta, 40.0, &q).unwrap();
        assert!(b.lhs >= a.lhs && b.lhs <= b.rhs, "{a:?} {b:?}");
    }

    #[test]
    fn domains_are_checked() {
        let s = Space::new(3, 2).unwrap();
        let eta = EtaVector::ones(&s);
        let q = QuadratureConfig::default();
        assert!(matches!(
            hy_ratio(&s, None, &bump(&s), 1.5, 1.0, 2.0, &eta, 50.0, &q),
            Err(Error::DomainViolation { .. })
        ));
        assert!(rl_decay_profile(&s, None, &bump(&s), 2.0, 0.0, &[1.0], &eta, &q).is_err());
        assert!(rl_decay_profile(&s, None, &bump(&s), 1.5, 0.5, &[1.0], &eta, &q).is_err());
    }

    #[test]
    fn larger_n_gives_larger_m() {
        let s = Space::new(3, 2).unwrap();
        let eta = EtaVector::ones(&s);
        let q = QuadratureConfig::default();
        let grid: Vec<C64> = [0.0, 1.0].iter().flat_map(|&x| [3.0, 6.0].map(|y| C64::new(x, y))).collect();
        let a = paley_wiener_check(&s, &bump(&s), 2, 2.0, &grid, &eta, &q).unwrap();
        let b = paley_wiener_check(&s, &bump(&s), 4, 2.0, &grid, &eta, &q).unwrap();
        assert!(b.m > a.m);
    }
}
