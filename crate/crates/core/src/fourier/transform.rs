use super::profile::RadialProfile;
use super::quadrature::{integrate, integrate_noisy, QuadratureConfig};
use crate::eisenstein::{EtaVector, Eisenstein, Regularized};
use crate::error::{Error, Result};
use crate::space::{KType, Space};
use crate::value::{EvalResult, Status, C64};

/// J(t) = cosh^{p−1}t · sinh^{q−1}t.
pub fn jacobian(space: &Space, t: f64) -> f64 {
    t.cosh().powi(space.p as i32 - 1) * t.sinh().powi(space.q as i32 - 1)
}

/// Σ_w η_w ∫ f_w(t) K(t) J(t) dt for a radial kernel K.
fn transform_with<K: FnMut(f64) -> Result<EvalResult>>(
    space: &Space,
    f: &RadialProfile,
    eta: &EtaVector,
    quad: &QuadratureConfig,
    mut kernel: K,
) -> Result<EvalResult> {
    let mut total = EvalResult::exact(C64::new(0.0, 0.0));
    let mut done: Vec<(usize, C64, f64)> = Vec::new();
    let orbits = space.orbits();
    let live = orbits.iter().filter(|w| f.orbit(**w).support().is_some() && eta.get(**w) != C64::new(0.0, 0.0)).count();
    for (i, &w) in orbits.iter().enumerate() {
        let prof = f.orbit(w);
        let eta_w = eta.get(w);
        let Some((a, b)) = prof.support() else { continue };
        if eta_w == C64::new(0.0, 0.0) {
            continue;
        }
        // Orbits share the radial kernel, so equal profiles share the integral.
        let cached = done.iter().find(|(j, _, _)| f.orbit(orbits[*j]) == prof).map(|&(_, v, e)| (v, e));
        let (value, err) = match cached {
            Some(v) => v,
            None => {
                let target = quad.target_abs_err / (live as f64 * eta_w.norm());
                let cfg = quad.with_target(target);
                let mut status = Status::Regular;
                let integral = integrate_noisy(
                    |t| {
                        let k = kernel(t)?;
                        if k.status == Status::Pole {
                            return Err(Error::IntegrandPole { re: t, im: 0.0 });
                        }
                        status = status.combine(k.status);
                        let w = prof.eval(t) * jacobian(space, t);
                        Ok((k.value * w, k.abs_err * w.abs()))
                    },
                    a,
                    b,
                    &prof.breakpoints(),
                    &cfg,
                )?;
                total.status = total.status.combine(status);
                done.push((i, integral.value, integral.abs_err));
                (integral.value, integral.abs_err)
            }
        };
        total.value += value * eta_w;
        total.abs_err += err * eta_w.norm();
    }
    Ok(total)
}

/// ℱf(λ)(η) = Σ_w ∫_0^∞ f_w(t) E°_w(−λ, η)(t) J(t) dt.
///
/// With a K-type the kernel is the (k,l) Eisenstein integral.
pub fn fourier_transform(
    space: &Space,
    ktype: Option<KType>,
    f: &RadialProfile,
    lambda: C64,
    eta: &EtaVector,
    quad: &QuadratureConfig,
) -> Result<EvalResult> {
    if f.is_zero() {
        return Ok(EvalResult::exact(C64::new(0.0, 0.0)));
    }
    let mut e = Eisenstein::new(*space, ktype, -lambda);
    if e.prefactor().status == Status::Pole {
        return Err(Error::IntegrandPole { re: lambda.re, im: lambda.im });
    }
    transform_with(space, f, eta, quad, |t| e.eval(t))
}

/// p_R(−λ)ℱf(λ)(η), holomorphic on a*(R) = {Re λ ≤ R}; the kernel is the
/// regularized p_R(−λ)E°(−λ).
pub fn fourier_transform_regularized(
    space: &Space,
    ktype: Option<KType>,
    f: &RadialProfile,
    r: f64,
    lambda: C64,
    eta: &EtaVector,
    quad: &QuadratureConfig,
) -> Result<EvalResult> {
    let mut reg = Regularized::new(*space, ktype, r, -lambda)?;
    if f.is_zero() {
        return Ok(EvalResult::exact(C64::new(0.0, 0.0)));
    }
    transform_with(space, f, eta, quad, |t| reg.eval(t))
}

/// ‖f‖_r = (Σ_w ∫ |f_w|^r J dt)^{1/r}.
pub fn norm_lr(space: &Space, f: &RadialProfile, r: f64, quad: &QuadratureConfig) -> Result<f64> {
    if !(r >= 1.0) {
        return Err(Error::InvalidParameters(format!("need r ≥ 1, got {r}")));
    }
    let mut sum = 0.0;
    for &w in space.orbits() {
        let prof = f.orbit(w);
        let Some((a, b)) = prof.support() else { continue };
        let i = integrate(
            |t| Ok(C64::new(prof.eval(t).abs().powf(r) * jacobian(space, t), 0.0)),
            a,
            b,
            &prof.breakpoints(),
            quad,
        )?;
        sum += i.value.re;
    }
    Ok(sum.powf(1.0 / r))
}
