//! Gauss ₂F₁(a, b; c; z) on the nonpositive real axis.

use super::gamma::{nonpositive_integer, POLE_EPS};
use super::ratio::{exp_guarded, gamma_ratio_log, GammaRatioSpec};
use crate::error::{Error, Result};
use crate::value::{EvalResult, Status, C64};

const MAX_TERMS: usize = 100_000;

/// Which representation is used to sum the function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Power series in z, for z ∈ (−0.5, 0].
    Series,
    /// Pfaff transform to z/(z−1), for z ∈ [−2, −0.5].
    Pfaff,
    /// Connection formula around z = ∞, for z < −2.
    Inversion,
}

impl Strategy {
    pub fn for_argument(z: f64) -> Strategy {
        if z > -0.5 {
            Strategy::Series
        } else if z >= -2.0 {
            Strategy::Pfaff
        } else {
            Strategy::Inversion
        }
    }
}

/// Distance of a − b from ℤ below which the inversion formula is replaced
/// by the extrapolated limit.
pub const DEGENERATE_TOL: f64 = 1e-4;
/// Offsets used for the symmetric averages before extrapolation.
pub const DEGENERATE_EPS: [f64; 2] = [1e-5, 5e-6];
/// Relative disagreement tolerated between extrapolation levels.
pub const DEGENERATE_AGREEMENT: f64 = 1e-7;

/// ₂F₁(a,b;c;z) for real z ≤ 0 using the region strategy of [`Strategy`].
pub fn hyp2f1_nonpos(a: C64, b: C64, c: C64, z: f64) -> Result<EvalResult> {
    hyp2f1_with(a, b, c, z, Strategy::for_argument(z))
}

/// Same as [`hyp2f1_nonpos`] with the strategy forced, for overlap checks.
pub fn hyp2f1_with(a: C64, b: C64, c: C64, z: f64, strategy: Strategy) -> Result<EvalResult> {
    if nonpositive_integer(c, POLE_EPS).is_some() {
        return Err(Error::ParameterPole(c.re));
    }
    if !(z <= 0.0) {
        return Err(Error::InvalidParameters(format!("hyp2f1_nonpos needs z <= 0, got {z}")));
    }
    if z == 0.0 {
        return Ok(EvalResult::exact(C64::new(1.0, 0.0)));
    }
    match strategy {
        Strategy::Series => series(a, b, c, z),
        Strategy::Pfaff => pfaff(a, b, c, z),
        Strategy::Inversion => inversion_or_limit(a, b, c, z),
    }
}

/// Plain partial sums with a tail estimate. Terminates early when a or b
/// is a nonpositive integer.
fn series(a: C64, b: C64, c: C64, w: f64) -> Result<EvalResult> {
    let mut sum = C64::new(1.0, 0.0);
    let mut term = C64::new(1.0, 0.0);
    let mut abs_sum = 1.0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let num = (a + nf) * (b + nf);
        if num == C64::new(0.0, 0.0) {
            return Ok(EvalResult::regular(sum, 8.0 * f64::EPSILON * abs_sum));
        }
        term *= num / ((c + nf) * (nf + 1.0)) * w;
        sum += term;
        abs_sum += term.norm();
        let next_ratio = ((a + nf + 1.0) * (b + nf + 1.0) / ((c + nf + 1.0) * (nf + 2.0))).norm() * w.abs();
        if next_ratio < 1.0 && term.norm() * next_ratio / (1.0 - next_ratio) <= 0.25 * f64::EPSILON * sum.norm() {
            let tail = term.norm() * next_ratio / (1.0 - next_ratio);
            return Ok(EvalResult::regular(sum, tail + 8.0 * f64::EPSILON * abs_sum));
        }
        if !sum.re.is_finite() || !sum.im.is_finite() {
            break;
        }
    }
    Err(Error::SlowConvergence(format!(
        "2F1 series did not converge for a={a}, b={b}, c={c}, z={w}"
    )))
}

fn pfaff(a: C64, b: C64, c: C64, z: f64) -> Result<EvalResult> {
    let w = z / (z - 1.0);
    let inner = series(a, c - b, c, w)?;
    let factor = (-a * (1.0 - z).ln()).exp();
    Ok(inner.scale(factor))
}

fn inversion_or_limit(a: C64, b: C64, c: C64, z: f64) -> Result<EvalResult> {
    let d = a - b;
    let n = d.re.round();
    let delta = d - n;
    if delta.norm() >= DEGENERATE_TOL {
        return inversion(a, b, c, z);
    }
    // Symmetric averages at a ± ε·u with u ⟂ δ, so that both shifted
    // points stay at least ε away from the degenerate set.
    let u = if delta.norm() > 0.0 {
        C64::new(0.0, 1.0) * delta / delta.norm()
    } else {
        C64::new(1.0, 0.0)
    };
    let mut levels = [C64::new(0.0, 0.0); 2];
    let mut err = 0.0f64;
    for (i, &eps) in DEGENERATE_EPS.iter().enumerate() {
        let plus = inversion(a + u * eps, b, c, z)?;
        let minus = inversion(a - u * eps, b, c, z)?;
        levels[i] = 0.5 * (plus.value + minus.value);
        err = err.max(plus.abs_err.max(minus.abs_err));
    }
    let r = (DEGENERATE_EPS[0] / DEGENERATE_EPS[1]).powi(2);
    let extrap = (r * levels[1] - levels[0]) / (r - 1.0);
    let spread = (extrap - levels[1]).norm();
    let status = if spread > DEGENERATE_AGREEMENT * extrap.norm() {
        Status::AccuracyLoss
    } else {
        Status::Regular
    };
    Ok(EvalResult::new(extrap, err + 0.01 * spread, status))
}

/// Connection formula for z < 0, |z| > 1:
/// ₂F₁(a,b;c;z) = Γ(c)Γ(b−a)/(Γ(b)Γ(c−a)) (−z)^{−a} ₂F₁(a, a−c+1; a−b+1; 1/z)
///             + Γ(c)Γ(a−b)/(Γ(a)Γ(c−b)) (−z)^{−b} ₂F₁(b, b−c+1; b−a+1; 1/z).
fn inversion(a: C64, b: C64, c: C64, z: f64) -> Result<EvalResult> {
    let ln_mz = (-z).ln();
    let w = 1.0 / z;
    let mut value = C64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut status = Status::Regular;
    for (x, y) in [(a, b), (b, a)] {
        let coef = gamma_ratio_log(&GammaRatioSpec::new().num(c).num(y - x).den(y).den(c - x));
        match coef.status {
            Status::Zero => continue,
            Status::Pole => {
                return Err(Error::SlowConvergence(format!(
                    "inversion formula singular at a={a}, b={b}"
                )))
            }
            _ => {}
        }
        let scale = exp_guarded(coef.log - x * ln_mz, coef.rel_err);
        status = status.combine(scale.status);
        let inner = series(x, x - c + 1.0, x - y + 1.0, w)?;
        let term = scale.value * inner.value;
        value += term;
        err += scale.value.norm() * inner.abs_err + term.norm() * coef.rel_err;
    }
    Ok(EvalResult::new(value, err, status))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn trivial_cases() {
        let v = hyp2f1_nonpos(c(0.3, 1.0), c(-2.0, 0.5), c(1.5, 0.0), 0.0).unwrap();
        assert_eq!(v.value, c(1.0, 0.0));
        // a = b, so z < −2 exercises the degenerate limit and gets a looser bound.
        for &z in &[-0.3, -1.0, -1.9, -7.5, -1e6] {
            let v = hyp2f1_nonpos(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), z).unwrap();
            let expect = -(1.0 - z).ln() / z;
            let tol = if z < -2.0 { 1e-9 } else { 1e-13 };
            assert!((v.value.re - expect).abs() < tol * expect.abs(), "z = {z}: {:?}", v);
        }
    }

    #[test]
    fn parameter_pole_is_an_error() {
        assert!(matches!(
            hyp2f1_nonpos(c(1.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0), -0.1),
            Err(Error::ParameterPole(_))
        ));
    }

    #[test]
    fn elementary_closed_forms() {
        // ₂F₁(a, b; b; z) = (1 − z)^{−a}
        let a = c(0.7, -1.3);
        for &z in &[-0.2, -0.7, -3.0, -40.0] {
            let v = hyp2f1_nonpos(a, c(2.25, 0.5), c(2.25, 0.5), z).unwrap();
            let expect = (-a * (1.0 - z).ln()).exp();
            assert!((v.value - expect).norm() < 1e-12 * expect.norm(), "z = {z}");
        }
        // ₂F₁(½, 1; 3/2; −x²) = arctan(x)/x
        for &x in &[0.5f64, 1.2, 3.0, 11.0] {
            let v = hyp2f1_nonpos(c(0.5, 0.0), c(1.0, 0.0), c(1.5, 0.0), -x * x).unwrap();
            let expect = x.atan() / x;
            assert!((v.value.re - expect).abs() < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn degenerate_limit() {
        // a − b = 0: ₂F₁(1, 1; 2; z) with z < −2 goes through the limit.
        let v = hyp2f1_nonpos(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), -5.0).unwrap();
        assert_eq!(v.status, Status::Regular);
        assert!((v.value.re - 6f64.ln() / 5.0).abs() < 1e-9 * 0.36);
        // a − b = 2 with complex c.
        let (a, b, cc) = (c(2.5, 0.3), c(0.5, 0.3), c(1.25, -0.4));
        let z = -6.0;
        let lim = hyp2f1_nonpos(a, b, cc, z).unwrap();
        let pf = pfaff(a, b, cc, z).unwrap();
        assert!((lim.value - pf.value).norm() < 1e-9 * pf.value.norm());
    }
}
