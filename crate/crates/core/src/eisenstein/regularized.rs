use std::f64::consts::PI;

use super::catalog::{closed_form_pole_order, closed_form_poles, p_r_poly};
use super::eta::EtaVector;
use super::kernel::Eisenstein;
use crate::error::{Error, Result};
use crate::poly::RootPoly;
use crate::space::{HalfInt, KType, Orbit, Space};
use crate::specfun::POLE_EPS;
use crate::value::{EvalResult, Status, C64};

/// Closer than this to a pole, p_R·E° is evaluated as a limit.
pub const POLE_SWITCH: f64 = 1e-6;
/// Inside this annulus the direct product is returned with a warning.
pub const POLE_WARN: f64 = 1e-3;
/// Tolerance on the boundary Re λ₀ = −R of the admissible half-plane.
pub const DOMAIN_MARGIN: f64 = 1e-9;

const CONTOUR_POINTS: usize = 32;
const CONTOUR_RADIUS: f64 = 0.1;

enum Mode {
    /// p_R vanishes at λ₀ to higher order than E° has a pole there.
    Zero,
    Direct(Box<Eisenstein>, Status),
    /// Points λ₀ + r·e^{iθ_j} with their p_R values.
    Contour(Vec<(C64, Eisenstein)>),
}

/// F(λ₀)(t) = p_R(λ₀)E°(λ₀)(t), holomorphic on {Re λ ≥ −R}, evaluable at
/// many t.
///
/// Near a pole of E° the value is the analytic limit. Since F is
/// holomorphic there, the limit equals the mean of F over a small circle
/// around λ₀ (Cauchy's formula), which the trapezoid rule evaluates to
/// rounding accuracy. This is the same quantity as
/// d/dλ[(λ−λ₀)F(λ)] at λ₀, obtained without differentiating numerically.
pub struct Regularized {
    pub lambda0: C64,
    pub poly: RootPoly,
    mode: Mode,
}

impl Regularized {
    pub fn new(space: Space, ktype: Option<KType>, r: f64, lambda0: C64) -> Result<Self> {
        if lambda0.re < -r - DOMAIN_MARGIN {
            return Err(Error::OutOfDomain(lambda0.re));
        }
        let poly = p_r_poly(&space, ktype, r);
        if lambda0.im.abs() < POLE_EPS {
            if let Some(x) = HalfInt::near(lambda0.re, POLE_EPS) {
                if poly.multiplicity(x) > closed_form_pole_order(&space, ktype, x) as usize {
                    return Ok(Regularized { lambda0, poly, mode: Mode::Zero });
                }
            }
        }
        let dist = closed_form_poles(&space, ktype, -r - 1.0)
            .iter()
            .map(|x| (lambda0 - x.to_f64()).norm())
            .fold(f64::INFINITY, f64::min);
        let mode = if dist < POLE_SWITCH {
            let pts = (0..CONTOUR_POINTS)
                .map(|j| {
                    let th = 2.0 * PI * (j as f64 + 0.5) / CONTOUR_POINTS as f64;
                    let lam = lambda0 + C64::from_polar(CONTOUR_RADIUS, th);
                    (poly.eval(lam), Eisenstein::new(space, ktype, lam))
                })
                .collect();
            Mode::Contour(pts)
        } else {
            let status = if dist < POLE_WARN { Status::NearPole } else { Status::Regular };
            Mode::Direct(Box::new(Eisenstein::new(space, ktype, lambda0)), status)
        };
        Ok(Regularized { lambda0, poly, mode })
    }

    pub fn is_limit(&self) -> bool {
        matches!(self.mode, Mode::Contour(_))
    }

    /// F(λ₀)(t) with η_w = 1.
    pub fn eval(&mut self, t: f64) -> Result<EvalResult> {
        match &mut self.mode {
            Mode::Zero => Ok(EvalResult::exact(C64::new(0.0, 0.0))),
            Mode::Direct(e, status) => {
                let v = e.eval(t)?;
                let p = self.poly.eval(self.lambda0);
                let mut out = v.scale(p);
                out.status = out.status.combine(*status);
                Ok(out)
            }
            Mode::Contour(pts) => {
                let mut sum = C64::new(0.0, 0.0);
                let mut err = 0.0;
                let mut mag = 0.0f64;
                for (p, e) in pts.iter_mut() {
                    let v = e.eval(t)?;
                    if v.status == Status::Pole {
                        return Err(Error::IntegrandPole { re: e.lambda.re, im: e.lambda.im });
                    }
                    let f = v.value * *p;
                    sum += f;
                    mag = mag.max(f.norm());
                    err += v.abs_err * p.norm();
                }
                let n = pts.len() as f64;
                let value = sum / n;
                let abs_err = err / n + 8.0 * f64::EPSILON * mag;
                Ok(EvalResult::new(value, abs_err, Status::RegularizedAtPole))
            }
        }
    }
}

/// p_R(λ₀)·E°_w(λ₀, η)(t), with the analytic limit at poles of E°.
pub fn eisenstein_regularized(
    space: &Space,
    ktype: Option<KType>,
    r: f64,
    lambda0: C64,
    eta: &EtaVector,
    w: Orbit,
    t: f64,
) -> Result<EvalResult> {
    Ok(Regularized::new(*space, ktype, r, lambda0)?.eval(t)?.scale(eta.get(w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::rel_diff;

    #[test]
    fn off_pole_is_the_plain_product() {
        let s = Space::new(3, 2).unwrap();
        let lam = C64::new(0.7, 0.4);
        let mut reg = Regularized::new(s, None, 3.0, lam).unwrap();
        let direct = Eisenstein::new(s, None, lam).closed(1.2).unwrap().value * reg.poly.eval(lam);
        assert!(rel_diff(reg.eval(1.2).unwrap().value, direct) < 1e-12);
    }

    #[test]
    fn limit_at_pole_matches_offset_average() {
        // (7,3): E° has a simple pole at λ = 1.
        let s = Space::new(7, 3).unwrap();
        let lam0 = C64::new(1.0, 0.0);
        let mut reg = Regularized::new(s, None, 2.0, lam0).unwrap();
        assert!(reg.is_limit());
        let t = 1.5;
        let lim = reg.eval(t).unwrap();
        assert_eq!(lim.status, Status::RegularizedAtPole);
        let f = |lam: C64| Eisenstein::new(s, None, lam).closed(t).unwrap().value * reg.poly.eval(lam);
        let avg = |e: f64| 0.5 * (f(lam0 + e) + f(lam0 - e));
        let (e1, e2) = (1e-3, 5e-4);
        let rich = (4.0 * avg(e2) - avg(e1)) / 3.0;
        assert!(rel_diff(lim.value, rich) < 1e-6, "{:?} vs {rich}", lim.value);
    }

    #[test]
    fn vanishes_on_negative_integers() {
        let s = Space::new(3, 2).unwrap();
        for n in 0..4 {
            let mut reg = Regularized::new(s, None, 5.0, C64::new(-(n as f64), 0.0)).unwrap();
            for &t in &[0.1, 1.0, 10.0] {
                assert!(reg.eval(t).unwrap().value.norm() < 1e-12);
            }
        }
    }

    #[test]
    fn excess_root_of_p_r_gives_an_exact_zero() {
        // (6,2): E° has a simple pole at −5 where p_R has a double root.
        let s = Space::new(6, 2).unwrap();
        let mut reg = Regularized::new(s, None, 5.0, C64::new(-5.0, 0.0)).unwrap();
        assert!(!reg.is_limit());
        assert_eq!(reg.eval(40.0).unwrap().value, C64::new(0.0, 0.0));
    }

    #[test]
    fn domain_is_enforced() {
        let s = Space::new(3, 2).unwrap();
        assert!(matches!(
            Regularized::new(s, None, 2.0, C64::new(-2.5, 0.0)),
            Err(Error::OutOfDomain(_))
        ));
        assert!(Regularized::new(s, None, 2.0, C64::new(-2.0, 0.0)).is_ok());
    }
}
