use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{Orbit, Space};

/// Radial test function on one orbit, compactly supported in (0, ∞).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Profile {
    Zero,
    /// exp(−1/((t−a)(b−t))) on (a, b), smooth with all derivatives vanishing at a and b.
    SmoothBump { a: f64, b: f64 },
    /// 4(t−a)(b−t)/(b−a)² on [a, b]: continuous, with corners at a and b.
    PolynomialBump { a: f64, b: f64 },
    /// Piecewise linear through (t_i, v_i), zero outside [t_0, t_last].
    Sampled { t: Vec<f64>, values: Vec<f64> },
}

impl Profile {
    pub fn smooth_bump(a: f64, b: f64) -> Result<Self> {
        check_support(a, b)?;
        Ok(Profile::SmoothBump { a, b })
    }

    pub fn polynomial_bump(a: f64, b: f64) -> Result<Self> {
        check_support(a, b)?;
        Ok(Profile::PolynomialBump { a, b })
    }

    pub fn sampled(t: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if t.len() != values.len() || t.len() < 2 {
            return Err(Error::InvalidParameters("sampled profile needs matching t and values, at least two".into()));
        }
        if !(t[0] > 0.0) || t.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameters("sample points must be positive and increasing".into()));
        }
        Ok(Profile::Sampled { t, values })
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Profile::Zero => 0.0,
            Profile::SmoothBump { a, b } => {
                if t <= *a || t >= *b {
                    0.0
                } else {
                    (-1.0 / ((t - a) * (b - t))).exp()
                }
            }
            Profile::PolynomialBump { a, b } => {
                if t <= *a || t >= *b {
                    0.0
                } else {
                    4.0 * (t - a) * (b - t) / ((b - a) * (b - a))
                }
            }
            Profile::Sampled { t: ts, values } => {
                if t < ts[0] || t > ts[ts.len() - 1] {
                    return 0.0;
                }
                let i = ts.partition_point(|&x| x <= t).clamp(1, ts.len() - 1);
                let (x0, x1) = (ts[i - 1], ts[i]);
                let s = (t - x0) / (x1 - x0);
                values[i - 1] * (1.0 - s) + values[i] * s
            }
        }
    }

    /// Closed support interval, `None` for the zero profile.
    pub fn support(&self) -> Option<(f64, f64)> {
        match self {
            Profile::Zero => None,
            Profile::SmoothBump { a, b } | Profile::PolynomialBump { a, b } => Some((*a, *b)),
            Profile::Sampled { t, values } => {
                if values.iter().all(|v| *v == 0.0) {
                    None
                } else {
                    Some((t[0], t[t.len() - 1]))
                }
            }
        }
    }

    /// Interior points where the profile is not smooth.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            Profile::Sampled { t, .. } => t[1..t.len() - 1].to_vec(),
            _ => Vec::new(),
        }
    }
}

fn check_support(a: f64, b: f64) -> Result<()> {
    if !(a > 0.0 && b > a && b.is_finite()) {
        return Err(Error::InvalidParameters(format!("support needs 0 < a < b, got [{a}, {b}]")));
    }
    Ok(())
}

/// K-invariant test function f, given by one profile per open orbit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    per_orbit: Vec<Profile>,
}

impl RadialProfile {
    pub fn new(space: &Space, per_orbit: Vec<Profile>) -> Result<Self> {
        if per_orbit.len() != space.n_orbits() {
            return Err(Error::InvalidParameters(format!(
                "{} needs {} orbit profiles, got {}",
                space,
                space.n_orbits(),
                per_orbit.len()
            )));
        }
        Ok(RadialProfile { per_orbit })
    }

    /// The same profile on every orbit.
    pub fn uniform(space: &Space, profile: Profile) -> Self {
        RadialProfile { per_orbit: vec![profile; space.n_orbits()] }
    }

    pub fn zero(space: &Space) -> Self {
        Self::uniform(space, Profile::Zero)
    }

    pub fn orbit(&self, w: Orbit) -> &Profile {
        &self.per_orbit[w.index()]
    }

    pub fn profiles(&self) -> &[Profile] {
        &self.per_orbit
    }

    pub fn is_zero(&self) -> bool {
        self.per_orbit.iter().all(|p| p.support().is_none())
    }

    /// Right end of the union of supports.
    pub fn support_end(&self) -> f64 {
        self.per_orbit.iter().filter_map(|p| p.support()).map(|s| s.1).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bumps() {
        let s = Profile::smooth_bump(1.0, 2.0).unwrap();
        assert_eq!(s.eval(1.0), 0.0);
        assert!((s.eval(1.5) - (-4.0f64).exp()).abs() < 1e-16);
        assert!(s.eval(1.0001) < 1e-300);
        let p = Profile::polynomial_bump(1.0, 3.0).unwrap();
        assert_eq!(p.eval(2.0), 1.0);
        assert_eq!(p.eval(3.5), 0.0);
        assert!(Profile::smooth_bump(0.0, 1.0).is_err());
    }

    #[test]
    fn sampled_interpolates() {
        let p = Profile::sampled(vec![1.0, 2.0, 4.0], vec![0.0, 2.0, 0.0]).unwrap();
        assert_eq!(p.eval(1.5), 1.0);
        assert_eq!(p.eval(3.0), 1.0);
        assert_eq!(p.eval(5.0), 0.0);
        assert_eq!(p.breakpoints(), vec![2.0]);
        assert!(Profile::sampled(vec![2.0, 1.0], vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn per_orbit_shape() {
        let s = Space::new(3, 1).unwrap();
        assert!(RadialProfile::new(&s, vec![Profile::Zero]).is_err());
        let f = RadialProfile::new(&s, vec![Profile::Zero, Profile::smooth_bump(1.0, 2.0).unwrap()]).unwrap();
        assert!(!f.is_zero());
        assert_eq!(f.support_end(), 2.0);
        assert!(RadialProfile::zero(&s).is_zero());
    }
}
