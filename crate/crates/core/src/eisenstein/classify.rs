use serde::Serialize;

use super::catalog::ktype_shift;
use super::regularized::DOMAIN_MARGIN;
use crate::error::{Error, Result};
use crate::space::{HalfInt, KType, Space};
use crate::specfun::{nonpositive_integer, POLE_EPS};
use crate::value::C64;

/// Growth class of t ↦ p_R(λ₀)E°(λ₀, η)(t) on (0, ∞) for η ≠ 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Boundedness {
    Bounded,
    Unbounded,
    IdenticallyZero,
    /// λ₀ lies in the exceptional integer set where the criterion does not apply.
    Undetermined,
}

impl Boundedness {
    pub fn as_str(self) -> &'static str {
        match self {
            Boundedness::Bounded => "Bounded",
            Boundedness::Unbounded => "Unbounded",
            Boundedness::IdenticallyZero => "IdenticallyZero",
            Boundedness::Undetermined => "Undetermined",
        }
    }
}

impl std::fmt::Display for Boundedness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Integers λ with ρ < λ ≤ ρ − q + |l| − |k|, nonempty only for integral ρ
/// and a nontrivial K-type.
pub fn exceptional_set(space: &Space, ktype: Option<KType>) -> Vec<i64> {
    let Some(kt) = ktype else { return Vec::new() };
    let rho = space.rho();
    if !rho.is_integer() || (kt.k == 0 && kt.l == 0) {
        return Vec::new();
    }
    let r = rho.twice() / 2;
    let top = r - space.q as i64 + ktype_shift(kt);
    ((r + 1)..=top).collect()
}

/// Boundedness of the regularized Eisenstein integral at λ₀ on {Re λ ≥ −R}.
pub fn classify_bounded(
    space: &Space,
    ktype: Option<KType>,
    r: f64,
    lambda0: C64,
) -> Result<Boundedness> {
    if lambda0.re < -r - DOMAIN_MARGIN {
        return Err(Error::OutOfDomain(lambda0.re));
    }
    if nonpositive_integer(lambda0, POLE_EPS).is_some() {
        return Ok(Boundedness::IdenticallyZero);
    }
    if lambda0.im.abs() < POLE_EPS {
        if let Some(h) = HalfInt::near(lambda0.re, POLE_EPS) {
            if h.is_integer() && exceptional_set(space, ktype).contains(&(h.twice() / 2)) {
                return Ok(Boundedness::Undetermined);
            }
        }
    }
    if lambda0.re.abs() <= space.rho_f64() + POLE_EPS {
        Ok(Boundedness::Bounded)
    } else {
        Ok(Boundedness::Unbounded)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn examples() {
        let s = Space::new(3, 2).unwrap();
        assert_eq!(classify_bounded(&s, None, 3.0, c(1.0)).unwrap(), Boundedness::Bounded);
        assert_eq!(classify_bounded(&s, None, 3.0, c(2.0)).unwrap(), Boundedness::Unbounded);
        assert_eq!(classify_bounded(&s, None, 3.0, c(-2.0)).unwrap(), Boundedness::IdenticallyZero);
        assert_eq!(classify_bounded(&s, None, 3.0, C64::new(-1.5, 4.0)).unwrap(), Boundedness::Bounded);
        assert_eq!(classify_bounded(&s, None, 3.0, c(-2.5)).unwrap(), Boundedness::Unbounded);
        assert!(classify_bounded(&s, None, 3.0, c(-3.5)).is_err());
    }

    #[test]
    fn exceptional_integers() {
        let s = Space::new(3, 1).unwrap();
        let kt = Some(KType::new(0, 4));
        assert_eq!(exceptional_set(&s, kt), vec![2, 3, 4]);
        assert_eq!(classify_bounded(&s, kt, 5.0, c(3.0)).unwrap(), Boundedness::Undetermined);
        assert_eq!(classify_bounded(&s, kt, 5.0, c(5.0)).unwrap(), Boundedness::Unbounded);
        assert_eq!(classify_bounded(&s, kt, 5.0, C64::new(3.0, 0.5)).unwrap(), Boundedness::Unbounded);
        // Half-integral ρ: no exceptional points.
        assert!(exceptional_set(&Space::new(3, 2).unwrap(), Some(KType::new(0, 6))).is_empty());
    }
}
