//! The space SO_e(p,q)/SO_e(p−1,q), its orbit set and K-types.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// An exact element of ½ℤ, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfInt(pub i64);

impl HalfInt {
    pub fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Nearest element of ½ℤ to `x`, if within `eps`.
    pub fn near(x: f64, eps: f64) -> Option<HalfInt> {
        let h = (2.0 * x).round();
        if (x - h / 2.0).abs() <= eps && h.abs() < 1e15 {
            Some(HalfInt(h as i64))
        } else {
            None
        }
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 + o.0)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 - o.0)
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Open-orbit representative w ∈ 𝒲.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orbit {
    Plus,
    Minus,
}

impl Orbit {
    pub fn sign(self) -> i32 {
        match self {
            Orbit::Plus => 1,
            Orbit::Minus => -1,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Orbit::Plus => 0,
            Orbit::Minus => 1,
        }
    }

    pub fn from_sign(s: i32) -> Option<Orbit> {
        match s {
            1 => Some(Orbit::Plus),
            -1 => Some(Orbit::Minus),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Space {
    pub p: u32,
    pub q: u32,
}

impl Space {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if p < 1 || q < 1 {
            return Err(Error::InvalidParameters(format!(
                "p and q must be at least 1, got ({p},{q})"
            )));
        }
        Ok(Space { p, q })
    }

    pub fn rho(&self) -> HalfInt {
        HalfInt(self.p as i64 + self.q as i64 - 2)
    }

    pub fn rho_f64(&self) -> f64 {
        self.rho().to_f64()
    }

    pub fn orbits(&self) -> &'static [Orbit] {
        if self.q == 1 {
            &[Orbit::Plus, Orbit::Minus]
        } else {
            &[Orbit::Plus]
        }
    }

    pub fn n_orbits(&self) -> usize {
        self.orbits().len()
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// K-type (k, l) labelling a spherical harmonic of SO(p)×SO(q).
///
/// Construction is unchecked so that formal K-types (used when a catalog is
/// studied outside the representation-theoretic range) remain expressible;
/// [`KType::validate`] enforces the admissibility rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KType {
    pub k: i32,
    pub l: i32,
}

impl KType {
    pub fn new(k: i32, l: i32) -> Self {
        KType { k, l }
    }

    pub fn abs_k(&self) -> i64 {
        self.k.unsigned_abs() as i64
    }

    pub fn abs_l(&self) -> i64 {
        self.l.unsigned_abs() as i64
    }

    pub fn validate(&self, space: &Space) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidParameters(format!("K-type ({},{}) on {}: {}", self.k, self.l, space, msg)));
        if space.p == 1 && self.k != 0 {
            return bad("p = 1 requires k = 0");
        }
        if space.p > 2 && self.k < 0 {
            return bad("p > 2 requires k >= 0");
        }
        if space.q == 1 && self.l != 0 {
            return bad("q = 1 requires l = 0");
        }
        if space.q > 2 && self.l < 0 {
            return bad("q > 2 requires l >= 0");
        }
        Ok(())
    }

    /// Eigenvalue of the SO(p) Casimir on the k-th harmonic: k(k+p−2).
    pub fn casimir_k(&self, space: &Space) -> f64 {
        let k = self.abs_k() as f64;
        k * (k + space.p as f64 - 2.0)
    }

    /// Eigenvalue of the SO(q) Casimir on the l-th harmonic: l(l+q−2).
    pub fn casimir_l(&self, space: &Space) -> f64 {
        let l = self.abs_l() as f64;
        l * (l + space.q as f64 - 2.0)
    }
}

/// K-invariant functions are the (0,0) component.
pub fn ktype_or_trivial(ktype: Option<KType>) -> KType {
    ktype.unwrap_or(KType { k: 0, l: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_and_orbits() {
        let s = Space::new(3, 2).unwrap();
        assert_eq!(s.rho(), HalfInt(3));
        assert_eq!(s.orbits().len(), 1);
        let s = Space::new(4, 1).unwrap();
        assert_eq!(s.rho_f64(), 1.5);
        assert_eq!(s.orbits(), &[Orbit::Plus, Orbit::Minus]);
        assert!(Space::new(0, 2).is_err());
    }

    #[test]
    fn ktype_rules() {
        let s = Space::new(3, 1).unwrap();
        assert!(KType::new(0, 4).validate(&s).is_err());
        assert!(KType::new(-1, 0).validate(&s).is_err());
        assert!(KType::new(2, 0).validate(&s).is_ok());
        let s = Space::new(2, 2).unwrap();
        assert!(KType::new(-3, -1).validate(&s).is_ok());
        let s = Space::new(1, 3).unwrap();
        assert!(KType::new(1, 0).validate(&s).is_err());
    }

    #[test]
    fn halfint_near() {
        assert_eq!(HalfInt::near(1.5 + 1e-12, 1e-9), Some(HalfInt(3)));
        assert_eq!(HalfInt::near(1.3, 1e-9), None);
        assert_eq!(HalfInt(-3).to_string(), "-3/2");
        assert_eq!(HalfInt(4).to_string(), "2");
    }
}
