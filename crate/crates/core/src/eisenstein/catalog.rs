use serde::Serialize;
use std::fmt;

use crate::poly::RootPoly;
use crate::space::{ktype_or_trivial, HalfInt, KType, Space};
use crate::specfun::POLE_EPS;
use crate::value::C64;

/// {start + n·step : n ∈ ℕ₀}, an infinite arithmetic progression on ½ℤ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progression {
    pub start: HalfInt,
    /// Signed step; ±1 or ±2 in practice.
    pub step: i64,
}

impl Progression {
    pub fn new(start: HalfInt, step: i64) -> Self {
        Progression { start, step }
    }

    pub fn contains(&self, x: HalfInt) -> bool {
        let diff = x.twice() - self.start.twice();
        let step = 2 * self.step;
        diff % step == 0 && diff / step >= 0
    }

    /// Membership for a complex point, exact once it is snapped to ½ℤ.
    pub fn contains_point(&self, lambda: C64, eps: f64) -> bool {
        if lambda.im.abs() > eps {
            return false;
        }
        HalfInt::near(lambda.re, eps).is_some_and(|h| self.contains(h))
    }

    /// Elements with value ≥ lower, for a descending progression, or
    /// ≤ upper for an ascending one. Used to enumerate finite windows.
    pub fn window(&self, lower: f64, upper: f64) -> Vec<HalfInt> {
        let mut out = Vec::new();
        let mut x = self.start;
        let step = HalfInt(2 * self.step);
        loop {
            let v = x.to_f64();
            if (self.step < 0 && v < lower) || (self.step > 0 && v > upper) {
                break;
            }
            if v >= lower && v <= upper {
                out.push(x);
            }
            x = x + step;
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "start": self.start.to_f64(),
            "step": self.step,
            "count": "infinite",
        })
    }
}

impl fmt::Display for Progression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.start;
        let b = a + HalfInt(2 * self.step);
        let c = b + HalfInt(2 * self.step);
        write!(f, "{{{a}, {b}, {c}, …}}")
    }
}

/// Offset of the second pole family in the K-type catalog, |l| − |k|.
/// The closed form itself places the family at |k| − |l|;
/// [`closed_form_pole_order`] follows the closed form and p_R is augmented
/// accordingly. Flip the reading here if required.
pub fn ktype_shift(ktype: KType) -> i64 {
    ktype.abs_l() - ktype.abs_k()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleCatalog {
    pub e_poles: Vec<Progression>,
    pub c_poles: Vec<Progression>,
    pub c_zeros: Vec<Progression>,
    pub e_zeros: Vec<Progression>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogSet {
    EPoles,
    CPoles,
    CZeros,
    EZeros,
}

impl PoleCatalog {
    pub fn set(&self, which: CatalogSet) -> &[Progression] {
        match which {
            CatalogSet::EPoles => &self.e_poles,
            CatalogSet::CPoles => &self.c_poles,
            CatalogSet::CZeros => &self.c_zeros,
            CatalogSet::EZeros => &self.e_zeros,
        }
    }

    pub fn contains(&self, which: CatalogSet, lambda: C64, eps: f64) -> bool {
        self.set(which).iter().any(|p| p.contains_point(lambda, eps))
    }

    /// Distance from λ to the nearest catalog point of the given set.
    pub fn distance(&self, which: CatalogSet, lambda: C64) -> f64 {
        let mut best = f64::INFINITY;
        let re = lambda.re;
        for p in self.set(which) {
            // Nearest members around Re λ.
            for x in p.window(re - 2.0, re + 2.0) {
                best = best.min((lambda - x.to_f64()).norm());
            }
            if p.step < 0 && p.start.to_f64() < re - 2.0 {
                best = best.min((lambda - p.start.to_f64()).norm());
            }
            if p.step > 0 && p.start.to_f64() > re + 2.0 {
                best = best.min((lambda - p.start.to_f64()).norm());
            }
        }
        best
    }

    pub fn to_json(&self) -> serde_json::Value {
        let f = |v: &[Progression]| v.iter().map(|p| p.to_json()).collect::<Vec<_>>();
        serde_json::json!({
            "e_poles": f(&self.e_poles),
            "c_poles": f(&self.c_poles),
            "c_zeros": f(&self.c_zeros),
            "e_zeros": f(&self.e_zeros),
        })
    }
}

/// Pole and zero sets of E° and c.
///
/// K-invariant: E° poles {ρ−q−2n} ∪ {−ρ−2n}; c poles add ℕ₀; c zeros
/// {ρ+2n} ∪ {−ρ+q+2n} ∪ −ℕ₀; E° zeros −ℕ₀. The K-type sets shift by
/// |k| + |l| and by [`ktype_shift`].
pub fn pole_catalog(space: &Space, ktype: Option<KType>) -> PoleCatalog {
    let kt = ktype_or_trivial(ktype);
    let rho = space.rho();
    let q = HalfInt::from_int(space.q as i64);
    let kl = HalfInt::from_int(kt.abs_k() + kt.abs_l());
    let shift = HalfInt::from_int(ktype_shift(kt));
    let zero = HalfInt(0);

    let e1 = Progression::new(-rho - kl, -2);
    let e2 = Progression::new(rho - q + shift, -2);
    let naturals = Progression::new(zero, 1);
    let neg_naturals = Progression::new(zero, -1);
    let z1 = Progression::new(rho + kl, 2);
    let z2 = Progression::new(-rho + q - shift, 2);
    PoleCatalog {
        e_poles: vec![e2, e1],
        c_poles: vec![e2, e1, naturals],
        c_zeros: vec![z1, z2, neg_naturals],
        e_zeros: vec![neg_naturals],
    }
}

/// Order of the pole of the closed form of E° at x ∈ ½ℤ: poles of Γ(a)
/// and Γ(c−b) less the cancelling pole of Γ(λ).
pub fn closed_form_pole_order(space: &Space, ktype: Option<KType>, x: HalfInt) -> u32 {
    let kt = ktype_or_trivial(ktype);
    // 4a and 4(c − b) in integer arithmetic.
    let four_a = x.twice() + space.rho().twice() + 2 * (kt.abs_k() + kt.abs_l());
    let four_cb = x.twice() - space.rho().twice() + 2 * space.q as i64 - 2 * kt.abs_k() + 2 * kt.abs_l();
    let at_pole = |v: i64| v <= 0 && v % 4 == 0;
    let mut order = at_pole(four_a) as i32 + at_pole(four_cb) as i32;
    if x.is_integer() && x.twice() <= 0 {
        order -= 1;
    }
    order.max(0) as u32
}

/// Real poles of E° with Re ≥ lower, with multiplicity, from the closed form.
pub fn closed_form_poles(space: &Space, ktype: Option<KType>, lower: f64) -> Vec<HalfInt> {
    let kt = ktype_or_trivial(ktype);
    let rho = space.rho().twice();
    let top = (-rho - 2 * (kt.abs_k() + kt.abs_l()))
        .max(rho - 2 * space.q as i64 + 2 * kt.abs_k() - 2 * kt.abs_l());
    let mut out = Vec::new();
    let mut x = top;
    while x as f64 / 2.0 >= lower - 1e-12 {
        let h = HalfInt(x);
        for _ in 0..closed_form_pole_order(space, ktype, h) {
            out.push(h);
        }
        x -= 1;
    }
    out
}

fn is_k_invariant(ktype: Option<KType>) -> bool {
    ktype.map_or(true, |k| k.k == 0 && k.l == 0)
}

/// p_R clearing the poles of E° on {Re λ ≥ −R}.
///
/// K-invariant: ∏_{j=0}^{[R]} (λ+ρ+2j)(λ−ρ+q+2j). K-type: the monic product
/// over catalog E°-poles with Re ≥ −R. In both cases any pole of the
/// closed form on {Re λ ≥ −R} that the product does not already clear, with
/// multiplicity, is appended so that p_R·E° is holomorphic there.
pub fn p_r_poly(space: &Space, ktype: Option<KType>, r: f64) -> RootPoly {
    let rho = space.rho();
    let q = HalfInt::from_int(space.q as i64);
    let mut roots = Vec::new();
    if is_k_invariant(ktype) {
        let top = r.max(0.0).floor() as i64;
        for j in 0..=top {
            roots.push(-rho - HalfInt::from_int(2 * j));
            roots.push(rho - q - HalfInt::from_int(2 * j));
        }
    } else {
        for p in pole_catalog(space, ktype).e_poles {
            roots.extend(p.window(-r, f64::INFINITY));
        }
    }
    let mut needed = closed_form_poles(space, ktype, -r);
    needed.sort();
    needed.dedup();
    for x in needed {
        let order = closed_form_pole_order(space, ktype, x) as usize;
        let have = roots.iter().filter(|&&y| y == x).count();
        for _ in have..order {
            roots.push(x);
        }
    }
    RootPoly::new(roots)
}

/// Spectral parameter with its classification flags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub lambda: C64,
    pub is_e_pole: bool,
    pub is_c_pole: bool,
    pub is_nonpos_int: bool,
    pub in_s1: bool,
    rho: f64,
}

impl SpectralPoint {
    pub fn new(space: &Space, ktype: Option<KType>, lambda: C64) -> Self {
        let cat = pole_catalog(space, ktype);
        let rho = space.rho_f64();
        SpectralPoint {
            lambda,
            is_e_pole: cat.contains(CatalogSet::EPoles, lambda, POLE_EPS),
            is_c_pole: cat.contains(CatalogSet::CPoles, lambda, POLE_EPS),
            is_nonpos_int: cat.contains(CatalogSet::EZeros, lambda, POLE_EPS),
            in_s1: lambda.re.abs() <= rho + POLE_EPS,
            rho,
        }
    }

    /// λ ∈ S_r = {|Re λ| ≤ (2/r − 1)ρ}.
    pub fn in_sr(&self, r: f64) -> bool {
        self.lambda.re.abs() <= (2.0 / r - 1.0) * self.rho + POLE_EPS
    }

    /// λ ∈ a*(R) = {Re λ ≤ R}.
    pub fn in_a_r(&self, r: f64) -> bool {
        self.lambda.re <= r + POLE_EPS
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(x: f64) -> HalfInt {
        HalfInt((2.0 * x) as i64)
    }

    #[test]
    fn example_catalogs() {
        let s = Space::new(7, 3).unwrap();
        let cat = pole_catalog(&s, None);
        for x in [1.0, -1.0, -3.0, -4.0, -6.0] {
            assert!(cat.e_poles.iter().any(|p| p.contains(h(x))), "{x}");
        }
        assert!(!cat.e_poles.iter().any(|p| p.contains(h(0.0))));
        assert!(!cat.e_poles.iter().any(|p| p.contains(h(3.0))));

        let s = Space::new(3, 2).unwrap();
        let cat = pole_catalog(&s, None);
        assert!(cat.e_poles.iter().all(|p| p.window(1e-9, 100.0).is_empty()));

        let s = Space::new(3, 1).unwrap();
        let cat = pole_catalog(&s, Some(KType::new(0, 4)));
        for x in [4.0, 2.0, 0.0, -2.0] {
            assert!(cat.e_poles[0].contains(h(x)));
        }
    }

    #[test]
    fn p_r_display() {
        let s = Space::new(3, 2).unwrap();
        let p = p_r_poly(&s, None, 1.0);
        let mut roots = p.roots.clone();
        roots.sort();
        assert_eq!(roots, vec![h(-3.5), h(-2.5), h(-1.5), h(-0.5)]);
        for r in [0.5, 1.0, 2.7, 5.0] {
            assert_eq!(p_r_poly(&s, None, r).degree(), 2 * (r.floor() as usize + 1));
        }
    }

    #[test]
    fn p_r_clears_closed_form_poles() {
        for &(p, q) in &[(2, 1), (3, 2), (7, 2), (7, 3), (21, 1), (4, 4)] {
            let s = Space::new(p, q).unwrap();
            for &r in &[1.0, 3.0, 5.0] {
                let poly = p_r_poly(&s, None, r);
                for x in closed_form_poles(&s, None, -r) {
                    let need = closed_form_pole_order(&s, None, x) as usize;
                    assert!(poly.roots.iter().filter(|&&y| y == x).count() >= need, "({p},{q}) R={r} x={x}");
                }
            }
        }
        let s = Space::new(5, 3).unwrap();
        let kt = Some(KType::new(2, 1));
        let poly = p_r_poly(&s, kt, 4.0);
        for x in closed_form_poles(&s, kt, -4.0) {
            assert!(poly.has_root(x));
        }
    }

    #[test]
    fn double_poles_for_2_1() {
        let s = Space::new(2, 1).unwrap();
        assert_eq!(closed_form_pole_order(&s, None, h(-0.5)), 2);
        assert_eq!(closed_form_pole_order(&s, None, h(0.5)), 0);
    }

    #[test]
    fn spectral_flags() {
        let s = Space::new(4, 3).unwrap();
        let sp = SpectralPoint::new(&s, None, C64::new(-2.0, 0.0));
        assert!(sp.is_nonpos_int && sp.in_s1 && sp.in_a_r(0.0));
        let sp = SpectralPoint::new(&s, None, C64::new(1.0, 0.0));
        assert!(sp.is_c_pole);
        assert!(!sp.in_sr(2.0));
        assert!(sp.in_sr(1.2));
        assert!(!sp.in_sr(1.5));
    }

    #[test]
    fn distance_to_catalog() {
        let s = Space::new(3, 2).unwrap();
        let cat = pole_catalog(&s, None);
        let d = cat.distance(CatalogSet::CPoles, C64::new(2.03, 0.0));
        assert!((d - 0.03).abs() < 1e-12);
        let d = cat.distance(CatalogSet::EPoles, C64::new(8.0, 0.0));
        assert!((d - 8.5).abs() < 1e-12);
    }
}
