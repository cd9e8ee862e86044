use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::RootPoly;
use crate::space::{ktype_or_trivial, HalfInt, KType, Space};
use crate::specfun::POLE_EPS;
use crate::value::C64;

/// [d_0, …, d_{n_max}] with d_0 = ρ² and d_n = ((q−1)(q−3) + (−1)^n(p−1)(p−3))·n.
///
/// d_n multiplies e^{−2nt} in the expansion of the first-order coefficient
/// of the radial operator; see [`recursion_weights`].
pub fn d_coeffs(space: &Space, n_max: usize) -> Vec<f64> {
    let p = space.p as f64;
    let q = space.q as f64;
    let rho = space.rho_f64();
    (0..=n_max)
        .map(|n| {
            if n == 0 {
                rho * rho
            } else {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                ((q - 1.0) * (q - 3.0) + sign * (p - 1.0) * (p - 3.0)) * n as f64
            }
        })
        .collect()
}

/// (c_0..c_{n_max}, s_0..s_{n_max}) with c_{2m} = 4(−1)^m m, s_{2m} = 4m and
/// vanishing odd entries. Σ s_m e^{−mt} = csch²t and Σ c_m e^{−mt} = −sech²t.
pub fn cs_coeffs(n_max: usize) -> (Vec<f64>, Vec<f64>) {
    let mut c = vec![0.0; n_max + 1];
    let mut s = vec![0.0; n_max + 1];
    for n in (2..=n_max).step_by(2) {
        let m = (n / 2) as f64;
        c[n] = if (n / 2) % 2 == 0 { 4.0 * m } else { -4.0 * m };
        s[n] = 4.0 * m;
    }
    (c, s)
}

/// Coefficients of e^{ρt}·2^{−ρ}·cosh^{−(p−1)/2}t·sinh^{−(q−1)/2}t in powers
/// of e^{−t}, so that b_0 = 1 and odd entries vanish.
pub fn b_coeffs(space: &Space, n_max: usize) -> Vec<f64> {
    let alpha = (space.p as f64 - 1.0) / 2.0;
    let beta = (space.q as f64 - 1.0) / 2.0;
    let half = n_max / 2;
    // (1+x)^{−α} and (1−x)^{−β} in x = e^{−2t}.
    let mut u = vec![1.0; half + 1];
    let mut v = vec![1.0; half + 1];
    for i in 1..=half {
        let fi = i as f64;
        u[i] = u[i - 1] * (-alpha - fi + 1.0) / fi;
        v[i] = v[i - 1] * (beta + fi - 1.0) / fi;
    }
    let mut b = vec![0.0; n_max + 1];
    for j in 0..=half {
        b[2 * j] = (0..=j).map(|i| u[i] * v[j - i]).sum();
    }
    b
}

/// Weights w_n of the recursion m(m−2λ)Γ̃_m = Σ_{n=1}^m w_n Γ̃_{m−n}, indexed
/// by powers of e^{−t}: w_{2j} = d_j + k(k+p−2)c_{2j} + l(l+q−2)s_{2j}, and
/// odd weights vanish.
pub fn recursion_weights(space: &Space, ktype: Option<KType>, n_max: usize) -> Vec<f64> {
    let kt = ktype_or_trivial(ktype);
    let d = d_coeffs(space, n_max / 2);
    let (c, s) = cs_coeffs(n_max);
    let kk = kt.casimir_k(space);
    let ll = kt.casimir_l(space);
    let mut w = vec![0.0; n_max + 1];
    for n in (2..=n_max).step_by(2) {
        w[n] = d[n / 2] + kk * c[n] + ll * s[n];
    }
    w
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoeffKind {
    GammaTilde,
    Gamma,
}

/// Γ̃_m or Γ_m for m = 0..=n_max at a fixed λ.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTable {
    pub space: Space,
    pub ktype: Option<KType>,
    pub lambda: C64,
    pub n_max: usize,
    pub kind: CoeffKind,
    pub values: Vec<C64>,
    pub regular: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    re: f64,
    im: f64,
    regular: bool,
}

#[derive(Serialize, Deserialize)]
struct CoeffTableJson {
    p: u32,
    q: u32,
    k: Option<i32>,
    l: Option<i32>,
    lambda: ComplexJson,
    kind: CoeffKind,
    values: Vec<EntryJson>,
}

impl CoeffTable {
    pub fn is_regular(&self) -> bool {
        self.regular.iter().all(|&r| r)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = CoeffTableJson {
            p: self.space.p,
            q: self.space.q,
            k: self.ktype.map(|k| k.k),
            l: self.ktype.map(|k| k.l),
            lambda: ComplexJson { re: self.lambda.re, im: self.lambda.im },
            kind: self.kind,
            values: self
                .values
                .iter()
                .zip(&self.regular)
                .map(|(v, &r)| EntryJson { re: v.re, im: v.im, regular: r })
                .collect(),
        };
        serde_json::to_value(j).expect("coefficient table serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: CoeffTableJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Fixture(e.to_string()))?;
        let ktype = match (j.k, j.l) {
            (Some(k), Some(l)) => Some(KType::new(k, l)),
            _ => None,
        };
        let n_max = j.values.len().saturating_sub(1);
        Ok(CoeffTable {
            space: Space::new(j.p, j.q)?,
            ktype,
            lambda: C64::new(j.lambda.re, j.lambda.im),
            n_max,
            kind: j.kind,
            values: j.values.iter().map(|e| C64::new(e.re, e.im)).collect(),
            regular: j.values.iter().map(|e| e.regular).collect(),
        })
    }
}

/// Incrementally extendable Γ̃/Γ tables at one λ.
///
/// An entry is non-regular when its divisor m(m−2λ) vanishes and its right
/// hand side is not structurally zero, or when it depends on a
/// non-regular entry. Entries that are identically zero as functions of λ
/// (all odd indices, for instance) stay regular with value 0.
#[derive(Debug, Clone)]
pub struct SeriesCoeffs {
    pub space: Space,
    pub ktype: Option<KType>,
    pub lambda: C64,
    weights: Vec<f64>,
    b: Vec<f64>,
    tilde: Vec<C64>,
    tilde_regular: Vec<bool>,
    tilde_zero: Vec<bool>,
    gamma: Vec<C64>,
    gamma_regular: Vec<bool>,
}

impl SeriesCoeffs {
    pub fn new(space: Space, ktype: Option<KType>, lambda: C64) -> Self {
        SeriesCoeffs {
            space,
            ktype,
            lambda,
            weights: vec![0.0],
            b: vec![1.0],
            tilde: vec![C64::new(1.0, 0.0)],
            tilde_regular: vec![true],
            tilde_zero: vec![false],
            gamma: vec![C64::new(1.0, 0.0)],
            gamma_regular: vec![true],
        }
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }

    pub fn extend_to(&mut self, n_max: usize) {
        let have = self.tilde.len();
        if n_max < have {
            return;
        }
        self.weights = recursion_weights(&self.space, self.ktype, n_max);
        self.b = b_coeffs(&self.space, n_max);
        let nonzero: Vec<usize> = (1..=n_max).filter(|&n| self.weights[n] != 0.0).collect();
        let two_lambda = 2.0 * self.lambda;
        for m in have..=n_max {
            let mut sum = C64::new(0.0, 0.0);
            let mut structural_zero = true;
            let mut regular = true;
            for &n in nonzero.iter().take_while(|&&n| n <= m) {
                if self.tilde_zero[m - n] {
                    continue;
                }
                structural_zero = false;
                regular &= self.tilde_regular[m - n];
                sum += self.weights[n] * self.tilde[m - n];
            }
            let div = m as f64 * (m as f64 - two_lambda);
            let (value, reg) = if structural_zero {
                (C64::new(0.0, 0.0), true)
            } else if div.norm() < POLE_EPS * m as f64 {
                (C64::new(0.0, 0.0), false)
            } else {
                (sum / div, regular)
            };
            self.tilde.push(value);
            self.tilde_regular.push(reg);
            self.tilde_zero.push(structural_zero);
        }
        for m in self.gamma.len()..=n_max {
            let mut sum = C64::new(0.0, 0.0);
            let mut regular = true;
            for i in (0..=m).step_by(2) {
                if self.b[i] == 0.0 || self.tilde_zero[m - i] {
                    continue;
                }
                regular &= self.tilde_regular[m - i];
                sum += self.b[i] * self.tilde[m - i];
            }
            self.gamma.push(if regular { sum } else { C64::new(0.0, 0.0) });
            self.gamma_regular.push(regular);
        }
    }

    pub fn gamma(&self) -> &[C64] {
        &self.gamma
    }

    pub fn gamma_regular(&self) -> &[bool] {
        &self.gamma_regular
    }

    pub fn table(&self, kind: CoeffKind, n_max: usize) -> CoeffTable {
        let (v, r) = match kind {
            CoeffKind::Gamma => (&self.gamma, &self.gamma_regular),
            CoeffKind::GammaTilde => (&self.tilde, &self.tilde_regular),
        };
        CoeffTable {
            space: self.space,
            ktype: self.ktype,
            lambda: self.lambda,
            n_max,
            kind,
            values: v[..=n_max].to_vec(),
            regular: r[..=n_max].to_vec(),
        }
    }
}

/// Γ̃_0..Γ̃_{n_max} with Γ̃_0 = 1.
pub fn gamma_tilde(space: &Space, ktype: Option<KType>, lambda: C64, n_max: usize) -> CoeffTable {
    let mut s = SeriesCoeffs::new(*space, ktype, lambda);
    s.extend_to(n_max);
    s.table(CoeffKind::GammaTilde, n_max)
}

/// Γ_m = Σ_i b_i Γ̃_{m−i} for m = 0..=n_max, with Γ_0 = 1.
pub fn gamma_coeffs(space: &Space, ktype: Option<KType>, lambda: C64, n_max: usize) -> CoeffTable {
    let mut s = SeriesCoeffs::new(*space, ktype, lambda);
    s.extend_to(n_max);
    s.table(CoeffKind::Gamma, n_max)
}

/// q_R(λ) = (λ − ½)(λ − 1)⋯(λ − ⌊R/2⌋), an empty product when R < 2.
pub fn q_r_poly(r: f64) -> RootPoly {
    let top = if r > 0.0 { (r / 2.0).floor() as i64 } else { 0 };
    RootPoly::new((1..=2 * top).map(HalfInt).collect())
}

/// How dΓ_m/dλ is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeMethod {
    /// Im Γ_m(λ + ih)/h with h = 1e−20. Exact to rounding for real λ, where
    /// the recursion is real-analytic; not applicable off the real axis.
    ComplexStep,
    /// Forward-mode differentiation of the recursion. Valid for any λ.
    Forward,
}

pub const COMPLEX_STEP: f64 = 1e-20;

/// dΓ_m/dλ for m = 0..=n_max. Entries that are non-regular come back as 0.
pub fn gamma_coeffs_derivative(
    space: &Space,
    ktype: Option<KType>,
    lambda: C64,
    n_max: usize,
    method: DerivativeMethod,
) -> Result<Vec<C64>> {
    match method {
        DerivativeMethod::ComplexStep => {
            if lambda.im != 0.0 {
                return Err(Error::InvalidParameters(
                    "complex-step differentiation needs a real lambda".into(),
                ));
            }
            let t = gamma_coeffs(space, ktype, C64::new(lambda.re, COMPLEX_STEP), n_max);
            Ok(t.values.iter().map(|v| C64::new(v.im / COMPLEX_STEP, 0.0)).collect())
        }
        DerivativeMethod::Forward => {
            let w = recursion_weights(space, ktype, n_max);
            let b = b_coeffs(space, n_max);
            let mut g = vec![C64::new(1.0, 0.0)];
            let mut dg = vec![C64::new(0.0, 0.0)];
            for m in 1..=n_max {
                let mut s = C64::new(0.0, 0.0);
                let mut ds = C64::new(0.0, 0.0);
                for n in (2..=m).step_by(2) {
                    s += w[n] * g[m - n];
                    ds += w[n] * dg[m - n];
                }
                let mf = m as f64;
                let div = mf * (mf - 2.0 * lambda);
                if div.norm() < POLE_EPS * mf {
                    g.push(C64::new(0.0, 0.0));
                    dg.push(C64::new(0.0, 0.0));
                    continue;
                }
                let gm = s / div;
                g.push(gm);
                dg.push((ds + 2.0 * mf * gm) / div);
            }
            Ok((0..=n_max)
                .map(|m| (0..=m).step_by(2).map(|i| b[i] * dg[m - i]).sum())
                .collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(p: u32, q: u32) -> Space {
        Space::new(p, q).unwrap()
    }

    #[test]
    fn d_examples() {
        assert_eq!(d_coeffs(&sp(3, 3), 3), vec![4.0, 0.0, 0.0, 0.0]);
        let d = d_coeffs(&sp(5, 3), 2);
        assert_eq!(d[1], -8.0);
        assert_eq!(d[2], 16.0);
    }

    #[test]
    fn cs_examples() {
        let (c, s) = cs_coeffs(4);
        assert_eq!(c, vec![0.0, 0.0, -4.0, 0.0, 8.0]);
        assert_eq!(s, vec![0.0, 0.0, 4.0, 0.0, 8.0]);
    }

    #[test]
    fn cs_series_match_hyperbolic_functions() {
        let (c, s) = cs_coeffs(60);
        let t = 1.0f64;
        let sum = |v: &[f64]| v.iter().enumerate().map(|(m, x)| x * (-(m as f64) * t).exp()).sum::<f64>();
        assert!((sum(&c) + 1.0 / t.cosh().powi(2)).abs() < 1e-12);
        assert!((sum(&s) - 1.0 / t.sinh().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn b_reproduces_jacobian_power() {
        for &(p, q) in &[(3, 3), (5, 3), (2, 1), (4, 7)] {
            let s = sp(p, q);
            let b = b_coeffs(&s, 400);
            assert_eq!(b[0], 1.0);
            assert!(b.iter().skip(1).step_by(2).all(|&x| x == 0.0));
            let t = 1.3f64;
            let rho = s.rho_f64();
            let series: f64 = b.iter().enumerate().map(|(k, x)| x * (-(k as f64) * t).exp()).sum();
            let direct = 2f64.powf(-rho)
                * (rho * t).exp()
                * t.cosh().powf(-(p as f64 - 1.0) / 2.0)
                * t.sinh().powf(-(q as f64 - 1.0) / 2.0);
            assert!((series - direct).abs() < 1e-13 * direct.abs(), "({p},{q})");
        }
    }

    #[test]
    fn odd_coefficients_vanish_and_half_integers_are_regular() {
        let s = sp(5, 3);
        let t = gamma_coeffs(&s, None, C64::new(1.5, 0.0), 20);
        assert!(t.is_regular());
        assert!(t.values.iter().skip(1).step_by(2).all(|v| v.norm() == 0.0));
        let t = gamma_tilde(&s, None, C64::new(2.0, 0.0), 8);
        assert!(t.regular[..4].iter().all(|&r| r));
        assert!(!t.regular[4]);
        assert!(!t.regular[6]);
        assert!(t.regular[5]);
    }

    #[test]
    fn zero_weights_stay_regular() {
        // (3,3): every d_n with n ≥ 1 vanishes, so Γ̃_m = 0 for m ≥ 1 even at λ = 1.
        let t = gamma_tilde(&sp(3, 3), None, C64::new(1.0, 0.0), 6);
        assert!(t.is_regular());
        assert!(t.values[1..].iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn ktype_zero_reduces() {
        let s = sp(4, 3);
        let lam = C64::new(0.3, 0.8);
        let a = gamma_coeffs(&s, None, lam, 60);
        let b = gamma_coeffs(&s, Some(KType::new(0, 0)), lam, 60);
        for (x, y) in a.values.iter().zip(&b.values) {
            assert!((x - y).norm() <= 1e-12 * x.norm().max(1.0));
        }
    }

    #[test]
    fn q_r_examples() {
        assert_eq!(q_r_poly(3.0).roots, vec![HalfInt(2), HalfInt(1)]);
        assert_eq!(q_r_poly(0.4).degree(), 0);
        assert_eq!(q_r_poly(5.0).degree(), 4);
        assert_eq!(q_r_poly(5.0).roots[0], HalfInt(4));
    }

    #[test]
    fn derivatives_agree() {
        let s = sp(5, 3);
        let kt = Some(KType::new(2, 1));
        let lam = C64::new(0.37, 0.0);
        let cs = gamma_coeffs_derivative(&s, kt, lam, 30, DerivativeMethod::ComplexStep).unwrap();
        let fw = gamma_coeffs_derivative(&s, kt, lam, 30, DerivativeMethod::Forward).unwrap();
        for (a, b) in cs.iter().zip(&fw) {
            assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
        }
        let lam = C64::new(0.37, 0.6);
        let fw = gamma_coeffs_derivative(&s, kt, lam, 30, DerivativeMethod::Forward).unwrap();
        let h = 1e-6;
        let up = gamma_coeffs(&s, kt, lam + h, 30);
        let dn = gamma_coeffs(&s, kt, lam - h, 30);
        for m in 0..=30 {
            let fd = (up.values[m] - dn.values[m]) / (2.0 * h);
            assert!((fd - fw[m]).norm() <= 1e-6 * fw[m].norm().max(1.0), "m = {m}");
        }
        assert!(gamma_coeffs_derivative(&s, kt, lam, 4, DerivativeMethod::ComplexStep).is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = gamma_coeffs(&sp(3, 2), Some(KType::new(1, 0)), C64::new(0.7, 0.3), 6);
        let j = t.to_json();
        assert_eq!(j["kind"], "Gamma");
        assert_eq!(j["values"].as_array().unwrap().len(), 7);
        let back = CoeffTable::from_json(&j).unwrap();
        assert_eq!(back, t);
    }
}
