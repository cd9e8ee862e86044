use std::f64::consts::LN_2;

use crate::space::{ktype_or_trivial, KType, Space};
use crate::specfun::{gamma_ratio, GammaArg, GammaRatioSpec};
use crate::value::{EvalResult, C64};

/// Hypergeometric parameters of E°_{k,l}(λ):
/// a = (λ+ρ+|k|+|l|)/2, b = (−λ+ρ+|k|+|l|)/2, c = q/2 + |l|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperParams {
    pub a: C64,
    pub b: C64,
    pub c: f64,
}

impl HyperParams {
    pub fn new(space: &Space, ktype: Option<KType>, lambda: C64) -> Self {
        let kt = ktype_or_trivial(ktype);
        let rho = space.rho_f64();
        let s = rho + (kt.abs_k() + kt.abs_l()) as f64;
        HyperParams {
            a: (lambda + s) / 2.0,
            b: (-lambda + s) / 2.0,
            c: space.q as f64 / 2.0 + kt.abs_l() as f64,
        }
    }
}

/// Gamma ratio Γ(a)Γ(c−b)/(Γ(λ)Γ(c)) times 2^{λ−ρ}, the t-independent factor of E°.
pub fn eisenstein_prefactor(space: &Space, ktype: Option<KType>, lambda: C64) -> EvalResult {
    let hp = HyperParams::new(space, ktype, lambda);
    let spec = GammaRatioSpec::new()
        .num(GammaArg::with_slope(hp.a, 0.5))
        .num(GammaArg::with_slope(hp.c - hp.b, 0.5))
        .den(GammaArg::with_slope(lambda, 1.0))
        .den(C64::new(hp.c, 0.0))
        .prefactor_log((lambda - space.rho_f64()) * LN_2);
    gamma_ratio(&spec)
}

/// c(λ) = 2^{2λ} Γ(a)Γ(c−b)Γ(−λ) / (Γ(b)Γ(c−a)Γ(λ)), the coefficient of Φ_{−λ}
/// in E°(λ) = Φ_λ + c(λ)Φ_{−λ}. With k = l = 0 this is the displayed
/// K-invariant formula.
pub fn c_function(space: &Space, ktype: Option<KType>, lambda: C64) -> EvalResult {
    let hp = HyperParams::new(space, ktype, lambda);
    let c = C64::new(hp.c, 0.0);
    let spec = GammaRatioSpec::new()
        .num(GammaArg::with_slope(hp.a, 0.5))
        .num(GammaArg::with_slope(c - hp.b, 0.5))
        .num(GammaArg::with_slope(-lambda, -1.0))
        .den(GammaArg::with_slope(hp.b, -0.5))
        .den(GammaArg::with_slope(c - hp.a, -0.5))
        .den(GammaArg::with_slope(lambda, 1.0))
        .prefactor_log(2.0 * lambda * LN_2);
    gamma_ratio(&spec)
}

/// C°(−1, λ) as a |𝒲|×|𝒲| matrix: diagonal with every diagonal entry c(λ).
pub fn c_matrix(space: &Space, lambda: C64) -> Vec<Vec<EvalResult>> {
    let n = space.n_orbits();
    let c = c_function(space, None, lambda);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { c } else { EvalResult::exact(C64::new(0.0, 0.0)) })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::Status;

    #[test]
    fn product_identity() {
        let s = Space::new(4, 3).unwrap();
        let lam = C64::new(0.8, 1.1);
        let p = c_function(&s, None, lam).value * c_function(&s, None, -lam).value;
        assert!((p - 1.0).norm() < 1e-13);
        let kt = Some(KType::new(2, 1));
        let p = c_function(&s, kt, lam).value * c_function(&s, kt, -lam).value;
        assert!((p - 1.0).norm() < 1e-13);
    }

    #[test]
    fn poles_and_zeros() {
        let s = Space::new(4, 3).unwrap();
        assert_eq!(c_function(&s, None, C64::new(1.0, 0.0)).status, Status::Pole);
        assert_eq!(c_function(&s, None, C64::new(-2.0, 0.0)).status, Status::Zero);
    }

    #[test]
    fn unitary_axis_modulus_one() {
        let s = Space::new(5, 3).unwrap();
        for i in 1..20 {
            let lam = C64::new(0.0, 0.37 * i as f64);
            let c = c_function(&s, None, lam).value;
            let cm = c_function(&s, None, -lam).value;
            assert!((c.norm() - 1.0).abs() < 1e-10);
            assert!((cm - c.conj()).norm() < 1e-10);
        }
    }

    #[test]
    fn matrix_shape() {
        let s = Space::new(3, 1).unwrap();
        let m = c_matrix(&s, C64::new(0.3, 0.2));
        assert_eq!(m.len(), 2);
        assert_eq!(m[0][1].value, C64::new(0.0, 0.0));
        assert_eq!(m[1][0].value, C64::new(0.0, 0.0));
        assert_eq!(m[0][0].value, m[1][1].value);
        let s = Space::new(3, 2).unwrap();
        let lam = C64::new(0.3, 0.2);
        assert_eq!(c_matrix(&s, lam)[0][0].value, c_function(&s, None, lam).value);
    }
}
