use super::coeffs::SeriesCoeffs;
use crate::error::{Error, Result};
use crate::space::{ktype_or_trivial, KType, Space};
use crate::value::{EvalResult, C64};

/// Below this t the geometric factor e^{−t} is too close to 1 for the
/// series to be useful.
pub const T_MIN_SERIES: f64 = 0.05;

/// Hard cap on the number of series terms.
pub const MAX_SERIES_TERMS: usize = 8192;

const INITIAL_TERMS: usize = 64;

/// Growth exponent χ in |Γ_m(λ)| ≤ M(1+m)^χ.
///
/// Γ_m are the Taylor coefficients in x = e^{−t} of a function whose
/// nearest singularities sit at x = 1 (t = 0) and x = ±i (cosh t = 0), with
/// local exponents 2 − q − |l| and 2 − p − |k|. That gives growth
/// m^{max(p+|k|, q+|l|) − 3}; one extra power absorbs logarithmic cases
/// and the λ-dependent transient. The value is checked against a fit over
/// m ≤ 500 in the test suite.
pub fn tail_exponent(space: &Space, ktype: Option<KType>) -> f64 {
    let kt = ktype_or_trivial(ktype);
    let a = space.p as i64 + kt.abs_k();
    let b = space.q as i64 + kt.abs_l();
    (a.max(b) - 2).max(1) as f64
}

/// Upper bound for Σ_{j>m} (1+j)^χ e^{−jt}.
pub fn tail_sum_bound(m: usize, chi: f64, t: f64) -> f64 {
    let m = m as f64;
    let r = ((m + 2.0) / (m + 1.0)).powf(chi) * (-t).exp();
    if r >= 1.0 {
        return f64::INFINITY;
    }
    (m + 2.0).powf(chi) * (-(m + 1.0) * t).exp() / (1.0 - r)
}

/// Φ_λ(t) = e^{(λ−ρ)t} Σ_m Γ_m(λ) e^{−mt}, with a coefficient table that
/// grows on demand and can be reused across t.
#[derive(Debug, Clone)]
pub struct PhiSeries {
    coeffs: SeriesCoeffs,
    chi: f64,
}

impl PhiSeries {
    pub fn new(space: Space, ktype: Option<KType>, lambda: C64) -> Self {
        let mut coeffs = SeriesCoeffs::new(space, ktype, lambda);
        coeffs.extend_to(INITIAL_TERMS);
        PhiSeries { coeffs, chi: tail_exponent(&space, ktype) }
    }

    pub fn lambda(&self) -> C64 {
        self.coeffs.lambda
    }

    pub fn is_regular(&self) -> bool {
        self.coeffs.gamma_regular().iter().all(|&r| r)
    }

    fn pole_error(&self) -> Error {
        Error::SeriesPole { re: self.coeffs.lambda.re, im: self.coeffs.lambda.im }
    }

    /// Evaluate with relative tolerance `tol` on the bracketed sum.
    pub fn eval(&mut self, t: f64, tol: f64) -> Result<EvalResult> {
        if !(t >= T_MIN_SERIES) {
            return Err(Error::SlowConvergence(format!(
                "t = {t} is below the series threshold {T_MIN_SERIES}"
            )));
        }
        let x = (-t).exp();
        let mut n = self.coeffs.len().max(INITIAL_TERMS + 1) - 1;
        loop {
            self.coeffs.extend_to(n);
            let g = self.coeffs.gamma();
            if !self.coeffs.gamma_regular()[..=n].iter().all(|&r| r) {
                return Err(self.pole_error());
            }
            let mut sum = C64::new(0.0, 0.0);
            let mut abs_sum = 0.0;
            let mut envelope = 0.0f64;
            let mut xm = 1.0;
            let mut stop = None;
            for (m, gm) in g.iter().enumerate().take(n + 1) {
                let term = gm * xm;
                sum += term;
                abs_sum += term.norm();
                envelope = envelope.max(gm.norm() / (1.0 + m as f64).powf(self.chi));
                xm *= x;
                if m >= 8 && m % 2 == 0 {
                    let tail = envelope * tail_sum_bound(m, self.chi, t);
                    if tail <= tol * sum.norm() {
                        stop = Some((m, tail));
                        break;
                    }
                }
            }
            if let Some((_, tail)) = stop {
                let lead = ((self.coeffs.lambda - self.coeffs.space.rho_f64()) * t).exp();
                let err = (tail + 4.0 * f64::EPSILON * abs_sum) * lead.norm();
                return Ok(EvalResult::regular(lead * sum, err));
            }
            if n >= MAX_SERIES_TERMS {
                return Err(Error::SlowConvergence(format!(
                    "Harish-Chandra series needs more than {MAX_SERIES_TERMS} terms at t = {t}"
                )));
            }
            n = (2 * n).min(MAX_SERIES_TERMS);
        }
    }
}

/// One-shot Φ_λ(t).
pub fn phi_series(
    space: &Space,
    ktype: Option<KType>,
    lambda: C64,
    t: f64,
    tol: f64,
) -> Result<EvalResult> {
    PhiSeries::new(*space, ktype, lambda).eval(t, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_term_dominates_for_large_t() {
        let s = Space::new(3, 2).unwrap();
        let lam = C64::new(1.0, 1.0);
        let t = 40.0;
        let v = phi_series(&s, None, lam, t, 1e-14).unwrap();
        let lead = ((lam - 1.5) * t).exp();
        assert!((v.value / lead - 1.0).norm() < 1e-12);
    }

    #[test]
    fn refuses_small_t_and_poles() {
        let s = Space::new(5, 3).unwrap();
        assert!(matches!(
            phi_series(&s, None, C64::new(0.3, 0.0), 0.01, 1e-12),
            Err(Error::SlowConvergence(_))
        ));
        assert!(matches!(
            phi_series(&s, None, C64::new(2.0, 0.0), 1.0, 1e-12),
            Err(Error::SeriesPole { .. })
        ));
    }

    #[test]
    fn tail_sum_is_an_upper_bound() {
        let (chi, t) = (3.0, 0.2);
        for &m in &[30usize, 50, 200] {
            let exact: f64 = (m + 1..20000).map(|j| (1.0 + j as f64).powf(chi) * (-(j as f64) * t).exp()).sum();
            let b = tail_sum_bound(m, chi, t);
            assert!(b >= exact && b < 10.0 * exact, "m = {m}: {b} vs {exact}");
        }
    }
}
