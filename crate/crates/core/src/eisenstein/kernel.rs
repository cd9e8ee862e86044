use super::cfunction::{c_function, eisenstein_prefactor, HyperParams};
use super::eta::EtaVector;
use crate::error::{Error, Result};
use crate::hcseries::{PhiSeries, T_MIN_SERIES};
use crate::space::{ktype_or_trivial, KType, Orbit, Space};
use crate::specfun::hyp2f1_nonpos;
use crate::value::{EvalResult, Status, C64};

/// Relative tolerance used when summing Harish-Chandra series.
pub const SERIES_TOL: f64 = 1e-15;

/// Above this size of the hypergeometric parameters the power series loses
/// too many digits to cancellation and [`Eisenstein::eval`] prefers the
/// series route.
pub const CLOSED_PARAM_LIMIT: f64 = 8.0;

/// E°(λ)(t) for fixed (p, q, k, l, λ) with η_w = 1, evaluable at many t.
///
/// The Gamma prefactor is computed once; the two Harish-Chandra series are
/// built lazily and keep their coefficient tables between calls.
#[derive(Debug, Clone)]
pub struct Eisenstein {
    pub space: Space,
    pub ktype: Option<KType>,
    pub lambda: C64,
    params: HyperParams,
    prefactor: EvalResult,
    series: Option<Box<SeriesPair>>,
}

#[derive(Debug, Clone)]
struct SeriesPair {
    plus: PhiSeries,
    minus: PhiSeries,
    c: EvalResult,
}

impl Eisenstein {
    pub fn new(space: Space, ktype: Option<KType>, lambda: C64) -> Self {
        Eisenstein {
            space,
            ktype,
            lambda,
            params: HyperParams::new(&space, ktype, lambda),
            prefactor: eisenstein_prefactor(&space, ktype, lambda),
            series: None,
        }
    }

    pub fn prefactor(&self) -> EvalResult {
        self.prefactor
    }

    /// Closed form 2^{λ−ρ}Γ(a)Γ(c−b)/(Γ(λ)Γ(c)) cosh^{|k|}t sinh^{|l|}t ₂F₁(a,b;c;−sinh²t).
    pub fn closed(&self, t: f64) -> Result<EvalResult> {
        if !(t >= 0.0) {
            return Err(Error::InvalidParameters(format!("t must be nonnegative, got {t}")));
        }
        match self.prefactor.status {
            Status::Pole => return Ok(EvalResult::pole()),
            Status::Zero => return Ok(EvalResult::exact(C64::new(0.0, 0.0))),
            _ => {}
        }
        let kt = ktype_or_trivial(self.ktype);
        let sh = t.sinh();
        let f = hyp2f1_nonpos(self.params.a, self.params.b, C64::new(self.params.c, 0.0), -sh * sh)?;
        let mut log_radial = kt.abs_k() as f64 * t.cosh().ln();
        if kt.abs_l() > 0 {
            log_radial += kt.abs_l() as f64 * sh.ln();
        }
        let radial = log_radial.exp();
        let value = self.prefactor.value * f.value * radial;
        let err = self.prefactor.value.norm() * radial * f.abs_err
            + self.prefactor.abs_err * radial * f.value.norm();
        let mut status = f.status.combine(self.prefactor.status);
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Ok(EvalResult::new(
                C64::new(f64::MAX, 0.0),
                f64::INFINITY,
                Status::OverflowGuarded,
            ));
        }
        if status == Status::Zero {
            status = Status::Regular;
        }
        Ok(EvalResult::new(value, err, status))
    }

    fn series_pair(&mut self) -> Result<&mut SeriesPair> {
        if self.series.is_none() {
            let c = c_function(&self.space, self.ktype, self.lambda);
            if c.status == Status::Pole {
                return Err(Error::SeriesPole { re: self.lambda.re, im: self.lambda.im });
            }
            self.series = Some(Box::new(SeriesPair {
                plus: PhiSeries::new(self.space, self.ktype, self.lambda),
                minus: PhiSeries::new(self.space, self.ktype, -self.lambda),
                c,
            }));
        }
        Ok(self.series.as_mut().expect("series pair initialized").as_mut())
    }

    /// Φ_λ(t) + c(λ)Φ_{−λ}(t).
    pub fn series(&mut self, t: f64) -> Result<EvalResult> {
        let pair = self.series_pair()?;
        let plus = pair.plus.eval(t, SERIES_TOL)?;
        let c = pair.c;
        if c.value == C64::new(0.0, 0.0) {
            return Ok(plus);
        }
        let minus = pair.minus.eval(t, SERIES_TOL)?;
        let value = plus.value + c.value * minus.value;
        let err = plus.abs_err + c.value.norm() * minus.abs_err + c.abs_err * minus.value.norm();
        Ok(EvalResult::new(value, err, plus.status.combine(c.status)))
    }

    /// Whichever route is expected to be more accurate at t.
    pub fn eval(&mut self, t: f64) -> Result<EvalResult> {
        let big = self.params.a.norm().max(self.params.b.norm()) > CLOSED_PARAM_LIMIT;
        if big && t >= T_MIN_SERIES {
            if let Ok(v) = self.series(t) {
                return Ok(v);
            }
        }
        self.closed(t)
    }
}

/// E°_w(λ, η)(t) by the closed hypergeometric form.
pub fn eisenstein_closed(
    space: &Space,
    ktype: Option<KType>,
    lambda: C64,
    eta: &EtaVector,
    w: Orbit,
    t: f64,
) -> Result<EvalResult> {
    Ok(Eisenstein::new(*space, ktype, lambda).closed(t)?.scale(eta.get(w)))
}

/// E°_w(λ, η)(t) = η_w Φ_λ(t) + c(λ) η_w Φ_{−λ}(t).
pub fn eisenstein_series(
    space: &Space,
    ktype: Option<KType>,
    lambda: C64,
    eta: &EtaVector,
    w: Orbit,
    t: f64,
) -> Result<EvalResult> {
    Ok(Eisenstein::new(*space, ktype, lambda).series(t)?.scale(eta.get(w)))
}

/// Jacobi function φ^{(α,β)}_μ(t) = ₂F₁((α+β+1+iμ)/2, (α+β+1−iμ)/2; α+1; −sinh²t).
pub fn jacobi_phi(alpha: f64, beta: f64, mu: C64, t: f64) -> Result<EvalResult> {
    let i_mu = C64::new(0.0, 1.0) * mu;
    let s = alpha + beta + 1.0;
    let sh = t.sinh();
    hyp2f1_nonpos((s + i_mu) / 2.0, (s - i_mu) / 2.0, C64::new(alpha + 1.0, 0.0), -sh * sh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;
    use crate::value::rel_diff;

    #[test]
    fn value_at_origin() {
        let s = Space::new(3, 2).unwrap();
        let lam = C64::new(0.6, 0.7);
        let rho = 1.5;
        let v = Eisenstein::new(s, None, lam).closed(0.0).unwrap().value;
        let expect = ((lam - rho) * std::f64::consts::LN_2).exp()
            * gamma((lam + rho) / 2.0).unwrap()
            * gamma((lam - rho + 2.0) / 2.0).unwrap()
            / (gamma(lam).unwrap() * gamma(C64::new(1.0, 0.0)).unwrap());
        assert!(rel_diff(v, expect) < 1e-13);
    }

    #[test]
    fn zero_at_negative_integers() {
        let s = Space::new(3, 2).unwrap();
        let mut e = Eisenstein::new(s, None, C64::new(-3.0, 0.0));
        for &t in &[0.0, 0.5, 3.0] {
            assert_eq!(e.closed(t).unwrap().value, C64::new(0.0, 0.0));
        }
        assert_eq!(e.eval(1.0).unwrap().value, C64::new(0.0, 0.0));
    }

    #[test]
    fn routes_agree() {
        let s = Space::new(5, 3).unwrap();
        let lam = C64::new(0.4, 0.9);
        let mut e = Eisenstein::new(s, None, lam);
        let a = e.closed(2.0).unwrap();
        let b = e.series(2.0).unwrap();
        assert!(rel_diff(a.value, b.value) < 1e-10, "{a:?} {b:?}");
    }

    #[test]
    fn large_lambda_prefers_series() {
        let s = Space::new(3, 2).unwrap();
        let lam = C64::new(0.5, 60.0);
        let mut e = Eisenstein::new(s, None, lam);
        let v = e.eval(1.0).unwrap();
        // At large t the expansion is dominated by its two leading terms.
        let mut far = Eisenstein::new(s, None, lam);
        let lead = ((lam - 1.5) * 25.0).exp() + c_function(&s, None, lam).value * ((-lam - 1.5) * 25.0).exp();
        assert!(rel_diff(far.eval(25.0).unwrap().value, lead) < 1e-12);
        assert!(v.value.norm().is_finite());
    }
}
