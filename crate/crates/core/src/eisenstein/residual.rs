use super::kernel::Eisenstein;
use crate::error::{Error, Result};
use crate::space::{ktype_or_trivial, KType, Orbit, Space};
use crate::value::C64;
use super::eta::EtaVector;

/// Relative residual of the radial eigen-equation at t:
///
/// f'' + ((p−1)tanh t + (q−1)coth t) f' + K sech²t f − L csch²t f = (λ² − ρ²) f,
///
/// with K = k(k+p−2), L = l(l+q−2) (both zero in the K-invariant case),
/// derivatives by 5-point central differences of step h, and the result
/// normalized as |lhs − rhs| / (1 + |f|).
pub fn ode_residual(
    space: &Space,
    ktype: Option<KType>,
    lambda: C64,
    eta: &EtaVector,
    w: Orbit,
    t: f64,
    h: f64,
) -> Result<f64> {
    let mut e = Eisenstein::new(*space, ktype, lambda);
    let eta_w = eta.get(w);
    radial_residual(space, ktype, lambda, t, h, |x| Ok(e.eval(x)?.value * eta_w))
}

/// The residual of [`ode_residual`] for an arbitrary radial function f.
pub fn radial_residual<F>(space: &Space, ktype: Option<KType>, lambda: C64, t: f64, h: f64, mut f: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<C64>,
{
    if !(h > 0.0 && t > 2.0 * h) {
        return Err(Error::InvalidParameters(format!("need t > 2h > 0, got t = {t}, h = {h}")));
    }
    let fm2 = f(t - 2.0 * h)?;
    let fm1 = f(t - h)?;
    let f0 = f(t)?;
    let fp1 = f(t + h)?;
    let fp2 = f(t + 2.0 * h)?;
    let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);

    let kt = ktype_or_trivial(ktype);
    let (p, q) = (space.p as f64, space.q as f64);
    let rho = space.rho_f64();
    let (big_k, big_l) = (kt.casimir_k(space), kt.casimir_l(space));
    let (th, ch) = (t.tanh(), t.cosh());
    let sh = t.sinh();
    let lhs = d2 + ((p - 1.0) * th + (q - 1.0) / th) * d1 + (big_k / (ch * ch) - big_l / (sh * sh)) * f0;
    let rhs = (lambda * lambda - rho * rho) * f0;
    Ok((lhs - rhs).norm() / (1.0 + f0.norm()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_invariant_residual() {
        let s = Space::new(5, 3).unwrap();
        let eta = EtaVector::ones(&s);
        let r = ode_residual(&s, None, C64::new(1.0, 1.0), &eta, Orbit::Plus, 1.7, 1e-3).unwrap();
        assert!(r < 1e-5, "{r}");
        for xi in [0.5, 2.0, 7.0] {
            let r = ode_residual(&s, None, C64::new(0.0, xi), &eta, Orbit::Plus, 0.9, 1e-3).unwrap();
            assert!(r < 1e-5, "{xi}: {r}");
        }
    }

    #[test]
    fn k_type_residual() {
        let s = Space::new(5, 3).unwrap();
        let eta = EtaVector::ones(&s);
        for (k, l) in [(1, 0), (0, 2), (2, 1)] {
            let kt = Some(KType::new(k, l));
            let r = ode_residual(&s, kt, C64::new(1.0, 1.0), &eta, Orbit::Plus, 1.7, 1e-3).unwrap();
            assert!(r < 1e-5, "({k},{l}): {r}");
        }
    }

    #[test]
    fn wrong_sign_on_l_term_is_detected() {
        // With +L csch² the equation fails, so the test above is not vacuous.
        let s = Space::new(5, 3).unwrap();
        let kt = KType::new(0, 2);
        let lam = C64::new(1.0, 1.0);
        let t = 1.7;
        let mut e = Eisenstein::new(s, Some(kt), lam);
        let f0 = e.eval(t).unwrap().value;
        let good = ode_residual(&s, Some(kt), lam, &EtaVector::ones(&s), Orbit::Plus, t, 1e-3).unwrap();
        let flip = 2.0 * kt.casimir_l(&s) / t.sinh().powi(2) * f0.norm() / (1.0 + f0.norm());
        assert!(flip > 1e3 * good.max(1e-12));
    }

    #[test]
    fn rejects_bad_step() {
        let s = Space::new(3, 2).unwrap();
        let eta = EtaVector::ones(&s);
        assert!(ode_residual(&s, None, C64::new(1.0, 0.0), &eta, Orbit::Plus, 0.001, 1e-3).is_err());
    }
}
