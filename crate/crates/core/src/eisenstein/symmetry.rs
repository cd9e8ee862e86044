use super::cfunction::c_function;
use super::eta::EtaVector;
use super::kernel::Eisenstein;
use crate::error::Result;
use crate::space::{KType, Space};
use crate::value::{EvalResult, Status, C64};

/// All components E°_w(λ, η)(t), w ∈ 𝒲.
pub fn eisenstein_components(
    space: &Space,
    ktype: Option<KType>,
    lambda: C64,
    eta: &EtaVector,
    t: f64,
) -> Result<Vec<EvalResult>> {
    let base = Eisenstein::new(*space, ktype, lambda).eval(t)?;
    Ok(space.orbits().iter().map(|&w| base.scale(eta.get(w))).collect())
}

/// Both sides of E°(λ, η) = E°(−λ, C°(−1, λ)η), componentwise.
///
/// Since E°(λ) = Φ_λ + c(λ)Φ_{−λ} and c(λ)c(−λ) = 1, one has
/// E°(−λ) = c(−λ)E°(λ); C°(−1, λ) = c(λ)·Id moves the factor to η.
/// Returns `None` where either side is singular.
pub fn functional_equation_sides(
    space: &Space,
    ktype: Option<KType>,
    lambda: C64,
    eta: &EtaVector,
    t: f64,
) -> Result<Option<(Vec<C64>, Vec<C64>)>> {
    let c = c_function(space, ktype, lambda);
    if matches!(c.status, Status::Pole | Status::OverflowGuarded) {
        return Ok(None);
    }
    let lhs = eisenstein_components(space, ktype, lambda, eta, t)?;
    let rhs = eisenstein_components(space, ktype, -lambda, &eta.scale(c.value), t)?;
    if lhs.iter().chain(&rhs).any(|v| v.status == Status::Pole) {
        return Ok(None);
    }
    Ok(Some((lhs.iter().map(|v| v.value).collect(), rhs.iter().map(|v| v.value).collect())))
}

/// Both sides of conj(E°(−λ̄, η)) = E°(−λ, η̄), componentwise.
pub fn conjugation_sides(
    space: &Space,
    ktype: Option<KType>,
    lambda: C64,
    eta: &EtaVector,
    t: f64,
) -> Result<(Vec<C64>, Vec<C64>)> {
    let lhs = eisenstein_components(space, ktype, -lambda.conj(), eta, t)?;
    let rhs = eisenstein_components(space, ktype, -lambda, &eta.conj(), t)?;
    Ok((lhs.iter().map(|v| v.value.conj()).collect(), rhs.iter().map(|v| v.value).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::rel_diff;

    fn max_rel(a: &[C64], b: &[C64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| rel_diff(*x, *y)).fold(0.0, f64::max)
    }

    #[test]
    fn functional_equation_holds() {
        for (p, q) in [(3, 2), (4, 1), (7, 3)] {
            let s = Space::new(p, q).unwrap();
            let eta = EtaVector::new(&s, (0..s.n_orbits()).map(|i| C64::new(1.0 + i as f64, -0.5)).collect()).unwrap();
            let lam = C64::new(0.35, 0.8);
            let (l, r) = functional_equation_sides(&s, None, lam, &eta, 1.3).unwrap().unwrap();
            assert!(max_rel(&l, &r) < 1e-10, "({p},{q})");
        }
    }

    #[test]
    fn literal_form_fails() {
        // E°(−λ, η) = E°(λ, C°(−1,λ)η) would need c(λ)² = 1.
        let s = Space::new(3, 2).unwrap();
        let eta = EtaVector::ones(&s);
        let lam = C64::new(0.35, 0.8);
        let c = c_function(&s, None, lam).value;
        let l = eisenstein_components(&s, None, -lam, &eta, 1.3).unwrap()[0].value;
        let r = eisenstein_components(&s, None, lam, &eta.scale(c), 1.3).unwrap()[0].value;
        assert!(rel_diff(l, r) > 1e-3);
    }

    #[test]
    fn conjugation_holds() {
        let s = Space::new(3, 1).unwrap();
        let eta = EtaVector::new(&s, vec![C64::new(0.3, 1.0), C64::new(-2.0, 0.25)]).unwrap();
        let (l, r) = conjugation_sides(&s, Some(KType::new(2, 0)), C64::new(0.7, -1.4), &eta, 0.8).unwrap();
        assert!(max_rel(&l, &r) < 1e-12);
    }
}
