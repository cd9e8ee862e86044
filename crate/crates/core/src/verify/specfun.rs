use super::{lambda_grid, Check, Tally};
use crate::eisenstein::HyperParams;
use crate::space::Space;
use crate::specfun::{hyp2f1_with, Strategy};
use crate::value::{rel_diff, C64};

pub const OVERLAP_TOL: f64 = 1e-9;

/// The ₂F₁ parameter triples met by E° on the test grid of each space.
fn parameter_sample(spaces: &[Space]) -> Vec<(C64, C64, C64)> {
    let mut out = Vec::new();
    for s in spaces {
        for lam in lambda_grid(s, None) {
            let hp = HyperParams::new(s, None, lam);
            out.push((hp.a, hp.b, C64::new(hp.c, 0.0)));
        }
    }
    out
}

fn band(spaces: &[Space], lo: f64, hi: f64, first: Strategy, second: Strategy, name: &str) -> Check {
    let mut tally = Tally::new();
    for (a, b, c) in parameter_sample(spaces) {
        for j in 0..=8 {
            let z = lo + (hi - lo) * j as f64 / 8.0;
            let at = || format!("a={a} b={b} c={} z={z}", c.re);
            match (hyp2f1_with(a, b, c, z, first), hyp2f1_with(a, b, c, z, second)) {
                (Ok(x), Ok(y)) => tally.record(rel_diff(x.value, y.value), at),
                (Err(e), _) | (_, Err(e)) => tally.error(e, at),
            }
        }
    }
    tally.finish(name, OVERLAP_TOL)
}

/// Power series against the Pfaff transform on z ∈ [−0.6, −0.4].
pub fn overlap_series_pfaff(spaces: &[Space]) -> Check {
    band(spaces, -0.6, -0.4, Strategy::Series, Strategy::Pfaff, "hyp2f1_overlap_series_pfaff")
}

/// Pfaff transform against the connection formula on z ∈ [−2.2, −1.8].
pub fn overlap_pfaff_inversion(spaces: &[Space]) -> Check {
    band(spaces, -2.2, -1.8, Strategy::Pfaff, Strategy::Inversion, "hyp2f1_overlap_pfaff_inversion")
}
