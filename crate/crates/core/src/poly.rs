//! Monic polynomials stored by their roots.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::space::HalfInt;
use crate::value::C64;

/// ∏ (λ − r) over the listed roots, all of which lie on ½ℤ.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RootPoly {
    pub roots: Vec<HalfInt>,
}

impl RootPoly {
    pub fn new(mut roots: Vec<HalfInt>) -> Self {
        roots.sort_by(|a, b| b.cmp(a));
        RootPoly { roots }
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn eval(&self, lambda: C64) -> C64 {
        self.roots
            .iter()
            .fold(C64::new(1.0, 0.0), |acc, r| acc * (lambda - r.to_f64()))
    }

    /// Coefficients in ascending powers of λ.
    pub fn coefficients(&self) -> Vec<f64> {
        let mut c = vec![1.0];
        for r in &self.roots {
            let r = r.to_f64();
            let mut next = vec![0.0; c.len() + 1];
            for (i, &ci) in c.iter().enumerate() {
                next[i + 1] += ci;
                next[i] -= r * ci;
            }
            c = next;
        }
        c
    }

    pub fn has_root(&self, r: HalfInt) -> bool {
        self.roots.contains(&r)
    }

    pub fn multiplicity(&self, r: HalfInt) -> usize {
        self.roots.iter().filter(|&&x| x == r).count()
    }
}

impl fmt::Display for RootPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.roots.is_empty() {
            return write!(f, "1");
        }
        for r in &self.roots {
            let neg = -*r;
            if neg.twice() >= 0 {
                write!(f, "(λ+{})", neg)?;
            } else {
                write!(f, "(λ-{})", *r)?;
            }
        }
        Ok(())
    }
}
