use crate::error::{Error, Result};
use crate::space::{Orbit, Space};
use crate::value::C64;

/// η ∈ ℂ^𝒲, one component per open orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaVector {
    components: Vec<C64>,
}

impl EtaVector {
    pub fn new(space: &Space, components: Vec<C64>) -> Result<Self> {
        if components.len() != space.n_orbits() {
            return Err(Error::InvalidParameters(format!(
                "eta needs {} components on {}, got {}",
                space.n_orbits(),
                space,
                components.len()
            )));
        }
        Ok(EtaVector { components })
    }

    /// All components equal to one.
    pub fn ones(space: &Space) -> Self {
        EtaVector { components: vec![C64::new(1.0, 0.0); space.n_orbits()] }
    }

    /// The basis vector e_w.
    pub fn unit(space: &Space, w: Orbit) -> Self {
        let mut components = vec![C64::new(0.0, 0.0); space.n_orbits()];
        components[w.index()] = C64::new(1.0, 0.0);
        EtaVector { components }
    }

    pub fn get(&self, w: Orbit) -> C64 {
        self.components.get(w.index()).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn components(&self) -> &[C64] {
        &self.components
    }

    pub fn norm(&self) -> f64 {
        self.components.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: C64) -> Self {
        EtaVector { components: self.components.iter().map(|c| c * s).collect() }
    }

    pub fn conj(&self) -> Self {
        EtaVector { components: self.components.iter().map(|c| c.conj()).collect() }
    }

    /// Apply a |𝒲|×|𝒲| matrix.
    pub fn apply(&self, m: &[Vec<C64>]) -> Self {
        let components = m
            .iter()
            .map(|row| row.iter().zip(&self.components).map(|(a, b)| a * b).sum())
            .collect();
        EtaVector { components }
    }
}
