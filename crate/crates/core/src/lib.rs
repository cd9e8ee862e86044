//! Numerical harmonic analysis on the pseudo-Riemannian hyperbolic spaces
//! SO_e(p,q)/SO_e(p−1,q).
//!
//! The crate evaluates normalized Eisenstein integrals by a closed
//! hypergeometric formula and by Harish-Chandra series, catalogs their poles
//! and zeros, classifies boundedness, and computes the spherical Fourier
//! transform of radial test functions together with checks of the
//! Plancherel, Hausdorff–Young, Riemann–Lebesgue and Paley–Wiener bounds.

pub mod eisenstein;
pub mod error;
pub mod fixtures;
pub mod fourier;
pub mod hcseries;
pub mod poly;
pub mod space;
pub mod specfun;
pub mod verify;
pub mod value;

pub use error::{Error, Result};
pub use space::{HalfInt, KType, Orbit, Space};
pub use value::{EvalResult, Status, C64};
