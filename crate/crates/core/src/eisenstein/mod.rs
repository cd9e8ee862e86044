//! Normalized Eisenstein integrals E°(λ, η) on the hyperbolic space and
//! their c-function, pole structure and growth classification.

pub mod catalog;
pub mod cfunction;
pub mod classify;
pub mod eta;
pub mod kernel;
pub mod regularized;
pub mod residual;
pub mod symmetry;

pub use catalog::{
    closed_form_poles, p_r_poly, pole_catalog, CatalogSet, PoleCatalog, Progression, SpectralPoint,
};
pub use cfunction::{c_function, c_matrix, eisenstein_prefactor, HyperParams};
pub use classify::{classify_bounded, exceptional_set, Boundedness};
pub use eta::EtaVector;
pub use kernel::{SERIES_TOL, CLOSED_PARAM_LIMIT, eisenstein_closed, eisenstein_series, jacobi_phi, Eisenstein};
pub use regularized::{eisenstein_regularized, Regularized};
pub use residual::{ode_residual, radial_residual};
pub use symmetry::{conjugation_sides, eisenstein_components, functional_equation_sides};
