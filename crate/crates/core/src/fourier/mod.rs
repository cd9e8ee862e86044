//! Spherical Fourier transform of radial test functions and numerical
//! harnesses for the Plancherel, Hausdorff–Young, Riemann–Lebesgue and
//! Paley–Wiener estimates.

pub mod harness;
pub mod profile;
pub mod quadrature;
pub mod transform;

pub use harness::{
    conjugate_exponent, hy_ratio, hy_ratio_refinement, paley_wiener_check, plancherel_check, rl_decay_profile, HarnessReport,
    PaleyWienerFit, XI_MAX,
};
pub use profile::{Profile, RadialProfile};
pub use quadrature::{integrate, integrate_noisy, GaussLegendre, Integral, QuadratureConfig, MAX_PANELS};
pub use transform::{fourier_transform, fourier_transform_regularized, jacobian, norm_lr};
