//! Complex special-function kernels: log Γ, Gamma ratios with pole
//! bookkeeping, and ₂F₁ on the nonpositive real axis.

mod gamma;
mod hyp2f1;
mod ratio;

pub use gamma::{gamma, log_gamma, nonpositive_integer, sinpi, POLE_EPS};
pub use hyp2f1::{
    hyp2f1_nonpos, hyp2f1_with, Strategy, DEGENERATE_AGREEMENT, DEGENERATE_EPS, DEGENERATE_TOL,
};
pub use ratio::{exp_guarded, gamma_ratio, gamma_ratio_log, GammaArg, GammaRatioSpec, LogRatio};
