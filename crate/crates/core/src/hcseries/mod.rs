//! Harish-Chandra series: recursion coefficients, Γ̃_m and Γ_m tables,
//! the q_R polynomial and summation of Φ_λ(t).

mod cache;
mod coeffs;
mod series;

pub use cache::CoeffCache;
pub use coeffs::{
    b_coeffs, cs_coeffs, d_coeffs, gamma_coeffs, gamma_coeffs_derivative, gamma_tilde, q_r_poly,
    recursion_weights, CoeffKind, CoeffTable, DerivativeMethod, SeriesCoeffs, COMPLEX_STEP,
};
pub use series::{
    phi_series, tail_exponent, tail_sum_bound, PhiSeries, MAX_SERIES_TERMS, T_MIN_SERIES,
};
