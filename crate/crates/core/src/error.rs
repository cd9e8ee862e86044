use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("log-gamma pole at nonpositive integer {0}")]
    PoleAtNonpositiveInteger(i64),

    #[error("hypergeometric parameter c = {0} is a nonpositive integer")]
    ParameterPole(f64),

    #[error("series coefficients are singular at lambda = {re}{im:+}i")]
    SeriesPole { re: f64, im: f64 },

    #[error("series did not converge: {0}")]
    SlowConvergence(String),

    #[error("lambda0 = {0} lies outside the admissible half-plane")]
    OutOfDomain(f64),

    #[error("lambda0 = {lambda0} is not in S_r ∩ a*(R) for r = {r}")]
    DomainViolation { lambda0: f64, r: f64 },

    #[error("quadrature exceeded {0} panels without meeting the error target")]
    QuadratureBudgetExceeded(usize),

    #[error("integrand has a pole at lambda = {re}{im:+}i")]
    IntegrandPole { re: f64, im: f64 },

    #[error("invalid space or K-type: {0}")]
    InvalidParameters(String),

    #[error("fixture error: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
