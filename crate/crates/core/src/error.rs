use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid walk parameters: {0}")]
    InvalidParams(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A spectral function was evaluated outside the set where it is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation only exists in one of the two coupling regimes.
    #[error("regime error: {0}")]
    Regime(String),

    #[error(
        "quadrature did not reach tolerance after {evaluations} evaluations \
         (estimate {estimate:e}, error {error:e})"
    )]
    Quadrature { estimate: f64, error: f64, evaluations: usize },

    #[error("tridiagonal eigensolver did not converge for eigenvalue {index} after {iterations} sweeps")]
    Eigen { index: usize, iterations: usize },

    #[error("captured probability mass {captured} is below the required {required}")]
    Mass { captured: f64, required: f64 },
}
