use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("matrix is empty")]
    EmptyMatrix,

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (residual {residual:.3e} exceeds {threshold:.3e})")]
    NotHermitian { residual: f64, threshold: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal {off_diagonal:.3e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("operator{} is not normal (commutator norm {residual:.3e})", index.map(|i| format!(" {i}")).unwrap_or_default())]
    NotNormal { index: Option<usize>, residual: f64 },

    #[error("operators {first} and {second} do not commute (commutator norm {residual:.3e})")]
    NotCommuting { first: usize, second: usize, residual: f64 },

    #[error("operator is numerically singular (smallest singular value {sigma_min:.3e} <= {threshold:.3e})")]
    Singular { sigma_min: f64, threshold: f64 },

    #[error("element lies outside the algebra (projection residual {residual:.3e})")]
    OutsideAlgebra { residual: f64 },

    #[error("exact dual-ball discretization unavailable: {0}")]
    ExactUnavailable(String),

    #[error("functional {index} has dual norm {dual_norm:.6} > 1")]
    FunctionalOutsideDualBall { index: usize, dual_norm: f64 },

    #[error("sequence is not Cauchy: |x_{m} - x_{k}| = {distance:.3e} exceeds bound {bound:.3e}")]
    NotCauchy { m: usize, k: usize, distance: f64, bound: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
