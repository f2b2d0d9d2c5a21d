use thiserror::Error;

/// Errors produced by validation, the solvers and the check registry.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not symmetric (max asymmetry {asymmetry:.3e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("matrix is not positive definite (minimal eigenvalue {min_eigenvalue:.6e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} did not converge after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("parameter `{name}` = {value} out of range ({expected})")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("invalid norm parameter: {0}")]
    InvalidNormParameter(String),

    #[error("order t = 0 has no power mean; use the Karcher mean")]
    ZeroOrder,

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("map is not unital: {0}")]
    NotUnital(String),

    #[error("not an isometry (residual {residual:.3e})")]
    NotIsometry { residual: f64 },

    #[error("bad partition: {0}")]
    BadPartition(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    pub fn is_no_convergence(&self) -> bool {
        matches!(self, Error::NoConvergence { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
