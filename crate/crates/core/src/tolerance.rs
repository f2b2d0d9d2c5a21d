use serde::{Deserialize, Serialize};

/// Tolerances shared by validation, the iterative solvers and the order predicates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ToleranceConfig {
    /// Allowed asymmetry, relative to `max(1, ‖A‖_F)`.
    pub sym_tol: f64,
    /// Eigenvalues must exceed this to count as positive definite.
    pub spd_tol: f64,
    /// Reconstruction and orthogonality residual of spectral data.
    pub recon_tol: f64,
    /// Loewner-order slack, relative to the operator norm of the larger side.
    pub margin_tol: f64,
    /// Relative slack for scalar (trace and norm) predicates.
    pub scalar_tol: f64,
    /// Stopping tolerance of the fixed-point solvers, in the Thompson metric.
    pub fixed_point_tol: f64,
    /// Outer iteration cap of the fixed-point solvers.
    pub max_iterations: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            sym_tol: 1e-10,
            spd_tol: 1e-12,
            recon_tol: 1e-9,
            margin_tol: 1e-8,
            scalar_tol: 1e-9,
            fixed_point_tol: 1e-11,
            max_iterations: 500,
        }
    }
}
