use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{jacobi_eigh, Symmetric};
use crate::error::{Error, Result};

/// Unitarily invariant norms, all computed from singular values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    Operator,
    Frobenius,
    Trace,
    Schatten(f64),
    KyFan(usize),
}

impl NormKind {
    pub fn validate(&self, dim: usize) -> Result<()> {
        match *self {
            NormKind::Schatten(p) if !(p >= 1.0) => Err(Error::InvalidNormParameter(format!(
                "schatten exponent must be >= 1, got {p}"
            ))),
            NormKind::KyFan(k) if k == 0 || k > dim => Err(Error::InvalidNormParameter(format!(
                "ky fan index must lie in 1..={dim}, got {k}"
            ))),
            _ => Ok(()),
        }
    }

    /// Evaluates the norm on singular values sorted in descending order.
    fn of_singular_values(&self, sv: &[f64]) -> f64 {
        match *self {
            NormKind::Operator => sv.first().copied().unwrap_or(0.0),
            NormKind::Frobenius => sv.iter().map(|s| s * s).sum::<f64>().sqrt(),
            NormKind::Trace => sv.iter().sum(),
            NormKind::Schatten(p) => {
                let top = sv.first().copied().unwrap_or(0.0);
                if top == 0.0 {
                    return 0.0;
                }
                top * sv.iter().map(|s| (s / top).powf(p)).sum::<f64>().powf(1.0 / p)
            }
            NormKind::KyFan(k) => sv.iter().take(k).sum(),
        }
    }
}

/// Norm of a symmetric matrix; singular values are the absolute eigenvalues.
pub fn norm<S: Symmetric>(a: &S, kind: NormKind) -> Result<f64> {
    kind.validate(a.dim())?;
    let spec = jacobi_eigh(a.matrix())?;
    let mut sv: Vec<f64> = spec.values.iter().map(|x| x.abs()).collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    Ok(kind.of_singular_values(&sv))
}

/// Singular values of a general square matrix in descending order, taken
/// from the spectral decomposition of its Gram matrix `MᵀM`.
pub fn singular_values(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    let gram = m.transpose() * m;
    let spec = jacobi_eigh(&gram)?;
    let mut sv: Vec<f64> = spec.values.iter().map(|x| x.max(0.0).sqrt()).collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    Ok(sv)
}

/// Norm of a possibly nonsymmetric square matrix, e.g. a product `AB`.
pub fn norm_general(m: &DMatrix<f64>, kind: NormKind) -> Result<f64> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    kind.validate(m.nrows())?;
    Ok(kind.of_singular_values(&singular_values(m)?))
}
