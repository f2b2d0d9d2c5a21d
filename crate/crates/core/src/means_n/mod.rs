//! Means of `n` positive definite operands: weighted arithmetic and harmonic
//! means, the Lawson–Lim recursions, power means, the Karcher mean and the
//! chaotic geometric mean.

mod karcher;
mod lawson_lim;
mod power;
mod weights;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matfun::{matrix_exp, SpdMatrix, SymMatrix, Symmetric};

pub use karcher::{karcher_mean, karcher_residual};
pub use lawson_lim::{lawson_lim_arithmetic, lawson_lim_geometric, lawson_lim_harmonic, lawson_lim_weights, MAX_LAWSON_LIM_OPERANDS};
pub use power::{power_mean, power_mean_residual};
pub use weights::WeightVector;

/// Convergence record of an iterative mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationTrace {
    pub iterations: usize,
    pub final_residual: f64,
    pub converged: bool,
}

impl IterationTrace {
    pub(crate) fn closed_form() -> Self {
        Self {
            iterations: 0,
            final_residual: 0.0,
            converged: true,
        }
    }
}

/// Checks that the operands share one dimension and match the weight count.
pub(crate) fn operand_dim(weights: Option<&WeightVector>, operands: &[SpdMatrix]) -> Result<usize> {
    let first = operands.first().ok_or_else(|| Error::InvalidWeights("no operands".into()))?;
    if let Some(w) = weights {
        if w.len() != operands.len() {
            return Err(Error::DimensionMismatch {
                expected: w.len(),
                found: operands.len(),
            });
        }
    }
    let d = first.dim();
    if let Some(bad) = operands.iter().find(|a| a.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: bad.dim(),
        });
    }
    Ok(d)
}

pub(crate) fn weighted_sum<'a>(weights: &[f64], mats: impl IntoIterator<Item = &'a DMatrix<f64>>, d: usize) -> DMatrix<f64> {
    let mut acc = DMatrix::zeros(d, d);
    for (&w, m) in weights.iter().zip(mats) {
        if w != 0.0 {
            acc += m * w;
        }
    }
    acc
}

/// `Σ w_i A_i`. Zero weights are allowed.
pub fn weighted_arithmetic(w: &WeightVector, operands: &[SpdMatrix]) -> Result<SpdMatrix> {
    let d = operand_dim(Some(w), operands)?;
    SpdMatrix::from_computed(&weighted_sum(w.as_slice(), operands.iter().map(|a| a.matrix()), d))
}

/// `(Σ w_i A_i^{-1})^{-1}`. Zero weights are allowed.
pub fn weighted_harmonic(w: &WeightVector, operands: &[SpdMatrix]) -> Result<SpdMatrix> {
    let d = operand_dim(Some(w), operands)?;
    let inverses = operands.iter().map(SpdMatrix::inv).collect::<Result<Vec<_>>>()?;
    SpdMatrix::from_computed(&weighted_sum(w.as_slice(), inverses.iter().map(|a| a.matrix()), d))?.inv()
}

/// `exp(Σ w_i log A_i)`.
pub fn chaotic_geometric_mean(w: &WeightVector, operands: &[SpdMatrix]) -> Result<SpdMatrix> {
    let d = operand_dim(Some(w), operands)?;
    let logs: Vec<SymMatrix> = operands.iter().map(SpdMatrix::log).collect();
    let sum = weighted_sum(w.as_slice(), logs.iter().map(|l| l.matrix()), d);
    matrix_exp(&SymMatrix::from_computed(&sum)?)
}

/// Inverts every operand.
pub fn invert_all(operands: &[SpdMatrix]) -> Result<Vec<SpdMatrix>> {
    operands.iter().map(SpdMatrix::inv).collect()
}
