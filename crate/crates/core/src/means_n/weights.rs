use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `|Σ w_i − 1|`.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Probability vector with at least two entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if w.len() < 2 {
            return Err(Error::InvalidWeights(format!("need at least 2 weights, got {}", w.len())));
        }
        if let Some((i, x)) = w.iter().enumerate().find(|(_, x)| !(x.is_finite() && **x >= 0.0)) {
            return Err(Error::InvalidWeights(format!("weight {i} = {x} is not a finite non-negative number")));
        }
        let sum: f64 = w.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidWeights(format!("weights sum to {sum}, not 1")));
        }
        Ok(Self(w))
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n >= 2, "uniform weights need n >= 2");
        Self(vec![1.0 / n as f64; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// The solvers require every weight to be strictly positive.
    pub fn require_positive(&self) -> Result<()> {
        match self.0.iter().position(|&x| x <= 0.0) {
            Some(i) => Err(Error::InvalidWeights(format!("weight {i} is zero; solvers need strictly positive weights"))),
            None => Ok(()),
        }
    }

    /// Weights reordered so that entry `k` is `w[perm[k]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self(perm.iter().map(|&i| self.0[i]).collect())
    }
}

impl TryFrom<Vec<f64>> for WeightVector {
    type Error = Error;

    fn try_from(w: Vec<f64>) -> Result<Self> {
        Self::new(w)
    }
}

impl From<WeightVector> for Vec<f64> {
    fn from(w: WeightVector) -> Self {
        w.0
    }
}
