//! The matrix input file.

use serde::{Deserialize, Serialize};

use opmeans_core::{validate_spd, SpdMatrix, ToleranceConfig, WeightVector};

/// `{ "dim": d, "matrices": [[[row…], …], …], "weights": [..]?, "t": t? }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    pub matrices: Vec<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
}

/// Validated contents of a [`MatrixFile`].
#[derive(Debug, Clone)]
pub struct Operands {
    pub matrices: Vec<SpdMatrix>,
    pub weights: Option<WeightVector>,
    pub t: Option<f64>,
}

impl MatrixFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("malformed matrix file: {e}"))
    }

    /// Checks shapes, symmetry and positivity; messages name the offending matrix.
    pub fn validate(&self, tol: &ToleranceConfig) -> Result<Operands, String> {
        if self.matrices.is_empty() {
            return Err("matrix file contains no matrices".into());
        }
        let mut matrices = Vec::with_capacity(self.matrices.len());
        for (i, rows) in self.matrices.iter().enumerate() {
            if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
                return Err(format!("matrix {i}: expected {d}x{d} entries", d = self.dim));
            }
            matrices.push(validate_spd(rows, tol).map_err(|e| format!("matrix {i}: {e}"))?);
        }
        let weights = match &self.weights {
            None => None,
            Some(w) if w.len() != matrices.len() => {
                return Err(format!("{} weights for {} matrices", w.len(), matrices.len()));
            }
            Some(w) => Some(WeightVector::new(w.clone()).map_err(|e| e.to_string())?),
        };
        Ok(Operands {
            matrices,
            weights,
            t: self.t,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn file(matrices: Vec<Vec<Vec<f64>>>) -> MatrixFile {
        MatrixFile {
            dim: 2,
            matrices,
            weights: None,
            t: None,
        }
    }

    #[test]
    fn errors_name_the_matrix() {
        let tol = ToleranceConfig::default();
        let good = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let indefinite = vec![vec![1.0, 2.0], vec![2.0, 1.0]];
        let err = file(vec![good.clone(), indefinite]).validate(&tol).unwrap_err();
        assert!(err.starts_with("matrix 1:"), "{err}");
        let err = file(vec![good.clone(), vec![vec![1.0]]]).validate(&tol).unwrap_err();
        assert!(err.starts_with("matrix 1:"), "{err}");
        let asym = vec![vec![1.0, 0.5], vec![0.0, 1.0]];
        assert!(file(vec![asym, good]).validate(&tol).unwrap_err().starts_with("matrix 0:"));
    }

    #[test]
    fn weights_must_match() {
        let tol = ToleranceConfig::default();
        let id = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let mut f = file(vec![id.clone(), id]);
        f.weights = Some(vec![1.0]);
        assert!(f.validate(&tol).is_err());
        f.weights = Some(vec![0.5, 0.6]);
        assert!(f.validate(&tol).is_err());
        f.weights = Some(vec![0.25, 0.75]);
        assert!(f.validate(&tol).is_ok());
    }
}
