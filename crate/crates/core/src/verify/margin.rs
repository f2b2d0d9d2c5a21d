//! Sub-predicate bookkeeping for a single check evaluation.

use nalgebra::DMatrix;

use crate::error::Result;
use crate::matfun::{jacobi_eigh, symmetrize};
use crate::tolerance::ToleranceConfig;

/// One inequality `lhs ≤ rhs`, reduced to a signed slack `value` that must
/// stay above `−tol`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Margin {
    pub value: f64,
    pub tol: f64,
    pub lhs: f64,
    pub rhs: f64,
}

impl Margin {
    pub fn holds(&self) -> bool {
        self.value >= -self.tol
    }

    /// Slack in units of the tolerance; the smallest score is the worst margin.
    pub fn score(&self) -> f64 {
        if self.value.is_nan() {
            f64::NEG_INFINITY
        } else {
            self.value / self.tol
        }
    }
}

/// Collects the margins of every sub-predicate of one check.
pub(crate) struct Probe<'a> {
    tol: &'a ToleranceConfig,
    pub margins: Vec<Margin>,
    pub inconclusive: Option<String>,
}

fn operator_norm(m: &DMatrix<f64>) -> Result<f64> {
    let s = jacobi_eigh(m)?;
    Ok(s.min().abs().max(s.max().abs()))
}

impl<'a> Probe<'a> {
    pub fn new(tol: &'a ToleranceConfig) -> Self {
        Self {
            tol,
            margins: Vec::new(),
            inconclusive: None,
        }
    }

    /// `lhs ≤ rhs` in Loewner order: slack `λ_min(rhs − lhs) / ‖rhs‖`.
    pub fn loewner(&mut self, lhs: &DMatrix<f64>, rhs: &DMatrix<f64>) -> Result<()> {
        let gap = jacobi_eigh(&symmetrize(&(rhs - lhs)))?.min();
        let rhs_norm = operator_norm(rhs)?;
        let lhs_norm = operator_norm(lhs)?;
        self.margins.push(Margin {
            value: gap / rhs_norm.max(f64::MIN_POSITIVE),
            tol: self.tol.margin_tol,
            lhs: lhs_norm,
            rhs: rhs_norm,
        });
        Ok(())
    }

    /// `lhs ≤ rhs` for reals: slack `(rhs − lhs) / |rhs|`.
    pub fn scalar_leq(&mut self, lhs: f64, rhs: f64) {
        self.margins.push(Margin {
            value: (rhs - lhs) / rhs.abs().max(f64::MIN_POSITIVE),
            tol: self.tol.scalar_tol,
            lhs,
            rhs,
        });
    }

    /// A distance that must vanish up to `bound`.
    pub fn near_zero(&mut self, distance: f64, bound: f64) {
        self.margins.push(Margin {
            value: -distance,
            tol: bound,
            lhs: distance,
            rhs: 0.0,
        });
    }

    /// A precomputed slack with an explicit tolerance.
    pub fn raw(&mut self, value: f64, tol: f64, lhs: f64, rhs: f64) {
        self.margins.push(Margin { value, tol, lhs, rhs });
    }

    pub fn mark_inconclusive(&mut self, reason: impl Into<String>) {
        self.inconclusive = Some(reason.into());
    }

    pub fn worst(&self) -> Option<Margin> {
        self.margins.iter().copied().min_by(|a, b| a.score().total_cmp(&b.score()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loewner_margin_is_relative() {
        let tol = ToleranceConfig::default();
        let mut p = Probe::new(&tol);
        let a = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 1.0]));
        let b = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![2.0, 0.5]));
        p.loewner(&a, &b).unwrap();
        let m = p.worst().unwrap();
        assert!((m.value + 0.25).abs() < 1e-15);
        assert!(!m.holds());
    }

    #[test]
    fn worst_picks_smallest_score() {
        let tol = ToleranceConfig::default();
        let mut p = Probe::new(&tol);
        p.scalar_leq(1.0, 2.0);
        p.near_zero(1e-9, 1e-8);
        p.scalar_leq(2.0, 2.0);
        let w = p.worst().unwrap();
        assert_eq!(w.tol, 1e-8);
        assert!(p.margins.iter().all(Margin::holds));
    }
}
