//! Weighted Karcher mean, the solution of `Σ w_i log(X^{-1/2} A_i X^{-1/2}) = 0`.

use nalgebra::DMatrix;

use super::{chaotic_geometric_mean, operand_dim, IterationTrace, WeightVector};
use crate::error::{Error, Result};
use crate::matfun::{jacobi_eigh, SpdMatrix, Symmetric};
use crate::tolerance::ToleranceConfig;

/// `Σ w_i log(X^{-1/2} A_i X^{-1/2})` expressed in the eigenbasis of `X`.
fn gradient(x: &SpdMatrix, w: &WeightVector, operands: &[SpdMatrix]) -> Result<DMatrix<f64>> {
    let d = x.dim();
    let mut acc = DMatrix::zeros(d, d);
    for (&wi, a) in w.as_slice().iter().zip(operands) {
        if wi != 0.0 {
            acc += jacobi_eigh(&x.whiten(a.matrix()))?.apply(f64::ln) * wi;
        }
    }
    Ok(acc)
}

/// `‖Σ w_i log(X^{-1/2} A_i X^{-1/2})‖_F`.
pub fn karcher_residual(x: &SpdMatrix, w: &WeightVector, operands: &[SpdMatrix]) -> Result<f64> {
    let d = operand_dim(Some(w), operands)?;
    if x.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: x.dim(),
        });
    }
    Ok(gradient(x, w, operands)?.norm())
}

/// Damped fixed-point iteration
/// `X ← X^{1/2} exp(θ Σ w_i log(X^{-1/2} A_i X^{-1/2})) X^{1/2}` started at the
/// chaotic geometric mean; `θ` halves whenever a step fails to lower the residual.
pub fn karcher_mean(w: &WeightVector, operands: &[SpdMatrix], tol: &ToleranceConfig) -> Result<(SpdMatrix, IterationTrace)> {
    w.require_positive()?;
    operand_dim(Some(w), operands)?;
    let mut x = chaotic_geometric_mean(w, operands)?;
    let mut grad = gradient(&x, w, operands)?;
    let mut residual = grad.norm();
    let mut theta = 1.0f64;
    for k in 0..=tol.max_iterations {
        if residual <= tol.fixed_point_tol {
            return Ok((
                x,
                IterationTrace {
                    iterations: k,
                    final_residual: residual,
                    converged: true,
                },
            ));
        }
        if k == tol.max_iterations {
            break;
        }
        loop {
            let step = jacobi_eigh(&(&grad * theta))?.apply(f64::exp);
            let candidate = SpdMatrix::from_computed(&x.unwhiten(&step))?;
            let cand_grad = gradient(&candidate, w, operands)?;
            let cand_residual = cand_grad.norm();
            if cand_residual < residual {
                x = candidate;
                grad = cand_grad;
                residual = cand_residual;
                break;
            }
            theta *= 0.5;
            if theta < 1e-12 {
                return Err(Error::NoConvergence {
                    what: "karcher mean",
                    iterations: k,
                    residual,
                });
            }
        }
    }
    Err(Error::NoConvergence {
        what: "karcher mean",
        iterations: tol.max_iterations,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matfun::thompson_distance;
    use crate::means2::geo_mean2;
    use approx::assert_abs_diff_eq;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn pair() -> (SpdMatrix, SpdMatrix) {
        let t = tol();
        (
            SpdMatrix::new(DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 1.0]), &t).unwrap(),
            SpdMatrix::new(DMatrix::from_row_slice(2, 2, &[0.8, -0.4, -0.4, 3.0]), &t).unwrap(),
        )
    }

    #[test]
    fn two_operands_give_weighted_geometric_mean() {
        let (a, b) = pair();
        let w = WeightVector::new(vec![0.3, 0.7]).unwrap();
        let (k, trace) = karcher_mean(&w, &[a.clone(), b.clone()], &tol()).unwrap();
        assert!(trace.converged);
        let g = geo_mean2(&a, &b, 0.7).unwrap();
        assert!(thompson_distance(&k, &g).unwrap() < 1e-10);
    }

    #[test]
    fn commuting_operands_give_weighted_product() {
        let w = WeightVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        let ops = [
            SpdMatrix::from_diagonal(&[1.0, 2.0]).unwrap(),
            SpdMatrix::from_diagonal(&[4.0, 0.5]).unwrap(),
            SpdMatrix::from_diagonal(&[2.0, 3.0]).unwrap(),
        ];
        let (k, _) = karcher_mean(&w, &ops, &tol()).unwrap();
        let e0 = 1f64.powf(0.2) * 4f64.powf(0.3) * 2f64.powf(0.5);
        assert_abs_diff_eq!(k.matrix()[(0, 0)], e0, epsilon = 1e-12);
    }

    #[test]
    fn residual_examples() {
        let (a, b) = pair();
        let w = WeightVector::uniform(2);
        assert!(karcher_residual(&a, &w, &[a.clone(), a.clone()]).unwrap() < 1e-14);
        let g = geo_mean2(&a, &b, 0.5).unwrap();
        assert!(karcher_residual(&g, &w, &[a.clone(), b.clone()]).unwrap() <= 1e-8);
        let r = karcher_residual(&a, &w, &[a.clone(), b.clone()]).unwrap();
        let direct = jacobi_eigh(&a.whiten(b.matrix())).unwrap().apply(f64::ln).norm() * 0.5;
        assert_abs_diff_eq!(r, direct, epsilon = 1e-14);
        assert!(r > 0.0);
    }
}
