//! Power means `P_t(ω; 𝔸)` as fixed points of `f(X) = Σ w_i (X ♯_t A_i)`.
//!
//! With `g(X) = Σ w_i (X^{-1/2} A_i X^{-1/2})^t`, iteration stops once
//! `‖log g(X)‖ / t`, an upper bound on `d(X, P_t)`, is below tolerance.
//! Each step tries the extrapolated update `X^{1/2} g(X)^{θ/t} X^{1/2}` and
//! halves `θ` down to `t`, where the update is `f` itself.

use nalgebra::DMatrix;

use super::{invert_all, operand_dim, weighted_arithmetic, IterationTrace, WeightVector};
use crate::error::{Error, Result};
use crate::matfun::{jacobi_eigh, SpdMatrix, Spectrum, Symmetric};
use crate::tolerance::ToleranceConfig;

/// `g(X)` in the eigenbasis of `X`, with its spectrum.
fn contraction_gap(x: &SpdMatrix, w: &WeightVector, operands: &[SpdMatrix], t: f64) -> Result<Spectrum> {
    let d = x.dim();
    let mut g = DMatrix::zeros(d, d);
    for (&wi, a) in w.as_slice().iter().zip(operands) {
        let inner = jacobi_eigh(&x.whiten(a.matrix()))?;
        g += inner.apply(|v| v.powf(t)) * wi;
    }
    jacobi_eigh(&g)
}

fn log_spread(s: &Spectrum) -> f64 {
    s.min().ln().abs().max(s.max().ln().abs())
}

fn check_order(t: f64) -> Result<()> {
    if t == 0.0 {
        return Err(Error::ZeroOrder);
    }
    if !(-1.0..=1.0).contains(&t) {
        return Err(Error::ParameterOutOfRange {
            name: "t",
            value: t,
            expected: "[-1, 1] \\ {0}",
        });
    }
    Ok(())
}

/// `P_t(ω; 𝔸)` for `t ∈ [−1, 1] \ {0}`; negative orders go through
/// `P_t(ω; 𝔸) = P_{−t}(ω; 𝔸^{-1})^{-1}`.
pub fn power_mean(w: &WeightVector, operands: &[SpdMatrix], t: f64, tol: &ToleranceConfig) -> Result<(SpdMatrix, IterationTrace)> {
    check_order(t)?;
    w.require_positive()?;
    operand_dim(Some(w), operands)?;
    if t < 0.0 {
        let (x, trace) = positive_order(w, &invert_all(operands)?, -t, tol)?;
        return Ok((x.inv()?, trace));
    }
    positive_order(w, operands, t, tol)
}

fn positive_order(w: &WeightVector, operands: &[SpdMatrix], t: f64, tol: &ToleranceConfig) -> Result<(SpdMatrix, IterationTrace)> {
    let mut x = weighted_arithmetic(w, operands)?;
    let mut gap = contraction_gap(&x, w, operands, t)?;
    let mut residual = log_spread(&gap);
    let mut theta = 1.0f64;
    for k in 0..=tol.max_iterations {
        if residual / t <= tol.fixed_point_tol {
            return Ok((
                x,
                IterationTrace {
                    iterations: k,
                    final_residual: residual / t,
                    converged: true,
                },
            ));
        }
        if k == tol.max_iterations {
            break;
        }
        loop {
            let exponent = (theta / t).max(1.0);
            let candidate = SpdMatrix::from_computed(&x.unwhiten(&gap.apply(|v| v.powf(exponent))))?;
            let cand_gap = contraction_gap(&candidate, w, operands, t)?;
            let cand_residual = log_spread(&cand_gap);
            if exponent == 1.0 || cand_residual < residual {
                x = candidate;
                gap = cand_gap;
                residual = cand_residual;
                theta = (theta * 2.0).min(1.0);
                break;
            }
            theta = (theta * 0.5).max(t);
        }
    }
    Err(Error::NoConvergence {
        what: "power mean",
        iterations: tol.max_iterations,
        residual: residual / t,
    })
}

/// Thompson distance between `X` and the right-hand side of the defining
/// equation of `P_t`: `Σ w_i (X ♯_t A_i)` for `t > 0` and
/// `(Σ w_i X^{-1} ♯_{−t} A_i^{-1})^{-1}` for `t < 0`.
pub fn power_mean_residual(x: &SpdMatrix, w: &WeightVector, operands: &[SpdMatrix], t: f64) -> Result<f64> {
    check_order(t)?;
    operand_dim(Some(w), operands)?;
    let d = x.dim();
    let mut rhs = DMatrix::zeros(d, d);
    if t > 0.0 {
        for (&wi, a) in w.as_slice().iter().zip(operands) {
            rhs += crate::means2::geo_mean2(x, a, t)?.matrix() * wi;
        }
    } else {
        let x_inv = x.inv()?;
        for (&wi, a) in w.as_slice().iter().zip(operands) {
            rhs += crate::means2::geo_mean2(&x_inv, &a.inv()?, -t)?.matrix() * wi;
        }
        return crate::matfun::thompson_distance(&x_inv, &SpdMatrix::from_computed(&rhs)?);
    }
    crate::matfun::thompson_distance(x, &SpdMatrix::from_computed(&rhs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::means_n::{weighted_arithmetic, weighted_harmonic};
    use crate::matfun::thompson_distance;
    use approx::assert_abs_diff_eq;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn diag(v: &[f64]) -> SpdMatrix {
        SpdMatrix::from_diagonal(v).unwrap()
    }

    fn ops() -> Vec<SpdMatrix> {
        let t = tol();
        vec![
            SpdMatrix::new(DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 1.0]), &t).unwrap(),
            SpdMatrix::new(DMatrix::from_row_slice(2, 2, &[1.0, -0.3, -0.3, 3.0]), &t).unwrap(),
            diag(&[0.6, 1.7]),
        ]
    }

    #[test]
    fn endpoints_are_arithmetic_and_harmonic() {
        let w = WeightVector::new(vec![0.2, 0.5, 0.3]).unwrap();
        let (p1, _) = power_mean(&w, &ops(), 1.0, &tol()).unwrap();
        let (pm1, _) = power_mean(&w, &ops(), -1.0, &tol()).unwrap();
        assert!(thompson_distance(&p1, &weighted_arithmetic(&w, &ops()).unwrap()).unwrap() < 1e-12);
        assert!(thompson_distance(&pm1, &weighted_harmonic(&w, &ops()).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn scalar_closed_form() {
        let w = WeightVector::uniform(2);
        let (p, _) = power_mean(&w, &[diag(&[1.0]), diag(&[9.0])], 0.5, &tol()).unwrap();
        assert_abs_diff_eq!(p.matrix()[(0, 0)], 4.0, epsilon = 1e-12);
    }

    #[test]
    fn equal_operands_are_fixed() {
        let a = ops().remove(0);
        for t in [-0.7, -0.1, 0.05, 0.5, 1.0] {
            let (p, _) = power_mean(&WeightVector::uniform(3), &[a.clone(), a.clone(), a.clone()], t, &tol()).unwrap();
            assert!(thompson_distance(&p, &a).unwrap() < 1e-12);
        }
    }

    #[test]
    fn small_order_converges_within_cap() {
        let w = WeightVector::new(vec![0.2, 0.5, 0.3]).unwrap();
        let (p, trace) = power_mean(&w, &ops(), 0.01, &tol()).unwrap();
        assert!(trace.converged && trace.iterations < tol().max_iterations);
        assert!(power_mean_residual(&p, &w, &ops(), 0.01).unwrap() < 1e-12);
    }

    #[test]
    fn negative_order_solves_its_own_equation() {
        let w = WeightVector::new(vec![0.2, 0.5, 0.3]).unwrap();
        let (p, _) = power_mean(&w, &ops(), -0.4, &tol()).unwrap();
        assert!(power_mean_residual(&p, &w, &ops(), -0.4).unwrap() < 1e-10);
    }

    #[test]
    fn rejects_zero_order_and_zero_weights() {
        assert!(matches!(
            power_mean(&WeightVector::uniform(3), &ops(), 0.0, &tol()),
            Err(Error::ZeroOrder)
        ));
        assert!(matches!(
            power_mean(&WeightVector::uniform(3), &ops(), 1.5, &tol()),
            Err(Error::ParameterOutOfRange { .. })
        ));
        let w = WeightVector::new(vec![0.5, 0.5, 0.0]).unwrap();
        assert!(matches!(power_mean(&w, &ops(), 0.5, &tol()), Err(Error::InvalidWeights(_))));
    }
}
