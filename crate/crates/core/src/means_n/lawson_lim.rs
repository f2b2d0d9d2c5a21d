//! Lawson–Lim weighted means `A[n,t]`, `H[n,t]` and `G[n,t]`.
//!
//! `G[n,t]` is evaluated by literal recursion: each round replaces every
//! operand by `G[n−1,t]` of the others, so the cost grows factorially in `n`.

use super::{operand_dim, weighted_arithmetic, weighted_harmonic, IterationTrace, WeightVector};
use crate::error::{Error, Result};
use crate::matfun::{thompson_distance, SpdMatrix, Symmetric};
use crate::means2::geo_mean2;
use crate::tolerance::ToleranceConfig;

pub const MAX_LAWSON_LIM_OPERANDS: usize = 6;

fn check_order(t: f64) -> Result<()> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::ParameterOutOfRange {
            name: "t",
            value: t,
            expected: "(0, 1)",
        });
    }
    Ok(())
}

fn check_count(n: usize) -> Result<()> {
    if !(2..=MAX_LAWSON_LIM_OPERANDS).contains(&n) {
        return Err(Error::ParameterOutOfRange {
            name: "n",
            value: n as f64,
            expected: "2..=6 operands",
        });
    }
    Ok(())
}

/// Runs the `A[n,t]` recursion on the coordinate vectors of `ℝⁿ`.
fn coefficient_limit(n: usize, t: f64, tol: &ToleranceConfig) -> Result<Vec<f64>> {
    if n == 2 {
        return Ok(vec![1.0 - t, t]);
    }
    let inner = coefficient_limit(n - 1, t, tol)?;
    let mut rows: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let cap = tol.max_iterations.max(10_000);
    let mut step = f64::INFINITY;
    for _ in 0..cap {
        let next: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let mut row = vec![0.0; n];
                for (&c, j) in inner.iter().zip((0..n).filter(|&j| j != i)) {
                    for (dst, src) in row.iter_mut().zip(&rows[j]) {
                        *dst += c * src;
                    }
                }
                row
            })
            .collect();
        step = next
            .iter()
            .zip(&rows)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max);
        let spread = next
            .iter()
            .flat_map(|r| r.iter().zip(&next[0]).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max);
        rows = next;
        if step <= tol.fixed_point_tol && spread <= tol.fixed_point_tol {
            let sum: f64 = rows[0].iter().sum();
            return Ok(rows[0].iter().map(|x| x / sum).collect());
        }
    }
    Err(Error::NoConvergence {
        what: "lawson-lim weight recursion",
        iterations: cap,
        residual: step,
    })
}

/// The weights `t[n]_i` with `A[n,t](A_1, …, A_n) = Σ t[n]_i A_i`.
pub fn lawson_lim_weights(n: usize, t: f64, tol: &ToleranceConfig) -> Result<WeightVector> {
    check_order(t)?;
    if n < 2 {
        return Err(Error::ParameterOutOfRange {
            name: "n",
            value: n as f64,
            expected: ">= 2",
        });
    }
    WeightVector::new(coefficient_limit(n, t, tol)?)
}

pub fn lawson_lim_arithmetic(operands: &[SpdMatrix], t: f64, tol: &ToleranceConfig) -> Result<SpdMatrix> {
    weighted_arithmetic(&lawson_lim_weights(operands.len(), t, tol)?, operands)
}

pub fn lawson_lim_harmonic(operands: &[SpdMatrix], t: f64, tol: &ToleranceConfig) -> Result<SpdMatrix> {
    weighted_harmonic(&lawson_lim_weights(operands.len(), t, tol)?, operands)
}

/// `G[n,t](A_1, …, A_n)`; `t = 1/2` gives the Ando–Li–Mathias mean.
pub fn lawson_lim_geometric(operands: &[SpdMatrix], t: f64, tol: &ToleranceConfig) -> Result<(SpdMatrix, IterationTrace)> {
    check_order(t)?;
    check_count(operands.len())?;
    operand_dim(None, operands)?;
    recurse(operands, t, tol.fixed_point_tol, tol.max_iterations)
}

/// Lower bound on the Thompson diameter of a tuple, from
/// `d(A, B) ≥ ln(1 + ‖B − A‖_F / (√d · λ_max(A)))`.
fn spread_lower_bound(ms: &[SpdMatrix]) -> f64 {
    let scale = (ms[0].dim() as f64).sqrt();
    let mut spread = 0.0f64;
    for (i, a) in ms.iter().enumerate() {
        for b in &ms[i + 1..] {
            let gap = (b.matrix() - a.matrix()).norm() / (scale * a.max_eigenvalue());
            spread = spread.max(gap.ln_1p());
        }
    }
    spread
}

fn diameter(ms: &[SpdMatrix]) -> Result<f64> {
    let mut diameter = 0.0f64;
    for (i, a) in ms.iter().enumerate() {
        for b in &ms[i + 1..] {
            diameter = diameter.max(thompson_distance(a, b)?);
        }
    }
    Ok(diameter)
}

fn recurse(operands: &[SpdMatrix], t: f64, tol: f64, cap: usize) -> Result<(SpdMatrix, IterationTrace)> {
    let n = operands.len();
    if n == 2 {
        return Ok((geo_mean2(&operands[0], &operands[1], t)?, IterationTrace::closed_form()));
    }
    let mut current = operands.to_vec();
    let mut residual = f64::INFINITY;
    for r in 1..=cap {
        let next = (0..n)
            .map(|i| {
                let others: Vec<SpdMatrix> = current
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, a)| a.clone())
                    .collect();
                recurse(&others, t, tol, cap).map(|(g, _)| g)
            })
            .collect::<Result<Vec<_>>>()?;

        let spread = spread_lower_bound(&next);
        residual = spread;
        if spread <= tol {
            let diameter = diameter(&next)?;
            residual = diameter;
            if diameter <= tol {
                let mut step = 0.0f64;
                for (a, b) in next.iter().zip(&current) {
                    step = step.max(thompson_distance(a, b)?);
                }
                residual = diameter.max(step);
                if step <= tol {
                    let trace = IterationTrace {
                        iterations: r,
                        final_residual: residual,
                        converged: true,
                    };
                    return Ok((next.into_iter().next().expect("n >= 3"), trace));
                }
            }
        }
        current = next;
    }
    Err(Error::NoConvergence {
        what: "lawson-lim geometric mean",
        iterations: cap,
        residual: diameter(&current).unwrap_or(residual),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matfun::Symmetric;
    use approx::assert_abs_diff_eq;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn two_operand_weights() {
        let w = lawson_lim_weights(2, 0.3, &tol()).unwrap();
        assert_eq!(w.as_slice(), &[0.7, 0.3]);
    }

    #[test]
    fn midpoint_weights_are_uniform() {
        for n in 2..=6 {
            let w = lawson_lim_weights(n, 0.5, &tol()).unwrap();
            for &x in w.as_slice() {
                assert_abs_diff_eq!(x, 1.0 / n as f64, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn three_operand_quarter_weights() {
        // Left fixed vector of the 3x3 one-step matrix built from (3/4, 1/4),
        // solved by hand: (15, 13, 7) / 35.
        let w = lawson_lim_weights(3, 0.25, &tol()).unwrap();
        let expected = [15.0 / 35.0, 13.0 / 35.0, 7.0 / 35.0];
        for (x, e) in w.as_slice().iter().zip(expected) {
            assert_abs_diff_eq!(*x, e, epsilon = 1e-10);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(lawson_lim_weights(3, 1.0, &tol()).is_err());
        assert!(lawson_lim_weights(1, 0.5, &tol()).is_err());
        let ops = vec![SpdMatrix::identity(2); 7];
        assert!(matches!(
            lawson_lim_geometric(&ops, 0.5, &tol()),
            Err(Error::ParameterOutOfRange { name: "n", .. })
        ));
    }

    #[test]
    fn geometric_of_equal_operands_is_idempotent() {
        let a = SpdMatrix::from_diagonal(&[0.7, 2.5, 1.1]).unwrap();
        let (g, trace) = lawson_lim_geometric(&[a.clone(), a.clone(), a.clone(), a.clone()], 0.3, &tol()).unwrap();
        assert!(trace.converged);
        assert!((g.matrix() - a.matrix()).norm() < 1e-12);
    }

    #[test]
    fn geometric_two_operands_is_weighted_mean() {
        let a = SpdMatrix::from_diagonal(&[1.0, 4.0]).unwrap();
        let b = SpdMatrix::from_diagonal(&[9.0, 1.0]).unwrap();
        let (g, _) = lawson_lim_geometric(&[a.clone(), b.clone()], 0.25, &tol()).unwrap();
        assert_eq!(g, geo_mean2(&a, &b, 0.25).unwrap());
    }

    fn noncommuting(n: usize) -> Vec<SpdMatrix> {
        (0..n)
            .map(|i| {
                let m = nalgebra::DMatrix::from_fn(3, 3, |r, c| ((r * 5 + c * 3 + i * 7) as f64).cos());
                SpdMatrix::from_computed(&(&m * m.transpose() + nalgebra::DMatrix::identity(3, 3) * 0.4)).unwrap()
            })
            .collect()
    }

    #[test]
    fn commuting_operands_match_scalar_weights() {
        let diags = [[1.0, 2.0], [3.0, 0.5], [0.8, 5.0], [2.2, 1.3]];
        let ops: Vec<SpdMatrix> = diags.iter().map(|d| SpdMatrix::from_diagonal(d).unwrap()).collect();
        for t in [0.2, 0.5, 0.85] {
            let w = lawson_lim_weights(4, t, &tol()).unwrap();
            let (g, _) = lawson_lim_geometric(&ops, t, &tol()).unwrap();
            for k in 0..2 {
                let expected: f64 = diags.iter().zip(w.as_slice()).map(|(d, wi)| d[k].powf(*wi)).product();
                assert_abs_diff_eq!(g.matrix()[(k, k)], expected, epsilon = 1e-10 * expected);
            }
        }
    }

    #[test]
    fn midpoint_mean_ignores_operand_order() {
        let ops = noncommuting(3);
        let (g, _) = lawson_lim_geometric(&ops, 0.5, &tol()).unwrap();
        let swapped = [ops[2].clone(), ops[0].clone(), ops[1].clone()];
        let (h, _) = lawson_lim_geometric(&swapped, 0.5, &tol()).unwrap();
        assert!(thompson_distance(&g, &h).unwrap() < 1e-10);
    }
}
