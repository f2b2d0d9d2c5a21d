//! Cyclic Jacobi eigensolver for dense real symmetric matrices.

use nalgebra::{DMatrix, DVector};

use super::Spectrum;
use crate::error::{Error, Result};

/// Sweeps stop once the off-diagonal Frobenius mass drops below this fraction of `‖A‖_F`.
pub const OFF_DIAGONAL_TOL: f64 = 1e-13;
/// Hard cap on cyclic sweeps.
pub const MAX_SWEEPS: usize = 100;

fn off_diagonal_norm(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut acc = 0.0;
    for j in 0..n {
        for i in 0..n {
            if i != j {
                acc += m[(i, j)] * m[(i, j)];
            }
        }
    }
    acc.sqrt()
}

/// Eigen-decomposition of a symmetric matrix (only the symmetric part is read).
///
/// Eigenvalues come back in ascending order with orthonormal eigenvectors in
/// the matching columns. The rotation order is fixed, so identical input gives
/// bit-identical output.
pub fn jacobi_eigh(a: &DMatrix<f64>) -> Result<Spectrum> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::NotSquare {
            rows: n,
            cols: a.ncols(),
        });
    }
    if let Some(idx) = a.iter().position(|x| !x.is_finite()) {
        return Err(Error::NonFinite {
            row: idx % n,
            col: idx / n,
        });
    }

    let mut m = (a + a.transpose()) * 0.5;
    let mut v = DMatrix::<f64>::identity(n, n);
    let target = OFF_DIAGONAL_TOL * m.norm();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&m);
        if off <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                what: "jacobi eigensolver",
                iterations: sweeps,
                residual: off,
            });
        }
        sweeps += 1;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                m[(p, q)] = 0.0;
                m[(q, p)] = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]).then(i.cmp(&j)));
    let values = DVector::from_iterator(n, order.iter().map(|&i| m[(i, i)]));
    let mut vectors = DMatrix::<f64>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &v.column(src));
    }
    Ok(Spectrum { values, vectors })
}
