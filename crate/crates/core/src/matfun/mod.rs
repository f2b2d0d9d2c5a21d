//! Dense symmetric linear algebra: validated SPD and symmetric matrices,
//! spectral functional calculus, the Loewner order, the Thompson metric and
//! unitarily invariant norms.

mod jacobi;
mod norm;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::tolerance::ToleranceConfig;

pub use jacobi::{jacobi_eigh, MAX_SWEEPS, OFF_DIAGONAL_TOL};
pub use norm::{norm, norm_general, singular_values, NormKind};

/// Eigenvalues in ascending order with orthonormal eigenvectors as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: DVector<f64>,
    pub vectors: DMatrix<f64>,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// `Q diag(f(λ)) Qᵀ`, symmetrized.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
        let mut scaled = self.vectors.clone();
        for (j, &lam) in self.values.iter().enumerate() {
            let fl = f(lam);
            scaled.column_mut(j).scale_mut(fl);
        }
        symmetrize(&(scaled * self.vectors.transpose()))
    }

    /// `‖Q diag(λ) Qᵀ − A‖_F / ‖A‖_F` and `‖QᵀQ − I‖_F`.
    pub fn residuals(&self, a: &DMatrix<f64>) -> (f64, f64) {
        let recon = self.apply(|x| x);
        let scale = a.norm().max(f64::MIN_POSITIVE);
        let n = self.dim();
        let ortho = (self.vectors.transpose() * &self.vectors - DMatrix::identity(n, n)).norm();
        ((recon - a).norm() / scale, ortho)
    }
}

/// `(X + Xᵀ) / 2`.
pub fn symmetrize(x: &DMatrix<f64>) -> DMatrix<f64> {
    (x + x.transpose()) * 0.5
}

fn check_square_finite(entries: &DMatrix<f64>) -> Result<()> {
    if entries.nrows() != entries.ncols() || entries.nrows() == 0 {
        return Err(Error::NotSquare {
            rows: entries.nrows(),
            cols: entries.ncols(),
        });
    }
    let n = entries.nrows();
    if let Some(idx) = entries.iter().position(|x| !x.is_finite()) {
        return Err(Error::NonFinite {
            row: idx % n,
            col: idx / n,
        });
    }
    Ok(())
}

fn check_symmetric(entries: &DMatrix<f64>, tol: &ToleranceConfig) -> Result<()> {
    let n = entries.nrows();
    let bound = tol.sym_tol * entries.norm().max(1.0);
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((entries[(i, j)] - entries[(j, i)]).abs());
        }
    }
    if worst > bound {
        return Err(Error::NotSymmetric { asymmetry: worst });
    }
    Ok(())
}

/// Shared read access to the entries of a symmetric matrix.
pub trait Symmetric {
    fn matrix(&self) -> &DMatrix<f64>;

    fn dim(&self) -> usize {
        self.matrix().nrows()
    }

    fn trace(&self) -> f64 {
        self.matrix().trace()
    }
}

/// Real symmetric matrix with unrestricted spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    entries: DMatrix<f64>,
}

impl Symmetric for SymMatrix {
    fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }
}

impl SymMatrix {
    pub fn new(entries: DMatrix<f64>, tol: &ToleranceConfig) -> Result<Self> {
        check_square_finite(&entries)?;
        check_symmetric(&entries, tol)?;
        Ok(Self {
            entries: symmetrize(&entries),
        })
    }

    /// Wraps a computed matrix after symmetrizing it.
    pub fn from_computed(entries: &DMatrix<f64>) -> Result<Self> {
        check_square_finite(entries)?;
        Ok(Self {
            entries: symmetrize(entries),
        })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            entries: DMatrix::zeros(dim, dim),
        }
    }

    pub fn eigh(&self) -> Result<Spectrum> {
        jacobi_eigh(&self.entries)
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.entries
    }
}

/// Symmetric positive definite matrix carrying its spectral decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct SpdMatrix {
    entries: DMatrix<f64>,
    spectrum: Spectrum,
}

impl Symmetric for SpdMatrix {
    fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }
}

impl SpdMatrix {
    /// Validates a user-supplied matrix: square, finite, symmetric within
    /// `sym_tol` and with every eigenvalue above `spd_tol`.
    pub fn new(entries: DMatrix<f64>, tol: &ToleranceConfig) -> Result<Self> {
        check_square_finite(&entries)?;
        check_symmetric(&entries, tol)?;
        let entries = symmetrize(&entries);
        let spectrum = jacobi_eigh(&entries)?;
        if spectrum.min() <= tol.spd_tol {
            return Err(Error::NotPositiveDefinite {
                min_eigenvalue: spectrum.min(),
            });
        }
        Ok(Self { entries, spectrum })
    }

    /// Symmetrizes and re-validates the output of a computation.
    pub fn from_computed(entries: &DMatrix<f64>) -> Result<Self> {
        check_square_finite(entries)?;
        let entries = symmetrize(entries);
        let spectrum = jacobi_eigh(&entries)?;
        if spectrum.min() <= 0.0 {
            return Err(Error::NotPositiveDefinite {
                min_eigenvalue: spectrum.min(),
            });
        }
        Ok(Self { entries, spectrum })
    }

    /// Builds `Q diag(λ) Qᵀ` from known spectral data; `vectors` must be orthogonal.
    pub fn from_spectrum(values: DVector<f64>, vectors: DMatrix<f64>) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
            return Err(Error::NotPositiveDefinite {
                min_eigenvalue: bad,
            });
        }
        let spectrum = Spectrum { values, vectors };
        let entries = spectrum.apply(|x| x);
        Ok(Self { entries, spectrum })
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, 1.0)
    }

    /// `c·I` with exact entries.
    pub fn scalar(dim: usize, c: f64) -> Self {
        assert!(c > 0.0 && c.is_finite(), "scalar multiple of identity must be positive");
        Self {
            entries: DMatrix::identity(dim, dim) * c,
            spectrum: Spectrum {
                values: DVector::from_element(dim, c),
                vectors: DMatrix::identity(dim, dim),
            },
        }
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]).then(i.cmp(&j)));
        let mut vectors = DMatrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            vectors[(src, dst)] = 1.0;
        }
        let values = DVector::from_iterator(n, order.iter().map(|&i| diag[i]));
        if let Some(&bad) = values.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
            return Err(Error::NotPositiveDefinite {
                min_eigenvalue: bad,
            });
        }
        let entries = DMatrix::from_diagonal(&DVector::from_column_slice(diag));
        Ok(Self {
            entries,
            spectrum: Spectrum { values, vectors },
        })
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.spectrum.values
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.spectrum.min()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.spectrum.max()
    }

    /// `c·A` for `c > 0`.
    pub fn scale(&self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::ParameterOutOfRange {
                name: "scale",
                value: c,
                expected: "finite and > 0",
            });
        }
        Ok(Self {
            entries: &self.entries * c,
            spectrum: Spectrum {
                values: &self.spectrum.values * c,
                vectors: self.spectrum.vectors.clone(),
            },
        })
    }

    /// `A^s` through the cached spectral decomposition.
    pub fn powf(&self, s: f64) -> Result<Self> {
        if !s.is_finite() {
            return Err(Error::ParameterOutOfRange {
                name: "s",
                value: s,
                expected: "finite exponent",
            });
        }
        if s == 1.0 {
            return Ok(self.clone());
        }
        let values = self.spectrum.values.map(|x| x.powf(s));
        Self::from_spectrum(values, self.spectrum.vectors.clone())
    }

    pub fn sqrt(&self) -> Result<Self> {
        self.powf(0.5)
    }

    pub fn inv(&self) -> Result<Self> {
        let values = self.spectrum.values.map(|x| 1.0 / x);
        Self::from_spectrum(values, self.spectrum.vectors.clone())
    }

    pub fn log(&self) -> SymMatrix {
        SymMatrix {
            entries: self.spectrum.apply(f64::ln),
        }
    }

    /// `Λ^{-1/2} Qᵀ B Q Λ^{-1/2}`, which is orthogonally similar to `A^{-1/2} B A^{-1/2}`.
    pub(crate) fn whiten(&self, b: &DMatrix<f64>) -> DMatrix<f64> {
        let q = &self.spectrum.vectors;
        let mut w = q.transpose() * b * q;
        let d: Vec<f64> = self.spectrum.values.iter().map(|x| x.sqrt().recip()).collect();
        let n = d.len();
        for j in 0..n {
            for i in 0..n {
                w[(i, j)] *= d[i] * d[j];
            }
        }
        symmetrize(&w)
    }

    /// Inverse of [`Self::whiten`]: `Q Λ^{1/2} X Λ^{1/2} Qᵀ`.
    pub(crate) fn unwhiten(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        let q = &self.spectrum.vectors;
        let d: Vec<f64> = self.spectrum.values.iter().map(|x| x.sqrt()).collect();
        let n = d.len();
        let mut y = x.clone();
        for j in 0..n {
            for i in 0..n {
                y[(i, j)] *= d[i] * d[j];
            }
        }
        symmetrize(&(q * y * q.transpose()))
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.entries[(i, j)]).collect())
            .collect()
    }

    pub fn into_sym(self) -> SymMatrix {
        SymMatrix {
            entries: self.entries,
        }
    }
}

/// Row-major array to dense matrix; rejects ragged or non-square input.
pub fn matrix_from_rows(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let n = rows.len();
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: bad.len(),
        });
    }
    if n == 0 {
        return Err(Error::NotSquare { rows: 0, cols: 0 });
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

pub fn validate_spd(rows: &[Vec<f64>], tol: &ToleranceConfig) -> Result<SpdMatrix> {
    SpdMatrix::new(matrix_from_rows(rows)?, tol)
}

pub fn eigh<S: Symmetric>(a: &S) -> Result<Spectrum> {
    jacobi_eigh(a.matrix())
}

pub fn matrix_power(a: &SpdMatrix, s: f64) -> Result<SpdMatrix> {
    a.powf(s)
}

pub fn matrix_log(a: &SpdMatrix) -> SymMatrix {
    a.log()
}

pub fn matrix_exp(s: &SymMatrix) -> Result<SpdMatrix> {
    let spectrum = s.eigh()?;
    let values = spectrum.values.map(f64::exp);
    SpdMatrix::from_spectrum(values, spectrum.vectors)
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            expected: a,
            found: b,
        });
    }
    Ok(())
}

/// Outcome of a Loewner comparison `A ≤ B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoewnerOutcome {
    pub holds: bool,
    /// `λ_min(B − A)`.
    pub margin: f64,
}

pub fn loewner_leq<A: Symmetric, B: Symmetric>(a: &A, b: &B, margin_tol: f64) -> Result<LoewnerOutcome> {
    check_dims(a.dim(), b.dim())?;
    let margin = min_eigenvalue(&(b.matrix() - a.matrix()))?;
    Ok(LoewnerOutcome {
        holds: margin >= -margin_tol,
        margin,
    })
}

pub(crate) fn min_eigenvalue(m: &DMatrix<f64>) -> Result<f64> {
    Ok(jacobi_eigh(m)?.min())
}

/// `‖log(A^{-1/2} B A^{-1/2})‖` in the operator norm.
pub fn thompson_distance(a: &SpdMatrix, b: &SpdMatrix) -> Result<f64> {
    check_dims(a.dim(), b.dim())?;
    let w = a.whiten(b.matrix());
    let spec = jacobi_eigh(&w)?;
    Ok(spec.min().ln().abs().max(spec.max().ln().abs()))
}
