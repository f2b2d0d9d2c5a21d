//! A small gallery of positive unital linear maps.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matfun::{symmetrize, SpdMatrix, SymMatrix, Symmetric};

const STRUCTURE_TOL: f64 = 1e-10;

/// Family tag, used to cycle through the gallery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    Compression,
    NormalizedTrace,
    Pinching,
    UnitaryMixture,
}

impl MapKind {
    pub const ALL: [MapKind; 4] = [
        MapKind::Compression,
        MapKind::NormalizedTrace,
        MapKind::Pinching,
        MapKind::UnitaryMixture,
    ];
}

/// Parameters of a gallery map before validation.
#[derive(Debug, Clone, PartialEq)]
pub enum MapSpec {
    /// `A ↦ VᵀAV` for a `d×k` matrix with orthonormal columns.
    Compression { isometry: DMatrix<f64> },
    /// `A ↦ tr(A)/d` as a `1×1` matrix.
    NormalizedTrace { dim: usize },
    /// Keeps the diagonal blocks of a partition of `0..dim`.
    Pinching { dim: usize, blocks: Vec<Vec<usize>> },
    /// `A ↦ Σ p_j U_j A U_jᵀ`.
    UnitaryMixture { unitaries: Vec<DMatrix<f64>>, probabilities: Vec<f64> },
}

/// A validated positive unital map `M_d → M_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PositiveUnitalMap {
    spec: MapSpec,
    in_dim: usize,
    out_dim: usize,
}

fn orthonormal_columns_residual(v: &DMatrix<f64>) -> f64 {
    let k = v.ncols();
    (v.transpose() * v - DMatrix::identity(k, k)).norm()
}

pub fn build_map(spec: MapSpec) -> Result<PositiveUnitalMap> {
    let (in_dim, out_dim) = match &spec {
        MapSpec::Compression { isometry } => {
            if isometry.ncols() == 0 || isometry.ncols() > isometry.nrows() {
                return Err(Error::NotIsometry { residual: f64::INFINITY });
            }
            let residual = orthonormal_columns_residual(isometry);
            if !(residual <= STRUCTURE_TOL) {
                return Err(Error::NotIsometry { residual });
            }
            (isometry.nrows(), isometry.ncols())
        }
        MapSpec::NormalizedTrace { dim } => {
            if *dim == 0 {
                return Err(Error::NotUnital("trace map on a zero-dimensional space".into()));
            }
            (*dim, 1)
        }
        MapSpec::Pinching { dim, blocks } => {
            let mut seen = vec![false; *dim];
            for block in blocks {
                if block.is_empty() {
                    return Err(Error::BadPartition("empty block".into()));
                }
                for &i in block {
                    if i >= *dim {
                        return Err(Error::BadPartition(format!("index {i} outside 0..{dim}")));
                    }
                    if std::mem::replace(&mut seen[i], true) {
                        return Err(Error::BadPartition(format!("index {i} appears twice")));
                    }
                }
            }
            if let Some(i) = seen.iter().position(|s| !s) {
                return Err(Error::BadPartition(format!("index {i} is not covered")));
            }
            (*dim, *dim)
        }
        MapSpec::UnitaryMixture { unitaries, probabilities } => {
            if unitaries.is_empty() || unitaries.len() != probabilities.len() {
                return Err(Error::NotUnital("need one probability per unitary".into()));
            }
            if probabilities.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
                return Err(Error::NotUnital("probabilities must be non-negative".into()));
            }
            let sum: f64 = probabilities.iter().sum();
            if (sum - 1.0).abs() > STRUCTURE_TOL {
                return Err(Error::NotUnital(format!("probabilities sum to {sum}")));
            }
            let d = unitaries[0].nrows();
            for u in unitaries {
                if u.nrows() != d || u.ncols() != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        found: u.ncols(),
                    });
                }
                let residual = orthonormal_columns_residual(u);
                if !(residual <= STRUCTURE_TOL) {
                    return Err(Error::NotIsometry { residual });
                }
            }
            (d, d)
        }
    };
    let map = PositiveUnitalMap { spec, in_dim, out_dim };
    let residual = (map.apply(&DMatrix::identity(in_dim, in_dim))? - DMatrix::identity(out_dim, out_dim)).norm();
    if residual > STRUCTURE_TOL {
        return Err(Error::NotUnital(format!("Φ(I) differs from I by {residual:.3e}")));
    }
    Ok(map)
}

impl PositiveUnitalMap {
    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn spec(&self) -> &MapSpec {
        &self.spec
    }

    pub fn kind(&self) -> MapKind {
        match self.spec {
            MapSpec::Compression { .. } => MapKind::Compression,
            MapSpec::NormalizedTrace { .. } => MapKind::NormalizedTrace,
            MapSpec::Pinching { .. } => MapKind::Pinching,
            MapSpec::UnitaryMixture { .. } => MapKind::UnitaryMixture,
        }
    }

    /// Applies the map to any square matrix of size `in_dim`.
    pub fn apply(&self, a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        if a.nrows() != self.in_dim || a.ncols() != self.in_dim {
            return Err(Error::DimensionMismatch {
                expected: self.in_dim,
                found: a.nrows(),
            });
        }
        Ok(match &self.spec {
            MapSpec::Compression { isometry } => isometry.transpose() * a * isometry,
            MapSpec::NormalizedTrace { dim } => DMatrix::from_element(1, 1, a.trace() / *dim as f64),
            MapSpec::Pinching { blocks, .. } => {
                let mut out = DMatrix::zeros(self.in_dim, self.in_dim);
                for block in blocks {
                    for &i in block {
                        for &j in block {
                            out[(i, j)] = a[(i, j)];
                        }
                    }
                }
                out
            }
            MapSpec::UnitaryMixture { unitaries, probabilities } => {
                let mut out = DMatrix::zeros(self.in_dim, self.in_dim);
                for (u, &p) in unitaries.iter().zip(probabilities) {
                    out += (u * a * u.transpose()) * p;
                }
                out
            }
        })
    }

    pub fn apply_spd(&self, a: &SpdMatrix) -> Result<SpdMatrix> {
        SpdMatrix::from_computed(&self.apply(a.matrix())?)
    }

    pub fn apply_sym(&self, a: &SymMatrix) -> Result<SymMatrix> {
        SymMatrix::from_computed(&symmetrize(&self.apply(a.matrix())?))
    }

    pub fn apply_all(&self, operands: &[SpdMatrix]) -> Result<Vec<SpdMatrix>> {
        operands.iter().map(|a| self.apply_spd(a)).collect()
    }
}

/// Haar-distributed orthogonal matrix: Gram–Schmidt on a Gaussian matrix.
pub fn random_orthogonal<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DMatrix<f64> {
    let g = DMatrix::<f64>::from_fn(dim, dim, |_, _| rng.sample(StandardNormal));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// Draws a random member of the requested family acting on `dim×dim` matrices.
pub fn random_map<R: Rng + ?Sized>(kind: MapKind, dim: usize, rng: &mut R) -> Result<PositiveUnitalMap> {
    let spec = match kind {
        MapKind::Compression => {
            let k = rng.random_range(1..=dim);
            let q = random_orthogonal(dim, rng);
            MapSpec::Compression {
                isometry: q.columns(0, k).into_owned(),
            }
        }
        MapKind::NormalizedTrace => MapSpec::NormalizedTrace { dim },
        MapKind::Pinching => {
            let mut perm: Vec<usize> = (0..dim).collect();
            for i in (1..dim).rev() {
                perm.swap(i, rng.random_range(0..=i));
            }
            let mut blocks: Vec<Vec<usize>> = vec![];
            for (pos, &i) in perm.iter().enumerate() {
                if pos == 0 || rng.random_bool(0.5) {
                    blocks.push(vec![i]);
                } else {
                    blocks.last_mut().expect("non-empty").push(i);
                }
            }
            MapSpec::Pinching { dim, blocks }
        }
        MapKind::UnitaryMixture => {
            let count = rng.random_range(1..=3);
            let unitaries = (0..count).map(|_| random_orthogonal(dim, rng)).collect();
            let raw: Vec<f64> = (0..count).map(|_| rng.random_range(0.2..1.0)).collect();
            let sum: f64 = raw.iter().sum();
            let mut probabilities: Vec<f64> = raw.iter().map(|x| x / sum).collect();
            let head: f64 = probabilities[1..].iter().sum();
            probabilities[0] = 1.0 - head;
            MapSpec::UnitaryMixture { unitaries, probabilities }
        }
    };
    build_map(spec)
}
