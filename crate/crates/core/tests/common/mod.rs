#![allow(dead_code)]

use nalgebra::DMatrix;
use opmeans_core::maps::random_orthogonal;
use opmeans_core::verify::{random_psd, random_spd, random_weights};
use opmeans_core::{ScalarBounds, SpdMatrix, Symmetric, WeightVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn bounds(m: f64, big_m: f64) -> ScalarBounds {
    ScalarBounds::new(m, big_m).unwrap()
}

pub fn spd(dim: usize, seed: u64) -> SpdMatrix {
    random_spd(dim, bounds(0.25, 6.0), &mut rng(seed)).unwrap()
}

pub fn operands(dim: usize, n: usize, seed: u64) -> Vec<SpdMatrix> {
    let mut r = rng(seed);
    (0..n).map(|_| random_spd(dim, bounds(0.5, 4.0), &mut r).unwrap()).collect()
}

pub fn weights(n: usize, seed: u64) -> WeightVector {
    random_weights(n, &mut rng(seed ^ 0x5eed)).unwrap()
}

/// `A` and `A + P` for a random positive semidefinite `P`.
pub fn ordered_pair(dim: usize, seed: u64) -> (SpdMatrix, SpdMatrix) {
    let mut r = rng(seed);
    let a = random_spd(dim, bounds(0.5, 4.0), &mut r).unwrap();
    let b = SpdMatrix::from_computed(&(a.matrix() + random_psd(dim, 2.0, &mut r))).unwrap();
    (a, b)
}

/// Well-conditioned invertible matrix `Q diag(s) Rᵀ` with `s ∈ [0.5, 2]`.
pub fn invertible(dim: usize, seed: u64) -> DMatrix<f64> {
    let mut r = rng(seed);
    let q = random_orthogonal(dim, &mut r);
    let p = random_orthogonal(dim, &mut r);
    let s = DMatrix::from_diagonal(&nalgebra::DVector::from_fn(dim, |_, _| r.random_range(0.5..2.0)));
    q * s * p.transpose()
}

pub fn congruence(c: &DMatrix<f64>, a: &SpdMatrix) -> SpdMatrix {
    SpdMatrix::from_computed(&(c * a.matrix() * c.transpose())).unwrap()
}

pub fn frob(a: &DMatrix<f64>) -> f64 {
    a.norm()
}
