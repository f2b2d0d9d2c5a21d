//! Seeded random instances `m ≤ A_i ≤ M`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::maps::{random_map, random_orthogonal, MapKind, PositiveUnitalMap};
use crate::matfun::SpdMatrix;
use crate::means2::ScalarBounds;
use crate::means_n::{lawson_lim_weights, WeightVector};
use crate::tolerance::ToleranceConfig;

/// RNG stream used for operands and the map; stream 0 is reserved for the
/// instance header and checks derive their own streams from their ids.
const OPERAND_STREAM: u64 = 1;

/// Weights of an instance: explicit, or the Lawson–Lim weights `t[n]_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightSpec {
    Explicit(WeightVector),
    LawsonLim { t: f64 },
}

/// Everything needed to rebuild one test instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub seed: u64,
    pub dim: usize,
    pub n_operands: usize,
    pub bounds: ScalarBounds,
    /// Order used by the checks (`v`, `t` of the power and Lawson–Lim means).
    pub t: f64,
    pub weights: WeightSpec,
    pub map: MapKind,
}

/// A materialized instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub spec: InstanceSpec,
    pub operands: Vec<SpdMatrix>,
    pub weights: WeightVector,
    pub map: PositiveUnitalMap,
}

/// `Q diag(λ) Qᵀ` with log-uniform `λ_i ∈ [m, M]` and Haar-distributed `Q`.
///
/// The smallest and largest eigenvalues are pinned to `m` and `M` with
/// probability 1/2 each, so the bounds are attained often.
pub fn random_spd<R: Rng + ?Sized>(dim: usize, bounds: ScalarBounds, rng: &mut R) -> Result<SpdMatrix> {
    let (m, big_m) = (bounds.m(), bounds.big_m());
    if m == big_m {
        return Ok(SpdMatrix::scalar(dim, m));
    }
    let (lo, hi) = (m.ln(), big_m.ln());
    let mut values: Vec<f64> = (0..dim).map(|_| (lo + (hi - lo) * rng.random::<f64>()).exp()).collect();
    if rng.random_bool(0.5) {
        values[0] = m;
    }
    if rng.random_bool(0.5) {
        values[dim - 1] = big_m;
    }
    let q = random_orthogonal(dim, rng);
    let mut scaled = q.clone();
    for (j, lambda) in values.iter().enumerate() {
        scaled.column_mut(j).scale_mut(*lambda);
    }
    SpdMatrix::from_computed(&(scaled * q.transpose()))
}

/// Strictly positive weights, normalized so the entries sum to 1 in floating point.
pub fn random_weights<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<WeightVector> {
    let raw: Vec<f64> = (0..n).map(|_| 0.05 + rng.random::<f64>()).collect();
    let total: f64 = raw.iter().sum();
    let mut w: Vec<f64> = raw.iter().map(|x| x / total).collect();
    let rest: f64 = w[1..].iter().sum();
    w[0] = 1.0 - rest;
    WeightVector::new(w)
}

/// A random PSD matrix of random rank with operator norm up to `scale`.
pub fn random_psd<R: Rng + ?Sized>(dim: usize, scale: f64, rng: &mut R) -> nalgebra::DMatrix<f64> {
    let rank = rng.random_range(1..=dim);
    let x = nalgebra::DMatrix::<f64>::from_fn(dim, rank, |_, _| rng.sample(StandardNormal));
    let p = &x * x.transpose();
    let norm = p.norm();
    if norm == 0.0 {
        return p;
    }
    p * (scale * rng.random::<f64>() / norm)
}

/// SplitMix64 finalizer, used to spread `(base seed, index)` over 64 bits.
pub fn mix_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// 64-bit FNV-1a, used to give each check its own RNG stream.
pub(crate) fn fnv1a(s: &str) -> u64 {
    s.bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

impl InstanceSpec {
    /// Draws the header of instance `index`: dimension and operand count from
    /// the given inclusive ranges, explicit weights on alternate blocks of four.
    /// The order cycles through `t_grid` and the map family through the gallery.
    pub fn generate(
        base_seed: u64,
        index: usize,
        dims: (usize, usize),
        n_operands: (usize, usize),
        bounds: ScalarBounds,
        t_grid: &[f64],
    ) -> Result<Self> {
        let seed = mix_seed(base_seed, index as u64);
        let mut rng = stream_rng(seed, 0);
        let dim = rng.random_range(dims.0..=dims.1);
        let n = rng.random_range(n_operands.0..=n_operands.1);
        let t = t_grid[index % t_grid.len()];
        let weights = if (index / MapKind::ALL.len()).is_multiple_of(2) {
            WeightSpec::Explicit(random_weights(n, &mut rng)?)
        } else {
            WeightSpec::LawsonLim { t }
        };
        Ok(Self {
            seed,
            dim,
            n_operands: n,
            bounds,
            t,
            weights,
            map: MapKind::ALL[index % MapKind::ALL.len()],
        })
    }

    /// Draws the operands and the map. Identical specs give identical instances.
    pub fn materialize(&self, tol: &ToleranceConfig) -> Result<Instance> {
        let mut rng = stream_rng(self.seed, OPERAND_STREAM);
        let operands = (0..self.n_operands)
            .map(|_| random_spd(self.dim, self.bounds, &mut rng))
            .collect::<Result<Vec<_>>>()?;
        let map = random_map(self.map, self.dim, &mut rng)?;
        let weights = match &self.weights {
            WeightSpec::Explicit(w) => w.clone(),
            WeightSpec::LawsonLim { t } => lawson_lim_weights(self.n_operands, *t, tol)?,
        };
        Ok(Instance {
            spec: self.clone(),
            operands,
            weights,
            map,
        })
    }
}
