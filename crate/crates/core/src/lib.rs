//! Means of symmetric positive definite matrices: two-variable weighted
//! geometric means, power means, the Karcher mean and the Lawson–Lim family,
//! together with a seeded engine for checking operator inequalities between
//! them.

pub mod error;
pub mod maps;
pub mod matfun;
pub mod means2;
pub mod means_n;
pub mod tolerance;
pub mod verify;

pub use error::{Error, Result};
pub use maps::{build_map, MapKind, MapSpec, PositiveUnitalMap};
pub use matfun::{
    eigh, loewner_leq, matrix_exp, matrix_log, matrix_power, norm, thompson_distance, validate_spd, LoewnerOutcome,
    NormKind, SpdMatrix, Spectrum, SymMatrix, Symmetric,
};
pub use means2::{furuta_bound, gen_kantorovich, geo_mean2, kantorovich, specht, ScalarBounds};
pub use means_n::{
    chaotic_geometric_mean, karcher_mean, karcher_residual, lawson_lim_geometric, lawson_lim_weights, power_mean,
    weighted_arithmetic, weighted_harmonic, IterationTrace, WeightVector,
};
pub use tolerance::ToleranceConfig;
