//! `opmeans compute`.

use clap::ValueEnum;
use serde::Serialize;

use opmeans_core::{
    chaotic_geometric_mean, geo_mean2, karcher_mean, lawson_lim_geometric, power_mean, weighted_arithmetic,
    weighted_harmonic, Error, IterationTrace, ScalarBounds, SpdMatrix, ToleranceConfig, WeightVector,
};

use crate::input::Operands;

/// Order used when neither the file nor the command line gives one.
pub const DEFAULT_ORDER: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum MeanName {
    Arith,
    Harm,
    Geo2,
    Power,
    Karcher,
    LawsonLim,
    Chaotic,
}

impl MeanName {
    fn uses_order(self) -> bool {
        matches!(self, MeanName::Geo2 | MeanName::Power | MeanName::LawsonLim)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsOut {
    pub m: f64,
    #[serde(rename = "M")]
    pub big_m: f64,
}

/// Printed result; also a valid matrix file holding the single mean.
#[derive(Debug, Clone, Serialize)]
pub struct ComputeOutput {
    pub mean: MeanName,
    pub dim: usize,
    pub matrices: Vec<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    /// `null` for closed-form means.
    pub trace: Option<IterationTrace>,
    pub bounds: BoundsOut,
}

/// Failure of `compute`, split by exit status.
#[derive(Debug)]
pub enum ComputeError {
    Invalid(String),
    NoConvergence(String),
}

impl From<Error> for ComputeError {
    fn from(e: Error) -> Self {
        match e {
            Error::NoConvergence { .. } => ComputeError::NoConvergence(e.to_string()),
            _ => ComputeError::Invalid(e.to_string()),
        }
    }
}

fn weights_for(mean: MeanName, ops: &Operands) -> Result<WeightVector, ComputeError> {
    match &ops.weights {
        Some(w) => Ok(w.clone()),
        None if ops.matrices.len() >= 2 => Ok(WeightVector::uniform(ops.matrices.len())),
        None => Err(ComputeError::Invalid(format!("{mean:?} needs at least two matrices").to_lowercase())),
    }
}

pub fn compute(mean: MeanName, ops: &Operands, tol: &ToleranceConfig) -> Result<ComputeOutput, ComputeError> {
    let t = ops.t.unwrap_or(DEFAULT_ORDER);
    let mats = &ops.matrices;
    let (x, trace): (SpdMatrix, Option<IterationTrace>) = match mean {
        MeanName::Arith => (weighted_arithmetic(&weights_for(mean, ops)?, mats)?, None),
        MeanName::Harm => (weighted_harmonic(&weights_for(mean, ops)?, mats)?, None),
        MeanName::Chaotic => (chaotic_geometric_mean(&weights_for(mean, ops)?, mats)?, None),
        MeanName::Geo2 => {
            if mats.len() != 2 {
                return Err(ComputeError::Invalid(format!("geo2 takes exactly 2 matrices, got {}", mats.len())));
            }
            (geo_mean2(&mats[0], &mats[1], t)?, None)
        }
        MeanName::Power => {
            let (x, tr) = power_mean(&weights_for(mean, ops)?, mats, t, tol)?;
            (x, Some(tr))
        }
        MeanName::Karcher => {
            let (x, tr) = karcher_mean(&weights_for(mean, ops)?, mats, tol)?;
            (x, Some(tr))
        }
        MeanName::LawsonLim => {
            if ops.weights.is_some() {
                return Err(ComputeError::Invalid("lawson_lim fixes its own weights; remove `weights`".into()));
            }
            let (x, tr) = lawson_lim_geometric(mats, t, tol)?;
            (x, Some(tr))
        }
    };
    let b = ScalarBounds::enclosing(mats)?;
    Ok(ComputeOutput {
        mean,
        dim: x.to_rows().len(),
        matrices: vec![x.to_rows()],
        t: mean.uses_order().then_some(t),
        trace,
        bounds: BoundsOut {
            m: b.m(),
            big_m: b.big_m(),
        },
    })
}
