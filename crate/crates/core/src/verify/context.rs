//! Per-instance memo of the means shared between checks.

use std::cell::RefCell;
use std::collections::HashMap;

use nalgebra::DMatrix;
use rand_chacha::ChaCha8Rng;

use super::instance::{fnv1a, stream_rng, Instance};
use crate::error::Result;
use crate::matfun::{SpdMatrix, Symmetric};
use crate::means2::{kantorovich, specht, ScalarBounds};
use crate::means_n::{
    karcher_mean, lawson_lim_geometric, lawson_lim_weights, power_mean, weighted_arithmetic, weighted_harmonic,
    WeightVector,
};
use crate::tolerance::ToleranceConfig;

pub(crate) struct Ctx<'a> {
    pub inst: &'a Instance,
    pub tol: &'a ToleranceConfig,
    means: RefCell<HashMap<String, Result<SpdMatrix>>>,
    weights: RefCell<HashMap<u64, Result<WeightVector>>>,
}

impl<'a> Ctx<'a> {
    pub fn new(inst: &'a Instance, tol: &'a ToleranceConfig) -> Self {
        Self {
            inst,
            tol,
            means: RefCell::new(HashMap::new()),
            weights: RefCell::new(HashMap::new()),
        }
    }

    fn cached(&self, key: String, compute: impl FnOnce() -> Result<SpdMatrix>) -> Result<SpdMatrix> {
        if let Some(hit) = self.means.borrow().get(&key) {
            return hit.clone();
        }
        let value = compute();
        self.means.borrow_mut().insert(key, value.clone());
        value
    }

    pub fn rng(&self, check_id: &str) -> ChaCha8Rng {
        stream_rng(self.inst.spec.seed, fnv1a(check_id))
    }

    pub fn ops(&self) -> &[SpdMatrix] {
        &self.inst.operands
    }

    pub fn w(&self) -> &WeightVector {
        &self.inst.weights
    }

    pub fn t(&self) -> f64 {
        self.inst.spec.t
    }

    pub fn dim(&self) -> usize {
        self.inst.spec.dim
    }

    pub fn bounds(&self) -> ScalarBounds {
        self.inst.spec.bounds
    }

    pub fn m(&self) -> f64 {
        self.bounds().m()
    }

    pub fn big_m(&self) -> f64 {
        self.bounds().big_m()
    }

    /// Kantorovich constant `(m + M)² / 4mM`.
    pub fn k(&self) -> f64 {
        kantorovich(self.bounds())
    }

    pub fn specht(&self) -> Result<f64> {
        specht(self.bounds().h())
    }

    pub fn phi(&self, x: &SpdMatrix) -> Result<SpdMatrix> {
        self.inst.map.apply_spd(x)
    }

    pub fn phi_mat(&self, x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        self.inst.map.apply(x)
    }

    pub fn phi_ops(&self) -> Result<Vec<SpdMatrix>> {
        self.inst.map.apply_all(self.ops())
    }

    pub fn pow_ops(&self, p: f64) -> Result<Vec<SpdMatrix>> {
        self.ops().iter().map(|a| a.powf(p)).collect()
    }

    /// Lawson–Lim weights `t[n]_i` at order `t`.
    pub fn hat(&self, t: f64) -> Result<WeightVector> {
        let key = t.to_bits();
        if let Some(hit) = self.weights.borrow().get(&key) {
            return hit.clone();
        }
        let value = lawson_lim_weights(self.ops().len(), t, self.tol);
        self.weights.borrow_mut().insert(key, value.clone());
        value
    }

    pub fn arith(&self) -> Result<SpdMatrix> {
        self.cached("arith".into(), || weighted_arithmetic(self.w(), self.ops()))
    }

    pub fn harm(&self) -> Result<SpdMatrix> {
        self.cached("harm".into(), || weighted_harmonic(self.w(), self.ops()))
    }

    /// `P_s(ω; 𝔸)`.
    pub fn power(&self, s: f64) -> Result<SpdMatrix> {
        self.cached(format!("power:{s:?}"), || Ok(power_mean(self.w(), self.ops(), s, self.tol)?.0))
    }

    /// `P_s(ω; Φ(𝔸))`.
    pub fn power_phi(&self, s: f64) -> Result<SpdMatrix> {
        self.cached(format!("power_phi:{s:?}"), || {
            Ok(power_mean(self.w(), &self.phi_ops()?, s, self.tol)?.0)
        })
    }

    /// `G_K(ω; 𝔸)`.
    pub fn karcher(&self) -> Result<SpdMatrix> {
        self.cached("karcher".into(), || Ok(karcher_mean(self.w(), self.ops(), self.tol)?.0))
    }

    /// `G_K(ω; Φ(𝔸))`.
    pub fn karcher_phi(&self) -> Result<SpdMatrix> {
        self.cached("karcher_phi".into(), || {
            Ok(karcher_mean(self.w(), &self.phi_ops()?, self.tol)?.0)
        })
    }

    /// `G_K(ω̂; 𝔸)` with `ω̂ = t[n]` at order `t`.
    pub fn karcher_hat(&self, t: f64) -> Result<SpdMatrix> {
        let w = self.hat(t)?;
        if &w == self.w() {
            return self.karcher();
        }
        self.cached(format!("karcher_hat:{t:?}"), || Ok(karcher_mean(&w, self.ops(), self.tol)?.0))
    }

    /// `G[n,t](A_1^p, …, A_n^p)`.
    pub fn lawson_lim(&self, t: f64, p: f64) -> Result<SpdMatrix> {
        self.cached(format!("lawson_lim:{t:?}:{p:?}"), || {
            let ops = if p == 1.0 { self.ops().to_vec() } else { self.pow_ops(p)? };
            Ok(lawson_lim_geometric(&ops, t, self.tol)?.0)
        })
    }

    /// `G[n,t](Φ(A_1), …, Φ(A_n))`.
    pub fn lawson_lim_phi(&self, t: f64) -> Result<SpdMatrix> {
        self.cached(format!("lawson_lim_phi:{t:?}"), || {
            Ok(lawson_lim_geometric(&self.phi_ops()?, t, self.tol)?.0)
        })
    }

    /// `A[n,t](A_1^p, …, A_n^p)`.
    pub fn lawson_lim_arith(&self, t: f64, p: f64) -> Result<SpdMatrix> {
        let w = self.hat(t)?;
        self.cached(format!("lawson_lim_arith:{t:?}:{p:?}"), || {
            let ops = if p == 1.0 { self.ops().to_vec() } else { self.pow_ops(p)? };
            weighted_arithmetic(&w, &ops)
        })
    }

    /// `H[n,t](A_1, …, A_n)`.
    pub fn lawson_lim_harm(&self, t: f64) -> Result<SpdMatrix> {
        let w = self.hat(t)?;
        self.cached(format!("lawson_lim_harm:{t:?}"), || weighted_harmonic(&w, self.ops()))
    }
}

pub(crate) fn scaled(x: &SpdMatrix, c: f64) -> DMatrix<f64> {
    x.matrix() * c
}
