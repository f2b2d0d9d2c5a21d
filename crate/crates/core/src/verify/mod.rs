//! Registry of operator inequalities and the engine that evaluates them on
//! seeded random instances.

mod checks;
mod context;
mod instance;
mod margin;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::means2::ScalarBounds;
use crate::tolerance::ToleranceConfig;
use context::Ctx;
use margin::Probe;

pub use instance::{mix_seed, random_psd, random_spd, random_weights, Instance, InstanceSpec, WeightSpec};

/// All registered check ids, in report order.
pub fn check_ids() -> Vec<&'static str> {
    checks::REGISTRY.iter().map(|(id, _)| *id).collect()
}

fn lookup(id: &str) -> Result<checks::CheckFn> {
    checks::REGISTRY
        .iter()
        .find(|(name, _)| *name == id)
        .map(|(_, f)| *f)
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

/// Outcome of one check on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub instance: InstanceSpec,
    pub holds: bool,
    /// Reason the check could not be decided, if any.
    pub inconclusive: Option<String>,
    /// Worst slack over the sub-predicates; `holds ⇔ margin ≥ −tolerance`.
    pub margin: f64,
    pub tolerance: f64,
    pub lhs_norm: f64,
    pub rhs_norm: f64,
}

impl CheckResult {
    fn inconclusive(check_id: &str, instance: &InstanceSpec, reason: String) -> Self {
        Self {
            check_id: check_id.to_string(),
            instance: instance.clone(),
            holds: false,
            inconclusive: Some(reason),
            margin: f64::NAN,
            tolerance: f64::NAN,
            lhs_norm: f64::NAN,
            rhs_norm: f64::NAN,
        }
    }

    pub fn is_conclusive(&self) -> bool {
        self.inconclusive.is_none()
    }
}

fn evaluate(id: &str, f: checks::CheckFn, ctx: &Ctx) -> CheckResult {
    let spec = &ctx.inst.spec;
    let mut probe = Probe::new(ctx.tol);
    if let Err(e) = f(ctx, &mut probe) {
        return CheckResult::inconclusive(id, spec, e.to_string());
    }
    let Some(worst) = probe.worst() else {
        return CheckResult::inconclusive(id, spec, probe.inconclusive.unwrap_or_else(|| "no predicate evaluated".into()));
    };
    CheckResult {
        check_id: id.to_string(),
        instance: spec.clone(),
        holds: probe.inconclusive.is_none() && probe.margins.iter().all(|m| m.holds()),
        inconclusive: probe.inconclusive,
        margin: worst.value,
        tolerance: worst.tol,
        lhs_norm: worst.lhs,
        rhs_norm: worst.rhs,
    }
}

/// Evaluates one registered check on the instance described by `spec`.
/// Solver errors are recorded as inconclusive results.
pub fn run_check(check_id: &str, spec: &InstanceSpec, tol: &ToleranceConfig) -> Result<CheckResult> {
    let f = lookup(check_id)?;
    Ok(match spec.materialize(tol) {
        Ok(inst) => evaluate(check_id, f, &Ctx::new(&inst, tol)),
        Err(e) => CheckResult::inconclusive(check_id, spec, e.to_string()),
    })
}

/// Selection of checks, instance distribution and tolerances of a suite run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteConfig {
    pub checks: Vec<String>,
    pub count: usize,
    /// Inclusive range of matrix dimensions.
    pub dims: (usize, usize),
    /// Inclusive range of operand counts.
    pub n_operands: (usize, usize),
    pub m: f64,
    #[serde(rename = "M")]
    pub big_m: f64,
    pub t_grid: Vec<f64>,
    pub seed: u64,
    pub tolerances: ToleranceConfig,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            checks: check_ids().into_iter().map(String::from).collect(),
            count: 200,
            dims: (2, 6),
            n_operands: (2, 4),
            m: 0.5,
            big_m: 4.0,
            t_grid: vec![0.25, 0.5, 0.75],
            seed: 0,
            tolerances: ToleranceConfig::default(),
        }
    }
}

fn invalid(msg: String) -> Error {
    Error::InvalidConfig(msg)
}

impl SuiteConfig {
    pub fn bounds(&self) -> Result<ScalarBounds> {
        ScalarBounds::new(self.m, self.big_m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.checks.is_empty() {
            return Err(invalid("no checks selected".into()));
        }
        for id in &self.checks {
            lookup(id)?;
        }
        if self.count == 0 {
            return Err(invalid("count must be at least 1".into()));
        }
        let (lo, hi) = self.dims;
        if !(2 <= lo && lo <= hi && hi <= 16) {
            return Err(invalid(format!("dims {lo}..{hi} must be a nonempty range within 2..16")));
        }
        let (lo, hi) = self.n_operands;
        if !(2 <= lo && lo <= hi && hi <= 6) {
            return Err(invalid(format!("n_operands {lo}..{hi} must be a nonempty range within 2..6")));
        }
        self.bounds()?;
        if self.t_grid.is_empty() {
            return Err(invalid("t_grid is empty".into()));
        }
        if let Some(t) = self.t_grid.iter().find(|t| !(**t > 0.0 && **t < 1.0)) {
            return Err(invalid(format!("t = {t} is outside (0, 1)")));
        }
        Ok(())
    }

    /// Header of instance `index`.
    pub fn instance(&self, index: usize) -> Result<InstanceSpec> {
        InstanceSpec::generate(self.seed, index, self.dims, self.n_operands, self.bounds()?, &self.t_grid)
    }
}

/// Aggregate of one check over all instances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub check_id: String,
    pub passes: usize,
    pub failures: usize,
    pub inconclusive: usize,
    /// Slack of the worst conclusive evaluation, in the units of `worst_tolerance`.
    pub worst_margin: Option<f64>,
    pub worst_tolerance: Option<f64>,
    /// Seeds of failing instances, ascending.
    pub witness_seeds: Vec<u64>,
    /// Seeds of inconclusive instances, ascending.
    pub inconclusive_seeds: Vec<u64>,
    /// No failures and at most 1% inconclusive.
    pub passed: bool,
}

impl CheckSummary {
    pub fn from_results(check_id: &str, results: &[CheckResult]) -> Self {
        let mut s = Self {
            check_id: check_id.to_string(),
            passes: 0,
            failures: 0,
            inconclusive: 0,
            worst_margin: None,
            worst_tolerance: None,
            witness_seeds: Vec::new(),
            inconclusive_seeds: Vec::new(),
            passed: false,
        };
        let mut worst_score = f64::INFINITY;
        for r in results.iter().filter(|r| r.check_id == check_id) {
            let seed = r.instance.seed;
            if r.inconclusive.is_some() {
                s.inconclusive += 1;
                s.inconclusive_seeds.push(seed);
                continue;
            }
            if r.holds {
                s.passes += 1;
            } else {
                s.failures += 1;
                s.witness_seeds.push(seed);
            }
            let score = if r.margin.is_nan() { f64::NEG_INFINITY } else { r.margin / r.tolerance };
            if s.worst_margin.is_none() || score < worst_score {
                worst_score = score;
                s.worst_margin = Some(r.margin);
                s.worst_tolerance = Some(r.tolerance);
            }
        }
        s.witness_seeds.sort_unstable();
        s.inconclusive_seeds.sort_unstable();
        let total = s.passes + s.failures + s.inconclusive;
        s.passed = total > 0 && s.failures == 0 && s.inconclusive * 100 <= total;
        s
    }
}

/// Result of a suite run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub results: Vec<CheckSummary>,
    pub wall_clock_s: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|s| s.passed)
    }
}

/// Every selected check on one instance, sharing the memoized means.
pub fn run_instance(spec: &InstanceSpec, checks: &[String], tol: &ToleranceConfig) -> Result<Vec<CheckResult>> {
    let fns = checks.iter().map(|id| lookup(id)).collect::<Result<Vec<_>>>()?;
    Ok(match spec.materialize(tol) {
        Ok(inst) => {
            let ctx = Ctx::new(&inst, tol);
            checks.iter().zip(fns).map(|(id, f)| evaluate(id, f, &ctx)).collect()
        }
        Err(e) => checks
            .iter()
            .map(|id| CheckResult::inconclusive(id, spec, e.to_string()))
            .collect(),
    })
}

/// Runs the selected checks over `config.count` instances in parallel. The
/// report is independent of scheduling.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let start = std::time::Instant::now();
    let specs = (0..config.count).map(|i| config.instance(i)).collect::<Result<Vec<_>>>()?;
    let per_instance = specs
        .par_iter()
        .map(|spec| run_instance(spec, &config.checks, &config.tolerances))
        .collect::<Result<Vec<_>>>()?;
    let results: Vec<CheckResult> = per_instance.into_iter().flatten().collect();
    let mut ids: Vec<&str> = Vec::new();
    for id in &config.checks {
        if !ids.contains(&id.as_str()) {
            ids.push(id);
        }
    }
    Ok(SuiteReport {
        config: config.clone(),
        results: ids.iter().map(|id| CheckSummary::from_results(id, &results)).collect(),
        wall_clock_s: start.elapsed().as_secs_f64(),
    })
}
