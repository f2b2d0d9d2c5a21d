mod common;

use common::*;
use opmeans_core::verify::{check_ids, random_spd, run_check, run_suite, InstanceSpec, SuiteConfig, WeightSpec};
use opmeans_core::{
    chaotic_geometric_mean, karcher_mean, lawson_lim_geometric, lawson_lim_weights, power_mean, MapKind, SpdMatrix,
    Symmetric, ToleranceConfig,
};
use proptest::prelude::*;
use rand::Rng;

fn diagonal_instance(dim: usize, n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut r = rng(seed);
    (0..n).map(|_| (0..dim).map(|_| r.random_range(0.5..4.0)).collect()).collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn commuting_instances_reduce_to_scalars(dim in 2usize..=5, n in 2usize..=4, seed: u64, t in 0.05f64..0.95) {
        let tol = ToleranceConfig::default();
        let diags = diagonal_instance(dim, n, seed);
        let ops: Vec<SpdMatrix> = diags.iter().map(|d| SpdMatrix::from_diagonal(d).unwrap()).collect();
        let w = weights(n, seed);
        let hat = lawson_lim_weights(n, t, &tol).unwrap();
        let p = power_mean(&w, &ops, t, &tol).unwrap().0;
        let g = karcher_mean(&w, &ops, &tol).unwrap().0;
        let c = chaotic_geometric_mean(&w, &ops).unwrap();
        let ll = lawson_lim_geometric(&ops, t, &tol).unwrap().0;
        for k in 0..dim {
            let col = |i: usize| diags[i][k];
            let pw: f64 = (0..n).map(|i| w.as_slice()[i] * col(i).powf(t)).sum::<f64>().powf(1.0 / t);
            let geo: f64 = (0..n).map(|i| col(i).powf(w.as_slice()[i])).product();
            let geo_hat: f64 = (0..n).map(|i| col(i).powf(hat.as_slice()[i])).product();
            prop_assert!(rel(p.matrix()[(k, k)], pw) <= 1e-9);
            prop_assert!(rel(g.matrix()[(k, k)], geo) <= 1e-9);
            prop_assert!(rel(c.matrix()[(k, k)], geo) <= 1e-9);
            prop_assert!(rel(ll.matrix()[(k, k)], geo_hat) <= 1e-9);
        }
    }

    #[test]
    fn random_spd_respects_bounds(dim in 2usize..=8, seed: u64, m in 0.1f64..2.0, h in 1.0f64..50.0) {
        let b = bounds(m, m * h);
        let a = random_spd(dim, b, &mut rng(seed)).unwrap();
        prop_assert!(a.min_eigenvalue() >= m - 1e-10 && a.max_eigenvalue() <= m * h + 1e-10);
        prop_assert_eq!(&a, &random_spd(dim, b, &mut rng(seed)).unwrap());
    }

    #[test]
    fn generated_specs_are_valid(seed: u64, index in 0usize..1000) {
        let config = SuiteConfig { seed, ..SuiteConfig::default() };
        let spec = config.instance(index).unwrap();
        prop_assert!((2..=6).contains(&spec.dim) && (2..=4).contains(&spec.n_operands));
        prop_assert_eq!(spec.map, MapKind::ALL[index % 4]);
        prop_assert_eq!(&spec, &config.instance(index).unwrap());
    }
}

#[test]
fn sk_scalar_example_chain() {
    let s = opmeans_core::specht(2.0).unwrap();
    let k = opmeans_core::kantorovich(bounds(1.0, 2.0));
    assert!((s - 1.0615).abs() < 1e-4 && (k - 1.125).abs() < 1e-15 && (s * s - 1.1268).abs() < 1e-4);
    assert!(s <= k && k <= s * s);
}

#[test]
fn agh_on_commuting_instance() {
    let spec = InstanceSpec {
        seed: 3,
        dim: 3,
        n_operands: 3,
        bounds: bounds(0.5, 4.0),
        t: 0.25,
        weights: WeightSpec::LawsonLim { t: 0.25 },
        map: MapKind::NormalizedTrace,
    };
    let r = run_check("AGH", &spec, &ToleranceConfig::default()).unwrap();
    assert!(r.holds && r.margin >= 0.0);
}

#[test]
fn run_check_is_pure() {
    let config = SuiteConfig { seed: 99, ..SuiteConfig::default() };
    let tol = ToleranceConfig::default();
    for i in 0..4 {
        let spec = config.instance(i).unwrap();
        for id in ["T22_ando", "P3_limit", "L53_unitary"] {
            assert_eq!(run_check(id, &spec, &tol).unwrap(), run_check(id, &spec, &tol).unwrap());
        }
    }
}

#[test]
fn every_check_passes_on_a_small_suite() {
    let config = SuiteConfig { count: 12, seed: 2024, ..SuiteConfig::default() };
    let report = run_suite(&config).unwrap();
    assert_eq!(report.results.len(), check_ids().len());
    for s in &report.results {
        assert!(s.passed, "{s:?}");
    }
}
