mod common;

use common::*;
use opmeans_core::means_n::invert_all;
use opmeans_core::{
    chaotic_geometric_mean, karcher_mean, lawson_lim_geometric, lawson_lim_weights, loewner_leq, power_mean,
    thompson_distance, weighted_arithmetic, weighted_harmonic, SpdMatrix, ToleranceConfig, WeightVector,
};
use proptest::prelude::*;

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn leq(a: &SpdMatrix, b: &SpdMatrix) -> bool {
    loewner_leq(a, b, tol().margin_tol * b.max_eigenvalue()).unwrap().holds
}

fn order() -> impl Strategy<Value = f64> {
    prop_oneof![0.01f64..=1.0, -1.0f64..=-0.01]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn power_mean_duality(dim in 2usize..=5, n in 2usize..=4, seed: u64, t in order()) {
        let (ops, w) = (operands(dim, n, seed), weights(n, seed));
        let direct = power_mean(&w, &ops, t, &tol()).unwrap().0;
        let dual = power_mean(&w, &invert_all(&ops).unwrap(), -t, &tol()).unwrap().0.inv().unwrap();
        prop_assert!(thompson_distance(&direct, &dual).unwrap() <= 1e-7);
    }

    #[test]
    fn power_mean_homogeneity(dim in 2usize..=5, n in 2usize..=4, seed: u64, t in order(), a in 0.1f64..10.0) {
        let (ops, w) = (operands(dim, n, seed), weights(n, seed));
        let scaled: Vec<SpdMatrix> = ops.iter().map(|x| x.scale(a).unwrap()).collect();
        let lhs = power_mean(&w, &scaled, t, &tol()).unwrap().0;
        let rhs = power_mean(&w, &ops, t, &tol()).unwrap().0.scale(a).unwrap();
        prop_assert!(thompson_distance(&lhs, &rhs).unwrap() <= 1e-8);
    }

    #[test]
    fn power_mean_between_harmonic_and_arithmetic(dim in 2usize..=5, n in 2usize..=4, seed: u64, t in order()) {
        let (ops, w) = (operands(dim, n, seed), weights(n, seed));
        let p = power_mean(&w, &ops, t, &tol()).unwrap().0;
        prop_assert!(leq(&weighted_harmonic(&w, &ops).unwrap(), &p));
        prop_assert!(leq(&p, &weighted_arithmetic(&w, &ops).unwrap()));
    }

    #[test]
    fn power_mean_increases_with_order(dim in 2usize..=5, n in 2usize..=4, seed: u64, t1 in 0.01f64..=1.0, t2 in 0.01f64..=1.0) {
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let (ops, w) = (operands(dim, n, seed), weights(n, seed));
        let p_lo = power_mean(&w, &ops, lo, &tol()).unwrap().0;
        let p_hi = power_mean(&w, &ops, hi, &tol()).unwrap().0;
        prop_assert!(leq(&p_lo, &p_hi));
    }

    #[test]
    fn karcher_self_duality(dim in 2usize..=5, n in 2usize..=4, seed: u64) {
        let (ops, w) = (operands(dim, n, seed), weights(n, seed));
        let g = karcher_mean(&w, &ops, &tol()).unwrap().0;
        let dual = karcher_mean(&w, &invert_all(&ops).unwrap(), &tol()).unwrap().0.inv().unwrap();
        prop_assert!(thompson_distance(&g, &dual).unwrap() <= 1e-7);
    }

    #[test]
    fn karcher_between_power_means(dim in 2usize..=5, n in 2usize..=4, seed: u64, t in 0.05f64..=1.0) {
        let (ops, w) = (operands(dim, n, seed), weights(n, seed));
        let g = karcher_mean(&w, &ops, &tol()).unwrap().0;
        prop_assert!(leq(&power_mean(&w, &ops, -t, &tol()).unwrap().0, &g));
        prop_assert!(leq(&g, &power_mean(&w, &ops, t, &tol()).unwrap().0));
    }

    #[test]
    fn lawson_lim_agh(dim in 2usize..=4, n in 2usize..=4, seed: u64, t in 0.05f64..0.95) {
        let ops = operands(dim, n, seed);
        let w = lawson_lim_weights(n, t, &tol()).unwrap();
        let g = lawson_lim_geometric(&ops, t, &tol()).unwrap().0;
        prop_assert!(leq(&weighted_harmonic(&w, &ops).unwrap(), &g));
        prop_assert!(leq(&g, &weighted_arithmetic(&w, &ops).unwrap()));
    }

    #[test]
    fn permutation_equivariance(dim in 2usize..=5, n in 2usize..=4, seed: u64, t in order(), rot in 1usize..4) {
        let (ops, w) = (operands(dim, n, seed), weights(n, seed));
        let perm: Vec<usize> = (0..n).map(|i| (i + rot) % n).collect();
        let pops: Vec<SpdMatrix> = perm.iter().map(|&i| ops[i].clone()).collect();
        let pw = w.permuted(&perm);
        let close = |a: &SpdMatrix, b: &SpdMatrix| thompson_distance(a, b).unwrap() <= 1e-9;
        prop_assert!(close(&weighted_arithmetic(&w, &ops).unwrap(), &weighted_arithmetic(&pw, &pops).unwrap()));
        prop_assert!(close(&weighted_harmonic(&w, &ops).unwrap(), &weighted_harmonic(&pw, &pops).unwrap()));
        prop_assert!(close(&chaotic_geometric_mean(&w, &ops).unwrap(), &chaotic_geometric_mean(&pw, &pops).unwrap()));
        prop_assert!(close(&power_mean(&w, &ops, t, &tol()).unwrap().0, &power_mean(&pw, &pops, t, &tol()).unwrap().0));
        prop_assert!(close(&karcher_mean(&w, &ops, &tol()).unwrap().0, &karcher_mean(&pw, &pops, &tol()).unwrap().0));
        if n <= 3 {
            let g = lawson_lim_geometric(&ops, 0.5, &tol()).unwrap().0;
            prop_assert!(close(&g, &lawson_lim_geometric(&pops, 0.5, &tol()).unwrap().0));
        }
    }

    #[test]
    fn two_operand_karcher_is_weighted_geometric(dim in 2usize..=6, seed: u64, w2 in 0.01f64..0.99) {
        let ops = operands(dim, 2, seed);
        let w = WeightVector::new(vec![1.0 - w2, w2]).unwrap();
        let g = karcher_mean(&w, &ops, &tol()).unwrap().0;
        let geo = opmeans_core::geo_mean2(&ops[0], &ops[1], w2).unwrap();
        prop_assert!(thompson_distance(&g, &geo).unwrap() <= 1e-7);
    }
}

#[test]
fn power_means_approach_karcher() {
    for seed in 0..10 {
        let (ops, w) = (operands(3, 3, seed), weights(3, seed));
        let g = karcher_mean(&w, &ops, &tol()).unwrap().0;
        let d: Vec<f64> = [0.5, 0.25, 0.1, 0.05, 0.01]
            .iter()
            .map(|&t| thompson_distance(&power_mean(&w, &ops, t, &tol()).unwrap().0, &g).unwrap())
            .collect();
        assert!(d.windows(2).all(|p| p[1] < p[0]), "seed {seed}: {d:?}");
        assert!(d[4] <= 1e-2);
    }
}
