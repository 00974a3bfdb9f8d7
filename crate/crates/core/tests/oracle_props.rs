mod common;

use common::{instance, kind, pedrycz};
use frel::oracle::{
    delta_by_bisection, delta_by_grid, delta_by_grid_with, feasible, random_instance, InstanceMode, OracleConfig,
};
use frel::{Execution, TNormKind};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn predicate_is_monotone(inst in instance(5, kind()), p in 0.0..=1.0f64, q in 0.0..=1.0f64) {
        let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
        prop_assert!(!feasible(&inst, lo) || feasible(&inst, hi));
        prop_assert!(feasible(&inst, 1.0));
    }

    #[test]
    fn bisection_result_is_feasible(inst in instance(5, kind())) {
        let d = delta_by_bisection(&inst, &OracleConfig::default()).unwrap().get();
        prop_assert!(feasible(&inst, d));
        if d > 1e-11 {
            prop_assert!(!feasible(&inst, d - 1e-11));
        }
    }
}

#[test]
fn grid_brackets_bisection_on_tiny_instances() {
    let cfg = OracleConfig::default();
    for kind in TNormKind::ALL {
        for seed in 0..20u64 {
            let n = 1 + (seed as usize % 3);
            let inst = random_instance(n, 1 + (seed as usize / 3 % 3), kind, seed, InstanceMode::Arbitrary).unwrap();
            let grid = delta_by_grid(&inst, &cfg).unwrap().get();
            let exact = delta_by_bisection(&inst, &cfg).unwrap().get();
            assert!(grid >= exact - 1e-9, "{kind} seed {seed}: grid {grid} < {exact}");
            assert!(grid <= exact + n as f64 * cfg.grid_step, "{kind} seed {seed}: grid {grid} vs {exact}");
        }
    }
}

#[test]
fn grid_execution_modes_agree() {
    let cfg = OracleConfig::default();
    let inst = random_instance(3, 3, TNormKind::Product, 3, InstanceMode::Arbitrary).unwrap();
    assert_eq!(
        delta_by_grid_with(&inst, &cfg, Execution::Sequential).unwrap(),
        delta_by_grid_with(&inst, &cfg, Execution::Parallel).unwrap()
    );
}

#[test]
fn minimum_kind_is_served_by_bisection() {
    let cfg = OracleConfig::default();
    let inst = pedrycz(TNormKind::Minimum);
    let d = delta_by_bisection(&inst, &cfg).unwrap().get();
    assert!(feasible(&inst, d));
    assert!(d > 0.0);
}
