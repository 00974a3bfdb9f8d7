#![allow(dead_code)]

use frel::{SystemInstance, TNormKind, UnitMatrix, UnitVector};
use proptest::prelude::*;

pub fn pedrycz(kind: TNormKind) -> SystemInstance {
    let a = UnitMatrix::from_rows(&[
        [1.0, 0.4, 0.5, 0.7],
        [0.7, 0.5, 0.3, 0.5],
        [0.2, 1.0, 1.0, 0.6],
        [0.4, 0.5, 0.5, 0.8],
    ])
    .unwrap();
    SystemInstance::new(a, UnitVector::from_slice(&[0.4, 1.0, 0.2, 0.0]).unwrap(), kind).unwrap()
}

pub fn consistency_example(kind: TNormKind) -> SystemInstance {
    let a = UnitMatrix::from_rows(&[[0.31, 0.49, 0.76], [0.34, 0.9, 0.15], [0.94, 0.47, 0.05]]).unwrap();
    SystemInstance::new(a, UnitVector::from_slice(&[0.73, 0.84, 0.61]).unwrap(), kind).unwrap()
}

pub fn close_to(got: &[f64], want: &[f64], tol: f64) -> bool {
    got.len() == want.len() && got.iter().zip(want).all(|(g, w)| (g - w).abs() <= tol)
}

/// Uniform draws mixed with the boundary points 0, 1/2 and 1.
pub fn unit() -> impl Strategy<Value = f64> {
    prop_oneof![
        6 => 0.0..=1.0f64,
        1 => Just(0.0),
        1 => Just(0.5),
        1 => Just(1.0),
    ]
}

pub fn kind() -> impl Strategy<Value = TNormKind> {
    prop_oneof![Just(TNormKind::Minimum), Just(TNormKind::Product), Just(TNormKind::Lukasiewicz)]
}

pub fn closed_form_kind() -> impl Strategy<Value = TNormKind> {
    prop_oneof![Just(TNormKind::Product), Just(TNormKind::Lukasiewicz)]
}

pub fn matrix(max_dim: usize) -> impl Strategy<Value = UnitMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(n, m)| {
        prop::collection::vec(unit(), n * m).prop_map(move |v| UnitMatrix::from_rows(&v.chunks(m).collect::<Vec<_>>()).unwrap())
    })
}

pub fn instance(max_dim: usize, kind: impl Strategy<Value = TNormKind>) -> impl Strategy<Value = SystemInstance> {
    (matrix(max_dim), kind).prop_flat_map(|(a, kind)| {
        prop::collection::vec(unit(), a.rows())
            .prop_map(move |b| SystemInstance::new(a.clone(), UnitVector::from_slice(&b).unwrap(), kind).unwrap())
    })
}
