//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use nonsplit_core::grp::{family_a_full, family_zp_x_zp, MatrixGroup, DEFAULT_ORDER_CAP};
use nonsplit_core::Field;

/// The family-A group over GF(p^k) acting on `n` variables.
pub fn family(p: u32, k: u32, n: usize) -> Arc<MatrixGroup> {
    let f = Field::new(p, k, None).expect("valid field");
    Arc::new(family_a_full(&f, n, DEFAULT_ORDER_CAP).expect("family closes"))
}

pub fn zp_x_zp(p: u32) -> Arc<MatrixGroup> {
    let f = Field::prime(p).expect("prime");
    Arc::new(family_zp_x_zp(&f, DEFAULT_ORDER_CAP).expect("group closes"))
}

/// `(label, group)` pairs covered by the pipeline benchmarks.
pub fn cases() -> Vec<(&'static str, Arc<MatrixGroup>)> {
    vec![
        ("gf4_n2", family(2, 2, 2)),
        ("gf3_n2", family(3, 1, 2)),
        ("gf4_n3", family(2, 2, 3)),
        ("gf9_n2", family(3, 2, 2)),
        ("zp5", zp_x_zp(5)),
    ]
}
