//! Shared proptest strategies for unit tests.

use proptest::prelude::*;

use crate::params::{validate, HypergeomParams};
use crate::rational::{q, Rational};

/// Every rational in `[0,1)` with denominator at most `max_den`, ascending.
pub fn farey_pool(max_den: i64) -> Vec<Rational> {
    let mut pool: Vec<Rational> = (1..=max_den).flat_map(|d| (0..d).map(move |n| q(n, d))).collect();
    pool.sort();
    pool.dedup();
    pool
}

/// Valid params with `n ≤ max_n`, `m ≤ max_m`, entries drawn from a Farey pool.
pub fn params_with(max_n: usize, max_m: usize, max_den: i64) -> impl Strategy<Value = HypergeomParams> {
    let pool = farey_pool(max_den);
    (0..=max_n, 0..=max_m)
        .prop_filter("n + m ≥ 1", |(n, m)| n + m >= 1)
        .prop_flat_map(move |(n, m)| {
            (
                proptest::sample::subsequence(pool.clone(), n + m),
                proptest::sample::subsequence((0..n + m).collect::<Vec<_>>(), m),
            )
        })
        .prop_map(|(values, beta_slots)| {
            let (mut alpha, mut beta) = (Vec::new(), Vec::new());
            for (i, v) in values.into_iter().enumerate() {
                if beta_slots.contains(&i) {
                    beta.push(v);
                } else {
                    alpha.push(v);
                }
            }
            validate(alpha, beta).expect("disjoint sorted draws are valid")
        })
}

/// Confluent params (`n > m`) with `n ≤ 5`.
pub fn confluent_params() -> impl Strategy<Value = HypergeomParams> {
    params_with(5, 4, 12).prop_filter("confluent", HypergeomParams::is_confluent)
}
