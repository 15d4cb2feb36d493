//! Seeded random decision tables for property checks and the identity batch.
//!
//! Default shape: 2..=12 objects, 1..=4 gain criteria with integer values in
//! 1..=5, and 2..=4 class labels assigned uniformly. Class assignments that
//! collapse to a single class are redrawn.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::table::{Criterion, DecisionTable};

pub type TableRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TableRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_table(rng: &mut TableRng) -> DecisionTable {
    let objects = rng.random_range(2..=12);
    let criteria = rng.random_range(1..=4);
    let classes = rng.random_range(2..=4);
    random_table_with(rng, objects, criteria, classes)
}

/// `objects >= 2` and `classes >= 2` are required.
pub fn random_table_with(
    rng: &mut TableRng,
    objects: usize,
    criteria: usize,
    classes: usize,
) -> DecisionTable {
    random_table_full(rng, objects, criteria, classes, 5)
}

/// As [`random_table_with`] with values drawn from `1..=value_levels`.
pub fn random_table_full(
    rng: &mut TableRng,
    objects: usize,
    criteria: usize,
    classes: usize,
    value_levels: i64,
) -> DecisionTable {
    assert!(objects >= 2 && classes >= 2, "need two objects and two classes");
    let rows: Vec<Vec<BigRational>> = (0..objects)
        .map(|_| {
            (0..criteria)
                .map(|_| BigRational::from_integer(rng.random_range(1..=value_levels).into()))
                .collect()
        })
        .collect();
    let labels = loop {
        let labels: Vec<i64> = (0..objects).map(|_| rng.random_range(1..=classes as i64)).collect();
        if labels.iter().any(|&l| l != labels[0]) {
            break labels;
        }
    };
    DecisionTable::new(
        "object",
        (0..objects).map(|i| format!("x{i}")).collect(),
        (0..criteria).map(|q| Criterion::gain(format!("q{}", q + 1))).collect(),
        "d",
        rows,
        labels,
    )
    .expect("generated table is valid")
}
