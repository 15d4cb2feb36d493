//! Workloads shared by the engine benchmarks.

use drsa_core::random::{random_table_with, rng};
use drsa_core::DecisionTable;

/// Seeded random table with integer values in 1..=5.
pub fn table(objects: usize, criteria: usize, classes: usize) -> DecisionTable {
    random_table_with(&mut rng(0x5eed), objects, criteria, classes)
}
