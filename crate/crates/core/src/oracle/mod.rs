//! Brute-force reference evaluation and the identity suite.
//!
//! [`naive`] re-derives every set from its definition with nested loops over
//! plain vectors; [`identities`] runs the identity catalogue on one table and
//! cross-checks every query it issues. [`run_batch`] drives the suite over a
//! seeded stream of random tables.

pub mod identities;
pub mod naive;

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use identities::{run_identity_suite, DifferentialCheck, Expectation, IdentityCheck, SuiteReport, Witness};

use crate::dominance::{CriteriaSubset, Engine};
use crate::random::{random_table, rng};
use crate::rational::Level;
use crate::reducts::{check_proposition, PropositionReport, DEFAULT_BUDGET};

/// The level grid `{1/4, 1/2, 2/3, 3/4, 1}`.
pub fn default_levels() -> Vec<Level> {
    [(1, 4), (1, 2), (2, 3), (3, 4), (1, 1)]
        .into_iter()
        .map(|(n, d)| Level::new(n, d).expect("valid level"))
        .collect()
}

/// Every ordered `(l1, l2)` pair drawn from `levels`.
pub fn level_pairs(levels: &[Level]) -> Vec<(Level, Level)> {
    levels.iter().flat_map(|&a| levels.iter().map(move |&b| (a, b))).collect()
}

#[derive(Clone, Debug)]
pub struct BatchConfig {
    pub tables: usize,
    pub seed: u64,
    pub levels: Vec<Level>,
}

impl Default for BatchConfig {
    fn default() -> Self {
        Self {
            tables: 500,
            seed: 0,
            levels: default_levels(),
        }
    }
}

/// Per-table seeds, drawn from one stream so a batch is reproducible from its seed.
pub fn table_seeds(seed: u64, tables: usize) -> Vec<u64> {
    let mut master = rng(seed);
    (0..tables).map(|_| master.random()).collect()
}

/// Aggregate outcome of one identity across the batch.
#[derive(Clone, Debug, Serialize)]
pub struct IdentitySummary {
    pub name: &'static str,
    pub family: &'static str,
    pub expectation: Expectation,
    pub checks: usize,
    pub failures: usize,
    /// First failure in table order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableProposition {
    pub table: usize,
    pub seed: u64,
    #[serde(flatten)]
    pub report: PropositionReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatchMismatch {
    pub table: usize,
    pub seed: u64,
    #[serde(flatten)]
    pub check: DifferentialCheck,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatchFailure {
    pub table: usize,
    pub seed: u64,
    #[serde(flatten)]
    pub check: IdentityCheck,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatchReport {
    pub seed: u64,
    pub tables: usize,
    pub levels: Vec<Level>,
    /// Sorted by family then name.
    pub identities: Vec<IdentitySummary>,
    pub provable_failures: Vec<BatchFailure>,
    pub queries: usize,
    pub mismatches: Vec<BatchMismatch>,
    pub propositions: Vec<TableProposition>,
}

impl BatchReport {
    pub fn identity_checks(&self) -> usize {
        self.identities.iter().map(|s| s.checks).sum()
    }

    pub fn passed(&self) -> bool {
        self.provable_failures.is_empty() && self.mismatches.is_empty() && self.preservation_holds()
    }

    pub fn preservation_holds(&self) -> bool {
        self.propositions.iter().all(|p| p.report.preservation_holds)
    }

    pub fn summary(&self, name: &str) -> Option<&IdentitySummary> {
        self.identities.iter().find(|s| s.name == name)
    }
}

struct TableOutcome {
    seed: u64,
    suite: SuiteReport,
    proposition: PropositionReport,
}

fn run_table(seed: u64, pairs: &[(Level, Level)]) -> TableOutcome {
    let table = random_table(&mut rng(seed));
    let p = CriteriaSubset::all(&table);
    let suite = run_identity_suite(&table, &p, pairs);
    let engine = Engine::new(&table);
    let proposition = check_proposition(&engine, DEFAULT_BUDGET).expect("random tables stay within the budget");
    TableOutcome {
        seed,
        suite,
        proposition,
    }
}

/// Runs the suite and the proposition check on `config.tables` random tables.
/// Tables run in parallel; the report is assembled in table order.
pub fn run_batch(config: &BatchConfig) -> BatchReport {
    let pairs = level_pairs(&config.levels);
    let outcomes: Vec<TableOutcome> = table_seeds(config.seed, config.tables)
        .into_par_iter()
        .map(|seed| run_table(seed, &pairs))
        .collect();

    let mut identities: BTreeMap<(&'static str, &'static str), IdentitySummary> = BTreeMap::new();
    let mut provable_failures = Vec::new();
    let mut mismatches = Vec::new();
    let mut propositions = Vec::new();
    let mut queries = 0;
    for (index, outcome) in outcomes.into_iter().enumerate() {
        for check in &outcome.suite.checks {
            let entry = identities.entry((check.family, check.name)).or_insert_with(|| IdentitySummary {
                name: check.name,
                family: check.family,
                expectation: check.expectation,
                checks: 0,
                failures: 0,
                first_witness: None,
            });
            entry.checks += 1;
            if !check.passed {
                entry.failures += 1;
                if entry.first_witness.is_none() {
                    entry.first_witness = check.witness.clone();
                }
            }
            if check.is_provable_failure() {
                provable_failures.push(BatchFailure {
                    table: index,
                    seed: outcome.seed,
                    check: check.clone(),
                });
            }
        }
        queries += outcome.suite.queries();
        mismatches.extend(outcome.suite.mismatches().map(|d| BatchMismatch {
            table: index,
            seed: outcome.seed,
            check: d.clone(),
        }));
        propositions.push(TableProposition {
            table: index,
            seed: outcome.seed,
            report: outcome.proposition,
        });
    }

    BatchReport {
        seed: config.seed,
        tables: config.tables,
        levels: config.levels.clone(),
        identities: identities.into_values().collect(),
        provable_failures,
        queries,
        mismatches,
        propositions,
    }
}
