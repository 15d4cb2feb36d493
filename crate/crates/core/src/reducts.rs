//! Criteria reducts that preserve class-based regions.
//!
//! A subset `P ⊆ C` preserves a region family when every region it produces
//! equals the one produced by the full criteria set `C`. Preservation is
//! monotone in `P` (lower regions only grow and boundaries only shrink as
//! criteria are added, and both are bounded by the `C` reference), so a
//! preserving subset is subset-minimal exactly when no one-element removal
//! still preserves.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::ObjectSet;
use crate::dominance::{cone_table, CriteriaSubset, Engine};
use crate::error::{Error, Result};
use crate::trm::classical_regions;

pub const DEFAULT_BUDGET: usize = 20;

/// Hard ceiling imposed by the `u64` subset masks used during search.
const MASK_LIMIT: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ReductKind {
    /// Precise regions, ranks `1..=l`.
    L,
    /// Low boundaries, ranks `2..=l`.
    LBeta,
    /// High boundaries, ranks `1..l`.
    HBeta,
}

impl ReductKind {
    pub const ALL: [ReductKind; 3] = [ReductKind::L, ReductKind::LBeta, ReductKind::HBeta];

    /// Ranks compared by this kind in a table with `l` classes.
    pub fn ranks(self, l: usize) -> std::ops::RangeInclusive<usize> {
        match self {
            ReductKind::L => 1..=l,
            ReductKind::LBeta => 2..=l,
            ReductKind::HBeta => 1..=l - 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ReductKind::L => "l",
            ReductKind::LBeta => "lbeta",
            ReductKind::HBeta => "hbeta",
        }
    }
}

impl fmt::Display for ReductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ReductKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "l" => Ok(ReductKind::L),
            "lbeta" => Ok(ReductKind::LBeta),
            "hbeta" => Ok(ReductKind::HBeta),
            _ => Err(format!("unknown reduct kind `{s}` (expected l, lbeta or hbeta)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionProfile {
    pub kind: ReductKind,
    pub sets: Vec<ObjectSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduct {
    pub criteria: CriteriaSubset,
    pub kind: ReductKind,
    /// Set by re-checking every one-element removal.
    pub minimal: bool,
}

/// All three region families for one subset, from an uncached cone table.
fn profiles(engine: &Engine<'_>, p: &CriteriaSubset) -> [RegionProfile; 3] {
    let cones = cone_table(engine.table(), p);
    let l = engine.num_classes();
    let mut low = Vec::new();
    let mut precise = Vec::new();
    let mut high = Vec::new();
    for t in 1..=l {
        let [lo, pr, hi] = classical_regions(engine, &cones, t);
        if t >= 2 {
            low.push(lo);
        }
        precise.push(pr);
        if t < l {
            high.push(hi);
        }
    }
    [
        RegionProfile { kind: ReductKind::L, sets: precise },
        RegionProfile { kind: ReductKind::LBeta, sets: low },
        RegionProfile { kind: ReductKind::HBeta, sets: high },
    ]
}

fn kind_index(kind: ReductKind) -> usize {
    match kind {
        ReductKind::L => 0,
        ReductKind::LBeta => 1,
        ReductKind::HBeta => 2,
    }
}

pub fn region_profile(engine: &Engine<'_>, p: &CriteriaSubset, kind: ReductKind) -> RegionProfile {
    let [a, b, c] = profiles(engine, p);
    match kind {
        ReductKind::L => a,
        ReductKind::LBeta => b,
        ReductKind::HBeta => c,
    }
}

pub fn is_preserving(engine: &Engine<'_>, p: &CriteriaSubset, kind: ReductKind) -> bool {
    let reference = region_profile(engine, &CriteriaSubset::all(engine.table()), kind);
    region_profile(engine, p, kind) == reference
}

/// Preservation flags for the three kinds, in [`ReductKind::ALL`] order.
fn preservation(engine: &Engine<'_>, reference: &[RegionProfile; 3], p: &CriteriaSubset) -> [bool; 3] {
    let own = profiles(engine, p);
    [0, 1, 2].map(|i| own[i] == reference[i])
}

fn check_budget(n: usize, budget: usize) -> Result<()> {
    if n > budget || n > MASK_LIMIT {
        return Err(Error::BudgetExceeded { criteria: n, budget: budget.min(MASK_LIMIT) });
    }
    Ok(())
}

/// Index lists of all `k`-subsets of `0..n` in lexicographic order, as masks.
fn k_subset_masks(n: usize, k: usize) -> Vec<u64> {
    fn rec(n: usize, k: usize, start: usize, cur: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for i in start..=n - k {
            rec(n, k - 1, i + 1, cur | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(n, k, 0, 0, &mut out);
    }
    out
}

/// All subset-minimal preserving criteria subsets, by increasing cardinality
/// then lexicographic index order.
pub fn enumerate_reducts(engine: &Engine<'_>, kind: ReductKind, budget: usize) -> Result<Vec<Reduct>> {
    let table = engine.table();
    let n = table.num_criteria();
    check_budget(n, budget)?;
    let reference = region_profile(engine, &CriteriaSubset::all(table), kind);
    let preserves = |mask: u64| {
        let p = CriteriaSubset::from_mask(table, mask).expect("nonempty mask within range");
        region_profile(engine, &p, kind) == reference
    };

    let mut found: Vec<u64> = Vec::new();
    for k in 1..=n {
        let candidates: Vec<u64> = k_subset_masks(n, k)
            .into_iter()
            .filter(|&mask| !found.iter().any(|&r| r & !mask == 0))
            .collect();
        let hits: Vec<bool> = candidates.par_iter().map(|&mask| preserves(mask)).collect();
        found.extend(candidates.iter().zip(hits).filter(|(_, h)| *h).map(|(&m, _)| m));
    }

    Ok(found
        .into_iter()
        .map(|mask| {
            let minimal = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| mask & !(1 << i))
                .all(|sub| sub == 0 || !preserves(sub));
            Reduct {
                criteria: CriteriaSubset::from_mask(table, mask).expect("valid mask"),
                kind,
                minimal,
            }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalityCounterexample {
    /// Both an Lβ-reduct and an Hβ-reduct, yet not an L-reduct.
    pub subset: Vec<String>,
    /// Whether the subset at least preserves the precise regions.
    pub preserves_precise: bool,
}

/// Outcome of testing "Lβ-reduct and Hβ-reduct implies L-reduct" on one table,
/// split into a preservation-level and a minimality-level claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropositionReport {
    pub fingerprint: String,
    pub criteria: usize,
    pub subsets_checked: usize,
    /// Every subset preserving both boundary families also preserves the precise regions.
    pub preservation_holds: bool,
    pub preservation_violations: Vec<Vec<String>>,
    /// Every subset that is both an Lβ-reduct and an Hβ-reduct is an L-reduct.
    pub minimality_holds: bool,
    pub minimality_counterexamples: Vec<MinimalityCounterexample>,
    pub l_reducts: Vec<Vec<String>>,
    pub lbeta_reducts: Vec<Vec<String>>,
    pub hbeta_reducts: Vec<Vec<String>>,
    /// The table itself, included whenever either claim fails.
    pub table_csv: Option<String>,
}

pub fn check_proposition(engine: &Engine<'_>, budget: usize) -> Result<PropositionReport> {
    let table = engine.table();
    let n = table.num_criteria();
    check_budget(n, budget)?;
    let reference = profiles(engine, &CriteriaSubset::all(table));
    let masks: Vec<u64> = (1..(1u64 << n)).collect();
    let flags: Vec<[bool; 3]> = masks
        .par_iter()
        .map(|&mask| preservation(engine, &reference, &CriteriaSubset::from_mask(table, mask).expect("valid")))
        .collect();
    let flag = |mask: u64, kind: ReductKind| flags[mask as usize - 1][kind_index(kind)];
    let is_reduct = |mask: u64, kind: ReductKind| {
        flag(mask, kind)
            && (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| mask & !(1 << i))
                .all(|sub| sub == 0 || !flag(sub, kind))
    };
    let names = |mask: u64| -> Vec<String> {
        let mut v = CriteriaSubset::from_mask(table, mask).expect("valid").names(table);
        v.sort();
        v
    };
    let ordered = |mut v: Vec<u64>| {
        v.sort_by_key(|m| (m.count_ones(), (0..n).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>()));
        v
    };

    let preservation_violations: Vec<Vec<String>> = ordered(
        masks
            .iter()
            .copied()
            .filter(|&m| flag(m, ReductKind::LBeta) && flag(m, ReductKind::HBeta) && !flag(m, ReductKind::L))
            .collect(),
    )
    .into_iter()
    .map(names)
    .collect();

    let reducts_of = |kind| ordered(masks.iter().copied().filter(|&m| is_reduct(m, kind)).collect());
    let l_reducts = reducts_of(ReductKind::L);
    let lbeta_reducts = reducts_of(ReductKind::LBeta);
    let hbeta_reducts = reducts_of(ReductKind::HBeta);

    let minimality_counterexamples: Vec<MinimalityCounterexample> = lbeta_reducts
        .iter()
        .copied()
        .filter(|m| hbeta_reducts.contains(m) && !l_reducts.contains(m))
        .map(|m| MinimalityCounterexample {
            subset: names(m),
            preserves_precise: flag(m, ReductKind::L),
        })
        .collect();

    let preservation_holds = preservation_violations.is_empty();
    let minimality_holds = minimality_counterexamples.is_empty();
    Ok(PropositionReport {
        fingerprint: table.fingerprint(),
        criteria: n,
        subsets_checked: masks.len(),
        preservation_holds,
        preservation_violations,
        minimality_holds,
        minimality_counterexamples,
        l_reducts: l_reducts.into_iter().map(names).collect(),
        lbeta_reducts: lbeta_reducts.into_iter().map(names).collect(),
        hbeta_reducts: hbeta_reducts.into_iter().map(names).collect(),
        table_csv: (!(preservation_holds && minimality_holds)).then(|| table.to_csv()),
    })
}
