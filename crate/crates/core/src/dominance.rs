//! Dominance relation, dominance cones and class unions.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::bitset::ObjectSet;
use crate::error::{Error, Result};
use crate::table::{ClassPartition, DecisionTable};

/// Orientation of a class union: `Cl_t^≥` (upward) or `Cl_t^≤` (downward).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Upward,
    Downward,
}

impl Direction {
    pub fn opposite(self) -> Self {
        match self {
            Direction::Upward => Direction::Downward,
            Direction::Downward => Direction::Upward,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Upward => "up",
            Direction::Downward => "down",
        })
    }
}

/// A nonempty set of condition-criterion indices, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CriteriaSubset {
    indices: Vec<usize>,
}

impl CriteriaSubset {
    pub fn new(table: &DecisionTable, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        indices.sort_unstable();
        indices.dedup();
        if indices.is_empty() {
            return Err(Error::EmptyCriteria);
        }
        let count = table.num_criteria();
        if let Some(&index) = indices.iter().find(|&&q| q >= count) {
            return Err(Error::CriterionIndex { index, count });
        }
        Ok(Self { indices })
    }

    /// All condition criteria, `P = C`.
    pub fn all(table: &DecisionTable) -> Self {
        Self {
            indices: (0..table.num_criteria()).collect(),
        }
    }

    pub fn from_names<S: AsRef<str>>(table: &DecisionTable, names: &[S]) -> Result<Self> {
        let indices = names
            .iter()
            .map(|n| table.criterion_index(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(table, indices)
    }

    /// Subset from bit `i` of `mask` selecting criterion `i`.
    pub fn from_mask(table: &DecisionTable, mask: u64) -> Result<Self> {
        Self::new(table, (0..64).filter(|i| mask >> i & 1 == 1))
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, q: usize) -> bool {
        self.indices.binary_search(&q).is_ok()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.indices.iter().all(|&q| other.contains(q))
    }

    /// Bitmask form; only valid when every index is below 64.
    pub fn mask(&self) -> u64 {
        self.indices.iter().fold(0, |m, &q| {
            assert!(q < 64, "mask needs criterion indices below 64");
            m | 1 << q
        })
    }

    /// The subset with `q` removed, or `None` if that would leave it empty.
    pub fn without(&self, q: usize) -> Option<Self> {
        let indices: Vec<usize> = self.indices.iter().copied().filter(|&i| i != q).collect();
        (!indices.is_empty()).then_some(Self { indices })
    }

    /// Every nonempty proper subset, in increasing bitmask order over positions.
    pub fn proper_subsets(&self) -> Vec<Self> {
        let k = self.indices.len();
        assert!(k < 32, "too many criteria to enumerate subsets");
        (1u32..(1 << k) - 1)
            .map(|bits| Self {
                indices: (0..k).filter(|i| bits >> i & 1 == 1).map(|i| self.indices[i]).collect(),
            })
            .collect()
    }

    pub fn names(&self, table: &DecisionTable) -> Vec<String> {
        self.indices.iter().map(|&q| table.criteria()[q].name.clone()).collect()
    }
}

impl fmt::Debug for CriteriaSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.indices).finish()
    }
}

fn check_object(table: &DecisionTable, x: usize) -> Result<()> {
    if x < table.num_objects() {
        Ok(())
    } else {
        Err(Error::ObjectIndex {
            index: x,
            count: table.num_objects(),
        })
    }
}

/// `x D_P y`: `x` is at least as good as `y` on every criterion of `p`.
pub fn dominates(table: &DecisionTable, p: &CriteriaSubset, x: usize, y: usize) -> Result<bool> {
    check_object(table, x)?;
    check_object(table, y)?;
    Ok(p.indices().iter().all(|&q| table.code(x, q) >= table.code(y, q)))
}

/// `D_P^+(x)`, the objects dominating `x`.
pub fn positive_cone(table: &DecisionTable, p: &CriteriaSubset, x: usize) -> Result<ObjectSet> {
    check_object(table, x)?;
    let m = table.num_objects();
    Ok(ObjectSet::from_indices(
        m,
        (0..m).filter(|&y| p.indices().iter().all(|&q| table.code(y, q) >= table.code(x, q))),
    ))
}

/// `D_P^-(x)`, the objects dominated by `x`.
pub fn negative_cone(table: &DecisionTable, p: &CriteriaSubset, x: usize) -> Result<ObjectSet> {
    check_object(table, x)?;
    let m = table.num_objects();
    Ok(ObjectSet::from_indices(
        m,
        (0..m).filter(|&y| p.indices().iter().all(|&q| table.code(x, q) >= table.code(y, q))),
    ))
}

fn check_union_rank(table: &DecisionTable, t: usize) -> Result<()> {
    let l = table.num_classes();
    if t <= l + 1 {
        Ok(())
    } else {
        Err(Error::Rank {
            rank: t,
            min: 0,
            max: l + 1,
        })
    }
}

/// `Cl_t^≥` for `t` in `0..=l+1`; rank `l+1` is the empty sentinel.
pub fn upward_union(table: &DecisionTable, t: usize) -> Result<ObjectSet> {
    check_union_rank(table, t)?;
    let m = table.num_objects();
    Ok(ObjectSet::from_indices(m, (0..m).filter(|&x| table.rank(x) >= t)))
}

/// `Cl_t^≤` for `t` in `0..=l+1`; rank `0` is the empty sentinel.
pub fn downward_union(table: &DecisionTable, t: usize) -> Result<ObjectSet> {
    check_union_rank(table, t)?;
    let m = table.num_objects();
    Ok(ObjectSet::from_indices(m, (0..m).filter(|&x| table.rank(x) <= t)))
}

/// Positive and negative dominance cones of every object for one criteria subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeTable {
    positive: Vec<ObjectSet>,
    negative: Vec<ObjectSet>,
}

impl ConeTable {
    pub fn positive(&self, x: usize) -> &ObjectSet {
        &self.positive[x]
    }

    pub fn negative(&self, x: usize) -> &ObjectSet {
        &self.negative[x]
    }

    pub fn len(&self) -> usize {
        self.positive.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positive.is_empty()
    }
}

/// Builds all cones by intersecting, per criterion, the nested "at least as
/// good" / "at most as good" level sets.
pub fn cone_table(table: &DecisionTable, p: &CriteriaSubset) -> ConeTable {
    let m = table.num_objects();
    let mut positive = vec![ObjectSet::full(m); m];
    let mut negative = vec![ObjectSet::full(m); m];

    for &q in p.indices() {
        let levels = (0..m).map(|x| table.code(x, q)).max().map_or(0, |c| c as usize + 1);
        let mut buckets = vec![ObjectSet::empty(m); levels];
        for x in 0..m {
            buckets[table.code(x, q) as usize].insert(x);
        }
        // at_least[c] = {y : code(y) >= c}
        let mut at_least = buckets.clone();
        for c in (0..levels.saturating_sub(1)).rev() {
            let (lo, hi) = at_least.split_at_mut(c + 1);
            lo[c].union_with(&hi[0]);
        }
        // at_most[c] = {y : code(y) <= c}
        let mut at_most = buckets;
        for c in 1..levels {
            let (lo, hi) = at_most.split_at_mut(c);
            hi[0].union_with(&lo[c - 1]);
        }
        for x in 0..m {
            let c = table.code(x, q) as usize;
            positive[x].intersect_with(&at_least[c]);
            negative[x].intersect_with(&at_most[c]);
        }
    }
    ConeTable { positive, negative }
}

/// Analysis context over one table: class unions (with sentinel ranks) and a
/// per-criteria-subset cone cache.
pub struct Engine<'t> {
    table: &'t DecisionTable,
    partition: ClassPartition,
    upward: Vec<ObjectSet>,
    downward: Vec<ObjectSet>,
    cones: Mutex<HashMap<CriteriaSubset, Arc<ConeTable>>>,
}

impl<'t> Engine<'t> {
    pub fn new(table: &'t DecisionTable) -> Self {
        let m = table.num_objects();
        let l = table.num_classes();
        let partition = table.class_partition();
        let mut upward = vec![ObjectSet::empty(m); l + 2];
        for t in (1..=l).rev() {
            upward[t] = &upward[t + 1] | partition.class(t);
        }
        upward[0] = upward[1].clone();
        let mut downward = vec![ObjectSet::empty(m); l + 2];
        for t in 1..=l {
            downward[t] = &downward[t - 1] | partition.class(t);
        }
        downward[l + 1] = downward[l].clone();
        Self {
            table,
            partition,
            upward,
            downward,
            cones: Mutex::new(HashMap::new()),
        }
    }

    pub fn table(&self) -> &'t DecisionTable {
        self.table
    }

    pub fn num_classes(&self) -> usize {
        self.partition.len()
    }

    pub fn partition(&self) -> &ClassPartition {
        &self.partition
    }

    /// `Cl_t`, `t` in `1..=l`.
    pub fn class(&self, t: usize) -> &ObjectSet {
        self.partition.class(t)
    }

    pub fn universe(&self) -> ObjectSet {
        ObjectSet::full(self.table.num_objects())
    }

    /// `Cl_t^≥` for `t` in `0..=l+1`.
    pub fn upward(&self, t: usize) -> &ObjectSet {
        &self.upward[t]
    }

    /// `Cl_t^≤` for `t` in `0..=l+1`.
    pub fn downward(&self, t: usize) -> &ObjectSet {
        &self.downward[t]
    }

    pub fn union(&self, t: usize, dir: Direction) -> &ObjectSet {
        match dir {
            Direction::Upward => self.upward(t),
            Direction::Downward => self.downward(t),
        }
    }

    /// Errors unless `1 <= t <= l`.
    pub fn check_rank(&self, t: usize) -> Result<()> {
        let l = self.num_classes();
        if (1..=l).contains(&t) {
            Ok(())
        } else {
            Err(Error::Rank { rank: t, min: 1, max: l })
        }
    }

    pub fn check_object(&self, x: usize) -> Result<()> {
        check_object(self.table, x)
    }

    /// Cached cone table for `p`.
    pub fn cones(&self, p: &CriteriaSubset) -> Arc<ConeTable> {
        if let Some(c) = self.cones.lock().expect("cone cache poisoned").get(p) {
            return Arc::clone(c);
        }
        // Built outside the lock; a racing builder produces an identical table.
        let built = Arc::new(cone_table(self.table, p));
        let mut cache = self.cones.lock().expect("cone cache poisoned");
        Arc::clone(cache.entry(p.clone()).or_insert(built))
    }
}
