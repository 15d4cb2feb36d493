//! Class-based approximation of single decision classes.
//!
//! For a class `Cl_t` the three region model splits its members into
//!
//! * the low boundary: members dominated-from-above by some object of a worse
//!   class (`D^+(x) ∩ Cl_{t-1}^≤ ≠ ∅`),
//! * the precise region: members whose positive cone stays in `Cl_t^≥` and
//!   whose negative cone stays in `Cl_t^≤`,
//! * the high boundary: members dominating some object of a better class
//!   (`D^-(x) ∩ Cl_{t+1}^≥ ≠ ∅`).
//!
//! The worst class has no low boundary and the best class no high boundary;
//! [`TrmRegions`] records these as `None` rather than as empty sets. Under
//! the relaxed models the two boundaries are thresholded measures instead of
//! strict containment, and an object may sit in both boundaries at once.

use std::fmt;

use serde::Serialize;

use crate::bitset::ObjectSet;
use crate::dominance::{ConeTable, CriteriaSubset, Direction, Engine};
use crate::error::{Error, Result};
use crate::rational::Level;
use crate::union_approx::{lower, upper};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    Classical,
    /// Variable consistency; `l1` thresholds the downward side, `l2` the upward side.
    Vc { l1: Level, l2: Level },
    /// Variable precision; `l1` thresholds beta1, `l2` thresholds beta2.
    Vp { l1: Level, l2: Level },
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::Classical => "classical",
            Model::Vc { .. } => "vc",
            Model::Vp { .. } => "vp",
        }
    }

    pub fn levels(&self) -> Option<(Level, Level)> {
        match *self {
            Model::Classical => None,
            Model::Vc { l1, l2 } | Model::Vp { l1, l2 } => Some((l1, l2)),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.levels() {
            None => f.write_str(self.name()),
            Some((l1, l2)) => write!(f, "{}(l1={l1}, l2={l2})", self.name()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrmRegions {
    pub rank: usize,
    pub model: Model,
    /// `None` for the worst class.
    pub low_boundary: Option<ObjectSet>,
    pub precise: ObjectSet,
    /// `None` for the best class.
    pub high_boundary: Option<ObjectSet>,
}

impl TrmRegions {
    /// Low boundary with an absent region read as empty.
    pub fn low_or_empty(&self) -> ObjectSet {
        self.low_boundary.clone().unwrap_or_else(|| ObjectSet::empty(self.precise.universe()))
    }

    pub fn high_or_empty(&self) -> ObjectSet {
        self.high_boundary.clone().unwrap_or_else(|| ObjectSet::empty(self.precise.universe()))
    }

    /// Members falling in both boundaries.
    pub fn doubly_ambiguous(&self) -> ObjectSet {
        &self.low_or_empty() & &self.high_or_empty()
    }
}

fn regions(
    engine: &Engine<'_>,
    t: usize,
    model: Model,
    low: ObjectSet,
    precise: ObjectSet,
    high: ObjectSet,
) -> TrmRegions {
    let l = engine.num_classes();
    TrmRegions {
        rank: t,
        model,
        low_boundary: (t > 1).then_some(low),
        precise,
        high_boundary: (t < l).then_some(high),
    }
}

/// Classical `(low, precise, high)` for `t` in `1..=l` from a given cone table,
/// with absent regions evaluated as empty.
pub(crate) fn classical_regions(engine: &Engine<'_>, cones: &ConeTable, t: usize) -> [ObjectSet; 3] {
    let m = engine.table().num_objects();
    let (mut low, mut precise, mut high) = (ObjectSet::empty(m), ObjectSet::empty(m), ObjectSet::empty(m));
    for x in engine.class(t) {
        let worse_above = cones.positive(x).intersects(engine.downward(t - 1));
        let better_below = cones.negative(x).intersects(engine.upward(t + 1));
        if worse_above {
            low.insert(x);
        }
        if better_below {
            high.insert(x);
        }
        if cones.positive(x).is_subset(engine.upward(t)) && cones.negative(x).is_subset(engine.downward(t)) {
            precise.insert(x);
        }
    }
    [low, precise, high]
}

pub fn trm_classical(engine: &Engine<'_>, p: &CriteriaSubset, t: usize) -> Result<TrmRegions> {
    engine.check_rank(t)?;
    let [low, precise, high] = classical_regions(engine, &engine.cones(p), t);
    Ok(regions(engine, t, Model::Classical, low, precise, high))
}

pub fn trm_vc(engine: &Engine<'_>, p: &CriteriaSubset, t: usize, l1: Level, l2: Level) -> Result<TrmRegions> {
    engine.check_rank(t)?;
    let cones = engine.cones(p);
    let m = engine.table().num_objects();
    let (mut low, mut precise, mut high) = (ObjectSet::empty(m), ObjectSet::empty(m), ObjectSet::empty(m));
    for x in engine.class(t) {
        let pos = cones.positive(x);
        let neg = cones.negative(x);
        let up_ok = l2.admits(pos.intersection_len(engine.upward(t)), pos.len());
        let down_ok = l1.admits(neg.intersection_len(engine.downward(t)), neg.len());
        if !up_ok {
            low.insert(x);
        }
        if !down_ok {
            high.insert(x);
        }
        if up_ok && down_ok {
            precise.insert(x);
        }
    }
    Ok(regions(engine, t, Model::Vc { l1, l2 }, low, precise, high))
}

pub fn trm_vp(engine: &Engine<'_>, p: &CriteriaSubset, t: usize, l1: Level, l2: Level) -> Result<TrmRegions> {
    engine.check_rank(t)?;
    let cones = engine.cones(p);
    let m = engine.table().num_objects();
    let (mut low, mut precise, mut high) = (ObjectSet::empty(m), ObjectSet::empty(m), ObjectSet::empty(m));
    for x in engine.class(t) {
        let pos = cones.positive(x);
        let neg = cones.negative(x);
        let up_support = neg.intersection_len(engine.upward(t));
        let up_against = pos.intersection_len(engine.downward(t - 1));
        let down_support = pos.intersection_len(engine.downward(t));
        let down_against = neg.intersection_len(engine.upward(t + 1));
        let beta2_ok = l2.admits(up_support, up_support + up_against);
        let beta1_ok = l1.admits(down_support, down_support + down_against);
        if !beta2_ok {
            low.insert(x);
        }
        if !beta1_ok {
            high.insert(x);
        }
        if beta1_ok && beta2_ok {
            precise.insert(x);
        }
    }
    Ok(regions(engine, t, Model::Vp { l1, l2 }, low, precise, high))
}

pub fn trm(engine: &Engine<'_>, p: &CriteriaSubset, t: usize, model: Model) -> Result<TrmRegions> {
    match model {
        Model::Classical => trm_classical(engine, p, t),
        Model::Vc { l1, l2 } => trm_vc(engine, p, t, l1, l2),
        Model::Vp { l1, l2 } => trm_vp(engine, p, t, l1, l2),
    }
}

/// Label of a class member under the (A)/(B) × (C)/(D) conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FourRegion {
    /// Dominated by a worse-class object; dominates nothing better.
    I,
    /// Neither.
    II,
    /// Dominates a better-class object; not dominated by anything worse.
    III,
    /// Both.
    IV,
}

impl FourRegion {
    pub const ALL: [FourRegion; 4] = [FourRegion::I, FourRegion::II, FourRegion::III, FourRegion::IV];
}

impl fmt::Display for FourRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourRegionAssignment {
    pub rank: usize,
    /// `(object, label)` for every member of the class, by object index.
    pub labels: Vec<(usize, FourRegion)>,
    universe: usize,
}

impl FourRegionAssignment {
    pub fn members(&self, region: FourRegion) -> ObjectSet {
        let universe = self.universe;
        ObjectSet::from_indices(
            universe,
            self.labels.iter().filter(|(_, r)| *r == region).map(|(x, _)| *x),
        )
    }

    pub fn label(&self, x: usize) -> Option<FourRegion> {
        self.labels.iter().find(|(y, _)| *y == x).map(|(_, r)| *r)
    }
}

pub fn four_regions(engine: &Engine<'_>, p: &CriteriaSubset, t: usize) -> Result<FourRegionAssignment> {
    engine.check_rank(t)?;
    let cones = engine.cones(p);
    let labels = engine
        .class(t)
        .iter()
        .map(|x| {
            let a = cones.positive(x).intersects(engine.downward(t - 1));
            let d = cones.negative(x).intersects(engine.upward(t + 1));
            let label = match (a, d) {
                (true, false) => FourRegion::I,
                (false, false) => FourRegion::II,
                (false, true) => FourRegion::III,
                (true, true) => FourRegion::IV,
            };
            (x, label)
        })
        .collect();
    Ok(FourRegionAssignment {
        rank: t,
        labels,
        universe: engine.table().num_objects(),
    })
}

/// Regions of a table with exactly two classes: `S = Cl_2` (superior) and
/// `S^c = Cl_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoGradeRegions {
    pub superior_precise: ObjectSet,
    pub superior_low_boundary: ObjectSet,
    pub inferior_high_boundary: ObjectSet,
    pub inferior_precise: ObjectSet,
}

pub fn trm_two_grade(engine: &Engine<'_>, p: &CriteriaSubset) -> Result<TwoGradeRegions> {
    let l = engine.num_classes();
    if l != 2 {
        return Err(Error::NotTwoGrade(l));
    }
    let cones = engine.cones(p);
    let m = engine.table().num_objects();
    let (s, sc) = (engine.class(2), engine.class(1));
    let superior_precise = ObjectSet::from_indices(m, s.iter().filter(|&x| cones.positive(x).is_subset(s)));
    let superior_low_boundary = ObjectSet::from_indices(m, s.iter().filter(|&x| cones.positive(x).intersects(sc)));
    let inferior_high_boundary = ObjectSet::from_indices(m, sc.iter().filter(|&x| cones.negative(x).intersects(s)));
    let inferior_precise = ObjectSet::from_indices(m, sc.iter().filter(|&x| cones.negative(x).is_subset(sc)));
    Ok(TwoGradeRegions {
        superior_precise,
        superior_low_boundary,
        inferior_high_boundary,
        inferior_precise,
    })
}

/// Lower/upper/boundary of a single class, built from the union-based sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassApprox {
    pub rank: usize,
    pub lower: ObjectSet,
    pub upper: ObjectSet,
    pub boundary: ObjectSet,
}

/// `lower(Cl_t^≥) ∩ lower(Cl_t^≤)`.
pub fn class_lower(engine: &Engine<'_>, p: &CriteriaSubset, t: usize) -> Result<ObjectSet> {
    engine.check_rank(t)?;
    Ok(&lower(engine, p, t, Direction::Upward) & &lower(engine, p, t, Direction::Downward))
}

/// `upper(Cl_t^≥) ∩ upper(Cl_t^≤)`.
pub fn class_upper(engine: &Engine<'_>, p: &CriteriaSubset, t: usize) -> Result<ObjectSet> {
    engine.check_rank(t)?;
    Ok(&upper(engine, p, t, Direction::Upward) & &upper(engine, p, t, Direction::Downward))
}

pub fn class_boundary(engine: &Engine<'_>, p: &CriteriaSubset, t: usize) -> Result<ClassApprox> {
    let lower = class_lower(engine, p, t)?;
    let upper = class_upper(engine, p, t)?;
    let boundary = &upper - &lower;
    Ok(ClassApprox {
        rank: t,
        lower,
        upper,
        boundary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::table::DecisionTable;
    use proptest::prelude::*;

    fn lv(n: u64, d: u64) -> Level {
        Level::new(n, d).unwrap()
    }

    fn set(t: &DecisionTable, names: &[&str]) -> ObjectSet {
        ObjectSet::from_indices(t.num_objects(), names.iter().map(|n| t.object_index(n).unwrap()))
    }

    #[test]
    fn classical_regions_on_t2() {
        let t = fixtures::t2();
        let e = Engine::new(&t);
        let p = CriteriaSubset::all(&t);
        let top = trm_classical(&e, &p, 3).unwrap();
        assert_eq!(top.low_boundary, Some(set(&t, &["b"])));
        assert_eq!(top.precise, set(&t, &["d"]));
        assert_eq!(top.high_boundary, None);
        let mid = trm_classical(&e, &p, 2).unwrap();
        assert_eq!(mid.low_boundary, Some(set(&t, &[])));
        assert_eq!(mid.precise, set(&t, &[]));
        assert_eq!(mid.high_boundary, Some(set(&t, &["c"])));
        assert_eq!(trm_classical(&e, &p, 1).unwrap().low_boundary, None);
    }

    #[test]
    fn consistent_table_is_all_precise() {
        let t = fixtures::t1();
        let e = Engine::new(&t);
        let p = CriteriaSubset::all(&t);
        for rank in 1..=3 {
            let r = trm_classical(&e, &p, rank).unwrap();
            assert_eq!(&r.precise, e.class(rank));
            assert!(r.low_or_empty().is_empty() && r.high_or_empty().is_empty());
        }
    }

    #[test]
    fn relaxed_regions_on_t2() {
        let t = fixtures::t2();
        let e = Engine::new(&t);
        let p = CriteriaSubset::all(&t);
        let classical = trm_classical(&e, &p, 3).unwrap();
        let vc1 = trm_vc(&e, &p, 3, Level::ONE, Level::ONE).unwrap();
        assert_eq!((vc1.low_boundary, vc1.precise), (classical.low_boundary.clone(), classical.precise.clone()));

        let vc = trm_vc(&e, &p, 3, Level::ONE, lv(2, 3)).unwrap();
        assert_eq!(vc.low_boundary, Some(set(&t, &[])));
        assert_eq!(vc.precise, set(&t, &["b", "d"]));

        let vp = trm_vp(&e, &p, 3, Level::ONE, lv(1, 2)).unwrap();
        assert_eq!(vp.low_boundary, Some(set(&t, &[])));
        assert_eq!(vp.precise, set(&t, &["b", "d"]));
        let vp = trm_vp(&e, &p, 3, Level::ONE, lv(3, 4)).unwrap();
        assert_eq!(vp.low_boundary, Some(set(&t, &["b"])));
        assert_eq!(vp.precise, set(&t, &["d"]));
        assert_eq!(vp.model.to_string(), "vp(l1=1/1, l2=3/4)");
    }

    #[test]
    fn four_region_labels_on_t2() {
        let t = fixtures::t2();
        let e = Engine::new(&t);
        let p = CriteriaSubset::all(&t);
        let top = four_regions(&e, &p, 3).unwrap();
        assert_eq!(top.label(t.object_index("b").unwrap()), Some(FourRegion::I));
        assert_eq!(top.label(t.object_index("d").unwrap()), Some(FourRegion::II));
        assert_eq!(top.label(t.object_index("a").unwrap()), None);
        let mid = four_regions(&e, &p, 2).unwrap();
        assert_eq!(mid.label(t.object_index("c").unwrap()), Some(FourRegion::III));
        assert_eq!(mid.members(FourRegion::III), set(&t, &["c"]));
    }

    #[test]
    fn two_grade_on_t3() {
        let t = fixtures::t3();
        let e = Engine::new(&t);
        let q1 = CriteriaSubset::from_names(&t, &["q1"]).unwrap();
        let r = trm_two_grade(&e, &q1).unwrap();
        assert_eq!(r.superior_precise, set(&t, &["c"]));
        assert_eq!(r.superior_low_boundary, set(&t, &[]));
        assert_eq!(r.inferior_precise, set(&t, &["a", "b"]));
        assert_eq!(r.inferior_high_boundary, set(&t, &[]));

        let q2 = CriteriaSubset::from_names(&t, &["q2"]).unwrap();
        let r = trm_two_grade(&e, &q2).unwrap();
        assert_eq!(r.superior_precise, set(&t, &[]));
        assert_eq!(r.superior_low_boundary, set(&t, &["c"]));
        assert_eq!(r.inferior_high_boundary, set(&t, &["a", "b"]));
        assert_eq!(r.inferior_precise, set(&t, &[]));

        let t2 = fixtures::t2();
        let e2 = Engine::new(&t2);
        assert!(matches!(
            trm_two_grade(&e2, &CriteriaSubset::all(&t2)),
            Err(Error::NotTwoGrade(3))
        ));
    }

    #[test]
    fn class_approximations() {
        let t = fixtures::t2();
        let e = Engine::new(&t);
        let p = CriteriaSubset::all(&t);
        let top = class_boundary(&e, &p, 3).unwrap();
        assert_eq!(top.lower, set(&t, &["d"]));
        assert_eq!(top.upper, set(&t, &["b", "c", "d"]));
        assert_eq!(top.boundary, set(&t, &["b", "c"]));
        let mid = class_boundary(&e, &p, 2).unwrap();
        assert_eq!(mid.lower, set(&t, &[]));
        assert_eq!(mid.upper, set(&t, &["b", "c"]));
        assert_eq!(mid.boundary, set(&t, &["b", "c"]));

        let t1 = fixtures::t1();
        let e1 = Engine::new(&t1);
        let p1 = CriteriaSubset::all(&t1);
        for rank in 1..=3 {
            let c = class_boundary(&e1, &p1, rank).unwrap();
            assert_eq!(&c.lower, e1.class(rank));
            assert_eq!(&c.upper, e1.class(rank));
            assert!(c.boundary.is_empty());
        }
    }

    #[test]
    fn rank_is_checked() {
        let t = fixtures::t2();
        let e = Engine::new(&t);
        let p = CriteriaSubset::all(&t);
        assert!(trm_classical(&e, &p, 0).is_err());
        assert!(four_regions(&e, &p, 4).is_err());
        assert!(class_lower(&e, &p, 4).is_err());
    }

    proptest! {
        #[test]
        fn relaxed_at_level_one_is_classical(seed in any::<u64>()) {
            let table = crate::random::random_table(&mut crate::random::rng(seed));
            let e = Engine::new(&table);
            let p = CriteriaSubset::all(&table);
            for rank in 1..=table.num_classes() {
                let c = trm_classical(&e, &p, rank).unwrap();
                for model in [Model::Vc { l1: Level::ONE, l2: Level::ONE }, Model::Vp { l1: Level::ONE, l2: Level::ONE }] {
                    let r = trm(&e, &p, rank, model).unwrap();
                    prop_assert_eq!(&r.low_boundary, &c.low_boundary);
                    prop_assert_eq!(&r.precise, &c.precise);
                    prop_assert_eq!(&r.high_boundary, &c.high_boundary);
                }
            }
        }

        #[test]
        fn classical_regions_cover_class(seed in any::<u64>()) {
            let table = crate::random::random_table(&mut crate::random::rng(seed));
            let e = Engine::new(&table);
            let p = CriteriaSubset::all(&table);
            for rank in 1..=table.num_classes() {
                let r = trm_classical(&e, &p, rank).unwrap();
                let boundaries = &r.low_or_empty() | &r.high_or_empty();
                prop_assert!(r.precise.is_disjoint(&boundaries));
                prop_assert_eq!(&(&r.precise | &boundaries), e.class(rank));
                prop_assert_eq!(four_regions(&e, &p, rank).unwrap().members(FourRegion::IV), r.doubly_ambiguous());
            }
        }
    }
}
