//! Classical lower/upper approximations and boundaries of class unions.

use serde::Serialize;

use crate::bitset::ObjectSet;
use crate::dominance::{CriteriaSubset, Direction, Engine};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxTriple {
    pub rank: usize,
    pub direction: Direction,
    pub lower: ObjectSet,
    pub upper: ObjectSet,
    pub boundary: ObjectSet,
}

/// Union target for reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UnionTarget {
    pub rank: usize,
    pub direction: Direction,
}

/// Lower approximation for `t` in `0..=l+1`; sentinel unions give empty or
/// full results without special cases.
pub(crate) fn lower(engine: &Engine<'_>, p: &CriteriaSubset, t: usize, dir: Direction) -> ObjectSet {
    let cones = engine.cones(p);
    let target = engine.union(t, dir);
    let m = engine.table().num_objects();
    ObjectSet::from_indices(
        m,
        (0..m).filter(|&x| {
            let cone = match dir {
                Direction::Upward => cones.positive(x),
                Direction::Downward => cones.negative(x),
            };
            cone.is_subset(target)
        }),
    )
}

pub(crate) fn upper(engine: &Engine<'_>, p: &CriteriaSubset, t: usize, dir: Direction) -> ObjectSet {
    let cones = engine.cones(p);
    let target = engine.union(t, dir);
    let m = engine.table().num_objects();
    ObjectSet::from_indices(
        m,
        (0..m).filter(|&x| {
            let cone = match dir {
                Direction::Upward => cones.negative(x),
                Direction::Downward => cones.positive(x),
            };
            cone.intersects(target)
        }),
    )
}

/// Lower, upper and boundary of `Cl_t^≥` or `Cl_t^≤` under `p`, `t` in `1..=l`.
pub fn union_approximation(
    engine: &Engine<'_>,
    p: &CriteriaSubset,
    t: usize,
    dir: Direction,
) -> Result<ApproxTriple> {
    engine.check_rank(t)?;
    let lower = lower(engine, p, t, dir);
    let upper = upper(engine, p, t, dir);
    let boundary = &upper - &lower;
    Ok(ApproxTriple {
        rank: t,
        direction: dir,
        lower,
        upper,
        boundary,
    })
}

/// Objects lying in no upward-union boundary.
pub fn consistent_objects(engine: &Engine<'_>, p: &CriteriaSubset) -> ObjectSet {
    let mut inconsistent = ObjectSet::empty(engine.table().num_objects());
    for t in 2..=engine.num_classes() {
        let bn = &upper(engine, p, t, Direction::Upward) - &lower(engine, p, t, Direction::Upward);
        inconsistent.union_with(&bn);
    }
    inconsistent.complement()
}

pub fn is_consistent(engine: &Engine<'_>, p: &CriteriaSubset, x: usize) -> Result<bool> {
    engine.check_object(x)?;
    Ok(consistent_objects(engine, p).contains(x))
}
