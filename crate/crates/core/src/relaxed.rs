//! Variable-consistency and variable-precision lower approximations and the
//! per-object measures they threshold.
//!
//! Consistency of `x` for `Cl_t^≥` is `|D^+(x) ∩ Cl_t^≥| / |D^+(x)|`.
//! Precision of `x` for `Cl_t^≥` weighs supporting evidence (dominated objects
//! in the union) against opposing evidence (dominating objects below it):
//! `|D^-(x) ∩ Cl_t^≥| / (|D^-(x) ∩ Cl_t^≥| + |D^+(x) ∩ Cl_{t-1}^≤|)`.
//! Downward versions swap cones and unions. All comparisons are exact.

use num_rational::Ratio;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::bitset::ObjectSet;
use crate::dominance::{ConeTable, CriteriaSubset, Direction, Engine};
use crate::error::{Error, Result};
use crate::rational::{format_ratio, Level};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeasureKind {
    /// Consistency towards `Cl_t^≥`.
    AlphaUpward,
    /// Consistency towards `Cl_t^≤`.
    AlphaDownward,
    /// Precision towards `Cl_t^≤` (thresholded by `l1`).
    Beta1,
    /// Precision towards `Cl_t^≥` (thresholded by `l2`).
    Beta2,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 4] = [
        MeasureKind::AlphaUpward,
        MeasureKind::AlphaDownward,
        MeasureKind::Beta1,
        MeasureKind::Beta2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MeasureKind::AlphaUpward => "alpha-upward",
            MeasureKind::AlphaDownward => "alpha-downward",
            MeasureKind::Beta1 => "beta1",
            MeasureKind::Beta2 => "beta2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectMeasure {
    pub object: usize,
    pub rank: usize,
    pub kind: MeasureKind,
    pub ratio: Ratio<u64>,
}

impl Serialize for ObjectMeasure {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ObjectMeasure", 4)?;
        s.serialize_field("object", &self.object)?;
        s.serialize_field("rank", &self.rank)?;
        s.serialize_field("kind", self.kind.as_str())?;
        s.serialize_field("ratio", &format_ratio(&self.ratio))?;
        s.end()
    }
}

/// Raw `(part, whole)` counts behind a consistency measure.
fn alpha_counts(engine: &Engine<'_>, cones: &ConeTable, x: usize, t: usize, dir: Direction) -> (usize, usize) {
    let cone = match dir {
        Direction::Upward => cones.positive(x),
        Direction::Downward => cones.negative(x),
    };
    (cone.intersection_len(engine.union(t, dir)), cone.len())
}

/// Raw `(support, support + opposition)` counts behind a precision measure.
fn beta_counts(engine: &Engine<'_>, cones: &ConeTable, x: usize, t: usize, dir: Direction) -> (usize, usize) {
    let (support, opposition) = match dir {
        Direction::Upward => (
            cones.negative(x).intersection_len(engine.upward(t)),
            cones.positive(x).intersection_len(engine.downward(t - 1)),
        ),
        Direction::Downward => (
            cones.positive(x).intersection_len(engine.downward(t)),
            cones.negative(x).intersection_len(engine.upward(t + 1)),
        ),
    };
    (support, support + opposition)
}

fn ratio(part: usize, whole: usize, x: usize, t: usize) -> Result<Ratio<u64>> {
    if whole == 0 {
        return Err(Error::UndefinedMeasure { object: x, rank: t });
    }
    Ok(Ratio::new(part as u64, whole as u64))
}

/// VC lower approximation for `t` in `0..=l+1`.
pub(crate) fn vc_lower_unchecked(
    engine: &Engine<'_>,
    p: &CriteriaSubset,
    t: usize,
    dir: Direction,
    level: Level,
) -> ObjectSet {
    let cones = engine.cones(p);
    let target = engine.union(t, dir);
    ObjectSet::from_indices(
        engine.table().num_objects(),
        target.iter().filter(|&x| {
            let (part, whole) = alpha_counts(engine, &cones, x, t, dir);
            level.admits(part, whole)
        }),
    )
}

/// `{x ∈ Cl_t^≥ : consistency(x) >= level}` (or the downward mirror).
pub fn vc_lower(
    engine: &Engine<'_>,
    p: &CriteriaSubset,
    t: usize,
    dir: Direction,
    level: Level,
) -> Result<ObjectSet> {
    engine.check_rank(t)?;
    Ok(vc_lower_unchecked(engine, p, t, dir, level))
}

/// Complement of the opposite-direction VC lower approximation at the
/// adjacent rank, evaluated at the same level.
pub fn vc_upper(
    engine: &Engine<'_>,
    p: &CriteriaSubset,
    t: usize,
    dir: Direction,
    level: Level,
) -> Result<ObjectSet> {
    engine.check_rank(t)?;
    let opposite = match dir {
        Direction::Upward => vc_lower_unchecked(engine, p, t - 1, Direction::Downward, level),
        Direction::Downward => vc_lower_unchecked(engine, p, t + 1, Direction::Upward, level),
    };
    Ok(opposite.complement())
}

pub fn vc_boundary(
    engine: &Engine<'_>,
    p: &CriteriaSubset,
    t: usize,
    dir: Direction,
    level: Level,
) -> Result<ObjectSet> {
    let upper = vc_upper(engine, p, t, dir, level)?;
    Ok(&upper - &vc_lower(engine, p, t, dir, level)?)
}

/// `{x ∈ U : precision(x) >= level}`. Membership ranges over the whole
/// universe, so objects outside the union can qualify.
pub fn vp_lower(
    engine: &Engine<'_>,
    p: &CriteriaSubset,
    t: usize,
    dir: Direction,
    level: Level,
) -> Result<ObjectSet> {
    engine.check_rank(t)?;
    let cones = engine.cones(p);
    let m = engine.table().num_objects();
    Ok(ObjectSet::from_indices(
        m,
        (0..m).filter(|&x| {
            let (part, whole) = beta_counts(engine, &cones, x, t, dir);
            level.admits(part, whole)
        }),
    ))
}

pub fn consistency_alpha(
    engine: &Engine<'_>,
    p: &CriteriaSubset,
    x: usize,
    t: usize,
    dir: Direction,
) -> Result<ObjectMeasure> {
    engine.check_rank(t)?;
    engine.check_object(x)?;
    let (part, whole) = alpha_counts(engine, &engine.cones(p), x, t, dir);
    Ok(ObjectMeasure {
        object: x,
        rank: t,
        kind: match dir {
            Direction::Upward => MeasureKind::AlphaUpward,
            Direction::Downward => MeasureKind::AlphaDownward,
        },
        ratio: ratio(part, whole, x, t)?,
    })
}

/// `which` must be [`MeasureKind::Beta1`] or [`MeasureKind::Beta2`].
pub fn precision_beta(
    engine: &Engine<'_>,
    p: &CriteriaSubset,
    x: usize,
    t: usize,
    which: MeasureKind,
) -> Result<ObjectMeasure> {
    engine.check_rank(t)?;
    engine.check_object(x)?;
    let dir = match which {
        MeasureKind::Beta1 => Direction::Downward,
        MeasureKind::Beta2 => Direction::Upward,
        other => panic!("precision_beta called with {other:?}"),
    };
    let (part, whole) = beta_counts(engine, &engine.cones(p), x, t, dir);
    Ok(ObjectMeasure {
        object: x,
        rank: t,
        kind: which,
        ratio: ratio(part, whole, x, t)?,
    })
}

/// One measure of any kind.
pub fn measure(
    engine: &Engine<'_>,
    p: &CriteriaSubset,
    x: usize,
    t: usize,
    kind: MeasureKind,
) -> Result<ObjectMeasure> {
    match kind {
        MeasureKind::AlphaUpward => consistency_alpha(engine, p, x, t, Direction::Upward),
        MeasureKind::AlphaDownward => consistency_alpha(engine, p, x, t, Direction::Downward),
        MeasureKind::Beta1 | MeasureKind::Beta2 => precision_beta(engine, p, x, t, kind),
    }
}

/// Every measure of every object at rank `t`, ordered by object then kind.
pub fn all_measures(engine: &Engine<'_>, p: &CriteriaSubset, t: usize) -> Result<Vec<ObjectMeasure>> {
    engine.check_rank(t)?;
    let mut out = Vec::new();
    for x in 0..engine.table().num_objects() {
        for kind in MeasureKind::ALL {
            out.push(measure(engine, p, x, t, kind)?);
        }
    }
    Ok(out)
}
