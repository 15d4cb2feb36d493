//! Named set queries, evaluable by the engine here and by the brute-force
//! oracle in [`crate::oracle::naive`].

use serde::Serialize;

use crate::bitset::ObjectSet;
use crate::dominance::{upward_union, CriteriaSubset, Direction, Engine};
use crate::error::Result;
use crate::rational::Level;
use crate::relaxed;
use crate::trm::{self, FourRegion, Model};
use crate::union_approx::{consistent_objects, union_approximation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Low,
    Precise,
    High,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwoGradeRegion {
    SuperiorPrecise,
    SuperiorLowBoundary,
    InferiorHighBoundary,
    InferiorPrecise,
}

/// Ranks are `1..=l` except for [`Query::Union`], which also accepts the
/// sentinels `0` and `l + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Query {
    PositiveCone { p: CriteriaSubset, object: usize },
    NegativeCone { p: CriteriaSubset, object: usize },
    Union { rank: usize, direction: Direction },
    Lower { p: CriteriaSubset, rank: usize, direction: Direction },
    Upper { p: CriteriaSubset, rank: usize, direction: Direction },
    Boundary { p: CriteriaSubset, rank: usize, direction: Direction },
    VcLower { p: CriteriaSubset, rank: usize, direction: Direction, level: Level },
    VcUpper { p: CriteriaSubset, rank: usize, direction: Direction, level: Level },
    VcBoundary { p: CriteriaSubset, rank: usize, direction: Direction, level: Level },
    VpLower { p: CriteriaSubset, rank: usize, direction: Direction, level: Level },
    /// Absent regions (low at the worst class, high at the best) evaluate to ∅.
    Trm { p: CriteriaSubset, rank: usize, model: Model, region: Region },
    FourRegion { p: CriteriaSubset, rank: usize, label: FourRegion },
    ClassLower { p: CriteriaSubset, rank: usize },
    ClassUpper { p: CriteriaSubset, rank: usize },
    ClassBoundary { p: CriteriaSubset, rank: usize },
    TwoGrade { p: CriteriaSubset, region: TwoGradeRegion },
    Consistent { p: CriteriaSubset },
}

pub fn evaluate(engine: &Engine<'_>, query: &Query) -> Result<ObjectSet> {
    let table = engine.table();
    Ok(match query {
        Query::PositiveCone { p, object } => {
            engine.check_object(*object)?;
            engine.cones(p).positive(*object).clone()
        }
        Query::NegativeCone { p, object } => {
            engine.check_object(*object)?;
            engine.cones(p).negative(*object).clone()
        }
        Query::Union { rank, direction } => {
            // validates the sentinel range
            upward_union(table, *rank)?;
            engine.union(*rank, *direction).clone()
        }
        Query::Lower { p, rank, direction } => union_approximation(engine, p, *rank, *direction)?.lower,
        Query::Upper { p, rank, direction } => union_approximation(engine, p, *rank, *direction)?.upper,
        Query::Boundary { p, rank, direction } => union_approximation(engine, p, *rank, *direction)?.boundary,
        Query::VcLower { p, rank, direction, level } => relaxed::vc_lower(engine, p, *rank, *direction, *level)?,
        Query::VcUpper { p, rank, direction, level } => relaxed::vc_upper(engine, p, *rank, *direction, *level)?,
        Query::VcBoundary { p, rank, direction, level } => {
            relaxed::vc_boundary(engine, p, *rank, *direction, *level)?
        }
        Query::VpLower { p, rank, direction, level } => relaxed::vp_lower(engine, p, *rank, *direction, *level)?,
        Query::Trm { p, rank, model, region } => {
            let regions = trm::trm(engine, p, *rank, *model)?;
            match region {
                Region::Low => regions.low_or_empty(),
                Region::Precise => regions.precise,
                Region::High => regions.high_or_empty(),
            }
        }
        Query::FourRegion { p, rank, label } => trm::four_regions(engine, p, *rank)?.members(*label),
        Query::ClassLower { p, rank } => trm::class_lower(engine, p, *rank)?,
        Query::ClassUpper { p, rank } => trm::class_upper(engine, p, *rank)?,
        Query::ClassBoundary { p, rank } => trm::class_boundary(engine, p, *rank)?.boundary,
        Query::TwoGrade { p, region } => {
            let r = trm::trm_two_grade(engine, p)?;
            match region {
                TwoGradeRegion::SuperiorPrecise => r.superior_precise,
                TwoGradeRegion::SuperiorLowBoundary => r.superior_low_boundary,
                TwoGradeRegion::InferiorHighBoundary => r.inferior_high_boundary,
                TwoGradeRegion::InferiorPrecise => r.inferior_precise,
            }
        }
        Query::Consistent { p } => consistent_objects(engine, p),
    })
}
