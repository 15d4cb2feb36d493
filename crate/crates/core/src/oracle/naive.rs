//! Literal nested-loop evaluation of every query.
//!
//! Nothing here touches the bitset engine, the cone cache or the ordinal
//! codes: dominance compares the exact input values under each criterion's
//! preference, sets are sorted `Vec<usize>`, and every set is rebuilt from its
//! defining quantifiers on each call.

use num_rational::Ratio;

use crate::dominance::{CriteriaSubset, Direction};
use crate::error::{Error, Result};
use crate::query::{Query, Region, TwoGradeRegion};
use crate::rational::Level;
use crate::relaxed::MeasureKind;
use crate::table::{DecisionTable, Preference};
use crate::trm::{FourRegion, Model};

type Set = Vec<usize>;

fn universe(table: &DecisionTable) -> Set {
    (0..table.num_objects()).collect()
}

/// `x` is at least as good as `y` on every criterion of `p`.
fn dominates(table: &DecisionTable, p: &CriteriaSubset, x: usize, y: usize) -> bool {
    p.indices().iter().all(|&q| {
        let (a, b) = (table.value(x, q), table.value(y, q));
        match table.criteria()[q].preference {
            Preference::Gain => a >= b,
            Preference::Cost => a <= b,
        }
    })
}

fn positive_cone(table: &DecisionTable, p: &CriteriaSubset, x: usize) -> Set {
    universe(table).into_iter().filter(|&y| dominates(table, p, y, x)).collect()
}

fn negative_cone(table: &DecisionTable, p: &CriteriaSubset, x: usize) -> Set {
    universe(table).into_iter().filter(|&y| dominates(table, p, x, y)).collect()
}

/// `Cl_t^≥`; any `t` beyond the top class gives ∅.
fn upward(table: &DecisionTable, t: usize) -> Set {
    universe(table).into_iter().filter(|&x| table.rank(x) >= t).collect()
}

/// `Cl_t^≤`; `t = 0` gives ∅.
fn downward(table: &DecisionTable, t: usize) -> Set {
    universe(table).into_iter().filter(|&x| table.rank(x) <= t).collect()
}

fn class(table: &DecisionTable, t: usize) -> Set {
    universe(table).into_iter().filter(|&x| table.rank(x) == t).collect()
}

fn union_of(table: &DecisionTable, t: usize, dir: Direction) -> Set {
    match dir {
        Direction::Upward => upward(table, t),
        Direction::Downward => downward(table, t),
    }
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

fn meets(a: &[usize], b: &[usize]) -> bool {
    a.iter().any(|x| b.contains(x))
}

fn count_in(a: &[usize], b: &[usize]) -> i64 {
    a.iter().filter(|x| b.contains(x)).count() as i64
}

fn minus(a: &[usize], b: &[usize]) -> Set {
    a.iter().copied().filter(|x| !b.contains(x)).collect()
}

fn intersect(a: &[usize], b: &[usize]) -> Set {
    a.iter().copied().filter(|x| b.contains(x)).collect()
}

fn at_least(part: i64, whole: i64, level: Level) -> bool {
    whole > 0 && Ratio::new(part, whole) >= Ratio::new(level.numer() as i64, level.denom() as i64)
}

fn lower(table: &DecisionTable, p: &CriteriaSubset, t: usize, dir: Direction) -> Set {
    let target = union_of(table, t, dir);
    universe(table)
        .into_iter()
        .filter(|&x| match dir {
            Direction::Upward => subset(&positive_cone(table, p, x), &target),
            Direction::Downward => subset(&negative_cone(table, p, x), &target),
        })
        .collect()
}

fn upper(table: &DecisionTable, p: &CriteriaSubset, t: usize, dir: Direction) -> Set {
    let target = union_of(table, t, dir);
    universe(table)
        .into_iter()
        .filter(|&x| match dir {
            Direction::Upward => meets(&negative_cone(table, p, x), &target),
            Direction::Downward => meets(&positive_cone(table, p, x), &target),
        })
        .collect()
}

/// `(|cone ∩ union|, |cone|)` for consistency.
fn alpha_parts(table: &DecisionTable, p: &CriteriaSubset, x: usize, t: usize, dir: Direction) -> (i64, i64) {
    let cone = match dir {
        Direction::Upward => positive_cone(table, p, x),
        Direction::Downward => negative_cone(table, p, x),
    };
    (count_in(&cone, &union_of(table, t, dir)), cone.len() as i64)
}

/// `(support, support + opposition)` for precision.
fn beta_parts(table: &DecisionTable, p: &CriteriaSubset, x: usize, t: usize, dir: Direction) -> (i64, i64) {
    let (support, against) = match dir {
        Direction::Upward => (
            count_in(&negative_cone(table, p, x), &upward(table, t)),
            count_in(&positive_cone(table, p, x), &downward(table, t - 1)),
        ),
        Direction::Downward => (
            count_in(&positive_cone(table, p, x), &downward(table, t)),
            count_in(&negative_cone(table, p, x), &upward(table, t + 1)),
        ),
    };
    (support, support + against)
}

fn vc_lower(table: &DecisionTable, p: &CriteriaSubset, t: usize, dir: Direction, level: Level) -> Set {
    union_of(table, t, dir)
        .into_iter()
        .filter(|&x| {
            let (part, whole) = alpha_parts(table, p, x, t, dir);
            at_least(part, whole, level)
        })
        .collect()
}

fn vc_upper(table: &DecisionTable, p: &CriteriaSubset, t: usize, dir: Direction, level: Level) -> Set {
    let opposite = match dir {
        Direction::Upward => vc_lower(table, p, t - 1, Direction::Downward, level),
        Direction::Downward => vc_lower(table, p, t + 1, Direction::Upward, level),
    };
    minus(&universe(table), &opposite)
}

fn vp_lower(table: &DecisionTable, p: &CriteriaSubset, t: usize, dir: Direction, level: Level) -> Set {
    universe(table)
        .into_iter()
        .filter(|&x| {
            let (part, whole) = beta_parts(table, p, x, t, dir);
            at_least(part, whole, level)
        })
        .collect()
}

fn trm_region(table: &DecisionTable, p: &CriteriaSubset, t: usize, model: Model, region: Region) -> Set {
    class(table, t)
        .into_iter()
        .filter(|&x| {
            let (low, high) = match model {
                Model::Classical => (
                    meets(&positive_cone(table, p, x), &downward(table, t - 1)),
                    meets(&negative_cone(table, p, x), &upward(table, t + 1)),
                ),
                Model::Vc { l1, l2 } => {
                    let (a, b) = alpha_parts(table, p, x, t, Direction::Upward);
                    let (c, d) = alpha_parts(table, p, x, t, Direction::Downward);
                    (!at_least(a, b, l2), !at_least(c, d, l1))
                }
                Model::Vp { l1, l2 } => {
                    let (a, b) = beta_parts(table, p, x, t, Direction::Upward);
                    let (c, d) = beta_parts(table, p, x, t, Direction::Downward);
                    (!at_least(a, b, l2), !at_least(c, d, l1))
                }
            };
            match region {
                Region::Low => low,
                Region::High => high,
                Region::Precise => match model {
                    Model::Classical => {
                        subset(&positive_cone(table, p, x), &upward(table, t))
                            && subset(&negative_cone(table, p, x), &downward(table, t))
                    }
                    _ => !low && !high,
                },
            }
        })
        .collect()
}

fn four_region(table: &DecisionTable, p: &CriteriaSubset, t: usize, label: FourRegion) -> Set {
    class(table, t)
        .into_iter()
        .filter(|&x| {
            let a = meets(&positive_cone(table, p, x), &downward(table, t - 1));
            let b = subset(&positive_cone(table, p, x), &upward(table, t));
            let c = subset(&negative_cone(table, p, x), &downward(table, t));
            let d = meets(&negative_cone(table, p, x), &upward(table, t + 1));
            match label {
                FourRegion::I => a && c,
                FourRegion::II => b && c,
                FourRegion::III => b && d,
                FourRegion::IV => a && d,
            }
        })
        .collect()
}

fn class_lower(table: &DecisionTable, p: &CriteriaSubset, t: usize) -> Set {
    intersect(&lower(table, p, t, Direction::Upward), &lower(table, p, t, Direction::Downward))
}

fn class_upper(table: &DecisionTable, p: &CriteriaSubset, t: usize) -> Set {
    intersect(&upper(table, p, t, Direction::Upward), &upper(table, p, t, Direction::Downward))
}

fn check_rank(table: &DecisionTable, t: usize) -> Result<()> {
    let l = table.num_classes();
    if (1..=l).contains(&t) {
        Ok(())
    } else {
        Err(Error::Rank { rank: t, min: 1, max: l })
    }
}

/// Evaluates a query from first principles. Result is sorted by object index.
pub fn evaluate(table: &DecisionTable, query: &Query) -> Result<Vec<usize>> {
    let m = table.num_objects();
    let check_object = |x: usize| {
        if x < m {
            Ok(())
        } else {
            Err(Error::ObjectIndex { index: x, count: m })
        }
    };
    Ok(match query {
        Query::PositiveCone { p, object } => {
            check_object(*object)?;
            positive_cone(table, p, *object)
        }
        Query::NegativeCone { p, object } => {
            check_object(*object)?;
            negative_cone(table, p, *object)
        }
        Query::Union { rank, direction } => {
            let l = table.num_classes();
            if *rank > l + 1 {
                return Err(Error::Rank { rank: *rank, min: 0, max: l + 1 });
            }
            union_of(table, *rank, *direction)
        }
        Query::Lower { p, rank, direction } => {
            check_rank(table, *rank)?;
            lower(table, p, *rank, *direction)
        }
        Query::Upper { p, rank, direction } => {
            check_rank(table, *rank)?;
            upper(table, p, *rank, *direction)
        }
        Query::Boundary { p, rank, direction } => {
            check_rank(table, *rank)?;
            minus(&upper(table, p, *rank, *direction), &lower(table, p, *rank, *direction))
        }
        Query::VcLower { p, rank, direction, level } => {
            check_rank(table, *rank)?;
            vc_lower(table, p, *rank, *direction, *level)
        }
        Query::VcUpper { p, rank, direction, level } => {
            check_rank(table, *rank)?;
            vc_upper(table, p, *rank, *direction, *level)
        }
        Query::VcBoundary { p, rank, direction, level } => {
            check_rank(table, *rank)?;
            minus(
                &vc_upper(table, p, *rank, *direction, *level),
                &vc_lower(table, p, *rank, *direction, *level),
            )
        }
        Query::VpLower { p, rank, direction, level } => {
            check_rank(table, *rank)?;
            vp_lower(table, p, *rank, *direction, *level)
        }
        Query::Trm { p, rank, model, region } => {
            check_rank(table, *rank)?;
            trm_region(table, p, *rank, *model, *region)
        }
        Query::FourRegion { p, rank, label } => {
            check_rank(table, *rank)?;
            four_region(table, p, *rank, *label)
        }
        Query::ClassLower { p, rank } => {
            check_rank(table, *rank)?;
            class_lower(table, p, *rank)
        }
        Query::ClassUpper { p, rank } => {
            check_rank(table, *rank)?;
            class_upper(table, p, *rank)
        }
        Query::ClassBoundary { p, rank } => {
            check_rank(table, *rank)?;
            minus(&class_upper(table, p, *rank), &class_lower(table, p, *rank))
        }
        Query::TwoGrade { p, region } => {
            if table.num_classes() != 2 {
                return Err(Error::NotTwoGrade(table.num_classes()));
            }
            let s = class(table, 2);
            let sc = class(table, 1);
            match region {
                TwoGradeRegion::SuperiorPrecise => {
                    s.iter().copied().filter(|&x| subset(&positive_cone(table, p, x), &s)).collect()
                }
                TwoGradeRegion::SuperiorLowBoundary => {
                    s.iter().copied().filter(|&x| meets(&positive_cone(table, p, x), &sc)).collect()
                }
                TwoGradeRegion::InferiorHighBoundary => {
                    sc.iter().copied().filter(|&x| meets(&negative_cone(table, p, x), &s)).collect()
                }
                TwoGradeRegion::InferiorPrecise => {
                    sc.iter().copied().filter(|&x| subset(&negative_cone(table, p, x), &sc)).collect()
                }
            }
        }
        Query::Consistent { p } => universe(table)
            .into_iter()
            .filter(|&x| {
                (2..=table.num_classes()).all(|t| {
                    let bn = minus(
                        &upper(table, p, t, Direction::Upward),
                        &lower(table, p, t, Direction::Upward),
                    );
                    !bn.contains(&x)
                })
            })
            .collect(),
    })
}

/// A measure from first principles, as a reduced `i64` ratio.
pub fn measure(table: &DecisionTable, p: &CriteriaSubset, x: usize, t: usize, kind: MeasureKind) -> Result<Ratio<i64>> {
    check_rank(table, t)?;
    let (part, whole) = match kind {
        MeasureKind::AlphaUpward => alpha_parts(table, p, x, t, Direction::Upward),
        MeasureKind::AlphaDownward => alpha_parts(table, p, x, t, Direction::Downward),
        MeasureKind::Beta1 => beta_parts(table, p, x, t, Direction::Downward),
        MeasureKind::Beta2 => beta_parts(table, p, x, t, Direction::Upward),
    };
    if whole == 0 {
        return Err(Error::UndefinedMeasure { object: x, rank: t });
    }
    Ok(Ratio::new(part, whole))
}

/// Reducts of `kind` by checking every subset and every proper subset of it.
pub fn reducts(table: &DecisionTable, kind: crate::reducts::ReductKind) -> Vec<CriteriaSubset> {
    use crate::reducts::ReductKind;
    let l = table.num_classes();
    let n = table.num_criteria();
    let profile = |p: &CriteriaSubset| -> Vec<Set> {
        kind.ranks(l)
            .map(|t| {
                let region = match kind {
                    ReductKind::L => Region::Precise,
                    ReductKind::LBeta => Region::Low,
                    ReductKind::HBeta => Region::High,
                };
                trm_region(table, p, t, Model::Classical, region)
            })
            .collect()
    };
    let reference = profile(&CriteriaSubset::all(table));
    let all: Vec<CriteriaSubset> = (1u64..(1 << n))
        .map(|mask| CriteriaSubset::from_mask(table, mask).expect("valid mask"))
        .collect();
    let mut out: Vec<CriteriaSubset> = all
        .iter()
        .filter(|p| profile(p) == reference)
        .filter(|p| p.proper_subsets().iter().all(|q| profile(q) != reference))
        .cloned()
        .collect();
    out.sort_by_key(|p| (p.len(), p.indices().to_vec()));
    out
}
