//! The identity catalogue, checked on one table against engine results that
//! are themselves cross-checked query by query against the naive evaluator.

use std::collections::{BTreeSet, HashMap};

use num_rational::Ratio;
use serde::Serialize;

use super::naive;
use crate::dominance::{CriteriaSubset, Direction, Engine};
use crate::query::{self, Query, Region, TwoGradeRegion};
use crate::rational::Level;
use crate::relaxed::{self, MeasureKind};
use crate::table::DecisionTable;
use crate::trm::{FourRegion, Model};

type Set = BTreeSet<usize>;

const UP: Direction = Direction::Upward;
const DOWN: Direction = Direction::Downward;

/// Whether an identity is expected to hold on every table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    /// Provable; any failure is a bug.
    Holds,
    /// A printed form that is not provable; failures are findings.
    Suspect,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub fingerprint: String,
    pub criteria: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// Objects on which the two sides disagree, sorted by name.
    pub objects: Vec<String>,
    pub detail: String,
    pub table_csv: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub family: &'static str,
    pub expectation: Expectation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<(Level, Level)>,
    pub passed: bool,
    /// Present iff the check failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl IdentityCheck {
    pub fn is_provable_failure(&self) -> bool {
        !self.passed && self.expectation == Expectation::Holds
    }
}

/// One engine-versus-oracle comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferentialCheck {
    pub query: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub fingerprint: String,
    pub criteria: Vec<String>,
    pub checks: Vec<IdentityCheck>,
    pub differential: Vec<DifferentialCheck>,
}

impl SuiteReport {
    pub fn queries(&self) -> usize {
        self.differential.len()
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &DifferentialCheck> {
        self.differential.iter().filter(|d| !d.passed)
    }

    pub fn provable_failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| c.is_provable_failure())
    }
}

/// Issues queries to both evaluators, records the comparison and memoizes
/// the engine answer.
struct Probe<'t> {
    table: &'t DecisionTable,
    engine: Engine<'t>,
    cache: HashMap<Query, Set>,
    differential: Vec<DifferentialCheck>,
}

impl<'t> Probe<'t> {
    fn new(table: &'t DecisionTable) -> Self {
        Self {
            table,
            engine: Engine::new(table),
            cache: HashMap::new(),
            differential: Vec::new(),
        }
    }

    fn names(&self, set: impl IntoIterator<Item = usize>) -> String {
        let mut v: Vec<&str> = set.into_iter().map(|x| self.table.object_name(x)).collect();
        v.sort_unstable();
        format!("{{{}}}", v.join(","))
    }

    fn get(&mut self, q: Query) -> Set {
        if let Some(s) = self.cache.get(&q) {
            return s.clone();
        }
        let engine = query::evaluate(&self.engine, &q).map(|s| s.iter().collect::<Vec<_>>());
        let oracle = naive::evaluate(self.table, &q);
        let show = |r: &crate::error::Result<Vec<usize>>| match r {
            Ok(v) => self.names(v.iter().copied()),
            Err(e) => format!("error: {e}"),
        };
        let passed = match (&engine, &oracle) {
            (Ok(a), Ok(b)) => a == b,
            (Err(a), Err(b)) => a.to_string() == b.to_string(),
            _ => false,
        };
        self.differential.push(DifferentialCheck {
            query: format!("{q:?}"),
            passed,
            engine: (!passed).then(|| show(&engine)),
            oracle: (!passed).then(|| show(&oracle)),
        });
        let set: Set = engine.unwrap_or_default().into_iter().collect();
        self.cache.insert(q, set.clone());
        set
    }

    fn measure_diff(&mut self, p: &CriteriaSubset, x: usize, t: usize, kind: MeasureKind) -> Option<Ratio<u64>> {
        let engine = relaxed::measure(&self.engine, p, x, t, kind).map(|m| m.ratio);
        let oracle = naive::measure(self.table, p, x, t, kind);
        let passed = match (&engine, &oracle) {
            (Ok(a), Ok(b)) => *a.numer() as i64 == *b.numer() && *a.denom() as i64 == *b.denom(),
            (Err(_), Err(_)) => true,
            _ => false,
        };
        self.differential.push(DifferentialCheck {
            query: format!("Measure {{ p: {p:?}, object: {x}, rank: {t}, kind: {} }}", kind.as_str()),
            passed,
            engine: (!passed).then(|| format!("{engine:?}")),
            oracle: (!passed).then(|| format!("{oracle:?}")),
        });
        engine.ok()
    }
}

fn union(a: &Set, b: &Set) -> Set {
    a | b
}

fn inter(a: &Set, b: &Set) -> Set {
    a & b
}

fn minus(a: &Set, b: &Set) -> Set {
    a - b
}

fn sym(a: &Set, b: &Set) -> Set {
    a ^ b
}

struct Suite<'t> {
    probe: Probe<'t>,
    p: CriteriaSubset,
    l: usize,
    all: Set,
    checks: Vec<IdentityCheck>,
    rank: Option<usize>,
    levels: Option<(Level, Level)>,
}

impl<'t> Suite<'t> {
    fn table(&self) -> &'t DecisionTable {
        self.probe.table
    }

    fn record(&mut self, name: &'static str, family: &'static str, expectation: Expectation, offending: Set, detail: String) {
        let passed = offending.is_empty();
        let witness = (!passed).then(|| {
            let table = self.table();
            let mut objects: Vec<String> = offending.iter().map(|&x| table.object_name(x).to_string()).collect();
            objects.sort();
            Witness {
                fingerprint: table.fingerprint(),
                criteria: self.p.names(table),
                rank: self.rank,
                objects,
                detail,
                table_csv: table.to_csv(),
            }
        });
        self.checks.push(IdentityCheck {
            name,
            family,
            expectation,
            rank: self.rank,
            levels: self.levels,
            passed,
            witness,
        });
    }

    fn eq(&mut self, name: &'static str, family: &'static str, lhs: &Set, rhs: &Set) {
        self.eq_as(name, family, Expectation::Holds, lhs, rhs);
    }

    fn eq_as(&mut self, name: &'static str, family: &'static str, exp: Expectation, lhs: &Set, rhs: &Set) {
        let detail = format!("lhs={} rhs={}", self.probe.names(lhs.iter().copied()), self.probe.names(rhs.iter().copied()));
        self.record(name, family, exp, sym(lhs, rhs), detail);
    }

    fn subset(&mut self, name: &'static str, family: &'static str, a: &Set, b: &Set) {
        self.subset_as(name, family, Expectation::Holds, a, b);
    }

    fn subset_as(&mut self, name: &'static str, family: &'static str, exp: Expectation, a: &Set, b: &Set) {
        let detail = format!("subset={} superset={}", self.probe.names(a.iter().copied()), self.probe.names(b.iter().copied()));
        self.record(name, family, exp, minus(a, b), detail);
    }

    fn at(&mut self, rank: Option<usize>, levels: Option<(Level, Level)>) {
        self.rank = rank;
        self.levels = levels;
    }

    // query shorthands, all over the suite's own criteria subset unless given

    fn union_set(&mut self, t: usize, dir: Direction) -> Set {
        self.probe.get(Query::Union { rank: t, direction: dir })
    }

    fn class(&mut self, t: usize) -> Set {
        let up = self.union_set(t, UP);
        let down = self.union_set(t, DOWN);
        inter(&up, &down)
    }

    fn lower_in(&mut self, p: &CriteriaSubset, t: usize, dir: Direction) -> Set {
        self.probe.get(Query::Lower { p: p.clone(), rank: t, direction: dir })
    }

    fn upper_in(&mut self, p: &CriteriaSubset, t: usize, dir: Direction) -> Set {
        self.probe.get(Query::Upper { p: p.clone(), rank: t, direction: dir })
    }

    fn lower(&mut self, t: usize, dir: Direction) -> Set {
        let p = self.p.clone();
        self.lower_in(&p, t, dir)
    }

    fn upper(&mut self, t: usize, dir: Direction) -> Set {
        let p = self.p.clone();
        self.upper_in(&p, t, dir)
    }

    fn boundary(&mut self, t: usize, dir: Direction) -> Set {
        self.probe.get(Query::Boundary { p: self.p.clone(), rank: t, direction: dir })
    }

    /// Classical lower approximation with the sentinel ranks read as ∅.
    fn lower_or_empty(&mut self, t: usize, dir: Direction) -> Set {
        if (1..=self.l).contains(&t) {
            self.lower(t, dir)
        } else {
            Set::new()
        }
    }

    fn trm(&mut self, t: usize, model: Model, region: Region) -> Set {
        self.probe.get(Query::Trm { p: self.p.clone(), rank: t, model, region })
    }

    fn class_lower_in(&mut self, p: &CriteriaSubset, t: usize) -> Set {
        self.probe.get(Query::ClassLower { p: p.clone(), rank: t })
    }

    fn class_upper_in(&mut self, p: &CriteriaSubset, t: usize) -> Set {
        self.probe.get(Query::ClassUpper { p: p.clone(), rank: t })
    }

    fn class_boundary(&mut self, t: usize) -> Set {
        self.probe.get(Query::ClassBoundary { p: self.p.clone(), rank: t })
    }

    fn cone(&mut self, p: &CriteriaSubset, x: usize, dir: Direction) -> Set {
        match dir {
            UP => self.probe.get(Query::PositiveCone { p: p.clone(), object: x }),
            DOWN => self.probe.get(Query::NegativeCone { p: p.clone(), object: x }),
        }
    }

    fn vc_lower(&mut self, t: usize, dir: Direction, level: Level) -> Set {
        self.probe.get(Query::VcLower { p: self.p.clone(), rank: t, direction: dir, level })
    }

    fn vc_upper(&mut self, t: usize, dir: Direction, level: Level) -> Set {
        self.probe.get(Query::VcUpper { p: self.p.clone(), rank: t, direction: dir, level })
    }

    fn vc_boundary(&mut self, t: usize, dir: Direction, level: Level) -> Set {
        self.probe.get(Query::VcBoundary { p: self.p.clone(), rank: t, direction: dir, level })
    }

    fn vp_lower(&mut self, t: usize, dir: Direction, level: Level) -> Set {
        self.probe.get(Query::VpLower { p: self.p.clone(), rank: t, direction: dir, level })
    }

    fn dominance(&mut self) {
        let m = self.table().num_objects();
        let p = self.p.clone();
        self.at(None, None);
        let pos: Vec<Set> = (0..m).map(|x| self.cone(&p, x, UP)).collect();
        let neg: Vec<Set> = (0..m).map(|x| self.cone(&p, x, DOWN)).collect();
        let dual: Set = (0..m)
            .filter(|&x| (0..m).any(|y| pos[x].contains(&y) != neg[y].contains(&x)))
            .collect();
        self.record("cone-duality", "dominance", Expectation::Holds, dual, String::new());
        let transitive: Set = (0..m)
            .filter(|&x| pos[x].iter().any(|&y| !pos[y].is_subset(&pos[x])))
            .collect();
        self.record("cone-transitivity", "dominance", Expectation::Holds, transitive, String::new());
        let reflexive: Set = (0..m).filter(|&x| !pos[x].contains(&x) || !neg[x].contains(&x)).collect();
        self.record("cone-reflexivity", "dominance", Expectation::Holds, reflexive, String::new());
        for q in p.proper_subsets() {
            let bad: Set = (0..m)
                .filter(|&x| !pos[x].is_subset(&self.cone(&q, x, UP)) || !neg[x].is_subset(&self.cone(&q, x, DOWN)))
                .collect();
            self.record("cone-antimonotone-in-criteria", "dominance", Expectation::Holds, bad, format!("subset={q:?}"));
        }

        let l = self.l;
        self.at(Some(0), None);
        let e = self.union_set(0, DOWN);
        self.eq("sentinel-downward-empty", "dominance", &e, &Set::new());
        self.at(Some(l + 1), None);
        let e = self.union_set(l + 1, UP);
        self.eq("sentinel-upward-empty", "dominance", &e, &Set::new());
        for t in 1..=l {
            self.at(Some(t), None);
            let up = self.union_set(t, UP);
            let below = self.union_set(t - 1, DOWN);
            let all = self.all.clone();
            self.eq("union-complement-upward", "dominance", &up, &minus(&all, &below));
            let down = self.union_set(t, DOWN);
            let above = self.union_set(t + 1, UP);
            self.eq("union-complement-downward", "dominance", &down, &minus(&all, &above));
        }
    }

    fn union_family(&mut self) {
        let l = self.l;
        let all = self.all.clone();
        for t in 1..=l {
            self.at(Some(t), None);
            for dir in [UP, DOWN] {
                let (lo, un, hi) = (self.lower(t, dir), self.union_set(t, dir), self.upper(t, dir));
                self.subset("rough-inclusion-lower", "union", &lo, &un);
                self.subset("rough-inclusion-upper", "union", &un, &hi);
                let bn = self.boundary(t, dir);
                self.eq("boundary-is-upper-minus-lower", "union", &bn, &minus(&hi, &lo));
            }
            if t == 1 {
                let (lo, hi) = (self.lower(1, UP), self.upper(1, UP));
                self.eq("first-rank-upward-lower-is-universe", "union", &lo, &all);
                self.eq("first-rank-upward-upper-is-universe", "union", &hi, &all);
            }
            if t >= 2 {
                let lo_up = self.lower(t, UP);
                let hi_up = self.upper(t, UP);
                let lo_down = self.lower(t - 1, DOWN);
                let hi_down = self.upper(t - 1, DOWN);
                self.eq("complementarity-lower-upward", "union", &lo_up, &minus(&all, &hi_down));
                self.eq("complementarity-upper-upward", "union", &hi_up, &minus(&all, &lo_down));
                let bn_up = self.boundary(t, UP);
                let bn_down = self.boundary(t - 1, DOWN);
                self.eq("boundary-pairing", "union", &bn_up, &bn_down);
                self.eq("boundary-pairing-intersection", "union", &bn_up, &inter(&hi_up, &hi_down));
                let bn_prev = self.boundary(t - 1, UP);
                self.eq_as("printed-boundary-pairing", "union", Expectation::Suspect, &bn_up, &bn_prev);
            }
            if t < l {
                let lo_down = self.lower(t, DOWN);
                let hi_down = self.upper(t, DOWN);
                let lo_up = self.lower(t + 1, UP);
                let hi_up = self.upper(t + 1, UP);
                self.eq("complementarity-lower-downward", "union", &lo_down, &minus(&all, &hi_up));
                self.eq("complementarity-upper-downward", "union", &hi_down, &minus(&all, &lo_up));
                let lo_this = self.lower(t, UP);
                let hi_next_down = self.upper(t + 1, DOWN);
                self.eq_as(
                    "printed-complementarity",
                    "union",
                    Expectation::Suspect,
                    &lo_this,
                    &minus(&all, &hi_next_down),
                );
            }
        }

        self.at(None, None);
        let consistent = self.probe.get(Query::Consistent { p: self.p.clone() });
        let mut bn_up = Set::new();
        for t in 2..=l {
            bn_up = union(&bn_up, &self.boundary(t, UP));
        }
        let mut bn_down = Set::new();
        for t in 1..l {
            bn_down = union(&bn_down, &self.boundary(t, DOWN));
        }
        self.eq("consistent-via-upward-boundaries", "union", &consistent, &minus(&all, &bn_up));
        self.eq("consistent-via-downward-boundaries", "union", &consistent, &minus(&all, &bn_down));

        let p = self.p.clone();
        for q in p.proper_subsets() {
            for t in 1..=l {
                self.at(Some(t), None);
                for dir in [UP, DOWN] {
                    let (lq, lp) = (self.lower_in(&q, t, dir), self.lower_in(&p, t, dir));
                    let (uq, up) = (self.upper_in(&q, t, dir), self.upper_in(&p, t, dir));
                    self.subset("lower-monotone-in-criteria", "union", &lq, &lp);
                    self.subset("upper-antimonotone-in-criteria", "union", &up, &uq);
                }
            }
        }
    }

    fn relaxed_family(&mut self, levels: &[Level]) {
        let l = self.l;
        let all = self.all.clone();
        let p = self.p.clone();
        for t in 1..=l {
            for dir in [UP, DOWN] {
                self.at(Some(t), Some((Level::ONE, Level::ONE)));
                let classical_lower = self.lower(t, dir);
                let classical_upper = self.upper(t, dir);
                let target = self.union_set(t, dir);
                let vc1 = self.vc_lower(t, dir, Level::ONE);
                let vp1 = self.vp_lower(t, dir, Level::ONE);
                let vcu1 = self.vc_upper(t, dir, Level::ONE);
                self.eq("vc-lower-level-one-is-classical", "specialization", &vc1, &classical_lower);
                self.eq("vp-lower-level-one-is-classical", "specialization", &vp1, &classical_lower);
                self.eq("vc-upper-level-one-is-classical", "specialization", &vcu1, &classical_upper);

                let (alpha_kind, beta_kind) = match dir {
                    UP => (MeasureKind::AlphaUpward, MeasureKind::Beta2),
                    DOWN => (MeasureKind::AlphaDownward, MeasureKind::Beta1),
                };
                let alpha: Vec<Option<Ratio<u64>>> = (0..all.len()).map(|x| self.probe.measure_diff(&p, x, t, alpha_kind)).collect();
                let beta: Vec<Option<Ratio<u64>>> = (0..all.len()).map(|x| self.probe.measure_diff(&p, x, t, beta_kind)).collect();

                let mut previous: Option<(Set, Set, Set)> = None;
                for &level in levels {
                    self.at(Some(t), Some((level, level)));
                    let vc = self.vc_lower(t, dir, level);
                    let vcu = self.vc_upper(t, dir, level);
                    let vcb = self.vc_boundary(t, dir, level);
                    let vp = self.vp_lower(t, dir, level);
                    self.subset("vc-lower-contains-classical", "relaxed", &classical_lower, &vc);
                    self.subset("vc-lower-within-union", "relaxed", &vc, &target);
                    self.subset("vc-upper-contains-union", "relaxed", &target, &vcu);
                    self.eq("vc-boundary-is-upper-minus-lower", "relaxed", &vcb, &minus(&vcu, &vc));
                    self.subset("vp-lower-contains-classical", "relaxed", &classical_lower, &vp);
                    self.subset_as("vp-lower-within-union", "relaxed", Expectation::Suspect, &vp, &target);
                    let threshold = level.as_ratio();
                    let vc_expected: Set = target
                        .iter()
                        .copied()
                        .filter(|&x| alpha[x].is_some_and(|r| r >= threshold))
                        .collect();
                    let vp_expected: Set = (0..all.len()).filter(|&x| beta[x].is_some_and(|r| r >= threshold)).collect();
                    self.eq("vc-threshold-coherence", "relaxed", &vc, &vc_expected);
                    self.eq("vp-threshold-coherence", "relaxed", &vp, &vp_expected);
                    if let Some((lower_vc, lower_vcu, lower_vp)) = previous.take() {
                        // levels ascend, so the previous sets were computed at a lower level
                        self.subset("vc-lower-level-monotone", "relaxed", &vc, &lower_vc);
                        self.subset("vp-lower-level-monotone", "relaxed", &vp, &lower_vp);
                        self.subset("vc-upper-level-monotone", "relaxed", &lower_vcu, &vcu);
                    }
                    previous = Some((vc, vcu, vp));
                }
            }
        }
    }

    fn trm_family(&mut self) {
        let l = self.l;
        let c = Model::Classical;
        for t in 1..=l {
            self.at(Some(t), None);
            let cl = self.class(t);
            let low = self.trm(t, c, Region::Low);
            let precise = self.trm(t, c, Region::Precise);
            let high = self.trm(t, c, Region::High);
            self.eq("trm-cover", "trm", &cl, &union(&precise, &union(&low, &high)));
            self.eq("trm-precise-disjoint-from-boundaries", "trm", &inter(&precise, &union(&low, &high)), &Set::new());

            let p = self.p.clone();
            let four: Vec<Set> = FourRegion::ALL
                .iter()
                .map(|&label| self.probe.get(Query::FourRegion { p: p.clone(), rank: t, label }))
                .collect();
            self.eq("four-region-i", "trm", &four[0], &minus(&low, &high));
            self.eq("four-region-ii-is-precise", "trm", &four[1], &precise);
            self.eq("four-region-iii", "trm", &four[2], &minus(&high, &low));
            self.eq("four-region-iv-is-double-boundary", "trm", &four[3], &inter(&low, &high));
            let covered = four.iter().fold(Set::new(), |acc, s| union(&acc, s));
            self.eq("four-region-cover", "trm", &covered, &cl);

            let bn_up = self.boundary(t, UP);
            let bn_down = self.boundary(t, DOWN);
            let lo_up = self.lower(t, UP);
            let lo_down = self.lower(t, DOWN);
            self.eq("upward-boundary-within-class-is-low", "trm", &inter(&bn_up, &cl), &low);
            self.eq("downward-boundary-within-class-is-high", "trm", &inter(&bn_down, &cl), &high);
            self.eq("upward-lower-within-class", "trm", &inter(&lo_up, &cl), &minus(&cl, &low));
            self.eq("downward-lower-within-class", "trm", &inter(&lo_down, &cl), &minus(&cl, &high));
            self.eq_as("printed-upward-lower-within-class", "trm", Expectation::Suspect, &inter(&lo_up, &cl), &minus(&cl, &high));
            self.eq_as("printed-downward-lower-within-class", "trm", Expectation::Suspect, &inter(&lo_down, &cl), &minus(&cl, &low));

            if t >= 2 {
                let prev = self.class(t - 1);
                let prev_high = self.trm(t - 1, c, Region::High);
                self.eq("upward-boundary-on-previous-class", "trm", &inter(&bn_up, &prev), &prev_high);
                self.subset("upward-boundary-sandwich", "trm", &union(&prev_high, &low), &bn_up);
            }
            if t < l {
                let next = self.class(t + 1);
                let next_low = self.trm(t + 1, c, Region::Low);
                let next_high = self.trm(t + 1, c, Region::High);
                self.eq("downward-boundary-on-next-class", "trm", &inter(&bn_down, &next), &next_low);
                self.subset("downward-boundary-sandwich", "trm", &union(&high, &next_low), &bn_down);
                self.subset_as(
                    "printed-downward-boundary-sandwich",
                    "trm",
                    Expectation::Suspect,
                    &union(&low, &next_high),
                    &bn_down,
                );
            }

            let mut above = Set::new();
            for s in t..=l {
                let cs = self.class(s);
                let ls = self.trm(s, c, Region::Low);
                above = union(&above, &minus(&cs, &ls));
            }
            self.subset("upward-lower-bound-from-classes", "trm", &above, &lo_up);
            let mut below = Set::new();
            for s in 1..=t {
                let cs = self.class(s);
                let hs = self.trm(s, c, Region::High);
                below = union(&below, &minus(&cs, &hs));
            }
            self.subset("downward-lower-bound-from-classes", "trm", &below, &lo_down);
        }
    }

    fn class_family(&mut self) {
        let l = self.l;
        let all = self.all.clone();
        let p = self.p.clone();
        let m = all.len();
        let mut lowers = Vec::new();
        let mut uppers = Vec::new();
        let mut boundaries = Vec::new();
        for t in 1..=l {
            lowers.push(self.class_lower_in(&p, t));
            uppers.push(self.class_upper_in(&p, t));
            boundaries.push(self.class_boundary(t));
        }
        for t in 1..=l {
            self.at(Some(t), None);
            let cl = self.class(t);
            let (lo, hi, bn) = (lowers[t - 1].clone(), uppers[t - 1].clone(), boundaries[t - 1].clone());
            let up_t = self.union_set(t, UP);
            let down_t = self.union_set(t, DOWN);

            let mut by_definition_lower = Set::new();
            let mut by_definition_upper = Set::new();
            for x in 0..m {
                let pos = self.cone(&p, x, UP);
                let neg = self.cone(&p, x, DOWN);
                if cl.contains(&x) && pos.is_subset(&up_t) && neg.is_subset(&down_t) {
                    by_definition_lower.insert(x);
                }
                if !neg.is_disjoint(&up_t) && !pos.is_disjoint(&down_t) {
                    by_definition_upper.insert(x);
                }
            }
            self.eq("class-lower-definition", "class", &lo, &by_definition_lower);
            self.eq("class-upper-definition", "class", &hi, &by_definition_upper);

            let before = self.lower_or_empty(t.wrapping_sub(1), DOWN);
            let after = self.lower_or_empty(t + 1, UP);
            self.eq("class-upper-complement", "class", &hi, &minus(&minus(&all, &before), &after));
            self.eq(
                "class-boundary-complement",
                "class",
                &bn,
                &minus(&minus(&minus(&all, &before), &lo), &after),
            );
            self.subset("class-rough-inclusion-lower", "class", &lo, &cl);
            self.subset("class-rough-inclusion-upper", "class", &cl, &hi);
            self.eq("class-upper-is-class-plus-boundary", "class", &hi, &union(&cl, &bn));

            let mut from_above = Set::new();
            for k in t..=l {
                from_above = union(&from_above, &uppers[k - 1]);
            }
            let mut from_below = Set::new();
            for k in 1..=t {
                from_below = union(&from_below, &uppers[k - 1]);
            }
            let hi_up = self.upper(t, UP);
            let hi_down = self.upper(t, DOWN);
            self.eq("upward-upper-is-union-of-class-uppers", "class", &hi_up, &from_above);
            self.eq("downward-upper-is-union-of-class-uppers", "class", &hi_down, &from_below);
            let bn_up = self.boundary(t, UP);
            let bn_down = self.boundary(t, DOWN);
            self.eq("class-boundary-is-union-boundaries", "class", &bn, &union(&bn_up, &bn_down));

            let mut others = lo.clone();
            for k in (1..=l).filter(|&k| k != t) {
                others = union(&others, &uppers[k - 1]);
            }
            self.eq("class-lower-and-other-uppers-cover", "class", &others, &all);
            self.eq("class-boundary-within-class", "class", &inter(&bn, &cl), &minus(&cl, &lo));
            self.eq("class-lower-is-class-minus-boundary", "class", &lo, &minus(&cl, &bn));
            let precise = self.trm(t, Model::Classical, Region::Precise);
            self.eq("class-lower-is-precise-region", "class", &lo, &precise);
        }
        self.at(None, None);
        let cover = lowers.iter().chain(&boundaries).fold(Set::new(), |acc, s| union(&acc, s));
        self.eq("class-lowers-and-boundaries-cover", "class", &cover, &all);

        for q in p.proper_subsets() {
            for t in 1..=l {
                self.at(Some(t), None);
                let lq = self.class_lower_in(&q, t);
                let uq = self.class_upper_in(&q, t);
                self.subset("class-lower-monotone-in-criteria", "class", &lq, &lowers[t - 1]);
                self.subset("class-upper-antimonotone-in-criteria", "class", &uppers[t - 1], &uq);
            }
        }
    }

    fn relaxed_trm_family(&mut self, pairs: &[(Level, Level)]) {
        let l = self.l;
        for t in 1..=l {
            self.at(Some(t), Some((Level::ONE, Level::ONE)));
            for region in [Region::Low, Region::Precise, Region::High] {
                let classical = self.trm(t, Model::Classical, region);
                let vc = self.trm(t, Model::Vc { l1: Level::ONE, l2: Level::ONE }, region);
                let vp = self.trm(t, Model::Vp { l1: Level::ONE, l2: Level::ONE }, region);
                self.eq("vc-trm-level-one-is-classical", "specialization", &vc, &classical);
                self.eq("vp-trm-level-one-is-classical", "specialization", &vp, &classical);
            }
            let cl = self.class(t);
            for &(l1, l2) in pairs {
                self.at(Some(t), Some((l1, l2)));
                for model in [Model::Vc { l1, l2 }, Model::Vp { l1, l2 }] {
                    let low = self.trm(t, model, Region::Low);
                    let precise = self.trm(t, model, Region::Precise);
                    let high = self.trm(t, model, Region::High);
                    let (name_precise, name_low, name_high) = match model {
                        Model::Vc { .. } => ("vc-trm-precise", "vc-trm-low-is-boundary", "vc-trm-high-is-boundary"),
                        _ => ("vp-trm-precise", "vp-trm-low-is-lower-complement", "vp-trm-high-is-lower-complement"),
                    };
                    self.eq(name_precise, "relaxed-trm", &precise, &minus(&minus(&cl, &low), &high));
                    let (low_expected, high_expected) = match model {
                        Model::Vc { .. } => {
                            let up = self.vc_boundary(t, UP, l2);
                            let down = self.vc_boundary(t, DOWN, l1);
                            (inter(&up, &cl), inter(&down, &cl))
                        }
                        _ => {
                            let up = self.vp_lower(t, UP, l2);
                            let down = self.vp_lower(t, DOWN, l1);
                            (minus(&cl, &up), minus(&cl, &down))
                        }
                    };
                    self.eq(name_low, "relaxed-trm", &low, &low_expected);
                    self.eq(name_high, "relaxed-trm", &high, &high_expected);
                }
            }
        }
    }

    fn two_grade_family(&mut self) {
        if self.l != 2 {
            return;
        }
        self.at(None, None);
        let p = self.p.clone();
        let c = Model::Classical;
        let pairs = [
            (TwoGradeRegion::SuperiorPrecise, 2, Region::Precise, "two-grade-superior-precise"),
            (TwoGradeRegion::SuperiorLowBoundary, 2, Region::Low, "two-grade-superior-low-boundary"),
            (TwoGradeRegion::InferiorHighBoundary, 1, Region::High, "two-grade-inferior-high-boundary"),
            (TwoGradeRegion::InferiorPrecise, 1, Region::Precise, "two-grade-inferior-precise"),
        ];
        for (region, t, trm_region, name) in pairs {
            let two = self.probe.get(Query::TwoGrade { p: p.clone(), region });
            let general = self.trm(t, c, trm_region);
            self.eq(name, "two-grade", &two, &general);
        }
    }
}

/// All distinct single levels appearing in `pairs`, ascending.
fn single_levels(pairs: &[(Level, Level)]) -> Vec<Level> {
    let mut v: Vec<Level> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    v.sort_by_key(|l| l.as_ratio());
    v.dedup();
    v
}

/// Runs the whole catalogue on `table` over criteria `p`.
pub fn run_identity_suite(table: &DecisionTable, p: &CriteriaSubset, pairs: &[(Level, Level)]) -> SuiteReport {
    let l = table.num_classes();
    let mut suite = Suite {
        probe: Probe::new(table),
        p: p.clone(),
        l,
        all: (0..table.num_objects()).collect(),
        checks: Vec::new(),
        rank: None,
        levels: None,
    };
    suite.dominance();
    suite.union_family();
    suite.relaxed_family(&single_levels(pairs));
    suite.trm_family();
    suite.class_family();
    suite.relaxed_trm_family(pairs);
    suite.two_grade_family();
    SuiteReport {
        fingerprint: table.fingerprint(),
        criteria: p.names(table),
        checks: suite.checks,
        differential: suite.probe.differential,
    }
}
