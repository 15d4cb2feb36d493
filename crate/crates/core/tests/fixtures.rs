//! Worked values on the three small fixtures. Every set is evaluated by both
//! the engine and the naive oracle; the two must agree before the value is
//! compared with the expected literal.

use std::collections::BTreeMap;

use drsa_core::oracle::naive;
use drsa_core::query::{self, Query, Region, TwoGradeRegion};
use drsa_core::trm::FourRegion;
use drsa_core::{
    dominates, fixtures, is_consistent, is_preserving, measure, parse_table, region_profile, CriteriaSubset,
    DecisionTable, Direction, Engine, Error, Level, MeasureKind, Model, ReductKind, DEFAULT_BUDGET,
};
use num_rational::Ratio;

const UP: Direction = Direction::Upward;
const DOWN: Direction = Direction::Downward;

struct Fx {
    table: DecisionTable,
}

impl Fx {
    fn new(table: DecisionTable) -> Self {
        Self { table }
    }

    fn p(&self, names: &[&str]) -> CriteriaSubset {
        CriteriaSubset::from_names(&self.table, names).unwrap()
    }

    fn all(&self) -> CriteriaSubset {
        CriteriaSubset::all(&self.table)
    }

    fn obj(&self, name: &str) -> usize {
        self.table.object_index(name).unwrap()
    }

    /// Engine and oracle answers, required to agree; returned as sorted names.
    fn eval(&self, q: Query) -> Vec<String> {
        let engine = Engine::new(&self.table);
        let fast: Vec<usize> = query::evaluate(&engine, &q).unwrap().iter().collect();
        let slow = naive::evaluate(&self.table, &q).unwrap();
        assert_eq!(fast, slow, "engine and oracle disagree on {q:?}");
        let mut names: Vec<String> = fast.iter().map(|&x| self.table.object_name(x).to_string()).collect();
        names.sort();
        names
    }

    fn trm(&self, p: &CriteriaSubset, rank: usize, model: Model, region: Region) -> Vec<String> {
        self.eval(Query::Trm { p: p.clone(), rank, model, region })
    }

    fn ratio(&self, p: &CriteriaSubset, x: &str, t: usize, kind: MeasureKind) -> Ratio<u64> {
        let engine = Engine::new(&self.table);
        let fast = measure(&engine, p, self.obj(x), t, kind).unwrap().ratio;
        let slow = naive::measure(&self.table, p, self.obj(x), t, kind).unwrap();
        assert_eq!((*fast.numer() as i64, *fast.denom() as i64), (*slow.numer(), *slow.denom()));
        fast
    }
}

fn lv(n: u64, d: u64) -> Level {
    Level::new(n, d).unwrap()
}

fn s(items: &[&str]) -> Vec<String> {
    items.iter().map(|x| x.to_string()).collect()
}

/// Groups rows by the label in the last column, ignoring everything else.
fn group_by_label(csv: &str) -> Vec<Vec<String>> {
    let mut groups: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    for line in csv.lines().skip(1).filter(|l| !l.trim().is_empty()) {
        let cells: Vec<&str> = line.split(',').collect();
        let label: i64 = cells.last().unwrap().trim().parse().unwrap();
        groups.entry(label).or_default().push(cells[0].to_string());
    }
    groups.into_values().map(|mut v| { v.sort(); v }).collect()
}

fn partition(table: &DecisionTable) -> Vec<Vec<String>> {
    table
        .class_partition()
        .extents()
        .iter()
        .map(|c| {
            let mut v: Vec<String> = c.iter().map(|x| table.object_name(x).to_string()).collect();
            v.sort();
            v
        })
        .collect()
}

#[test]
fn partitions_match_grouping_by_label() {
    for (csv, expected) in [
        (fixtures::T1_CSV, vec![s(&["a"]), s(&["b", "c"]), s(&["d"])]),
        (fixtures::T2_CSV, vec![s(&["a"]), s(&["c"]), s(&["b", "d"])]),
        (fixtures::T3_CSV, vec![s(&["a", "b"]), s(&["c"])]),
    ] {
        let table = parse_table(csv).unwrap();
        assert_eq!(group_by_label(csv), expected);
        assert_eq!(partition(&table), expected);
    }
    assert!(matches!(
        parse_table("object,q:gain,d:decision\na,1,5\nb,2,5\n"),
        Err(Error::TooFewClasses)
    ));
    assert!(parse_table("object,q:gain,d:decision\na,1,1\n").is_err());
}

#[test]
fn dominance_and_cones() {
    let t1 = Fx::new(fixtures::t1());
    assert!(dominates(&t1.table, &t1.all(), t1.obj("d"), t1.obj("a")).unwrap());

    let t2 = Fx::new(fixtures::t2());
    let q = t2.p(&["q"]);
    let b = t2.obj("b");
    assert_eq!(t2.eval(Query::PositiveCone { p: q.clone(), object: b }), s(&["b", "c", "d"]));
    assert_eq!(t2.eval(Query::NegativeCone { p: q.clone(), object: b }), s(&["a", "b"]));
    let expected = [
        ("a", s(&["a", "b", "c", "d"]), s(&["a"])),
        ("b", s(&["b", "c", "d"]), s(&["a", "b"])),
        ("c", s(&["c", "d"]), s(&["a", "b", "c"])),
        ("d", s(&["d"]), s(&["a", "b", "c", "d"])),
    ];
    for (x, pos, neg) in expected {
        let object = t2.obj(x);
        assert_eq!(t2.eval(Query::PositiveCone { p: q.clone(), object }), pos);
        assert_eq!(t2.eval(Query::NegativeCone { p: q.clone(), object }), neg);
    }

    let t3 = Fx::new(fixtures::t3());
    let q2 = t3.p(&["q2"]);
    assert!(dominates(&t3.table, &q2, t3.obj("a"), t3.obj("c")).unwrap());
    assert_eq!(t3.eval(Query::PositiveCone { p: q2, object: t3.obj("a") }), s(&["a", "b", "c"]));
    let (q1, both) = (t3.p(&["q1"]), t3.all());
    for x in 0..3 {
        assert_eq!(
            t3.eval(Query::PositiveCone { p: q1.clone(), object: x }),
            t3.eval(Query::PositiveCone { p: both.clone(), object: x })
        );
        assert_eq!(
            t3.eval(Query::NegativeCone { p: q1.clone(), object: x }),
            t3.eval(Query::NegativeCone { p: both.clone(), object: x })
        );
    }
}

#[test]
fn antichain_cones_are_singletons() {
    let table = parse_table("object,u:gain,v:gain,d:decision\na,1,3,1\nb,2,2,2\nc,3,1,1\n").unwrap();
    let fx = Fx::new(table);
    for x in 0..3 {
        let name = fx.table.object_name(x).to_string();
        assert_eq!(fx.eval(Query::PositiveCone { p: fx.all(), object: x }), vec![name.clone()]);
        assert_eq!(fx.eval(Query::NegativeCone { p: fx.all(), object: x }), vec![name]);
    }
}

#[test]
fn unions_and_sentinels() {
    let t2 = Fx::new(fixtures::t2());
    assert_eq!(t2.eval(Query::Union { rank: 2, direction: UP }), s(&["b", "c", "d"]));
    assert_eq!(t2.eval(Query::Union { rank: 2, direction: DOWN }), s(&["a", "c"]));
    assert_eq!(t2.eval(Query::Union { rank: 1, direction: UP }), s(&["a", "b", "c", "d"]));
    assert_eq!(t2.eval(Query::Union { rank: 3, direction: DOWN }), s(&["a", "b", "c", "d"]));
    assert!(t2.eval(Query::Union { rank: 0, direction: DOWN }).is_empty());
    assert!(t2.eval(Query::Union { rank: 4, direction: UP }).is_empty());
}

#[test]
fn classical_union_approximations() {
    let t2 = Fx::new(fixtures::t2());
    let q = t2.p(&["q"]);
    let triple = |rank, direction| {
        (
            t2.eval(Query::Lower { p: q.clone(), rank, direction }),
            t2.eval(Query::Upper { p: q.clone(), rank, direction }),
            t2.eval(Query::Boundary { p: q.clone(), rank, direction }),
        )
    };
    assert_eq!(triple(3, UP), (s(&["d"]), s(&["b", "c", "d"]), s(&["b", "c"])));
    assert_eq!(triple(2, DOWN), (s(&["a"]), s(&["a", "b", "c"]), s(&["b", "c"])));
    let all = s(&["a", "b", "c", "d"]);
    assert_eq!(triple(1, UP), (all.clone(), all.clone(), vec![]));

    let engine = Engine::new(&t2.table);
    assert!(!is_consistent(&engine, &q, t2.obj("b")).unwrap());
    assert!(is_consistent(&engine, &q, t2.obj("d")).unwrap());

    let t1 = Fx::new(fixtures::t1());
    let q = t1.all();
    for rank in 1..=3 {
        for direction in [UP, DOWN] {
            let union = t1.eval(Query::Union { rank, direction });
            assert_eq!(t1.eval(Query::Lower { p: q.clone(), rank, direction }), union);
            assert!(t1.eval(Query::Boundary { p: q.clone(), rank, direction }).is_empty());
        }
    }
    assert_eq!(t1.eval(Query::Consistent { p: q }), s(&["a", "b", "c", "d"]));
}

#[test]
fn all_objects_inconsistent_when_values_tie() {
    let table = parse_table("object,q:gain,d:decision\na,2,1\nb,2,2\nc,2,3\n").unwrap();
    let fx = Fx::new(table);
    assert!(fx.eval(Query::Consistent { p: fx.all() }).is_empty());
}

#[test]
fn relaxed_approximations() {
    let t2 = Fx::new(fixtures::t2());
    let q = t2.p(&["q"]);
    let vc = |rank, direction, level| t2.eval(Query::VcLower { p: q.clone(), rank, direction, level });
    let vp = |rank, direction, level| t2.eval(Query::VpLower { p: q.clone(), rank, direction, level });
    assert_eq!(vc(3, UP, lv(2, 3)), s(&["b", "d"]));
    assert_eq!(vc(3, UP, Level::ONE), s(&["d"]));
    assert_eq!(vp(3, UP, lv(1, 2)), s(&["b", "c", "d"]));
    assert_eq!(vp(3, UP, Level::ONE), s(&["d"]));

    assert_eq!(t2.eval(Query::VcUpper { p: q.clone(), rank: 3, direction: UP, level: Level::ONE }), s(&["b", "c", "d"]));
    assert_eq!(t2.eval(Query::VcBoundary { p: q.clone(), rank: 3, direction: UP, level: Level::ONE }), s(&["b", "c"]));
    let level = lv(2, 3);
    let complement: Vec<String> = s(&["a", "b", "c", "d"])
        .into_iter()
        .filter(|x| !vc(2, DOWN, level).contains(x))
        .collect();
    let upper = t2.eval(Query::VcUpper { p: q.clone(), rank: 3, direction: UP, level });
    assert_eq!(upper, complement);
    let boundary: Vec<String> = upper.iter().filter(|x| !["b", "d"].contains(&x.as_str())).cloned().collect();
    assert_eq!(t2.eval(Query::VcBoundary { p: q.clone(), rank: 3, direction: UP, level }), boundary);
    assert_eq!(t2.eval(Query::VcUpper { p: q, rank: 1, direction: UP, level }), s(&["a", "b", "c", "d"]));

    let t1 = Fx::new(fixtures::t1());
    for rank in 1..=3 {
        for direction in [UP, DOWN] {
            let union = t1.eval(Query::Union { rank, direction });
            for level in [lv(1, 4), lv(1, 2), Level::ONE] {
                assert_eq!(t1.eval(Query::VcLower { p: t1.all(), rank, direction, level }), union);
            }
            assert_eq!(t1.eval(Query::VpLower { p: t1.all(), rank, direction, level: Level::ONE }), union);
        }
    }
}

#[test]
fn measures() {
    let t2 = Fx::new(fixtures::t2());
    let q = t2.p(&["q"]);
    assert_eq!(t2.ratio(&q, "b", 3, MeasureKind::AlphaUpward), Ratio::new(2, 3));
    assert_eq!(t2.ratio(&q, "a", 2, MeasureKind::AlphaUpward), Ratio::new(3, 4));
    assert_eq!(t2.ratio(&q, "b", 3, MeasureKind::Beta2), Ratio::new(1, 2));
    assert_eq!(t2.ratio(&q, "c", 3, MeasureKind::Beta2), Ratio::new(1, 2));
    // d's positive cone stays inside Cl_3^≥
    assert_eq!(t2.ratio(&q, "d", 3, MeasureKind::AlphaUpward), Ratio::new(1, 1));
    assert_eq!(t2.ratio(&q, "d", 3, MeasureKind::Beta2), Ratio::new(1, 1));
}

#[test]
fn three_region_model() {
    let t2 = Fx::new(fixtures::t2());
    let q = t2.p(&["q"]);
    let c = Model::Classical;
    assert_eq!(t2.trm(&q, 3, c, Region::Low), s(&["b"]));
    assert_eq!(t2.trm(&q, 3, c, Region::Precise), s(&["d"]));
    assert!(t2.trm(&q, 2, c, Region::Low).is_empty());
    assert!(t2.trm(&q, 2, c, Region::Precise).is_empty());
    assert_eq!(t2.trm(&q, 2, c, Region::High), s(&["c"]));
    let engine = Engine::new(&t2.table);
    assert_eq!(drsa_core::trm_classical(&engine, &q, 3).unwrap().high_boundary, None);

    for region in [Region::Low, Region::Precise, Region::High] {
        let classical = t2.trm(&q, 3, c, region);
        assert_eq!(t2.trm(&q, 3, Model::Vc { l1: Level::ONE, l2: Level::ONE }, region), classical);
        assert_eq!(t2.trm(&q, 3, Model::Vp { l1: Level::ONE, l2: Level::ONE }, region), classical);
    }
    let vc = Model::Vc { l1: Level::ONE, l2: lv(2, 3) };
    assert!(t2.trm(&q, 3, vc, Region::Low).is_empty());
    assert_eq!(t2.trm(&q, 3, vc, Region::Precise), s(&["b", "d"]));
    let vp = Model::Vp { l1: Level::ONE, l2: lv(1, 2) };
    assert!(t2.trm(&q, 3, vp, Region::Low).is_empty());
    assert_eq!(t2.trm(&q, 3, vp, Region::Precise), s(&["b", "d"]));
    let vp = Model::Vp { l1: Level::ONE, l2: lv(3, 4) };
    assert_eq!(t2.trm(&q, 3, vp, Region::Low), s(&["b"]));
    assert_eq!(t2.trm(&q, 3, vp, Region::Precise), s(&["d"]));

    let t1 = Fx::new(fixtures::t1());
    for rank in 1..=3 {
        let class = t1.eval(Query::ClassLower { p: t1.all(), rank });
        for model in [c, Model::Vc { l1: lv(1, 4), l2: lv(2, 3) }, Model::Vp { l1: lv(1, 2), l2: Level::ONE }] {
            assert_eq!(t1.trm(&t1.all(), rank, model, Region::Precise), class);
            assert!(t1.trm(&t1.all(), rank, model, Region::Low).is_empty());
            assert!(t1.trm(&t1.all(), rank, model, Region::High).is_empty());
        }
    }
}

#[test]
fn four_regions() {
    let t2 = Fx::new(fixtures::t2());
    let q = t2.p(&["q"]);
    let members = |rank, label| t2.eval(Query::FourRegion { p: q.clone(), rank, label });
    assert_eq!(members(3, FourRegion::I), s(&["b"]));
    assert_eq!(members(3, FourRegion::II), s(&["d"]));
    assert_eq!(members(2, FourRegion::III), s(&["c"]));
    assert!(members(2, FourRegion::IV).is_empty());

    let t1 = Fx::new(fixtures::t1());
    for rank in 1..=3 {
        assert_eq!(
            t1.eval(Query::FourRegion { p: t1.all(), rank, label: FourRegion::II }),
            t1.eval(Query::Union { rank, direction: UP })
                .into_iter()
                .filter(|x| t1.eval(Query::Union { rank, direction: DOWN }).contains(x))
                .collect::<Vec<_>>()
        );
    }
}

#[test]
fn two_grade_regions() {
    let t3 = Fx::new(fixtures::t3());
    let get = |p: &CriteriaSubset, region| t3.eval(Query::TwoGrade { p: p.clone(), region });
    let q1 = t3.p(&["q1"]);
    assert_eq!(get(&q1, TwoGradeRegion::SuperiorPrecise), s(&["c"]));
    assert!(get(&q1, TwoGradeRegion::SuperiorLowBoundary).is_empty());
    assert_eq!(get(&q1, TwoGradeRegion::InferiorPrecise), s(&["a", "b"]));
    assert!(get(&q1, TwoGradeRegion::InferiorHighBoundary).is_empty());
    let q2 = t3.p(&["q2"]);
    assert!(get(&q2, TwoGradeRegion::SuperiorPrecise).is_empty());
    assert_eq!(get(&q2, TwoGradeRegion::SuperiorLowBoundary), s(&["c"]));
    assert_eq!(get(&q2, TwoGradeRegion::InferiorHighBoundary), s(&["a", "b"]));
    assert!(get(&q2, TwoGradeRegion::InferiorPrecise).is_empty());
}

#[test]
fn class_approximations() {
    let t2 = Fx::new(fixtures::t2());
    let q = t2.p(&["q"]);
    let triple = |rank| {
        (
            t2.eval(Query::ClassLower { p: q.clone(), rank }),
            t2.eval(Query::ClassUpper { p: q.clone(), rank }),
            t2.eval(Query::ClassBoundary { p: q.clone(), rank }),
        )
    };
    assert_eq!(triple(3), (s(&["d"]), s(&["b", "c", "d"]), s(&["b", "c"])));
    assert_eq!(triple(2), (vec![], s(&["b", "c"]), s(&["b", "c"])));
    assert_eq!(t2.eval(Query::Upper { p: q.clone(), rank: 3, direction: UP }), s(&["b", "c", "d"]));
    assert_eq!(t2.eval(Query::Upper { p: q, rank: 3, direction: DOWN }), s(&["a", "b", "c", "d"]));

    let t1 = Fx::new(fixtures::t1());
    for rank in 1..=3 {
        let lower = t1.eval(Query::ClassLower { p: t1.all(), rank });
        assert_eq!(lower, t1.eval(Query::ClassUpper { p: t1.all(), rank }));
        assert!(t1.eval(Query::ClassBoundary { p: t1.all(), rank }).is_empty());
    }
}

#[test]
fn reducts() {
    let t3 = fixtures::t3();
    let engine = Engine::new(&t3);
    let q1 = CriteriaSubset::from_names(&t3, &["q1"]).unwrap();
    let q2 = CriteriaSubset::from_names(&t3, &["q2"]).unwrap();
    let names = |sets: &[drsa_core::ObjectSet]| -> Vec<Vec<String>> {
        sets.iter().map(|s| s.iter().map(|x| t3.object_name(x).to_string()).collect()).collect()
    };
    assert_eq!(names(&region_profile(&engine, &q1, ReductKind::L).sets), vec![s(&["a", "b"]), s(&["c"])]);
    assert_eq!(names(&region_profile(&engine, &q2, ReductKind::L).sets), vec![s(&[]), s(&[])]);
    assert!(is_preserving(&engine, &q1, ReductKind::L));
    assert!(!is_preserving(&engine, &q2, ReductKind::L));
    for kind in ReductKind::ALL {
        let fast: Vec<CriteriaSubset> = drsa_core::enumerate_reducts(&engine, kind, DEFAULT_BUDGET)
            .unwrap()
            .into_iter()
            .map(|r| r.criteria)
            .collect();
        assert_eq!(fast, naive::reducts(&t3, kind));
        assert_eq!(fast, vec![q1.clone()]);
        assert!(is_preserving(&engine, &CriteriaSubset::all(&t3), kind));
    }
    let report = drsa_core::check_proposition(&engine, DEFAULT_BUDGET).unwrap();
    assert!(report.preservation_holds && report.minimality_holds);

    let t1 = fixtures::t1();
    let e1 = Engine::new(&t1);
    let profile = region_profile(&e1, &CriteriaSubset::all(&t1), ReductKind::LBeta);
    assert_eq!(profile.sets.len(), 2);
    assert!(profile.sets.iter().all(|s| s.is_empty()));
    for kind in ReductKind::ALL {
        assert_eq!(naive::reducts(&t1, kind), vec![CriteriaSubset::all(&t1)]);
    }
}
