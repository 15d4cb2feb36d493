//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use drsa_core::oracle::{self, naive, BatchConfig, BatchReport, Expectation};
use drsa_core::query::{self, Query, Region};
use drsa_core::random::{random_table_with, rng};
use drsa_core::{
    enumerate_reducts, fixtures, measure, union_approximation, CriteriaSubset, DecisionTable, Direction, Engine,
    Level, MeasureKind, Model, ReductKind, DEFAULT_BUDGET,
};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

/// Engine answer as sorted names, or `None` when the oracle disagrees.
fn agreed(table: &DecisionTable, q: Query) -> Option<Vec<String>> {
    let engine = Engine::new(table);
    let fast: Vec<usize> = query::evaluate(&engine, &q).ok()?.iter().collect();
    let slow = naive::evaluate(table, &q).ok()?;
    if fast != slow {
        return None;
    }
    let mut v: Vec<String> = fast.into_iter().map(|x| table.object_name(x).to_string()).collect();
    v.sort();
    Some(v)
}

/// Engine measure as "p/q", or `None` when the oracle disagrees.
fn agreed_ratio(table: &DecisionTable, x: &str, t: usize, kind: MeasureKind) -> Option<String> {
    let p = CriteriaSubset::all(table);
    let x = table.object_index(x).ok()?;
    let fast = measure(&Engine::new(table), &p, x, t, kind).ok()?.ratio;
    let slow = naive::measure(table, &p, x, t, kind).ok()?;
    ((*fast.numer() as i64, *fast.denom() as i64) == (*slow.numer(), *slow.denom())).then(|| drsa_core::format_ratio(&fast))
}

fn names(items: &[&str]) -> Option<Vec<String>> {
    Some(items.iter().map(|s| s.to_string()).collect())
}

fn fixture_suite() -> Outcome {
    let pairs = oracle::level_pairs(&oracle::default_levels());
    let mut queries = 0;
    let mut bad = Vec::new();
    for (label, table) in [("T1", fixtures::t1()), ("T2", fixtures::t2()), ("T3", fixtures::t3())] {
        let n = table.num_criteria();
        for mask in 1..(1u64 << n) {
            let p = CriteriaSubset::from_mask(&table, mask).unwrap();
            let report = oracle::run_identity_suite(&table, &p, &pairs);
            queries += report.queries();
            if report.mismatches().count() > 0 || report.provable_failures().count() > 0 {
                bad.push(format!("{label} over {:?}", p.names(&table)));
            }
        }
    }

    let t2 = fixtures::t2();
    let q = CriteriaSubset::all(&t2);
    let up = Direction::Upward;
    let half = Level::new(1, 2).unwrap();
    let anchors: Vec<(&str, bool)> = vec![
        (
            "lower(Cl3>=)={d}",
            agreed(&t2, Query::Lower { p: q.clone(), rank: 3, direction: up }) == names(&["d"]),
        ),
        (
            "boundary(Cl3>=)={b,c}",
            agreed(&t2, Query::Boundary { p: q.clone(), rank: 3, direction: up }) == names(&["b", "c"]),
        ),
        (
            "trm low={b}",
            agreed(&t2, Query::Trm { p: q.clone(), rank: 3, model: Model::Classical, region: Region::Low })
                == names(&["b"]),
        ),
        (
            "trm precise={d}",
            agreed(&t2, Query::Trm { p: q.clone(), rank: 3, model: Model::Classical, region: Region::Precise })
                == names(&["d"]),
        ),
        ("alpha(b)=2/3", agreed_ratio(&t2, "b", 3, MeasureKind::AlphaUpward) == Some("2/3".to_string())),
        ("beta2(b)=1/2", agreed_ratio(&t2, "b", 3, MeasureKind::Beta2) == Some("1/2".to_string())),
        (
            "vp lower(1/2)={b,c,d}",
            agreed(&t2, Query::VpLower { p: q.clone(), rank: 3, direction: up, level: half }) == names(&["b", "c", "d"]),
        ),
        ("L-reducts(T3)={{q1}}", {
            let t3 = fixtures::t3();
            let fast: Vec<Vec<String>> = enumerate_reducts(&Engine::new(&t3), ReductKind::L, DEFAULT_BUDGET)
                .map(|rs| rs.iter().map(|r| r.criteria.names(&t3)).collect())
                .unwrap_or_default();
            let slow: Vec<Vec<String>> = naive::reducts(&t3, ReductKind::L).iter().map(|p| p.names(&t3)).collect();
            fast == vec![vec!["q1".to_string()]] && fast == slow
        }),
    ];
    let failed: Vec<&str> = anchors.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    bad.extend(failed.iter().map(|s| s.to_string()));
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} anchors exact; {queries} oracle-checked queries over every criteria subset of T1, T2, T3", anchors.len())
        } else {
            format!("failing: {}", bad.join("; "))
        },
    )
}

fn identity_suite(report: &BatchReport, elapsed: Duration) -> Outcome {
    let provable: Vec<_> = report.identities.iter().filter(|s| s.expectation == Expectation::Holds).collect();
    let unexercised: Vec<&str> = provable.iter().filter(|s| s.checks == 0).map(|s| s.name).collect();
    let failing: Vec<&str> = provable.iter().filter(|s| s.failures > 0).map(|s| s.name).collect();
    let fast = elapsed < Duration::from_secs(60);
    outcome(
        report.tables >= 500 && failing.is_empty() && unexercised.is_empty() && fast,
        format!(
            "{} tables, {} provable identities, {} checks, {} failing {:?}, {:.1}s",
            report.tables,
            provable.len(),
            provable.iter().map(|s| s.checks).sum::<usize>(),
            failing.len(),
            failing,
            elapsed.as_secs_f64()
        ),
    )
}

fn specialization(report: &BatchReport) -> Outcome {
    let expected = [
        "vc-lower-level-one-is-classical",
        "vp-lower-level-one-is-classical",
        "vc-upper-level-one-is-classical",
        "vc-trm-level-one-is-classical",
        "vp-trm-level-one-is-classical",
    ];
    let mut detail = Vec::new();
    let mut ok = true;
    for name in expected {
        match report.summary(name) {
            Some(s) if s.checks >= report.tables && s.failures == 0 => detail.push(format!("{name} {}/{}", s.checks, s.checks)),
            Some(s) => {
                ok = false;
                detail.push(format!("{name} {} failures of {}", s.failures, s.checks));
            }
            None => {
                ok = false;
                detail.push(format!("{name} missing"));
            }
        }
    }
    outcome(ok, detail.join(", "))
}

fn differential(report: &BatchReport) -> Outcome {
    outcome(
        report.queries > 0 && report.mismatches.is_empty(),
        format!("{} queries, {} mismatches", report.queries, report.mismatches.len()),
    )
}

fn proposition(report: &BatchReport, rerun: &BatchReport) -> Outcome {
    let max_criteria = report.propositions.iter().map(|p| p.report.criteria).max().unwrap_or(0);
    let violations = report.propositions.iter().filter(|p| !p.report.preservation_holds).count();
    let counterexamples: Vec<String> = report
        .propositions
        .iter()
        .filter(|p| !p.report.minimality_holds)
        .map(|p| format!("table {} (seed {})", p.table, p.seed))
        .collect();
    let reproducible = serde_json::to_string(&report.propositions).unwrap() == serde_json::to_string(&rerun.propositions).unwrap();
    outcome(
        violations == 0 && report.propositions.len() == report.tables && max_criteria <= 4 && reproducible,
        format!(
            "part (a) holds on {}/{} tables; part (b) counterexamples on {} tables [{}]; rerun from seed identical: {}",
            report.tables - violations,
            report.tables,
            counterexamples.len(),
            counterexamples.join(", "),
            reproducible
        ),
    )
}

fn typo_witnesses(report: &BatchReport) -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for name in ["printed-complementarity", "printed-boundary-pairing"] {
        match report.summary(name) {
            Some(s) if s.expectation == Expectation::Suspect && s.failures > 0 && s.first_witness.is_some() => {
                let w = s.first_witness.as_ref().unwrap();
                detail.push(format!(
                    "{name}: {} witnesses, first table {} rank {:?} objects {:?}",
                    s.failures, w.fingerprint, w.rank, w.objects
                ));
            }
            _ => {
                ok = false;
                detail.push(format!("{name}: no witness"));
            }
        }
    }
    for name in [
        "complementarity-lower-upward",
        "complementarity-lower-downward",
        "complementarity-upper-upward",
        "complementarity-upper-downward",
        "boundary-pairing",
        "boundary-pairing-intersection",
    ] {
        match report.summary(name) {
            Some(s) if s.checks > 0 && s.failures == 0 => {}
            _ => {
                ok = false;
                detail.push(format!("corrected form {name} not clean"));
            }
        }
    }
    if ok {
        detail.push("corrected forms pass".into());
    }
    outcome(ok, detail.join("; "))
}

fn performance() -> Outcome {
    let table = random_table_with(&mut rng(2024), 2000, 10, 5);
    let start = Instant::now();
    let engine = Engine::new(&table);
    let p = CriteriaSubset::all(&table);
    let cones = engine.cones(&p);
    let mut total = 0;
    for t in 1..=table.num_classes() {
        for dir in [Direction::Upward, Direction::Downward] {
            let a = union_approximation(&engine, &p, t, dir).unwrap();
            total += a.lower.len() + a.upper.len();
        }
    }
    let elapsed = start.elapsed();
    outcome(
        elapsed < Duration::from_secs(5) && cones.len() == 2000 && total > 0,
        format!(
            "|U|=2000, |C|=10, {} classes: cones + all approximations in {:.3}s",
            table.num_classes(),
            elapsed.as_secs_f64()
        ),
    )
}

fn run_cli(args: &[&str], threads: &str) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_drsa"))
        .args(args)
        .env_remove("DRSA_FORMAT")
        .env("RAYON_NUM_THREADS", threads)
        .output()
        .expect("drsa runs");
    (out.status.code(), out.stdout)
}

fn determinism(report: &BatchReport, single_threaded: &BatchReport) -> Outcome {
    let dir = tempfile::TempDir::new().unwrap();
    let write = |name: &str, body: &str| {
        let path = dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        path
    };
    let original = write("t2.csv", fixtures::T2_CSV);
    let shuffled = write("t2-shuffled.csv", "object,d:decision,q:gain\nd,3,4\nb,3,2\na,1,1\nc,2,3\n");
    let random = drsa_core::random::random_table(&mut rng(99));
    let mut order: Vec<usize> = (0..random.num_objects()).collect();
    order.reverse();
    let random_a = write("r.csv", &random.to_csv());
    let random_b = write("r-reversed.csv", &random.reorder_objects(&order).to_csv());

    let commands: [&[&str]; 9] = [
        &["table"],
        &["cones"],
        &["approx", "--rank", "2", "--dir", "up"],
        &["approx", "--model", "vc", "--l1", "1/2", "--l2", "0.75", "--rank", "2", "--dir", "down"],
        &["measures", "--rank", "2"],
        &["trm", "--model", "vp", "--l1", "2/3", "--l2", "1/2"],
        &["regions4"],
        &["check-proposition"],
        &["oracle-diff"],
    ];
    let mut failures = Vec::new();
    let mut compared = 0;
    for (a, b) in [(&original, &shuffled), (&random_a, &random_b)] {
        for cmd in commands {
            for format in ["json", "text"] {
                let with = |path: &Path, threads: &str| {
                    let mut args = cmd.to_vec();
                    args.extend(["--input", path.to_str().unwrap(), "--format", format]);
                    run_cli(&args, threads)
                };
                let first = with(a, "1");
                let again = with(a, "4");
                let permuted = with(b, "2");
                compared += 1;
                if first.0 != Some(0) || first != again || first != permuted {
                    failures.push(format!("{} {format}", cmd[0]));
                }
            }
        }
    }
    let check = |threads| run_cli(&["check", "--tables", "60", "--seed", "5"], threads);
    let (one, many) = (check("1"), check("8"));
    if one.0 != Some(0) || one != many {
        failures.push("check across thread counts".into());
    }
    let in_process = serde_json::to_string(report).unwrap() == serde_json::to_string(single_threaded).unwrap();
    if !in_process {
        failures.push("batch report across thread pools".into());
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            format!("{compared} command/format pairs identical across runs, row permutations and thread counts; batch identical on 1 thread")
        } else {
            format!("differs: {}", failures.join(", "))
        },
    )
}

fn main() {
    let config = BatchConfig::default();
    let start = Instant::now();
    let report = oracle::run_batch(&config);
    let elapsed = start.elapsed();
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| oracle::run_batch(&config));

    let results = [
        ("fixture suite", fixture_suite()),
        ("identity suite", identity_suite(&report, elapsed)),
        ("specialization", specialization(&report)),
        ("differential correctness", differential(&report)),
        ("proposition report", proposition(&report, &single)),
        ("known-typo witnesses", typo_witnesses(&report)),
        ("performance smoke", performance()),
        ("determinism", determinism(&report, &single)),
    ];
    let mut all = true;
    for (i, (title, o)) in results.iter().enumerate() {
        all &= o.passed;
        println!(
            "criterion {} [PRIMARY] {title}: {} - {}",
            i + 1,
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
