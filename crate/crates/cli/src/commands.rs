use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use drsa_core::oracle::{self, BatchConfig, BatchReport, SuiteReport};
use drsa_core::{
    all_measures, enumerate_reducts, four_regions, parse_table, trm, union_approximation, vc_lower, vc_upper,
    vp_lower, check_proposition, CriteriaSubset, DecisionTable, Direction, Engine, Level, Model, ObjectSet,
    PropositionReport, ReductKind, TrmRegions,
};
use serde::Serialize;

use crate::args::{Command, Dir, Format, ModelArgs, ModelName, TableArgs};

/// Rendered report plus the exit status it implies.
pub struct Outcome {
    pub body: String,
    pub status: i32,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Self { body, status: 0 }
    }
}

/// Reads a table and lists its objects by name, so that row order in the
/// file never reaches the output.
fn load(path: &Path) -> Result<DecisionTable> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let table = parse_table(&text).with_context(|| format!("invalid table {}", path.display()))?;
    let mut order: Vec<usize> = (0..table.num_objects()).collect();
    order.sort_by(|&a, &b| table.object_name(a).cmp(table.object_name(b)));
    Ok(table.reorder_objects(&order))
}

fn criteria(table: &DecisionTable, set: &str) -> Result<CriteriaSubset> {
    if set.trim() == "all" {
        return Ok(CriteriaSubset::all(table));
    }
    let names: Vec<&str> = set.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    Ok(CriteriaSubset::from_names(table, &names)?)
}

fn model(args: &ModelArgs) -> Result<Model> {
    Ok(match (args.model, args.l1, args.l2) {
        (ModelName::Classical, None, None) => Model::Classical,
        (ModelName::Classical, _, _) => bail!("--l1 and --l2 apply only to --model vc or vp"),
        (ModelName::Vc, Some(l1), Some(l2)) => Model::Vc { l1, l2 },
        (ModelName::Vp, Some(l1), Some(l2)) => Model::Vp { l1, l2 },
        (m, _, _) => bail!("--model {} requires both --l1 and --l2", if m == ModelName::Vc { "vc" } else { "vp" }),
    })
}

fn names(table: &DecisionTable, set: &ObjectSet) -> Vec<String> {
    let mut v: Vec<String> = set.iter().map(|x| table.object_name(x).to_string()).collect();
    v.sort();
    v
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn json_line<T: Serialize>(out: &mut String, value: &T) {
    out.push_str(&serde_json::to_string(value).expect("reports serialize"));
    out.push('\n');
}

pub fn run(command: &Command, format: Format) -> Result<Outcome> {
    match command {
        Command::Table { table } => table_cmd(table, format),
        Command::Cones { table } => cones_cmd(table, format),
        Command::Approx { table, model: m, rank, dir } => approx_cmd(table, m, *rank, *dir, format),
        Command::Measures { table, rank } => measures_cmd(table, *rank, format),
        Command::Trm { table, model: m, rank } => trm_cmd(table, m, *rank, format),
        Command::Regions4 { table, rank } => regions4_cmd(table, *rank, format),
        Command::Reducts { input, kind, budget } => reducts_cmd(input, (*kind).into(), *budget, format),
        Command::CheckProposition { input, budget } => proposition_cmd(input, *budget, format),
        Command::Check { tables, seed, levels } => check_cmd(*tables, *seed, levels.clone(), format),
        Command::OracleDiff { table, levels } => oracle_diff_cmd(table, levels.clone(), format),
    }
}

fn table_cmd(args: &TableArgs, format: Format) -> Result<Outcome> {
    let table = load(&args.input)?;
    Ok(Outcome::ok(match format {
        Format::Json => json(&table),
        Format::Text => table.to_csv(),
    }))
}

#[derive(Serialize)]
struct ConeRow {
    object: String,
    positive: Vec<String>,
    negative: Vec<String>,
}

#[derive(Serialize)]
struct ConesReport {
    criteria: Vec<String>,
    cones: Vec<ConeRow>,
}

fn cones_cmd(args: &TableArgs, format: Format) -> Result<Outcome> {
    let table = load(&args.input)?;
    let p = criteria(&table, &args.set)?;
    let engine = Engine::new(&table);
    let cones = engine.cones(&p);
    let report = ConesReport {
        criteria: p.names(&table),
        cones: (0..table.num_objects())
            .map(|x| ConeRow {
                object: table.object_name(x).to_string(),
                positive: names(&table, cones.positive(x)),
                negative: names(&table, cones.negative(x)),
            })
            .collect(),
    };
    Ok(Outcome::ok(match format {
        Format::Json => json(&report),
        Format::Text => {
            let mut out = format!("criteria: {}\n", report.criteria.join(", "));
            for row in &report.cones {
                let _ = writeln!(out, "{}  D+ {}  D- {}", row.object, braces(&row.positive), braces(&row.negative));
            }
            out
        }
    }))
}

#[derive(Serialize)]
struct ApproxReport {
    model: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    level: Option<Level>,
    criteria: Vec<String>,
    rank: usize,
    direction: &'static str,
    lower: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    upper: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    boundary: Option<Vec<String>>,
}

fn approx_cmd(args: &TableArgs, m: &ModelArgs, rank: usize, dir: Dir, format: Format) -> Result<Outcome> {
    let table = load(&args.input)?;
    let p = criteria(&table, &args.set)?;
    let model = model(m)?;
    let engine = Engine::new(&table);
    let direction = match dir {
        Dir::Up => Direction::Upward,
        Dir::Down => Direction::Downward,
    };
    // upward sets are thresholded by l2, downward ones by l1
    let level = model.levels().map(|(l1, l2)| if dir == Dir::Up { l2 } else { l1 });
    let (lower, upper) = match model {
        Model::Classical => {
            let a = union_approximation(&engine, &p, rank, direction)?;
            (a.lower, Some(a.upper))
        }
        Model::Vc { .. } => {
            let level = level.expect("vc has levels");
            (
                vc_lower(&engine, &p, rank, direction, level)?,
                Some(vc_upper(&engine, &p, rank, direction, level)?),
            )
        }
        Model::Vp { .. } => (vp_lower(&engine, &p, rank, direction, level.expect("vp has levels"))?, None),
    };
    let boundary = upper.as_ref().map(|u| names(&table, &(u - &lower)));
    let report = ApproxReport {
        model: model.name(),
        level,
        criteria: p.names(&table),
        rank,
        direction: if dir == Dir::Up { "up" } else { "down" },
        lower: names(&table, &lower),
        upper: upper.map(|u| names(&table, &u)),
        boundary,
    };
    Ok(Outcome::ok(match format {
        Format::Json => json(&report),
        Format::Text => {
            let mut out = format!("model: {}", report.model);
            if let Some(level) = report.level {
                let _ = write!(out, " (level {level})");
            }
            let _ = writeln!(out, "\ncriteria: {}", report.criteria.join(", "));
            let _ = writeln!(out, "rank: {} {}", report.rank, report.direction);
            let _ = writeln!(out, "lower: {}", braces(&report.lower));
            if let (Some(u), Some(b)) = (&report.upper, &report.boundary) {
                let _ = writeln!(out, "upper: {}", braces(u));
                let _ = writeln!(out, "boundary: {}", braces(b));
            }
            out
        }
    }))
}

#[derive(Serialize)]
struct MeasureRow {
    object: String,
    kind: &'static str,
    ratio: String,
}

fn measures_cmd(args: &TableArgs, rank: usize, format: Format) -> Result<Outcome> {
    let table = load(&args.input)?;
    let p = criteria(&table, &args.set)?;
    let engine = Engine::new(&table);
    let mut measures = all_measures(&engine, &p, rank)?;
    measures.sort_by(|a, b| table.object_name(a.object).cmp(table.object_name(b.object)).then(a.kind.cmp(&b.kind)));
    let rows: Vec<MeasureRow> = measures
        .iter()
        .map(|m| MeasureRow {
            object: table.object_name(m.object).to_string(),
            kind: m.kind.as_str(),
            ratio: drsa_core::format_ratio(&m.ratio),
        })
        .collect();
    Ok(Outcome::ok(match format {
        Format::Json => json(&rows),
        Format::Text => {
            let mut out = format!("rank: {rank}\n");
            for r in &rows {
                let _ = writeln!(out, "{:<8} {:<15} {}", r.object, r.kind, r.ratio);
            }
            out
        }
    }))
}

#[derive(Serialize)]
struct TrmClass {
    rank: usize,
    label: i64,
    members: Vec<String>,
    /// `null` when the region does not exist for this class.
    low_boundary: Option<Vec<String>>,
    precise: Vec<String>,
    high_boundary: Option<Vec<String>>,
    doubly_ambiguous: Vec<String>,
}

#[derive(Serialize)]
struct TrmReport {
    model: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    l1: Option<Level>,
    #[serde(skip_serializing_if = "Option::is_none")]
    l2: Option<Level>,
    criteria: Vec<String>,
    classes: Vec<TrmClass>,
}

fn ranks(table: &DecisionTable, rank: Option<usize>) -> Vec<usize> {
    match rank {
        Some(t) => vec![t],
        None => (1..=table.num_classes()).collect(),
    }
}

fn trm_cmd(args: &TableArgs, m: &ModelArgs, rank: Option<usize>, format: Format) -> Result<Outcome> {
    let table = load(&args.input)?;
    let p = criteria(&table, &args.set)?;
    let model = model(m)?;
    let engine = Engine::new(&table);
    let regions: Vec<TrmRegions> = ranks(&table, rank)
        .into_iter()
        .map(|t| trm(&engine, &p, t, model))
        .collect::<drsa_core::Result<_>>()?;
    let report = TrmReport {
        model: model.name(),
        l1: model.levels().map(|l| l.0),
        l2: model.levels().map(|l| l.1),
        criteria: p.names(&table),
        classes: regions
            .iter()
            .map(|r| TrmClass {
                rank: r.rank,
                label: table.class_label(r.rank),
                members: names(&table, engine.class(r.rank)),
                low_boundary: r.low_boundary.as_ref().map(|s| names(&table, s)),
                precise: names(&table, &r.precise),
                high_boundary: r.high_boundary.as_ref().map(|s| names(&table, s)),
                doubly_ambiguous: names(&table, &r.doubly_ambiguous()),
            })
            .collect(),
    };
    Ok(Outcome::ok(match format {
        Format::Json => json(&report),
        Format::Text => {
            let mut out = format!("model: {}", report.model);
            if let (Some(l1), Some(l2)) = (report.l1, report.l2) {
                let _ = write!(out, " (l1 {l1}, l2 {l2})");
            }
            let _ = writeln!(out, "\ncriteria: {}", report.criteria.join(", "));
            let region = |r: &Option<Vec<String>>| r.as_ref().map_or("absent".to_string(), |v| braces(v));
            for c in &report.classes {
                let _ = writeln!(out, "class {} (label {}): {}", c.rank, c.label, braces(&c.members));
                let _ = writeln!(out, "  low boundary:  {}", region(&c.low_boundary));
                let _ = writeln!(out, "  precise:       {}", braces(&c.precise));
                let _ = writeln!(out, "  high boundary: {}", region(&c.high_boundary));
                if !c.doubly_ambiguous.is_empty() {
                    let _ = writeln!(out, "  doubly ambiguous: {}", braces(&c.doubly_ambiguous));
                }
            }
            out
        }
    }))
}

#[derive(Serialize)]
struct Label {
    object: String,
    region: String,
}

#[derive(Serialize)]
struct Regions4Class {
    rank: usize,
    label: i64,
    labels: Vec<Label>,
}

#[derive(Serialize)]
struct Regions4Report {
    criteria: Vec<String>,
    classes: Vec<Regions4Class>,
}

fn regions4_cmd(args: &TableArgs, rank: Option<usize>, format: Format) -> Result<Outcome> {
    let table = load(&args.input)?;
    let p = criteria(&table, &args.set)?;
    let engine = Engine::new(&table);
    let mut classes = Vec::new();
    for t in ranks(&table, rank) {
        let a = four_regions(&engine, &p, t)?;
        let mut labels: Vec<Label> = a
            .labels
            .iter()
            .map(|&(x, r)| Label {
                object: table.object_name(x).to_string(),
                region: r.to_string(),
            })
            .collect();
        labels.sort_by(|a, b| a.object.cmp(&b.object));
        classes.push(Regions4Class {
            rank: t,
            label: table.class_label(t),
            labels,
        });
    }
    let report = Regions4Report {
        criteria: p.names(&table),
        classes,
    };
    Ok(Outcome::ok(match format {
        Format::Json => json(&report),
        Format::Text => {
            let mut out = format!("criteria: {}\n", report.criteria.join(", "));
            for c in &report.classes {
                let _ = writeln!(out, "class {} (label {})", c.rank, c.label);
                for l in &c.labels {
                    let _ = writeln!(out, "  {:<8} {}", l.object, l.region);
                }
            }
            out
        }
    }))
}

#[derive(Serialize)]
struct ReductsReport {
    kind: &'static str,
    criteria: Vec<String>,
    reducts: Vec<Vec<String>>,
}

fn sorted_names(table: &DecisionTable, p: &CriteriaSubset) -> Vec<String> {
    let mut v = p.names(table);
    v.sort();
    v
}

fn reducts_cmd(input: &Path, kind: ReductKind, budget: usize, format: Format) -> Result<Outcome> {
    let table = load(input)?;
    let engine = Engine::new(&table);
    let mut reducts: Vec<Vec<String>> = enumerate_reducts(&engine, kind, budget)?
        .iter()
        .map(|r| sorted_names(&table, &r.criteria))
        .collect();
    reducts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let report = ReductsReport {
        kind: kind.as_str(),
        criteria: sorted_names(&table, &CriteriaSubset::all(&table)),
        reducts,
    };
    Ok(Outcome::ok(match format {
        Format::Json => json(&report),
        Format::Text => {
            let mut out = format!("{} reducts over {}\n", report.kind, braces(&report.criteria));
            for r in &report.reducts {
                let _ = writeln!(out, "  {}", braces(r));
            }
            out
        }
    }))
}

fn proposition_text(out: &mut String, r: &PropositionReport) {
    let list = |v: &[Vec<String>]| v.iter().map(|s| braces(s)).collect::<Vec<_>>().join(" ");
    let _ = writeln!(out, "table {} ({} criteria, {} subsets)", r.fingerprint, r.criteria, r.subsets_checked);
    let _ = writeln!(out, "  L-reducts:  {}", list(&r.l_reducts));
    let _ = writeln!(out, "  Lβ-reducts: {}", list(&r.lbeta_reducts));
    let _ = writeln!(out, "  Hβ-reducts: {}", list(&r.hbeta_reducts));
    let _ = writeln!(
        out,
        "  preservation: {}{}",
        if r.preservation_holds { "holds" } else { "fails" },
        if r.preservation_violations.is_empty() {
            String::new()
        } else {
            format!(" on {}", list(&r.preservation_violations))
        }
    );
    let _ = writeln!(out, "  minimality:   {}", if r.minimality_holds { "holds" } else { "fails" });
    for c in &r.minimality_counterexamples {
        let _ = writeln!(
            out,
            "    {} is an Lβ- and Hβ-reduct but not an L-reduct (preserves precise regions: {})",
            braces(&c.subset),
            c.preserves_precise
        );
    }
}

fn proposition_cmd(input: &Path, budget: usize, format: Format) -> Result<Outcome> {
    let table = load(input)?;
    let engine = Engine::new(&table);
    let report = check_proposition(&engine, budget)?;
    Ok(Outcome::ok(match format {
        Format::Json => json(&report),
        Format::Text => {
            let mut out = String::new();
            proposition_text(&mut out, &report);
            out
        }
    }))
}

#[derive(Serialize)]
#[serde(tag = "record", rename_all = "kebab-case")]
enum Line<'a, T: Serialize> {
    Identity(&'a T),
    Failure(&'a T),
    Mismatch(&'a T),
    Differential(&'a T),
    Proposition(&'a T),
    Summary(&'a T),
}

#[derive(Serialize)]
struct BatchSummary {
    seed: u64,
    tables: usize,
    levels: Vec<Level>,
    identity_checks: usize,
    provable_failures: usize,
    suspect_failures: usize,
    queries: usize,
    mismatches: usize,
    preservation_holds: bool,
    minimality_counterexample_tables: usize,
    passed: bool,
}

fn batch_summary(r: &BatchReport) -> BatchSummary {
    BatchSummary {
        seed: r.seed,
        tables: r.tables,
        levels: r.levels.clone(),
        identity_checks: r.identity_checks(),
        provable_failures: r.provable_failures.len(),
        suspect_failures: r
            .identities
            .iter()
            .filter(|s| s.expectation == oracle::Expectation::Suspect)
            .map(|s| s.failures)
            .sum(),
        queries: r.queries,
        mismatches: r.mismatches.len(),
        preservation_holds: r.preservation_holds(),
        minimality_counterexample_tables: r.propositions.iter().filter(|p| !p.report.minimality_holds).count(),
        passed: r.passed(),
    }
}

fn check_cmd(tables: usize, seed: u64, levels: Option<Vec<Level>>, format: Format) -> Result<Outcome> {
    let config = BatchConfig {
        tables,
        seed,
        levels: levels.unwrap_or_else(oracle::default_levels),
    };
    let report = oracle::run_batch(&config);
    let summary = batch_summary(&report);
    let mut out = String::new();
    match format {
        Format::Json => {
            for s in &report.identities {
                json_line(&mut out, &Line::Identity(s));
            }
            for f in &report.provable_failures {
                json_line(&mut out, &Line::Failure(f));
            }
            for m in &report.mismatches {
                json_line(&mut out, &Line::Mismatch(m));
            }
            for p in &report.propositions {
                json_line(&mut out, &Line::Proposition(p));
            }
            json_line(&mut out, &Line::Summary(&summary));
        }
        Format::Text => {
            let _ = writeln!(out, "{} tables from seed {}", summary.tables, summary.seed);
            for s in &report.identities {
                let status = match (s.failures, s.expectation) {
                    (0, _) => "pass",
                    (_, oracle::Expectation::Holds) => "FAIL",
                    (_, oracle::Expectation::Suspect) => "suspect",
                };
                let _ = writeln!(out, "{status:<8} {:<15} {:<45} {}/{}", s.family, s.name, s.checks - s.failures, s.checks);
                if let (Some(w), oracle::Expectation::Suspect) = (&s.first_witness, s.expectation) {
                    let _ = writeln!(
                        out,
                        "         witness: table {} rank {} objects {} ({})",
                        w.fingerprint,
                        w.rank.map_or("-".to_string(), |t| t.to_string()),
                        braces(&w.objects),
                        w.detail
                    );
                }
            }
            for f in &report.provable_failures {
                let _ = writeln!(out, "FAIL table {} seed {}: {} at rank {:?}", f.table, f.seed, f.check.name, f.check.rank);
            }
            for p in report.propositions.iter().filter(|p| !p.report.preservation_holds || !p.report.minimality_holds) {
                let _ = write!(out, "table {} seed {}: ", p.table, p.seed);
                proposition_text(&mut out, &p.report);
            }
            let _ = writeln!(
                out,
                "{} identity checks, {} provable failures, {} suspect failures; {} queries, {} mismatches; \
                 preservation {}; minimality counterexamples on {} tables",
                summary.identity_checks,
                summary.provable_failures,
                summary.suspect_failures,
                summary.queries,
                summary.mismatches,
                if summary.preservation_holds { "holds" } else { "fails" },
                summary.minimality_counterexample_tables
            );
        }
    }
    Ok(Outcome {
        body: out,
        status: if summary.passed { 0 } else { 2 },
    })
}

#[derive(Serialize)]
struct SuiteSummary<'a> {
    fingerprint: &'a str,
    criteria: &'a [String],
    identity_checks: usize,
    provable_failures: usize,
    suspect_failures: usize,
    queries: usize,
    mismatches: usize,
    passed: bool,
}

fn oracle_diff_cmd(args: &TableArgs, levels: Option<Vec<Level>>, format: Format) -> Result<Outcome> {
    let table = load(&args.input)?;
    let p = criteria(&table, &args.set)?;
    let levels = levels.unwrap_or_else(oracle::default_levels);
    let report: SuiteReport = oracle::run_identity_suite(&table, &p, &oracle::level_pairs(&levels));
    let provable = report.provable_failures().count();
    let mismatches = report.mismatches().count();
    let summary = SuiteSummary {
        fingerprint: &report.fingerprint,
        criteria: &report.criteria,
        identity_checks: report.checks.len(),
        provable_failures: provable,
        suspect_failures: report.checks.iter().filter(|c| !c.passed).count() - provable,
        queries: report.queries(),
        mismatches,
        passed: provable == 0 && mismatches == 0,
    };
    let mut out = String::new();
    match format {
        Format::Json => {
            for c in &report.checks {
                json_line(&mut out, &Line::Identity(c));
            }
            for d in &report.differential {
                json_line(&mut out, &Line::Differential(d));
            }
            json_line(&mut out, &Line::Summary(&summary));
        }
        Format::Text => {
            for c in report.checks.iter().filter(|c| !c.passed) {
                let w = c.witness.as_ref().expect("failed checks carry a witness");
                let _ = writeln!(
                    out,
                    "{:<8} {} rank {} objects {} ({})",
                    if c.is_provable_failure() { "FAIL" } else { "suspect" },
                    c.name,
                    c.rank.map_or("-".to_string(), |t| t.to_string()),
                    braces(&w.objects),
                    w.detail
                );
            }
            for d in report.mismatches() {
                let _ = writeln!(out, "MISMATCH {}: engine {:?} oracle {:?}", d.query, d.engine, d.oracle);
            }
            let _ = writeln!(
                out,
                "table {}: {} identity checks, {} provable failures, {} suspect failures; {} queries, {} mismatches",
                summary.fingerprint,
                summary.identity_checks,
                summary.provable_failures,
                summary.suspect_failures,
                summary.queries,
                summary.mismatches
            );
        }
    }
    Ok(Outcome {
        body: out,
        status: if summary.passed { 0 } else { 2 },
    })
}
