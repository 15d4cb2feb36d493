//! Decision tables: objects scored on condition criteria plus one ordered
//! decision column.
//!
//! CSV layout:
//!
//! ```text
//! # comment lines start with '#'
//! object,price:cost,quality:gain,rating:decision
//! a,10,3,1
//! b,8.5,4,2
//! ```
//!
//! The first column holds object identifiers; its header cell is free text.
//! Every other header cell is `name:gain`, `name:cost` or `name:decision`,
//! with exactly one decision column. Decision labels are arbitrary integers and
//! are relabeled to contiguous ranks `1..=l` in increasing order.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bitset::ObjectSet;
use crate::error::{Error, Result};
use crate::rational::parse_decimal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Preference {
    /// Larger is better.
    Gain,
    /// Smaller is better.
    Cost,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Criterion {
    pub name: String,
    pub preference: Preference,
}

impl Criterion {
    pub fn gain(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            preference: Preference::Gain,
        }
    }

    pub fn cost(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            preference: Preference::Cost,
        }
    }
}

/// An immutable, validated decision table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionTable {
    id_header: String,
    objects: Vec<String>,
    criteria: Vec<Criterion>,
    decision: String,
    /// Row-major `m × n` exact values as written.
    values: Vec<BigRational>,
    /// Row-major `m × n` gain-oriented ordinal codes: `code(x) >= code(y)` iff
    /// `x` is at least as good as `y` on that criterion.
    codes: Vec<u32>,
    ranks: Vec<usize>,
    labels: Vec<i64>,
}

impl DecisionTable {
    /// Builds a table from rows of exact values and raw integer class labels.
    pub fn new(
        id_header: impl Into<String>,
        objects: Vec<String>,
        criteria: Vec<Criterion>,
        decision: impl Into<String>,
        rows: Vec<Vec<BigRational>>,
        class_labels: Vec<i64>,
    ) -> Result<Self> {
        let decision = decision.into();
        if objects.is_empty() {
            return Err(Error::NoObjects);
        }
        if criteria.is_empty() {
            return Err(Error::NoCriteria);
        }
        assert_eq!(objects.len(), rows.len(), "one value row per object");
        assert_eq!(objects.len(), class_labels.len(), "one class label per object");

        let mut seen = HashSet::new();
        for name in &objects {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateObject(name.clone()));
            }
        }
        let mut seen = HashSet::new();
        for name in criteria.iter().map(|c| c.name.as_str()).chain([decision.as_str()]) {
            if !seen.insert(name) {
                return Err(Error::DuplicateCriterion(name.to_string()));
            }
        }

        let labels: Vec<i64> = class_labels.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if labels.len() < 2 {
            return Err(Error::TooFewClasses);
        }
        let rank_of: HashMap<i64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i + 1)).collect();
        let ranks = class_labels.iter().map(|l| rank_of[l]).collect();

        let m = objects.len();
        let n = criteria.len();
        let mut values = Vec::with_capacity(m * n);
        for row in rows {
            assert_eq!(row.len(), n, "one value per criterion");
            values.extend(row);
        }

        let mut codes = vec![0u32; m * n];
        for (q, criterion) in criteria.iter().enumerate() {
            let oriented = |x: usize| -> BigRational {
                let v = values[x * n + q].clone();
                match criterion.preference {
                    Preference::Gain => v,
                    Preference::Cost => -v,
                }
            };
            let column: Vec<BigRational> = (0..m).map(oriented).collect();
            let mut distinct = column.clone();
            distinct.sort();
            distinct.dedup();
            for (x, v) in column.iter().enumerate() {
                codes[x * n + q] = distinct.binary_search(v).expect("value present") as u32;
            }
        }

        Ok(Self {
            id_header: id_header.into(),
            objects,
            criteria,
            decision,
            values,
            codes,
            ranks,
            labels,
        })
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_criteria(&self) -> usize {
        self.criteria.len()
    }

    /// Number of decision classes `l`.
    pub fn num_classes(&self) -> usize {
        self.labels.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn criteria(&self) -> &[Criterion] {
        &self.criteria
    }

    pub fn criterion_index(&self, name: &str) -> Result<usize> {
        self.criteria
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| Error::UnknownCriterion(name.to_string()))
    }

    pub fn decision_name(&self) -> &str {
        &self.decision
    }

    pub fn id_header(&self) -> &str {
        &self.id_header
    }

    /// Exact value `f_q(x)` as written in the input.
    pub fn value(&self, x: usize, q: usize) -> &BigRational {
        &self.values[x * self.criteria.len() + q]
    }

    /// Gain-oriented ordinal code of `f_q(x)`.
    #[inline]
    pub fn code(&self, x: usize, q: usize) -> u32 {
        self.codes[x * self.criteria.len() + q]
    }

    /// Class rank of `x` in `1..=l`.
    #[inline]
    pub fn rank(&self, x: usize) -> usize {
        self.ranks[x]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Original label of class rank `t`.
    pub fn class_label(&self, t: usize) -> i64 {
        self.labels[t - 1]
    }

    pub fn class_labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn class_partition(&self) -> ClassPartition {
        let m = self.num_objects();
        let mut extents = vec![ObjectSet::empty(m); self.num_classes()];
        for (x, &t) in self.ranks.iter().enumerate() {
            extents[t - 1].insert(x);
        }
        ClassPartition { extents }
    }

    /// Same table with objects listed in `order` (a permutation of `0..m`).
    pub fn reorder_objects(&self, order: &[usize]) -> Self {
        let n = self.num_criteria();
        let rows = order
            .iter()
            .map(|&x| self.values[x * n..(x + 1) * n].to_vec())
            .collect();
        Self::new(
            self.id_header.clone(),
            order.iter().map(|&x| self.objects[x].clone()).collect(),
            self.criteria.clone(),
            self.decision.clone(),
            rows,
            order.iter().map(|&x| self.labels[self.ranks[x] - 1]).collect(),
        )
        .expect("permutation of a valid table is valid")
    }

    /// Serializes back to the CSV input format. The decision column is written last.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let mut header = vec![self.id_header.clone()];
        for c in &self.criteria {
            let kind = match c.preference {
                Preference::Gain => "gain",
                Preference::Cost => "cost",
            };
            header.push(format!("{}:{kind}", c.name));
        }
        header.push(format!("{}:decision", self.decision));
        out.push_str(&header.join(","));
        out.push('\n');
        for x in 0..self.num_objects() {
            out.push_str(&self.objects[x]);
            for q in 0..self.num_criteria() {
                out.push(',');
                out.push_str(&format_decimal(self.value(x, q)));
            }
            let _ = writeln!(out, ",{}", self.class_label(self.rank(x)));
        }
        out
    }

    /// Short content hash of the canonical CSV form.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.to_csv().as_bytes());
        hex::encode(&digest[..8])
    }
}

impl Serialize for DecisionTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row<'a> {
            name: &'a str,
            values: Vec<String>,
            class_label: i64,
            class_rank: usize,
        }
        let rows: Vec<Row<'_>> = (0..self.num_objects())
            .map(|x| Row {
                name: &self.objects[x],
                values: (0..self.num_criteria()).map(|q| format_decimal(self.value(x, q))).collect(),
                class_label: self.class_label(self.rank(x)),
                class_rank: self.rank(x),
            })
            .collect();
        let mut s = serializer.serialize_struct("DecisionTable", 5)?;
        s.serialize_field("id_header", &self.id_header)?;
        s.serialize_field("criteria", &self.criteria)?;
        s.serialize_field("decision", &self.decision)?;
        s.serialize_field("class_labels", &self.labels)?;
        s.serialize_field("objects", &rows)?;
        s.end()
    }
}

/// The ordered class partition `Cl_1, ..., Cl_l` of the universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPartition {
    extents: Vec<ObjectSet>,
}

impl ClassPartition {
    pub fn len(&self) -> usize {
        self.extents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extents.is_empty()
    }

    /// `Cl_t` for `t` in `1..=l`.
    pub fn class(&self, t: usize) -> &ObjectSet {
        &self.extents[t - 1]
    }

    pub fn extents(&self) -> &[ObjectSet] {
        &self.extents
    }
}

/// Parses the CSV decision-table format.
pub fn parse_table(document: &str) -> Result<DecisionTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(document.as_bytes());

    let mut records = reader.records();
    let csv_err = |e: csv::Error| Error::Parse {
        line: e.position().map_or(0, |p| p.line()),
        message: e.to_string(),
    };

    let header = loop {
        match records.next() {
            None => return Err(Error::NoObjects),
            Some(rec) => {
                let rec = rec.map_err(csv_err)?;
                if !is_blank(&rec) {
                    break rec;
                }
            }
        }
    };
    let header_line = header.position().map_or(1, |p| p.line());
    if header.len() < 2 {
        return Err(Error::Parse {
            line: header_line,
            message: "header needs an identifier column and at least one criterion".into(),
        });
    }

    enum Column {
        Condition(usize),
        Decision,
    }
    let mut criteria = Vec::new();
    let mut columns = Vec::new();
    let mut decision_names = Vec::new();
    for cell in header.iter().skip(1) {
        let (name, kind) = cell.rsplit_once(':').ok_or_else(|| Error::Parse {
            line: header_line,
            message: format!("header cell `{cell}` must be `name:gain`, `name:cost` or `name:decision`"),
        })?;
        let name = name.trim().to_string();
        if name.is_empty() {
            return Err(Error::Parse {
                line: header_line,
                message: format!("header cell `{cell}` has an empty name"),
            });
        }
        match kind.trim().to_ascii_lowercase().as_str() {
            "gain" => {
                columns.push(Column::Condition(criteria.len()));
                criteria.push(Criterion::gain(name));
            }
            "cost" => {
                columns.push(Column::Condition(criteria.len()));
                criteria.push(Criterion::cost(name));
            }
            "decision" => {
                columns.push(Column::Decision);
                decision_names.push(name);
            }
            other => {
                return Err(Error::Parse {
                    line: header_line,
                    message: format!("unknown column kind `{other}` in `{cell}`"),
                })
            }
        }
    }
    if decision_names.len() != 1 {
        return Err(Error::DecisionColumns(decision_names.len()));
    }

    let mut objects = Vec::new();
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for rec in records {
        let rec = rec.map_err(csv_err)?;
        if is_blank(&rec) {
            continue;
        }
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != header.len() {
            return Err(Error::Parse {
                line,
                message: format!("expected {} fields, found {}", header.len(), rec.len()),
            });
        }
        let id = rec[0].to_string();
        if id.is_empty() {
            return Err(Error::Parse {
                line,
                message: "missing object identifier".into(),
            });
        }
        let mut row = vec![BigRational::zero(); criteria.len()];
        let mut label = 0i64;
        for (cell, column) in rec.iter().skip(1).zip(&columns) {
            if cell.is_empty() {
                return Err(Error::Parse {
                    line,
                    message: format!("missing value for object `{id}`"),
                });
            }
            match *column {
                Column::Condition(q) => {
                    row[q] = parse_decimal(cell).ok_or_else(|| Error::Parse {
                        line,
                        message: format!("non-numeric value `{cell}` for object `{id}`"),
                    })?;
                }
                Column::Decision => {
                    label = cell.parse().map_err(|_| Error::Parse {
                        line,
                        message: format!("class label `{cell}` for object `{id}` is not an integer"),
                    })?;
                }
            }
        }
        objects.push(id);
        rows.push(row);
        labels.push(label);
    }

    let id_header = header[0].to_string();
    let decision = decision_names.pop().expect("exactly one");
    DecisionTable::new(id_header, objects, criteria, decision, rows, labels)
}

fn is_blank(rec: &csv::StringRecord) -> bool {
    rec.iter().all(str::is_empty)
}

/// Writes a terminating rational as a plain decimal; other rationals as `p/q`.
pub fn format_decimal(value: &BigRational) -> String {
    let denom = value.denom().clone();
    let mut rest = denom.clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let (mut twos, mut fives) = (0u32, 0u32);
    while (&rest % &two).is_zero() {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    if rest != BigInt::from(1) {
        return format!("{}/{}", value.numer(), value.denom());
    }
    let scale = twos.max(fives);
    if scale == 0 {
        return value.numer().to_string();
    }
    let scaled = value.numer() * num_traits::Pow::pow(&BigInt::from(10), scale) / denom;
    let digits = scaled.abs().to_string();
    let width = scale as usize + 1;
    let padded = format!("{digits:0>width$}");
    let (int_part, frac_part) = padded.split_at(padded.len() - scale as usize);
    let sign = if scaled.is_negative() { "-" } else { "" };
    format!("{sign}{int_part}.{frac_part}")
}
