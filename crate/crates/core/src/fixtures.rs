//! Small reference tables used in docs, tests and the CLI self-checks.

use crate::table::{parse_table, DecisionTable};

/// Four objects on one gain criterion, one class per value band; consistent.
pub const T1_CSV: &str = "object,q:gain,d:decision\na,1,1\nb,2,2\nc,3,2\nd,4,3\n";

/// As `T1` but `b` is ranked above `c` despite a lower score; inconsistent.
pub const T2_CSV: &str = "object,q:gain,d:decision\na,1,1\nb,2,3\nc,3,2\nd,4,3\n";

/// Two classes, `q2` constant.
pub const T3_CSV: &str = "object,q1:gain,q2:gain,d:decision\na,1,1,1\nb,2,1,1\nc,3,1,2\n";

pub fn t1() -> DecisionTable {
    parse_table(T1_CSV).expect("fixture parses")
}

pub fn t2() -> DecisionTable {
    parse_table(T2_CSV).expect("fixture parses")
}

pub fn t3() -> DecisionTable {
    parse_table(T3_CSV).expect("fixture parses")
}
