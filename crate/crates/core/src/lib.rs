//! Dominance-based rough set approximations over preference-ordered decision
//! tables.
//!
//! The crate covers classical, variable-consistency and variable-precision
//! approximations of class unions, the class-based three region model for
//! single decision classes, criteria reducts defined over those regions, and a
//! brute-force oracle that cross-checks the engine and a catalogue of set
//! identities on arbitrary tables.
//!
//! ```
//! use drsa_core::{fixtures, union_approximation, CriteriaSubset, Direction, Engine};
//!
//! let table = fixtures::t2();
//! let engine = Engine::new(&table);
//! let p = CriteriaSubset::all(&table);
//! let approx = union_approximation(&engine, &p, 3, Direction::Upward).unwrap();
//! let names: Vec<_> = approx.boundary.iter().map(|x| table.object_name(x)).collect();
//! assert_eq!(names, ["b", "c"]);
//! ```

pub mod bitset;
pub mod dominance;
pub mod error;
pub mod fixtures;
pub mod oracle;
pub mod query;
pub mod random;
pub mod rational;
pub mod reducts;
pub mod relaxed;
pub mod table;
pub mod trm;
pub mod union_approx;

pub use bitset::ObjectSet;
pub use dominance::{
    cone_table, dominates, downward_union, negative_cone, positive_cone, upward_union, ConeTable, CriteriaSubset,
    Direction, Engine,
};
pub use error::{Error, Result};
pub use query::{evaluate, Query, Region, TwoGradeRegion};
pub use rational::{format_ratio, parse_decimal, Level};
pub use reducts::{
    check_proposition, enumerate_reducts, is_preserving, region_profile, PropositionReport, Reduct, ReductKind,
    RegionProfile, DEFAULT_BUDGET,
};
pub use relaxed::{
    all_measures, consistency_alpha, measure, precision_beta, vc_boundary, vc_lower, vc_upper, vp_lower, MeasureKind,
    ObjectMeasure,
};
pub use table::{format_decimal, parse_table, ClassPartition, Criterion, DecisionTable, Preference};
pub use trm::{
    class_boundary, class_lower, class_upper, four_regions, trm, trm_classical, trm_two_grade, trm_vc, trm_vp,
    ClassApprox, FourRegion, FourRegionAssignment, Model, TrmRegions, TwoGradeRegions,
};
pub use union_approx::{consistent_objects, is_consistent, union_approximation, ApproxTriple, UnionTarget};
