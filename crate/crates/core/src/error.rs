use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("duplicate object name `{0}`")]
    DuplicateObject(String),

    #[error("duplicate criterion name `{0}`")]
    DuplicateCriterion(String),

    #[error("expected exactly one decision column, found {0}")]
    DecisionColumns(usize),

    #[error("fewer than 2 classes")]
    TooFewClasses,

    #[error("table has no objects")]
    NoObjects,

    #[error("table has no condition criteria")]
    NoCriteria,

    #[error("empty criteria subset")]
    EmptyCriteria,

    #[error("criterion index {index} out of range (table has {count})")]
    CriterionIndex { index: usize, count: usize },

    #[error("unknown criterion `{0}`")]
    UnknownCriterion(String),

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("object index {index} out of range (table has {count})")]
    ObjectIndex { index: usize, count: usize },

    #[error("rank {rank} out of range {min}..={max}")]
    Rank { rank: usize, min: usize, max: usize },

    #[error("level `{0}` is not a rational in (0, 1]")]
    InvalidLevel(String),

    #[error("two-grade model needs exactly 2 classes, table has {0}")]
    NotTwoGrade(usize),

    #[error("{criteria} criteria exceed the search budget of {budget}; raise the budget explicitly")]
    BudgetExceeded { criteria: usize, budget: usize },

    #[error("measure undefined for object {object} at rank {rank}: empty support and opposition")]
    UndefinedMeasure { object: usize, rank: usize },
}
