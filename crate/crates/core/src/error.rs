use thiserror::Error;

/// Domain errors raised by the hierarchy, partition, aggregation and tree modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("value {value} lies outside the universe [0, {span}]")]
    OutOfUniverse { value: f64, span: f64 },

    #[error("gap {gap} between consecutive terms has non-positive width {width}")]
    DegenerateGap { gap: usize, width: f64 },

    #[error("at least two terms are required, got {0}")]
    TooFewTerms(usize),

    #[error("positions must be strictly increasing: term `{name}` at index {index} is not after its predecessor")]
    UnorderedInput { index: usize, name: String },

    #[error("duplicate term `{0}`")]
    DuplicateTerm(String),

    #[error("unknown term `{0}`")]
    UnknownTerm(String),

    #[error("aggregation needs at least one operand")]
    EmptyAggregation,

    #[error("N/A stretch is only allowed on the last term, found at index {0}")]
    MisplacedNotApplicable(usize),

    #[error("unknown stretch term `{0}`")]
    UnknownStretch(String),

    #[error("node `{0}` has exactly one child")]
    NotStrictBinary(String),

    #[error("duplicate node `{0}`")]
    DuplicateNode(String),

    #[error("hierarchy level {0} exceeds the supported maximum of {max}", max = crate::hierarchy::MAX_LEVEL)]
    LevelOverflow(u32),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
