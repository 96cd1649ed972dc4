use thiserror::Error;

/// Errors raised while parsing, building or transforming knot diagrams.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnotError {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("label {label} occurs {count} times, expected exactly 2")]
    LabelCount { label: u32, count: usize },

    #[error("label {label} has two {passage} passages")]
    DuplicatePassage { label: u32, passage: &'static str },

    #[error("label {0} carries inconsistent signs")]
    InconsistentSign(u32),

    #[error("code mixes signed and unsigned tokens")]
    MixedSigns,

    #[error("PD code: {0}")]
    Pd(String),

    #[error("diagram has more than one component")]
    MultipleComponents,

    #[error("non-planar incidence: traced {faces} faces, expected {expected}")]
    NonPlanar { faces: usize, expected: usize },

    #[error("chord matching is not realizable by a planar closed curve")]
    NotRealizable,

    #[error("declared crossing signs are achieved by neither mirror embedding")]
    SignMismatch,

    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),

    #[error("crossing budget exceeded: {got} crossings, limit {limit}")]
    Budget { got: usize, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("id {id} out of range (size {len})")]
    OutOfRange { id: usize, len: usize },
}

pub type Result<T> = std::result::Result<T, KnotError>;
