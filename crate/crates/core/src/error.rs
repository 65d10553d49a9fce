use thiserror::Error;

/// Errors raised when building or combining closure-space data.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point index {index} out of range for a space of {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },

    #[error("closure of point {0} does not contain the point itself")]
    NotReflexive(usize),

    #[error("label sets differ")]
    LabelMismatch,

    #[error("map has {found} values but its domain has {expected} points")]
    MapLength { expected: usize, found: usize },

    #[error("assignment is not surjective: class {0} has no preimage")]
    NotSurjective(usize),

    #[error("radius must be non-negative, got {0}")]
    NegativeRadius(f64),

    #[error("invalid distance matrix: {0}")]
    InvalidMetric(String),

    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),

    #[error("cyclic space needs n >= 1")]
    EmptyCycle,

    #[error("path is invalid at step {step}: {from} and {to} are not adjacent")]
    InvalidStep { step: usize, from: usize, to: usize },

    #[error("path is empty")]
    EmptyPath,

    #[error("paths do not compose: end point {end} differs from start point {start}")]
    EndpointMismatch { end: usize, start: usize },

    #[error("paths live in different spaces")]
    SpaceMismatch,

    #[error("path is not a loop: starts at {start}, ends at {end}")]
    NotALoop { start: usize, end: usize },

    #[error("loops have different basepoints ({0} and {1})")]
    BasepointMismatch(usize, usize),

    #[error("invalid move: {0}")]
    InvalidMove(String),

    #[error("winding number undefined: 2m >= n (n = {n}, m = {m})")]
    WindingUndefined { n: usize, m: usize },

    #[error("wedge parameters outside 3 <= 3m < n (n = {n}, m = {m})")]
    WedgeRegime { n: usize, m: usize },

    #[error("map is not a covering: {0}")]
    NotACovering(String),

    #[error("non-unique lift: two choices at step {0}")]
    NonUniqueLift(usize),

    #[error("no lift exists at step {0}")]
    NoLift(usize),

    #[error("start point {start} does not lie over {base}")]
    StartNotOverBase { start: usize, base: usize },

    #[error("total space has {0} points, above the enumeration bound")]
    TooLarge(usize),

    #[error("scale pair out of order: q = {q} > r = {r}")]
    ScaleOrder { q: f64, r: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
