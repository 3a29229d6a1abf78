use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("metallic parameter must be a positive integer, got {0}")]
    InvalidParameter(u32),
    #[error("numbers from different fields (n = {left} and n = {right})")]
    Mismatch { left: u32, right: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse number `{0}`")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TileError {
    #[error("label {label:?} is not in V_{n}")]
    LabelOutOfRange { label: [i64; 3], n: u32 },
    #[error("tile index {index} out of range for a set of {len} tiles")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("window has non-positive size {width}x{height}")]
    EmptyWindow { width: i64, height: i64 },
    #[error("window of {cells} cells exceeds the limit of {limit}")]
    WindowTooLarge { cells: u64, limit: u64 },
    #[error("rows of the window have different lengths")]
    Ragged,
    #[error("coordinate {0} is outside [0, 1)")]
    OutsideUnitSquare(String),
    #[error("tile {0} is not in the tile set")]
    NotInSet(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InductionError {
    #[error("return time exceeded {cap} steps; the window may not be a recurrence set")]
    ReturnTimeExceeded { cap: usize },
    #[error("partition does not cover the domain (missing area {missing})")]
    NotAPartition { missing: String },
    #[error("substitution blocks do not assemble into a rectangle")]
    Ragged,
    #[error("label {0} has no substitution rule")]
    UnknownLabel(usize),
    #[error("no relabeling makes the partitions equal")]
    RelabelingNotFound,
    #[error("{0}")]
    Inconsistent(String),
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("unsupported schema `{0}`")]
    Schema(String),
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Field(#[from] FieldError),
}
