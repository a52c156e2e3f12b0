use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("reducible minimal polynomial: {0}")]
    ReducibleField(String),
    #[error("field error: {0}")]
    Field(String),
    #[error("scalars from different fields cannot be mixed")]
    FieldMismatch,
    #[error("degree {requested} exceeds the completion bound {bound}")]
    DegreeBound { bound: i64, requested: i64 },
    #[error("slice of dimension {dim} exceeds the dimension cap {cap} (set NCALG_DIM_CAP to raise it)")]
    DimCap { dim: usize, cap: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("malformed structure: {0}")]
    Malformed(String),
    #[error("not Frobenius: {0}")]
    NotFrobenius(String),
    #[error("missing table entry: {0}")]
    MissingEntry(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
