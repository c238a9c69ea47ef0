use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point outside domain: {0}")]
    DomainViolation(String),
    #[error("parameter out of range: {what} (admissible: {bound})")]
    ParameterOutOfRange { what: String, bound: String },
    #[error("incompatible instances: {0}")]
    IncompatibleInstances(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("Fano bound undefined for N = {0} (need N = 2 or N > 4)")]
    UnsupportedCount(usize),
    #[error("construction failed: {0}")]
    ConstructionFailure(String),
    #[error("separation {sep} exceeds domain diameter {diameter}: no packing with two points")]
    SinglePoint { sep: f64, diameter: f64 },
    #[error("invalid configuration:\n  {}", .0.join("\n  "))]
    InvalidConfig(Vec<String>),
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(what: impl Into<String>, bound: impl Into<String>) -> Error {
    Error::ParameterOutOfRange {
        what: what.into(),
        bound: bound.into(),
    }
}
