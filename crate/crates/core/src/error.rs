use alloc::string::String;
use core::fmt;

use crate::linalg::LinalgError;

/// Crate-wide error type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    Linalg(LinalgError),
    /// The presentation is not well formed.
    MalformedPresentation(String),
    /// Some path of the cap length does not vanish modulo the relations.
    NotFiniteDimensional { cap: usize },
    UnknownVertex(usize),
    UnknownArrow(usize),
    /// Two objects were built over different algebras.
    AlgebraMismatch,
    /// Data does not satisfy the invariants of the named structure.
    Invalid { what: &'static str, detail: String },
    /// Some indecomposable projective is missing from add M.
    GeneratorMissingProjective { vertex: usize },
    /// An X-dimension computation ran past the cap.
    ExceedsCap { cap: usize },
    /// A precondition of an operation was not met.
    Precondition(String),
    /// A construction produced data that failed its own check. Carries the
    /// full diagnostic; never expected on honest inputs.
    Diagnostic(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Linalg(e) => write!(f, "{e}"),
            Error::MalformedPresentation(s) => write!(f, "malformed presentation: {s}"),
            Error::NotFiniteDimensional { cap } => {
                write!(f, "not finite-dimensional under cap {cap}")
            }
            Error::UnknownVertex(v) => write!(f, "unknown vertex {v}"),
            Error::UnknownArrow(a) => write!(f, "unknown arrow {a}"),
            Error::AlgebraMismatch => write!(f, "objects live over different algebras"),
            Error::Invalid { what, detail } => write!(f, "invalid {what}: {detail}"),
            Error::GeneratorMissingProjective { vertex } => {
                write!(f, "generator does not contain the projective at vertex {vertex}")
            }
            Error::ExceedsCap { cap } => write!(f, "exceeds cap {cap}"),
            Error::Precondition(s) => write!(f, "precondition violated: {s}"),
            Error::Diagnostic(s) => write!(f, "diagnostic: {s}"),
        }
    }
}

impl core::error::Error for Error {}

impl From<LinalgError> for Error {
    fn from(e: LinalgError) -> Self {
        Error::Linalg(e)
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn invalid(what: &'static str, detail: impl Into<String>) -> Error {
    Error::Invalid { what, detail: detail.into() }
}
