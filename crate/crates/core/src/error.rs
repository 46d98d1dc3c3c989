use thiserror::Error;

use crate::symbolics::HalfInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
    #[error("invalid label {name}: {reason}")]
    InvalidLabel { name: String, reason: String },
    #[error("invalid segment: {0}")]
    InvalidSegment(String),
    #[error("duplicate summand ({label}, {kappa})")]
    DuplicateSummand { label: String, kappa: HalfInt },
    #[error("parity mismatch: label {label} ({kind}) cannot carry kappa = {kappa}")]
    Parity { label: String, kind: String, kappa: HalfInt },
    #[error("dimension mismatch: summands have dimension {found}, expected 2n = {expected}")]
    Dimension { expected: i64, found: i64 },
    #[error("two distinct unramified labels share the sign {0}")]
    UnramifiedClash(String),
    #[error("no epsilon sign supplied for ramified summand ({label}, {kappa})")]
    MissingEpsilon { label: String, kappa: HalfInt },
    #[error("inverse L-factor has degree {degree} >= r = {r}")]
    HeckeDegree { degree: usize, r: usize },
    #[error("derivative at ({label}, {kappa}) vanishes: summand absent")]
    DerivativeAbsent { label: String, kappa: HalfInt },
    #[error("derivative at ({label}, {kappa}) leaves a non-discrete parameter")]
    NonDiscrete { label: String, kappa: HalfInt },
    #[error("invalid root: {0}")]
    InvalidRoot(String),
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}

impl Error {
    /// True for failures that signal a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Inconsistency(_))
    }
}
