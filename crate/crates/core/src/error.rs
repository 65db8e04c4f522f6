use thiserror::Error;

use crate::field::FieldDescriptor;

/// Errors shared by every module of the crate.
///
/// Each variant carries a stable machine-readable code (see [`Error::code`])
/// so the CLI can report failures without string matching.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mixed fields: {0} vs {1}")]
    MixedFields(FieldDescriptor, FieldDescriptor),

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not a prime in the supported range (2..2^31)")]
    BadPrime(u64),

    #[error("basis index {0} out of range: indices start at 1")]
    BadIndex(i64),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("not invertible: only diagonal maps (gamma = [c], c != 0) have an inverse")]
    NotInvertible,

    #[error("not a monomorphism: gamma_1 = 0")]
    NotMonomorphism,

    #[error("not unipotent: gamma_1 != 1")]
    NotUnipotent,

    #[error("polynomial constant term must be 1")]
    BadConstantTerm,

    #[error("diagonal scalar must be nonzero")]
    ZeroDiagonal,

    #[error("target is not in the derivation ideal: gamma_1 != 0")]
    TargetNotInIdeal,

    #[error(
        "unsolvable in characteristic {p}: target has nonzero coordinates at {indices:?} \
         where (index - 1) vanishes mod {p}"
    )]
    UnsolvableInCharP { p: u32, indices: Vec<u32> },

    #[error("window of size {n} too small: need at least {need}")]
    WindowTooSmall { n: usize, need: usize },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

impl Error {
    /// Stable error code, part of the CLI contract.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MixedFields(..) => "E_MIXED_FIELDS",
            Error::DivisionByZero => "E_DIV_ZERO",
            Error::BadPrime(_) => "E_BAD_PRIME",
            Error::BadIndex(_) => "E_BAD_INDEX",
            Error::Parse { .. } => "E_PARSE",
            Error::NotInvertible => "E_NOT_INVERTIBLE",
            Error::NotMonomorphism => "E_NOT_MONOMORPHISM",
            Error::NotUnipotent => "E_NOT_UNIPOTENT",
            Error::BadConstantTerm => "E_BAD_CONSTANT_TERM",
            Error::ZeroDiagonal => "E_ZERO_DIAGONAL",
            Error::TargetNotInIdeal => "E_TARGET_NOT_IDEAL",
            Error::UnsolvableInCharP { .. } => "E_UNSOLVABLE_CHAR_P",
            Error::WindowTooSmall { .. } => "E_WINDOW_TOO_SMALL",
            Error::DimensionMismatch(..) => "E_DIMENSION_MISMATCH",
        }
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
