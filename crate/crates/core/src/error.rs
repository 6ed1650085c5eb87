use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("chromatic size {0} is outside the supported range 1..={max}", max = crate::pcset::MAX_EDO)]
    EdoOutOfRange(u32),

    #[error("pitch-class sets live in different chromatic spaces ({left} vs {right})")]
    EdoMismatch { left: u32, right: u32 },

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("pitch class {value} is out of range for {edo}-EDO")]
    PitchOutOfRange { value: i64, edo: u32 },

    #[error("duplicate pitch class {0}")]
    DuplicatePitch(u32),

    #[error("operation requires a non-empty set")]
    EmptySet,

    #[error("cardinality {k} is outside 1..={max}")]
    CardinalityOutOfRange { k: usize, max: usize },

    #[error("combination is absent from all transpositions of the set")]
    AbsentCombination,

    #[error("combination occurs in no member of the family")]
    AbsentFromFamily,

    #[error("evidence inconsistent with prior: surviving tonics carry zero prior mass")]
    InconsistentEvidence,

    #[error("invalid tonic prior: {0}")]
    InvalidPrior(String),

    #[error("integer overflow computing {0}")]
    Overflow(String),

    #[error("range {start}..={end} is outside the curve (1..={len})")]
    RangeOutsideCurve { start: usize, end: usize, len: usize },

    #[error("number of draws must be at least 1")]
    NoDraws,

    #[error("invalid family definition at line {line}: {reason}")]
    FamilyFormat { line: usize, reason: String },

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("built-in scale registry is only defined for 12-EDO, not {0}-EDO")]
    UnsupportedEdo(u32),

    #[error("unknown {kind} {name:?}; expected one of: {choices}")]
    UnknownName {
        kind: &'static str,
        name: String,
        choices: String,
    },
}

impl Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }

    /// True for errors caused by well-formed input that the mathematics rejects
    /// (as opposed to malformed input).
    pub fn is_domain_error(&self) -> bool {
        matches!(
            self,
            Error::AbsentCombination
                | Error::AbsentFromFamily
                | Error::InconsistentEvidence
                | Error::Overflow(_)
        )
    }
}
