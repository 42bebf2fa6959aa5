use thiserror::Error;

/// Every failure the library can report.
///
/// Variant names double as the machine-readable `kind` in CLI error documents.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed spec: {0}")]
    MalformedSpec(String),
    #[error("isolating interval contains {found} real roots, expected exactly one")]
    RootCountError { found: usize },
    #[error("group is not dense: {0}")]
    DensityError(String),
    #[error("elements belong to different groups")]
    SpecMismatch,
    #[error("sign undecided after {bits} bits of precision (are the generators really Q-independent?)")]
    PrecisionExhausted { bits: u32 },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("pieces do not tile [0,1) bijectively: {0}")]
    NotABijection(String),
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("point outside [0,1)")]
    OutOfDomain,
    #[error("intervals overlap")]
    OverlappingIntervals,
    #[error("interval data mismatch: {0}")]
    IntervalMismatch(String),
    #[error("generators violate 2/5 < l1 < ... < ld < 1/2: {0}")]
    GeneratorRangeError(String),
    #[error("rational denominator {k} is outside the supported range")]
    KTooSmall { k: u64 },
    #[error("index out of range: {0}")]
    IndexError(String),
    #[error("element is not aligned to the grid at level {level}")]
    NotGridAligned { level: u32 },
    #[error("scale factor must be a nonzero rational element of the group")]
    NonRationalScale,

    #[error("T_pi is not well defined: {0}")]
    NotWellDefined(String),
    #[error("patch domain has {0} keys, at most 16 are supported")]
    DomainTooLarge(usize),

    #[error("ball exploration exceeded its cap: {0}")]
    BallCapExceeded(String),
    #[error("no separating element within depth {0}")]
    NotFound(u32),
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported spec: {0}")]
    UnsupportedSpec(String),
    #[error("no common ambient group")]
    NoCommonAmbient,

    #[error("document error: {0}")]
    Document(String),
}

impl Error {
    /// Stable identifier used in error documents.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MalformedSpec(_) => "MalformedSpec",
            Error::RootCountError { .. } => "RootCountError",
            Error::DensityError(_) => "DensityError",
            Error::SpecMismatch => "SpecMismatch",
            Error::PrecisionExhausted { .. } => "PrecisionExhausted",
            Error::Overflow(_) => "Overflow",
            Error::NotABijection(_) => "NotABijection",
            Error::BadPartition(_) => "BadPartition",
            Error::OutOfDomain => "OutOfDomain",
            Error::OverlappingIntervals => "OverlappingIntervals",
            Error::IntervalMismatch(_) => "IntervalMismatch",
            Error::GeneratorRangeError(_) => "GeneratorRangeError",
            Error::KTooSmall { .. } => "KTooSmall",
            Error::IndexError(_) => "IndexError",
            Error::NotGridAligned { .. } => "NotGridAligned",
            Error::NonRationalScale => "NonRationalScale",
            Error::NotWellDefined(_) => "NotWellDefined",
            Error::DomainTooLarge(_) => "DomainTooLarge",
            Error::BallCapExceeded(_) => "BallCapExceeded",
            Error::NotFound(_) => "NotFound",
            Error::Precondition(_) => "Precondition",
            Error::UnsupportedSpec(_) => "UnsupportedSpec",
            Error::NoCommonAmbient => "NoCommonAmbient",
            Error::Document(_) => "Document",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Non-fatal conditions attached to an otherwise successful result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    /// `r_{k,a}` built with `k <= 9`, outside the hypothesis of the generating-set theorem.
    KOutsideHypothesis { k: u64 },
    /// Parity at two aligned grid levels disagrees (an even refinement multiplier).
    ConsistencyWarning { level: u32, next_level: u32 },
}

/// A value together with the warnings produced while computing it.
#[derive(Debug, Clone)]
pub struct Checked<T> {
    pub value: T,
    pub warnings: Vec<Warning>,
}

impl<T> Checked<T> {
    pub fn clean(value: T) -> Self {
        Checked { value, warnings: Vec::new() }
    }
}
