use alloc::string::String;

/// Errors raised by the algebraic core.
///
/// Variants split into two families: validation errors caused by bad input
/// (unknown types, malformed fans, elements outside a subring) and internal
/// invariant violations that indicate a bug or a broken theorem check
/// (see [`Error::is_internal`]).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid Cartan label {family}{rank}")]
    InvalidCartanLabel { family: char, rank: usize },
    #[error("unparseable Cartan label `{0}`")]
    UnparseableLabel(String),
    #[error("rank bound exceeded: {what} is {actual}, limit {limit}")]
    RankBoundExceeded { what: &'static str, actual: usize, limit: usize },
    #[error("element {word} is not a minimal coset representative for {subset}")]
    NotMinimalRep { word: String, subset: String },
    #[error("block mismatch: polynomial has {actual} block(s), operation needs {expected}")]
    BlockMismatch { expected: usize, actual: usize },
    #[error("character must be nonzero")]
    ZeroCharacter,
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("unknown Weyl word `{0}`")]
    UnknownWord(String),
    #[error("cone {0} does not belong to the fan")]
    ConeNotInFan(String),
    #[error("no value supplied for maximal cone {0}")]
    MissingCone(usize),
    #[error("fan is not smooth: cone {0} is not unimodular")]
    NotSmooth(String),
    #[error("fan support does not match the positive chamber: {0}")]
    SupportMismatch(String),
    #[error("fan is not face closed: face {0} missing")]
    NotFaceClosed(String),
    #[error("family is not a member of the equivariant K-ring: {0}")]
    NotMember(String),
    #[error("element is not in the equivariant K-ring: coordinate at {v} (component {subset}) is not divisible")]
    NotInSubring { v: String, subset: String },
    #[error("element is not Weyl invariant")]
    NotInvariant,
    #[error("singular Steinberg system (determinant vanished)")]
    SingularSystem,
    #[error("support violation: {0}")]
    SupportViolation(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors that can only arise from a broken internal invariant
    /// rather than from bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::SingularSystem
                | Error::SupportViolation(_)
                | Error::InexactDivision(_)
                | Error::Invariant(_)
        )
    }

    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidCartanLabel { .. } => "InvalidCartanLabel",
            Error::UnparseableLabel(_) => "InvalidCartanLabel",
            Error::RankBoundExceeded { .. } => "RankBoundExceeded",
            Error::NotMinimalRep { .. } => "NotMinimalRep",
            Error::BlockMismatch { .. } => "BlockMismatch",
            Error::ZeroCharacter => "ZeroCharacter",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::UnknownWord(_) => "UnknownWord",
            Error::ConeNotInFan(_) => "ConeNotInFan",
            Error::MissingCone(_) => "MissingCone",
            Error::NotSmooth(_) => "NotSmooth",
            Error::SupportMismatch(_) => "SupportMismatch",
            Error::NotFaceClosed(_) => "NotFaceClosed",
            Error::NotMember(_) => "NotMember",
            Error::NotInSubring { .. } => "NotInSubring",
            Error::NotInvariant => "NotInvariant",
            Error::SingularSystem => "SingularSystem",
            Error::SupportViolation(_) => "SupportViolation",
            Error::InexactDivision(_) => "InexactDivision",
            Error::Invariant(_) => "InvariantViolation",
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
