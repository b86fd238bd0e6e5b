use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("weight mismatch: expected {expected}, found {found}")]
    WeightMismatch { expected: usize, found: usize },

    #[error("not a set partition of the required support: {0}")]
    NotASetPartition(String),

    #[error("label collision: {0} appears in both posets")]
    LabelCollision(usize),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    /// Raised instead of starting an enumeration whose size may explode.
    #[error("enumeration limit exceeded: {size} elements, limit is {limit}")]
    EnumerationLimit { size: usize, limit: usize },

    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),

    #[error("not a basis of the matroid: {0:?}")]
    NotABasis(Vec<usize>),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("not divisible: {0}")]
    NotDivisible(String),

    #[error("element is not in the required subspace: {0}")]
    NotInSubspace(String),

    #[error("not a rank-two invariant: {0}")]
    NotRankTwo(String),

    #[error("mod-m^2 equality fails: {0}")]
    ModM2Mismatch(String),

    #[error("no matching pair found in {0}")]
    NoMatchingPair(String),

    #[error("inconsistent input: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Short machine-readable tag used by the CLI error object.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidComposition(_) => "invalid_composition",
            Error::InvalidPermutation(_) => "invalid_permutation",
            Error::InvalidPartition(_) => "invalid_partition",
            Error::WeightMismatch { .. } => "weight_mismatch",
            Error::NotASetPartition(_) => "not_a_set_partition",
            Error::LabelCollision(_) => "label_collision",
            Error::InvalidPoset(_) => "invalid_poset",
            Error::EnumerationLimit { .. } => "resource_limit",
            Error::InvalidMatroid(_) => "invalid_matroid",
            Error::NotABasis(_) => "not_a_basis",
            Error::OutOfRange(_) => "out_of_range",
            Error::NotDivisible(_) => "not_divisible",
            Error::NotInSubspace(_) => "not_in_subspace",
            Error::NotRankTwo(_) => "not_rank_two",
            Error::ModM2Mismatch(_) => "mod_m2_mismatch",
            Error::NoMatchingPair(_) => "no_matching_pair",
            Error::Inconsistent(_) => "inconsistent",
        }
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::EnumerationLimit { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
