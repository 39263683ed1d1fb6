use thiserror::Error;

/// Everything that can go wrong in the pipeline. Column indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid point configuration: {0}")]
    InvalidConfig(String),

    #[error("relation lattice has rank {nullity}, expected exactly one relation")]
    KernelRankNotOne { nullity: usize },

    #[error("the columns other than column {omitted} are linearly dependent")]
    DependentSubset { omitted: usize },

    #[error("relation entry {index} is zero")]
    ZeroRelationEntry { index: usize },

    #[error("index pair ({i}, {j}) does not straddle the relation split")]
    IndexOutOfRange { i: usize, j: usize },

    #[error("expected a vector of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("parameter is not in the span of the configuration")]
    BetaNotInSpan,

    #[error("shift vector is not in the lattice generated by the configuration")]
    NotInLattice,

    #[error("lift does not map to the requested shift")]
    InvalidLift,

    #[error("multiplicity tally {multiplicities} differs from relation sum {relation_sum}")]
    CountMismatch { multiplicities: u64, relation_sum: u64 },

    #[error("parameter is resonant: facet functional ({i}, {j}) takes the integer value {value}")]
    NotNonresonant { i: usize, j: usize, value: String },

    #[error("symmetric polynomial degree {degree} exceeds the {len} available variables")]
    DegreeTooLarge { degree: usize, len: usize },

    #[error("M coefficient undefined for l = {l}, v = {v} (negative integer reaching the nonnegative range)")]
    ExcludedCase { l: i64, v: String },

    #[error("exponent lacks minimal negative support on {index_set:?}: shift z = {z} shrinks it")]
    NotMinimalSupport { index_set: Vec<usize>, z: i64 },

    #[error("log solution hypothesis fails on {index_set:?} at z = {z}")]
    HypothesisViolated { index_set: Vec<usize>, z: i64 },

    #[error("log degree {r} is not below the multiplicity {m}")]
    RNotLessThanMultiplicity { r: usize, m: usize },

    #[error("series on {index_set:?} has infinitely many negative powers of x0")]
    UnboundedBelow { index_set: Vec<usize> },

    #[error("sigma is an integer; use the logarithmic branch")]
    SigmaIntegral,

    #[error("scalar relation fails at z = {z}")]
    MismatchDetected { z: i64 },

    #[error("the origin is an irregular singularity")]
    IrregularSingularity,

    #[error("{0}")]
    Parse(String),
}

impl Error {
    /// Process exit status: 2 for bad input, 3 for a violated mathematical
    /// hypothesis, 1 for a failed internal check.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidConfig(_)
            | Error::KernelRankNotOne { .. }
            | Error::DependentSubset { .. }
            | Error::ZeroRelationEntry { .. }
            | Error::IndexOutOfRange { .. }
            | Error::DimensionMismatch { .. }
            | Error::BetaNotInSpan
            | Error::NotInLattice
            | Error::InvalidLift
            | Error::DegreeTooLarge { .. }
            | Error::Parse(_) => 2,
            Error::NotNonresonant { .. }
            | Error::ExcludedCase { .. }
            | Error::NotMinimalSupport { .. }
            | Error::HypothesisViolated { .. }
            | Error::RNotLessThanMultiplicity { .. }
            | Error::UnboundedBelow { .. }
            | Error::SigmaIntegral
            | Error::IrregularSingularity => 3,
            Error::CountMismatch { .. } | Error::MismatchDetected { .. } => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
