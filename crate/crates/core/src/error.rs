use alloc::string::String;

use crate::ground::Subset;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("duplicate atom label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown atom label `{0}`")]
    UnknownLabel(String),
    #[error("ground set of size {size} exceeds the limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("table is missing the entry for {0}")]
    IncompleteTable(Subset),
    #[error("table lists {0} twice")]
    DuplicateEntry(Subset),
    #[error("negative capacity on edge {0}")]
    NegativeCapacity(usize),
    #[error("negative weight at atom {0}")]
    NegativeWeight(usize),
    #[error("shape error: {0}")]
    ShapeError(String),
    #[error("breakpoints do not describe a concave function")]
    NotConcave,
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("matrix is not positive definite")]
    NotPD,
    #[error("row {0} of the kernel is not a probability vector")]
    InvalidKernel(usize),
    #[error("family is not an ideal: {0} is missing")]
    NotAnIdeal(Subset),
    #[error("cells do not partition the unit interval")]
    NotAPartition,
    #[error("setfunctions live on different ground sets")]
    GroundMismatch,
    #[error("submodular inequality fails at X={x}, Y={y}")]
    NotSubmodular { x: Subset, y: Subset },
    #[error("supermodular inequality fails at X={x}, Y={y}")]
    NotSupermodular { x: Subset, y: Subset },
    #[error("not increasing: value at {x} exceeds value at {y}")]
    NotIncreasing { x: Subset, y: Subset },
    #[error("not subadditive at X={x}, Y={y}")]
    NotSubadditive { x: Subset, y: Subset },
    #[error("value at the empty set must be zero")]
    NormalizationViolated,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("bad argument: {0}")]
    BadArgument(String),
    #[error("pair is not diverging: X={x} is below Y={y} but psi(X) > phi(Y)")]
    NotDiverging { x: Subset, y: Subset },
    #[error("the two rank values at the splice points differ")]
    RankMismatch,
    #[error("coefficient at term {0} must be positive")]
    BadCoefficient(usize),
    #[error("lower function exceeds upper function at {0}")]
    SandwichViolated(Subset),
    #[error("beta exceeds phi at {0}")]
    BetaNotMinorizing(Subset),
    #[error("{which} is not a minorizer: fails at {set}")]
    NotMinorizing { which: String, set: Subset },
    #[error("not a matroid rank function ({axiom}) at {set}")]
    NotAMatroidRank { axiom: String, set: Subset },
    #[error("sections {0} and {1} are not comonotonic")]
    NotComonotonic(usize, usize),
    #[error("map is not surjective")]
    NotSurjective,
    #[error("window direction set is empty")]
    EmptyWindow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("uncrossing did not terminate within {0} steps")]
    UncrossingStalled(usize),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
