use thiserror::Error;

use crate::words::Word;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input: expected \"e\" or a sequence of g<k> tokens")]
    EmptyInput,
    #[error("malformed token {0:?}: expected g<k> with k a positive integer")]
    MalformedToken(String),
    #[error("generator index must be >= 1")]
    ZeroIndex,
    /// A computation gave up after `budget` units of work. Never a negative answer.
    #[error("budget of {budget} exhausted before {what} completed")]
    BudgetExceeded { what: &'static str, budget: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("half ranks are only defined for the monoid H")]
    HalfRankForF,
    #[error("rank must be at least 1")]
    RankTooSmall,
    #[error("{word} is not the normal form of a simple element")]
    NotSimple { word: Word },
    #[error("{word} does not left divide Delta_{rank}")]
    NotADivisor { word: Word, rank: u32 },
    #[error("dimension {dim} too small, need at least {needed}")]
    DimensionTooSmall { dim: usize, needed: usize },
    #[error("reversing got stuck: no common multiple")]
    NoCommonMultiple,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
