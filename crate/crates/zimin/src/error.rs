use thiserror::Error;

/// Errors reported by the library. Resource-style failures (budgets and
/// search caps) are distinguished from input validation so callers can map
/// them to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("rank {rank} exceeds the supported maximum {max}")]
    RankTooLarge { rank: u32, max: u32 },
    #[error("rank {rank} exceeds the Zimin type {ztype} of the word")]
    RankExceedsType { rank: u32, ztype: u32 },
    #[error("the empty word has no Zimin decomposition")]
    EmptyWord,
    #[error("morphism has no image for variable x{variable}")]
    MissingImage { variable: u32 },
    #[error("image of variable x{variable} is empty; morphisms must be non-erasing")]
    EmptyImage { variable: u32 },
    #[error("n must be positive")]
    ZeroValue,
    #[error("invalid Fibonacci representation: {0}")]
    InvalidDigits(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("requested {requested} symbols exceeds the memory budget of {budget}")]
    BudgetExceeded { requested: u64, budget: u64 },
    #[error("word length cap of {cap} exceeded")]
    LengthCapExceeded { cap: usize },
    #[error("search node cap of {cap} exceeded")]
    NodeCapExceeded { cap: u64 },
    #[error("image of seed symbol {0:?} must start with the seed and be longer")]
    NonProlongable(char),
    #[error("morphism rule for {0:?} is erasing")]
    ErasingRule(char),
    #[error("no morphism rule for symbol {0:?}")]
    MissingRule(char),
    #[error("alphabet size {size} is out of the supported range 1..=26")]
    InvalidAlphabet { size: u32 },
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("{0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for failures caused by resource caps or memory budgets rather
    /// than malformed input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. }
                | Error::LengthCapExceeded { .. }
                | Error::NodeCapExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
