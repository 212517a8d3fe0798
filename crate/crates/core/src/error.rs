use thiserror::Error;

/// Errors raised by the algorithms in this crate.
///
/// The CLI maps `Input` style variants to exit code 2 and `Budget` to exit
/// code 3, so new variants should land on the right side of that split.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("malformed word token `{0}`")]
    MalformedToken(String),

    #[error("invalid defining graph: {0}")]
    InvalidGraph(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("resource budget exceeded while {what} (cap {limit})")]
    Budget { what: &'static str, limit: usize },

    #[error("incomplete universe: coset {0} is needed but lies outside the truncation bound")]
    IncompleteUniverse(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Resource caps shared by the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of group elements (or closure words) an enumeration may
    /// materialize before giving up.
    pub max_elements: usize,
}

pub const DEFAULT_MAX_ELEMENTS: usize = 10_000_000;

/// Environment variable that overrides [`DEFAULT_MAX_ELEMENTS`].
pub const BUDGET_ENV: &str = "CONJLAB_BUDGET";

impl Default for Budget {
    fn default() -> Self {
        Budget { max_elements: DEFAULT_MAX_ELEMENTS }
    }
}

impl Budget {
    pub fn new(max_elements: usize) -> Self {
        Budget { max_elements }
    }

    /// Default budget, overridden by `CONJLAB_BUDGET` when it parses as a
    /// positive integer.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
            .map(Budget::new)
            .unwrap_or_default()
    }

    pub(crate) fn check(&self, used: usize, what: &'static str) -> Result<()> {
        if used > self.max_elements {
            Err(Error::Budget { what, limit: self.max_elements })
        } else {
            Ok(())
        }
    }
}
