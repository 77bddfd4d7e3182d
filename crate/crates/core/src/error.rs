use thiserror::Error;

/// Which move of the game a set or budget belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Vaccination,
    Attack,
    Protection,
}

impl std::fmt::Display for Level {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Level::Vaccination => "vaccination",
            Level::Attack => "attack",
            Level::Protection => "protection",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed document: {0}")]
    Malformed(String),

    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("weight vector `{name}` has length {got}, expected {expected}")]
    WeightLength {
        name: &'static str,
        got: usize,
        expected: usize,
    },

    #[error("{level} budget exceeded: cost {used} > budget {budget}")]
    BudgetViolation { level: Level, used: u64, budget: u64 },

    #[error("vertex {vertex} is both {first} and {second}")]
    Overlap {
        vertex: usize,
        first: Level,
        second: Level,
    },

    #[error("instance too large for exact solve: more than {limit} plays required")]
    TooLarge { limit: u64 },

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Malformed(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
