use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid set spec `{input}`: {reason}")]
    SetSyntax { input: String, reason: String },

    #[error("invalid statistic `{input}`: {reason}")]
    StatSyntax { input: String, reason: String },

    #[error("invalid permutation `{input}`: {reason}")]
    PermutationSyntax { input: String, reason: String },

    #[error("not a permutation of [{n}]: {reason}")]
    InvalidPermutation { n: usize, reason: String },

    #[error("cycles do not partition [{n}]: {reason}")]
    InvalidCycles { n: usize, reason: String },

    #[error("refusing to enumerate S_{n}: {n}! exceeds the enumeration cap (n <= {cap})")]
    EnumerationCap { n: usize, cap: usize },

    #[error("no known construction of (A, B) for X = {x}, Y = {y}")]
    NoConstruction { x: String, y: String },

    #[error("no {method} route for {what}")]
    NoMethod { method: String, what: String },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("locus {locus} out of range {min}..={max}")]
    LocusOutOfRange { locus: usize, min: usize, max: usize },

    #[error("identity parameters out of range: {0}")]
    IdentityRange(String),

    #[error("cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
