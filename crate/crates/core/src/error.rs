use thiserror::Error;

use crate::witness::Verdicts;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point {0} lies outside [0,1]")]
    Domain(String),

    #[error("invalid breakpoint list: {0}")]
    InvalidBreakpoints(String),

    #[error("malformed interval [{lo}, {hi}]")]
    MalformedInterval { lo: String, hi: String },

    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("n must be even and at least {min}, got {n}")]
    InvalidEvenN { n: usize, min: usize },

    #[error("n must be odd and at least 1, got {0}")]
    InvalidOddN(usize),

    #[error("lambda {lambda} does not exceed the threshold {threshold}")]
    LambdaTooSmall { lambda: String, threshold: String },

    #[error("commutation check failed: {0}")]
    CommutationFailed(String),

    #[error("support pair rejected: {reason} (u support {u_support}, v support {v_support})")]
    InvalidPair {
        reason: String,
        u_support: String,
        v_support: String,
    },

    #[error("abelian fallback requested for a non-degenerate grid")]
    NotDegenerate,

    #[error("degenerate grid is inconsistent with the commuting pair: {0}")]
    DegenerateInconsistent(String),

    #[error("no admissible n up to n_max = {n_max} reaches a ratio below {lambda}")]
    NMaxExceeded { n_max: usize, lambda: String },

    #[error("{what} = {value} exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("elements are not within distance {0} of each other")]
    NotFoundWithinRadius(u32),

    #[error("induced subgraph is disconnected: {} components {components:?}", components.len())]
    Disconnected { components: Vec<Vec<usize>> },

    #[error("the set must be nonempty")]
    EmptySet,

    #[error("invalid tour instance: {0}")]
    InvalidInstance(String),

    #[error("ratio {ratio} is not below lambda {lambda}")]
    RatioNotBelowLambda { ratio: String, lambda: String },

    #[error("witness verification failed: {0:?}")]
    VerificationFailed(Verdicts),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
