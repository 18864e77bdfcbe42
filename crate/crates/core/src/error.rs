//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("unknown group spec `{0}` (expected zd:<d>, free:<k>, lamplighter, or bs1n:<n>)")]
    GroupSpec(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("vertex cap {cap} exceeded while expanding radius {radius}")]
    Capacity { cap: usize, radius: u32 },

    #[error("element {0} is not in the ball")]
    NotInBall(String),

    #[error("generator images do not extend to a homomorphism: relator {relator} maps to {image}")]
    NotAHomomorphism { relator: String, image: String },

    #[error("embedded subgroup action is not free on the tested ball: {0}")]
    NotFree(String),

    #[error("malformed action table at line {line}: {reason}")]
    TableFormat { line: usize, reason: String },

    #[error("inconsistent action table: ({gen}, {x}) maps to both {y1} and {y2}")]
    TableInconsistent {
        gen: String,
        x: String,
        y1: String,
        y2: String,
    },

    #[error("word length of {element} exceeds budget {budget}; enlarge the ball")]
    EnlargeBall { element: String, budget: u32 },

    #[error("no displacement data for generator `{0}`")]
    NoDisplacement(String),

    #[error("element does not belong to group {expected}: {found}")]
    GroupMismatch { expected: String, found: String },

    #[error("malformed element JSON: {0}")]
    ElementJson(String),

    #[error("graph input: {0}")]
    GraphInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
