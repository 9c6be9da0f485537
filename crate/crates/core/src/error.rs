use thiserror::Error;

use crate::subset::KSubset;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} is outside the ground set [1..{n}]")]
    IndexOutOfRange { index: u32, n: u32 },

    #[error("duplicate index {0} in subset")]
    DuplicateIndex(u32),

    #[error("ground set size {0} is not supported (must be 1..=64)")]
    GroundSetSize(u32),

    #[error("ground sets differ: [1..{left}] vs [1..{right}]")]
    GroundSetMismatch { left: u8, right: u8 },

    #[error("expected a subset of size {expected}, got {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("generator x[{row},{col}] outside a {k}x{m} quantum matrix")]
    GeneratorOutOfBounds { row: u8, col: u8, k: u8, m: u8 },

    #[error("zero polynomial where a nonzero one is required")]
    ZeroInput,

    #[error("sets {0} and {1} are not weakly separated")]
    NotWeaklySeparated(KSubset, KSubset),

    #[error("collection is not maximal: {0} can be added")]
    NotMaximal(KSubset),

    #[error("move is not applicable: {0}")]
    InvalidMove(String),

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal assertion failed: {0}")]
    Assertion(String),

    #[error("parse error: {0}")]
    Parse(String),
}
