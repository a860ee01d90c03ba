//! Words over a finite alphabet, named rules, positioned rule instances and
//! the abstract reduction system `<X*, X* r X*>` they generate.

mod path;
mod rule;
mod system;
mod word;

pub use path::{Direction, Path, Zigzag};
pub use rule::{apply_instance, Rule, RuleInstance, RuleRef, Step};
pub use system::{Reach, SrsSystem, DEFAULT_REACH_BOUND};
pub use word::{Generator, Word};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SrsError {
    #[error("instance {instance} does not match word {word}")]
    SourceMismatch { word: String, instance: String },
    #[error("closure exceeded the bound of {bound} steps")]
    BoundExceeded { bound: usize },
    #[error("letter {letter} is outside the alphabet 1..={n}")]
    InvalidLetter { letter: u16, n: usize },
    #[error("duplicate rule name {0:?}")]
    DuplicateRule(String),
    #[error("rule {0:?} has an empty left-hand side")]
    EmptyLhs(String),
    #[error("unknown rule {0:?}")]
    UnknownRule(String),
    #[error("steps do not chain: expected {expected}, found {found}")]
    NotChained { expected: String, found: String },
    #[error("parse error: {0}")]
    Parse(String),
}
