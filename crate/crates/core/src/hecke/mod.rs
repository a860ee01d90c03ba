//! The 0-Hecke monoid: its three presentations, the instance order, the
//! chosen decreasing critical e.d.s and the checks around them.

mod cells;
mod monoid;
mod order;
mod rules;
mod templates;
mod verify;

pub use cells::cells_p;
pub use monoid::{enumerate_monoid, DEFAULT_MONOID_CAP};
pub use order::{HeckeKey, HeckeOrder};
pub use rules::{
    hecke_rule_names, hecke_system, is_c_path, length_vector, HeckeRuleName, HeckeVariant, LengthVector,
};
pub use templates::{chosen_critical_ed, default_resolver, ChosenEd, HeckeResolver, TemplateKind};
pub use verify::{
    coherence_base, commuting_inversions, verify_suite, words_up_to, VerifyOptions, DEFAULT_COHERENCE_BOUND,
};

use thiserror::Error;

use crate::diagrams::DiagramError;
use crate::order::EdError;
use crate::seminormal::SeminormalError;
use crate::srs::SrsError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeckeError {
    #[error("rank must be between 1 and 32767, got {0}")]
    InvalidRank(usize),
    #[error("not a 0-Hecke rule name: {0:?}")]
    BadRuleName(String),
    #[error("unknown variant {0:?} (expected rprime, rdoubleprime or rfull)")]
    BadVariant(String),
    #[error("critical pair matches no template: {0}")]
    UnclassifiedPair(String),
    #[error("template does not apply: {0}")]
    Template(String),
    #[error("rank {n} exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error(transparent)]
    Srs(#[from] SrsError),
    #[error(transparent)]
    Ed(#[from] EdError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Seminormal(#[from] SeminormalError),
}
