//! Abstract string rewriting with decreasing elementary diagrams.
//!
//! Words, rules and instances live in [`srs`]; instance orders and
//! elementary diagrams in [`order`]; critical pairs in [`critical`];
//! tilings, zigzag completion and path congruence in [`diagrams`];
//! attractors and the word problem in [`seminormal`]; the 0-Hecke
//! presentations in [`hecke`].

pub mod critical;
pub mod diagrams;
pub mod document;
pub mod hecke;
pub mod order;
pub mod report;
pub mod seminormal;
pub mod srs;

pub use srs::{Path, Rule, RuleInstance, RuleRef, SrsError, SrsSystem, Step, Word, Zigzag};
