//! Natural squares, e.d. families, tilings of reduction diagrams, zigzag
//! completion, DOT export and the bounded path-congruence oracle.

mod congruence;
mod dot;
mod family;
mod natural;
mod tiling;

pub use congruence::{path_from_positions, paths_equivalent_mod_cells, CellFamily, Equivalence};
pub use dot::{export_dot, export_reach_dot};
pub use family::{CriticalResolver, EdFamily, JoinResolver, Provenance, StandardEds};
pub use natural::{natural_ed, repeated_step_ed};
pub use tiling::{
    cell_for_arrows, complete_peak, complete_zigzag, Boundary, Edge, OpenCorner, Tiling, Vertex,
    ZigzagCompletion, DEFAULT_FUEL,
};

use thiserror::Error;

use crate::order::{EdError, ElementaryDiagram};
use crate::srs::{SrsError, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("cell does not fit the corner: {0}")]
    CornerMismatch(String),
    #[error("no cell for corner {0}")]
    NoCellForCorner(String),
    #[error("fuel of {fuel} adjoinings exhausted")]
    FuelExhausted { fuel: usize },
    #[error("paths are not parallel: {0}")]
    NotParallel(String),
    #[error("inconsistent boundary: {0}")]
    BoundaryMismatch(String),
    #[error(transparent)]
    Ed(#[from] EdError),
    #[error(transparent)]
    Srs(#[from] SrsError),
}

/// `u · E · v`.
pub fn whisker(ed: &ElementaryDiagram, u: &Word, v: &Word) -> ElementaryDiagram {
    ed.whisker(u, v)
}

pub fn transpose(ed: &ElementaryDiagram) -> ElementaryDiagram {
    ed.transpose()
}
