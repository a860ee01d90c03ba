use std::fmt;

use thiserror::Error;

use super::InstanceOrder;
use crate::srs::{Path, RuleInstance, SrsError, Step, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EdError {
    #[error("malformed elementary diagram: {0}")]
    Malformed(String),
    #[error(transparent)]
    Srs(#[from] SrsError),
}

/// A side of a square: a solid rewrite step or a dashed identity at a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Arrow {
    Solid(Step),
    Dashed(Word),
}

impl Arrow {
    pub fn source(&self) -> &Word {
        match self {
            Arrow::Solid(s) => &s.source,
            Arrow::Dashed(w) => w,
        }
    }

    pub fn target(&self) -> &Word {
        match self {
            Arrow::Solid(s) => &s.target,
            Arrow::Dashed(w) => w,
        }
    }

    pub fn step(&self) -> Option<&Step> {
        match self {
            Arrow::Solid(s) => Some(s),
            Arrow::Dashed(_) => None,
        }
    }

    pub fn instance(&self) -> Option<&RuleInstance> {
        self.step().map(|s| &s.instance)
    }

    pub fn is_dashed(&self) -> bool {
        matches!(self, Arrow::Dashed(_))
    }

    pub fn whisker(&self, u: &Word, v: &Word) -> Arrow {
        match self {
            Arrow::Solid(s) => Arrow::Solid(s.whisker(u, v)),
            Arrow::Dashed(w) => Arrow::Dashed(Word::concat3(u, w, v)),
        }
    }

    /// The arrow as a path: one step, or empty when dashed.
    pub fn as_path(&self) -> Path {
        match self {
            Arrow::Solid(s) => Path::single(s.clone()),
            Arrow::Dashed(w) => Path::empty(w.clone()),
        }
    }

    pub fn render(&self, n: usize) -> String {
        match self {
            Arrow::Solid(s) => s.instance.render(n),
            Arrow::Dashed(w) => format!("(dashed at {})", w.render(n)),
        }
    }
}

/// A square cell: `top` and `left` leave the corner `x`; `right` continues
/// from the end of `top`, `bottom` from the end of `left`, and both meet at
/// the convergence corner `w`. Empty side paths stand for dashed edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementaryDiagram {
    pub top: Arrow,
    pub left: Arrow,
    pub right: Path,
    pub bottom: Path,
}

impl ElementaryDiagram {
    pub fn new(top: Arrow, left: Arrow, right: Path, bottom: Path) -> Result<Self, EdError> {
        let ed = ElementaryDiagram {
            top,
            left,
            right,
            bottom,
        };
        ed.validate()?;
        Ok(ed)
    }

    pub fn proper(top: Step, left: Step, right: Path, bottom: Path) -> Result<Self, EdError> {
        ElementaryDiagram::new(Arrow::Solid(top), Arrow::Solid(left), right, bottom)
    }

    /// Dashed top: the left step is copied to the right side, bottom dashed.
    pub fn dashed_top(left: Step) -> Self {
        ElementaryDiagram {
            top: Arrow::Dashed(left.source.clone()),
            right: Path::single(left.clone()),
            bottom: Path::empty(left.target.clone()),
            left: Arrow::Solid(left),
        }
    }

    /// Dashed left: the top step is copied to the bottom side, right dashed.
    pub fn dashed_left(top: Step) -> Self {
        ElementaryDiagram::dashed_top(top).transpose()
    }

    pub fn dashed_both(w: Word) -> Self {
        ElementaryDiagram {
            top: Arrow::Dashed(w.clone()),
            left: Arrow::Dashed(w.clone()),
            right: Path::empty(w.clone()),
            bottom: Path::empty(w),
        }
    }

    pub fn validate(&self) -> Result<(), EdError> {
        if self.top.source() != self.left.source() {
            return Err(EdError::Malformed(format!(
                "top starts at {} but left starts at {}",
                self.top.source(),
                self.left.source()
            )));
        }
        if &self.right.start != self.top.target() {
            return Err(EdError::Malformed("right side does not start at the end of top".into()));
        }
        if &self.bottom.start != self.left.target() {
            return Err(EdError::Malformed("bottom side does not start at the end of left".into()));
        }
        self.right.validate()?;
        self.bottom.validate()?;
        if self.right.end() != self.bottom.end() {
            return Err(EdError::Malformed(format!(
                "right ends at {} but bottom ends at {}",
                self.right.end(),
                self.bottom.end()
            )));
        }
        // A dashed side forces the opposite side to repeat the other arrow.
        if self.top.is_dashed() && (self.right != self.left.as_path() || !self.bottom.is_empty()) {
            return Err(EdError::Malformed("dashed top must copy the left arrow to the right".into()));
        }
        if self.left.is_dashed() && (self.bottom != self.top.as_path() || !self.right.is_empty()) {
            return Err(EdError::Malformed("dashed left must copy the top arrow to the bottom".into()));
        }
        Ok(())
    }

    pub fn is_proper(&self) -> bool {
        !self.top.is_dashed() && !self.left.is_dashed()
    }

    /// Top-left corner.
    pub fn x(&self) -> &Word {
        self.top.source()
    }

    /// Top-right corner.
    pub fn y(&self) -> &Word {
        self.top.target()
    }

    /// Bottom-left corner.
    pub fn z(&self) -> &Word {
        self.left.target()
    }

    /// Convergence corner.
    pub fn w(&self) -> &Word {
        self.right.end()
    }

    /// `u · E · v`.
    pub fn whisker(&self, u: &Word, v: &Word) -> ElementaryDiagram {
        ElementaryDiagram {
            top: self.top.whisker(u, v),
            left: self.left.whisker(u, v),
            right: self.right.whisker(u, v),
            bottom: self.bottom.whisker(u, v),
        }
    }

    /// Mirror along the diagonal: top and left swap, right and bottom swap.
    pub fn transpose(&self) -> ElementaryDiagram {
        ElementaryDiagram {
            top: self.left.clone(),
            left: self.top.clone(),
            right: self.bottom.clone(),
            bottom: self.right.clone(),
        }
    }

    pub fn render(&self, n: usize) -> String {
        format!(
            "top {} | left {} | right {} | bottom {}",
            self.top.render(n),
            self.left.render(n),
            self.right.render(n),
            self.bottom.render(n)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdSide {
    Right,
    Bottom,
}

impl fmt::Display for EdSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdSide::Right => "right",
            EdSide::Bottom => "bottom",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecreasingWitness {
    /// Indices into the bottom (`j`) and right (`s`) paths, 1-based, 0 for none.
    Holds { j: usize, s: usize },
    Violated { side: EdSide, clause: String },
}

impl DecreasingWitness {
    pub fn holds(&self) -> bool {
        matches!(self, DecreasingWitness::Holds { .. })
    }
}

impl fmt::Display for DecreasingWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecreasingWitness::Holds { j, s } => write!(f, "decreasing with j={j}, s={s}"),
            DecreasingWitness::Violated { side, clause } => write!(f, "{side} side: {clause}"),
        }
    }
}

/// Searches for the smallest admissible index on one side. `same` is the
/// arrow that may reappear (up to `~`) on this side, `other` the arrow that
/// must dominate everything before it.
fn side_index(
    ord: &dyn InstanceOrder,
    same: Option<&RuleInstance>,
    other: Option<&RuleInstance>,
    steps: &[Step],
) -> Result<usize, String> {
    let gt = |x: Option<&RuleInstance>, d: &RuleInstance| x.is_some_and(|x| ord.gt(x, d));
    let below_other: Vec<bool> = steps.iter().map(|d| gt(other, &d.instance)).collect();
    let below_either: Vec<bool> = steps
        .iter()
        .zip(&below_other)
        .map(|(d, &o)| o || gt(same, &d.instance))
        .collect();
    let equiv: Vec<bool> = steps
        .iter()
        .map(|d| same.is_some_and(|x| ord.equiv(x, &d.instance)))
        .collect();
    // Prefix/suffix tables make each candidate index O(1).
    let m = steps.len();
    let mut prefix_other = vec![true; m + 1];
    for k in 0..m {
        prefix_other[k + 1] = prefix_other[k] && below_other[k];
    }
    let mut suffix_either = vec![true; m + 1];
    for k in (0..m).rev() {
        suffix_either[k] = suffix_either[k + 1] && below_either[k];
    }
    for j in 0..=m {
        let ok = if j == 0 {
            suffix_either[0]
        } else {
            equiv[j - 1] && prefix_other[j - 1] && suffix_either[j]
        };
        if ok {
            return Ok(j);
        }
    }
    let first_bad = below_either.iter().position(|b| !b).unwrap_or(0);
    Err(format!(
        "no admissible index; step {} ({}) is not below the opposite arrows",
        first_bad + 1,
        steps[first_bad].instance
    ))
}

/// The decreasing predicate on an elementary diagram: the bottom side needs
/// an index `j` with `u ~ d_j` (or `j = 0`), `l ≻ d_k` for `k < j` and
/// `l ≻ d_k` or `u ≻ d_k` for `k > j`; the right side symmetrically.
/// Dashed arrows take part in no comparison.
pub fn is_decreasing_ed(ord: &dyn InstanceOrder, ed: &ElementaryDiagram) -> (bool, DecreasingWitness) {
    let u = ed.top.instance();
    let l = ed.left.instance();
    let j = match side_index(ord, u, l, &ed.bottom.steps) {
        Ok(j) => j,
        Err(clause) => {
            return (
                false,
                DecreasingWitness::Violated {
                    side: EdSide::Bottom,
                    clause,
                },
            )
        }
    };
    let s = match side_index(ord, l, u, &ed.right.steps) {
        Ok(s) => s,
        Err(clause) => {
            return (
                false,
                DecreasingWitness::Violated {
                    side: EdSide::Right,
                    clause,
                },
            )
        }
    };
    (true, DecreasingWitness::Holds { j, s })
}
