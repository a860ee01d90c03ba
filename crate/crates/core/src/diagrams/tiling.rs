use std::collections::BTreeSet;

use num::{BigInt, BigRational};

use super::family::{EdFamily, Provenance};
use super::DiagramError;
use crate::order::{Arrow, ElementaryDiagram};
use crate::srs::{Direction, Path, Step, Word, Zigzag};

/// Default adjoining budget for completions.
pub const DEFAULT_FUEL: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub label: Word,
    pub x: BigRational,
    pub y: BigRational,
    /// Outgoing horizontal edge.
    pub right: Option<usize>,
    /// Outgoing vertical edge.
    pub down: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub arrow: Arrow,
    pub horizontal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenCorner {
    pub vertex: usize,
    pub label: Word,
    pub right: Arrow,
    pub down: Arrow,
}

/// The four sides of a complete tiling grown from an initial peak.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Boundary {
    pub top: Path,
    pub left: Path,
    pub right: Path,
    pub bottom: Path,
}

/// A planar reduction diagram assembled from cells. Vertices carry exact
/// rational coordinates; every vertex has at most one outgoing edge in each
/// direction.
#[derive(Clone, Debug, Default)]
pub struct Tiling {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub cells: Vec<(ElementaryDiagram, Provenance)>,
    closed: BTreeSet<usize>,
    adjoined: usize,
}

fn rat(i: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

fn arrow_for(step: &Step) -> Arrow {
    Arrow::Solid(step.clone())
}

/// The cell for a corner whose arrows may be dashed.
pub fn cell_for_arrows(
    family: &dyn EdFamily,
    right: &Arrow,
    down: &Arrow,
) -> Option<(ElementaryDiagram, Provenance)> {
    match (right, down) {
        (Arrow::Solid(t), Arrow::Solid(l)) => family.cell_for(t, l),
        (Arrow::Dashed(_), Arrow::Solid(l)) => Some((ElementaryDiagram::dashed_top(l.clone()), Provenance::Improper)),
        (Arrow::Solid(t), Arrow::Dashed(_)) => Some((ElementaryDiagram::dashed_left(t.clone()), Provenance::Improper)),
        (Arrow::Dashed(w), Arrow::Dashed(_)) => Some((ElementaryDiagram::dashed_both(w.clone()), Provenance::Improper)),
    }
}

impl Tiling {
    fn add_vertex(&mut self, label: Word, x: BigRational, y: BigRational) -> usize {
        self.vertices.push(Vertex {
            label,
            x,
            y,
            right: None,
            down: None,
        });
        self.vertices.len() - 1
    }

    fn add_edge(&mut self, from: usize, to: usize, arrow: Arrow, horizontal: bool) {
        let id = self.edges.len();
        self.edges.push(Edge {
            from,
            to,
            arrow,
            horizontal,
        });
        let v = &mut self.vertices[from];
        if horizontal {
            v.right = Some(id);
        } else {
            v.down = Some(id);
        }
    }

    /// Lays `arrows` out from `from` to `to` (an existing vertex, or a new
    /// one at the far end when `None`), spacing intermediate vertices evenly.
    fn add_chain(&mut self, from: usize, arrows: &[Arrow], horizontal: bool, len: BigRational, to: Option<usize>) -> usize {
        let (x0, y0) = (self.vertices[from].x.clone(), self.vertices[from].y.clone());
        let m = arrows.len().max(1) as i64;
        let mut cur = from;
        for (t, a) in arrows.iter().enumerate() {
            let last = t + 1 == arrows.len();
            let next = match (last, to) {
                (true, Some(end)) => end,
                _ => {
                    let off = len.clone() * rat(t as i64 + 1) / rat(m);
                    let (x, y) = if horizontal {
                        (x0.clone() + off, y0.clone())
                    } else {
                        (x0.clone(), y0.clone() + off)
                    };
                    self.add_vertex(a.target().clone(), x, y)
                }
            };
            self.add_edge(cur, next, a.clone(), horizontal);
            cur = next;
        }
        cur
    }

    /// The initial diagram of a peak: `top` drawn rightwards and `left`
    /// downwards from a common start vertex (vertex 0).
    pub fn initial(top: &Path, left: &Path) -> Result<Tiling, DiagramError> {
        if top.start != left.start {
            return Err(DiagramError::NotParallel(format!(
                "peak sides start at {} and {}",
                top.start, left.start
            )));
        }
        Ok(Tiling::initial_with_start(&top.start, top, left))
    }

    fn from_arrows(start: Word, top: &[Arrow], left: &[Arrow]) -> Tiling {
        let mut t = Tiling::default();
        let o = t.add_vertex(start, rat(0), rat(0));
        t.add_chain(o, top, true, rat(top.len() as i64), None);
        t.add_chain(o, left, false, rat(left.len() as i64), None);
        t
    }

    fn initial_with_start(start: &Word, top: &Path, left: &Path) -> Tiling {
        let top: Vec<Arrow> = top.steps.iter().map(arrow_for).collect();
        let left: Vec<Arrow> = left.steps.iter().map(arrow_for).collect();
        Tiling::from_arrows(start.clone(), &top, &left)
    }

    /// A tiling consisting of one cell.
    pub fn from_cell(ed: &ElementaryDiagram, provenance: Provenance) -> Result<Tiling, DiagramError> {
        ed.validate()?;
        let mut t = Tiling::from_arrows(ed.x().clone(), std::slice::from_ref(&ed.top), std::slice::from_ref(&ed.left));
        t.adjoin_at_corner(0, ed.clone(), provenance)?;
        Ok(t)
    }

    /// The staircase diagram of a zigzag: each peak `a_j` has its backward
    /// run drawn rightwards and its forward run downwards. Returns the
    /// tiling and the vertices of the zigzag's start and end.
    pub fn staircase(z: &Zigzag) -> Result<(Tiling, usize, usize), DiagramError> {
        z.validate()?;
        let mut peaks: Vec<(Vec<Step>, Vec<Step>)> = Vec::new();
        let (mut h, mut v): (Vec<Step>, Vec<Step>) = (Vec::new(), Vec::new());
        for (dir, s) in &z.legs {
            match dir {
                Direction::Backward => {
                    if !v.is_empty() {
                        peaks.push((std::mem::take(&mut h), std::mem::take(&mut v)));
                    }
                    h.push(s.clone());
                }
                Direction::Forward => v.push(s.clone()),
            }
        }
        if !h.is_empty() || !v.is_empty() {
            peaks.push((h, v));
        }
        let mut t = Tiling::default();
        let start = t.add_vertex(z.start.clone(), rat(0), rat(0));
        let mut prev = start;
        for (h, v) in peaks {
            // The backward run, read from the peak, is a forward path into `prev`.
            let h_path: Vec<Arrow> = h.iter().rev().map(arrow_for).collect();
            let apex_label = h.last().map(|s| s.source.clone()).unwrap_or_else(|| t.vertices[prev].label.clone());
            let apex = if h_path.is_empty() {
                prev
            } else {
                let x = t.vertices[prev].x.clone() - rat(h_path.len() as i64);
                let y = t.vertices[prev].y.clone();
                let a = t.add_vertex(apex_label, x, y);
                t.add_chain(a, &h_path, true, rat(h_path.len() as i64), Some(prev));
                a
            };
            let v_path: Vec<Arrow> = v.iter().map(arrow_for).collect();
            prev = if v_path.is_empty() {
                apex
            } else {
                t.add_chain(apex, &v_path, false, rat(v_path.len() as i64), None)
            };
        }
        Ok((t, start, prev))
    }

    pub fn open_corners(&self) -> Vec<OpenCorner> {
        let mut out: Vec<(usize, OpenCorner)> = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.closed.contains(i))
            .filter_map(|(i, v)| {
                let (r, d) = (v.right?, v.down?);
                Some((
                    i,
                    OpenCorner {
                        vertex: i,
                        label: v.label.clone(),
                        right: self.edges[r].arrow.clone(),
                        down: self.edges[d].arrow.clone(),
                    },
                ))
            })
            .collect();
        out.sort_by(|(a, _), (b, _)| self.position_cmp(*a, *b));
        out.into_iter().map(|(_, c)| c).collect()
    }

    /// Leftmost first, then topmost.
    fn position_cmp(&self, a: usize, b: usize) -> std::cmp::Ordering {
        let (va, vb) = (&self.vertices[a], &self.vertices[b]);
        va.x.cmp(&vb.x).then_with(|| va.y.cmp(&vb.y)).then(a.cmp(&b))
    }

    pub fn is_complete(&self) -> bool {
        self.open_corners().is_empty()
    }

    pub fn adjoin_count(&self) -> usize {
        self.adjoined
    }

    /// Glues `ed` into the open corner at `vertex`: its top-right corner is
    /// identified with the end of the horizontal arrow, its bottom-left
    /// corner with the end of the vertical arrow.
    pub fn adjoin_at_corner(&mut self, vertex: usize, ed: ElementaryDiagram, provenance: Provenance) -> Result<(), DiagramError> {
        let v = self.vertices.get(vertex).ok_or(DiagramError::CornerMismatch(format!("no vertex {vertex}")))?;
        let (Some(re), Some(de)) = (v.right, v.down) else {
            return Err(DiagramError::CornerMismatch(format!("vertex {vertex} is not a corner")));
        };
        if self.closed.contains(&vertex) {
            return Err(DiagramError::CornerMismatch(format!("corner {vertex} is already closed")));
        }
        if self.edges[re].arrow != ed.top || self.edges[de].arrow != ed.left {
            return Err(DiagramError::CornerMismatch(format!(
                "cell sides ({}, {}) do not match corner arrows at {}",
                ed.top.render(usize::MAX),
                ed.left.render(usize::MAX),
                v.label
            )));
        }
        let (y, z) = (self.edges[re].to, self.edges[de].to);
        if self.vertices[y].down.is_some() || self.vertices[z].right.is_some() {
            return Err(DiagramError::CornerMismatch(format!(
                "corner at {} is not open",
                self.vertices[vertex].label
            )));
        }
        let wx = self.vertices[y].x.clone();
        let wy = self.vertices[z].y.clone();
        let w = self.add_vertex(ed.w().clone(), wx.clone(), wy.clone());
        let side = |p: &Path| -> Vec<Arrow> {
            if p.is_empty() {
                vec![Arrow::Dashed(p.start.clone())]
            } else {
                p.steps.iter().map(arrow_for).collect()
            }
        };
        let dy = wy - self.vertices[y].y.clone();
        let dx = wx - self.vertices[z].x.clone();
        self.add_chain(y, &side(&ed.right), false, dy, Some(w));
        self.add_chain(z, &side(&ed.bottom), true, dx, Some(w));
        self.closed.insert(vertex);
        self.cells.push((ed, provenance));
        self.adjoined += 1;
        Ok(())
    }

    fn follow(&self, from: usize, horizontal: bool) -> (Vec<Arrow>, usize) {
        let mut arrows = Vec::new();
        let mut cur = from;
        loop {
            let v = &self.vertices[cur];
            let next = if horizontal { v.right } else { v.down };
            match next {
                Some(e) => {
                    arrows.push(self.edges[e].arrow.clone());
                    cur = self.edges[e].to;
                }
                None => return (arrows, cur),
            }
        }
    }

    fn chain_path(&self, from: usize, horizontal: bool) -> (Path, usize) {
        let (arrows, end) = self.follow(from, horizontal);
        let steps = arrows.iter().filter_map(|a| a.step().cloned()).collect();
        (
            Path {
                start: self.vertices[from].label.clone(),
                steps,
            },
            end,
        )
    }

    /// The solid steps along the maximal horizontal chain from `from`.
    pub fn path_right(&self, from: usize) -> (Path, usize) {
        self.chain_path(from, true)
    }

    /// The solid steps along the maximal vertical chain from `from`.
    pub fn path_down(&self, from: usize) -> (Path, usize) {
        self.chain_path(from, false)
    }

    /// Sides of a tiling grown from vertex 0; fails when the right and bottom
    /// sides do not meet.
    pub fn boundary(&self) -> Result<Boundary, DiagramError> {
        if self.vertices.is_empty() {
            return Ok(Boundary {
                top: Path::empty(Word::empty()),
                left: Path::empty(Word::empty()),
                right: Path::empty(Word::empty()),
                bottom: Path::empty(Word::empty()),
            });
        }
        let (top, t_end) = self.path_right(0);
        let (left, l_end) = self.path_down(0);
        let (right, r_end) = self.path_down(t_end);
        let (bottom, b_end) = self.path_right(l_end);
        if r_end != b_end {
            return Err(DiagramError::BoundaryMismatch(format!(
                "right side ends at {} but bottom side ends at {}",
                self.vertices[r_end].label, self.vertices[b_end].label
            )));
        }
        for p in [&top, &left, &right, &bottom] {
            p.validate()?;
        }
        Ok(Boundary { top, left, right, bottom })
    }

    /// Checks every stored cell and, if complete, that `top·right` and
    /// `left·bottom` are parallel paths.
    pub fn validate(&self) -> Result<(), DiagramError> {
        for (ed, _) in &self.cells {
            ed.validate()?;
        }
        for e in &self.edges {
            let (a, b) = (&self.vertices[e.from], &self.vertices[e.to]);
            if e.arrow.source() != &a.label || e.arrow.target() != &b.label {
                return Err(DiagramError::BoundaryMismatch(format!("edge {} -> {} is mislabeled", a.label, b.label)));
            }
            let ok = if e.horizontal {
                a.y == b.y && a.x < b.x
            } else {
                a.x == b.x && a.y < b.y
            };
            if !ok {
                return Err(DiagramError::BoundaryMismatch(format!("edge {} -> {} is misplaced", a.label, b.label)));
            }
        }
        if self.is_complete() && !self.vertices.is_empty() {
            let b = self.boundary()?;
            let p = b.top.then(&b.right)?;
            let q = b.left.then(&b.bottom)?;
            if p.start != q.start || p.end() != q.end() {
                return Err(DiagramError::NotParallel("boundary paths are not parallel".into()));
            }
        }
        Ok(())
    }

    fn in_region(&self, v: usize, r: &(BigRational, BigRational, BigRational, BigRational)) -> bool {
        let p = &self.vertices[v];
        p.x >= r.0 && p.x < r.1 && p.y >= r.2 && p.y < r.3
    }

    /// Adjoins family cells at open corners, leftmost-topmost first, until
    /// none remain (or none remain inside `regions`, when given).
    fn run(
        &mut self,
        family: &dyn EdFamily,
        fuel: usize,
        regions: Option<&[(BigRational, BigRational, BigRational, BigRational)]>,
    ) -> Result<(), DiagramError> {
        loop {
            let next = self
                .open_corners()
                .into_iter()
                .find(|c| regions.is_none_or(|rs| rs.iter().any(|r| self.in_region(c.vertex, r))));
            let Some(corner) = next else {
                return Ok(());
            };
            if self.adjoined >= fuel {
                return Err(DiagramError::FuelExhausted { fuel });
            }
            let (ed, prov) = cell_for_arrows(family, &corner.right, &corner.down).ok_or_else(|| {
                DiagramError::NoCellForCorner(format!(
                    "{} with arrows {} and {}",
                    corner.label,
                    corner.right.render(usize::MAX),
                    corner.down.render(usize::MAX)
                ))
            })?;
            self.adjoin_at_corner(corner.vertex, ed, prov)?;
        }
    }

    /// Completes the tiling by repeated adjoining.
    pub fn complete(&mut self, family: &dyn EdFamily, fuel: usize) -> Result<(), DiagramError> {
        self.run(family, fuel, None)
    }
}

/// Completes the peak `top`/`left` over `family`.
pub fn complete_peak(family: &dyn EdFamily, top: &Path, left: &Path, fuel: usize) -> Result<Tiling, DiagramError> {
    let mut t = Tiling::initial(top, left)?;
    t.complete(family, fuel)?;
    t.validate()?;
    Ok(t)
}

#[derive(Clone, Debug)]
pub struct ZigzagCompletion {
    pub common: Word,
    pub from_start: Path,
    pub from_end: Path,
    pub tiling: Tiling,
    /// Open corners at the start of each sweep.
    pub sweeps: Vec<usize>,
}

/// Completes a zigzag by sweeps: each sweep completes the squares under
/// the current open corners, leaving one corner fewer for the next.
pub fn complete_zigzag(family: &dyn EdFamily, z: &Zigzag, fuel: usize) -> Result<ZigzagCompletion, DiagramError> {
    let (mut t, start, end) = Tiling::staircase(z)?;
    let mut sweeps = Vec::new();
    loop {
        let corners = t.open_corners();
        if corners.is_empty() {
            break;
        }
        sweeps.push(corners.len());
        let regions: Vec<_> = corners
            .iter()
            .map(|c| {
                let (_, r_end) = t.follow(c.vertex, true);
                let (_, d_end) = t.follow(c.vertex, false);
                let v = &t.vertices[c.vertex];
                (v.x.clone(), t.vertices[r_end].x.clone(), v.y.clone(), t.vertices[d_end].y.clone())
            })
            .collect();
        t.run(family, fuel, Some(&regions))?;
    }
    t.validate()?;
    let (from_start, s_end) = t.path_down(start);
    let (from_end, e_end) = t.path_right(end);
    if s_end != e_end {
        return Err(DiagramError::BoundaryMismatch(format!(
            "zigzag sides end at {} and {}",
            t.vertices[s_end].label, t.vertices[e_end].label
        )));
    }
    Ok(ZigzagCompletion {
        common: t.vertices[s_end].label.clone(),
        from_start,
        from_end,
        tiling: t,
        sweeps,
    })
}

impl Tiling {
    /// Number of cells that are not improper.
    pub fn proper_cells(&self) -> usize {
        self.cells.iter().filter(|(_, p)| *p != Provenance::Improper).count()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

}
