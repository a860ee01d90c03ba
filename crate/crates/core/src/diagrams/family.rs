use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::natural::{natural_ed, repeated_step_ed};
use crate::critical::{build_critical_ed, enumerate_critical_pairs, join_pair, CriticalPair};
use crate::order::ElementaryDiagram;
use crate::srs::{RuleInstance, SrsSystem, Step, Word};

/// Where a cell of a tiling came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Natural,
    Critical,
    Whiskered,
    Transposed,
    Improper,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Natural => "natural",
            Provenance::Critical => "critical",
            Provenance::Whiskered => "whiskered",
            Provenance::Transposed => "transposed",
            Provenance::Improper => "improper",
        })
    }
}

/// A selection procedure: for an ordered pair of steps out of one word,
/// returns the cell to adjoin.
pub trait EdFamily {
    fn cell_for(&self, top: &Step, left: &Step) -> Option<(ElementaryDiagram, Provenance)>;

    /// Membership test; returns how `ed` arises in the family.
    fn classify(&self, ed: &ElementaryDiagram) -> Option<Provenance>;
}

/// Supplies one critical e.d. per ordered critical pair.
pub trait CriticalResolver {
    fn resolve(&self, pair: &CriticalPair) -> Option<ElementaryDiagram>;
}

/// Resolves critical pairs by breadth-first joinability search.
#[derive(Clone, Debug)]
pub struct JoinResolver<'a> {
    pub sys: &'a SrsSystem,
    pub bound: usize,
}

impl CriticalResolver for JoinResolver<'_> {
    fn resolve(&self, pair: &CriticalPair) -> Option<ElementaryDiagram> {
        let j = join_pair(pair, self.sys, self.bound)?;
        build_critical_ed(pair, &j).ok()
    }
}

/// The family of whiskered natural e.d.s, whiskered critical e.d.s and their
/// transposes, with critical cells precomputed per ordered critical pair.
#[derive(Clone, Debug)]
pub struct StandardEds {
    critical: HashMap<(RuleInstance, RuleInstance), ElementaryDiagram>,
    unresolved: Vec<CriticalPair>,
}

/// Outcome of splitting two redexes of one word.
enum Layout {
    Same,
    /// Disjoint with the top redex first; `(u, w, v)` around them.
    TopFirst(Word, Word, Word),
    LeftFirst(Word, Word, Word),
    /// Overlapping; `(u, v)` around the union window and the bare pair.
    Overlap(Word, Word, RuleInstance, RuleInstance),
}

fn layout(top: &RuleInstance, left: &RuleInstance) -> Layout {
    if top == left {
        return Layout::Same;
    }
    let src = top.source();
    let (p1, e1) = (top.left.len(), top.left.len() + top.rule.lhs.len());
    let (p2, e2) = (left.left.len(), left.left.len() + left.rule.lhs.len());
    if e1 <= p2 {
        Layout::TopFirst(src.prefix(p1), src.slice(e1..p2), src.suffix_from(e2))
    } else if e2 <= p1 {
        Layout::LeftFirst(src.prefix(p2), src.slice(e2..p1), src.suffix_from(e1))
    } else {
        let lo = p1.min(p2);
        let hi = e1.max(e2);
        let v_len = src.len() - hi;
        Layout::Overlap(
            src.prefix(lo),
            src.suffix_from(hi),
            top.unwhisker(lo, v_len).expect("window contains the redex"),
            left.unwhisker(lo, v_len).expect("window contains the redex"),
        )
    }
}

fn whisker_provenance(u: &Word, v: &Word, bare: Provenance) -> Provenance {
    if u.is_empty() && v.is_empty() {
        bare
    } else {
        Provenance::Whiskered
    }
}

impl StandardEds {
    /// Resolves every critical pair of `sys` up front. Pairs the resolver
    /// cannot handle are kept in [`unresolved`](Self::unresolved).
    pub fn new(sys: &SrsSystem, resolver: &dyn CriticalResolver) -> StandardEds {
        let mut critical = HashMap::new();
        let mut unresolved = Vec::new();
        for pair in enumerate_critical_pairs(sys) {
            match resolver.resolve(&pair) {
                Some(ed) => {
                    critical.insert((pair.first.clone(), pair.second.clone()), ed);
                }
                None => unresolved.push(pair),
            }
        }
        StandardEds { critical, unresolved }
    }

    pub fn unresolved(&self) -> &[CriticalPair] {
        &self.unresolved
    }

    pub fn critical_cells(&self) -> impl Iterator<Item = &ElementaryDiagram> {
        self.critical.values()
    }

    pub fn critical_for(&self, first: &RuleInstance, second: &RuleInstance) -> Option<&ElementaryDiagram> {
        self.critical.get(&(first.clone(), second.clone()))
    }
}

impl EdFamily for StandardEds {
    fn cell_for(&self, top: &Step, left: &Step) -> Option<(ElementaryDiagram, Provenance)> {
        if top.source != left.source {
            return None;
        }
        match layout(&top.instance, &left.instance) {
            Layout::Same => Some((repeated_step_ed(top), Provenance::Improper)),
            Layout::TopFirst(u, w, v) => {
                let ed = natural_ed(&top.instance.rule, &w, &left.instance.rule).whisker(&u, &v);
                Some((ed, whisker_provenance(&u, &v, Provenance::Natural)))
            }
            Layout::LeftFirst(u, w, v) => {
                let ed = natural_ed(&left.instance.rule, &w, &top.instance.rule)
                    .transpose()
                    .whisker(&u, &v);
                Some((ed, Provenance::Transposed))
            }
            Layout::Overlap(u, v, t, l) => {
                let ed = self.critical.get(&(t, l))?.whisker(&u, &v);
                Some((ed, whisker_provenance(&u, &v, Provenance::Critical)))
            }
        }
    }

    fn classify(&self, ed: &ElementaryDiagram) -> Option<Provenance> {
        let (Some(top), Some(left)) = (ed.top.step(), ed.left.step()) else {
            // Dashed-sided squares are the improper shapes.
            return ed.validate().ok().map(|_| Provenance::Improper);
        };
        let (cell, prov) = self.cell_for(top, left)?;
        if &cell == ed {
            return Some(prov);
        }
        // Transposed critical cells are members as well.
        if let Layout::Overlap(u, v, t, l) = layout(&top.instance, &left.instance) {
            let other = self.critical.get(&(l, t))?.transpose().whisker(&u, &v);
            if &other == ed {
                return Some(Provenance::Transposed);
            }
        }
        None
    }
}
