//! Critical pairs, joinability search and local-confluence reports.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::order::{EdError, ElementaryDiagram};
use crate::srs::{Path, RuleInstance, SrsSystem, Step, Word};

/// Default depth of the joinability search.
pub const DEFAULT_JOIN_BOUND: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairKind {
    /// The two redexes overlap without one sitting strictly inside the other.
    Overlap,
    /// One left-hand side is a subword of the other with non-empty context on both sides.
    Inclusion,
}

/// Two distinct rule instances rewriting the same minimal peak word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CriticalPair {
    pub kind: PairKind,
    pub first: RuleInstance,
    pub second: RuleInstance,
    pub peak: Word,
}

impl CriticalPair {
    pub fn first_step(&self) -> Step {
        Step::new(self.first.clone())
    }

    pub fn second_step(&self) -> Step {
        Step::new(self.second.clone())
    }

    pub fn swapped(&self) -> CriticalPair {
        CriticalPair {
            kind: self.kind,
            first: self.second.clone(),
            second: self.first.clone(),
            peak: self.peak.clone(),
        }
    }

    pub fn render(&self, n: usize) -> String {
        format!(
            "{} ({}, {}) [{:?}]",
            self.peak.render(n),
            self.first.render(n),
            self.second.render(n),
            self.kind
        )
    }
}

impl fmt::Display for CriticalPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}, {})", self.peak, self.first, self.second)
    }
}

/// Places `inner` at offset `d` against `outer` at offset 0 and returns the
/// union word when the letters agree on the overlap.
fn overlap_word(outer: &Word, inner: &Word, d: usize) -> Option<Word> {
    let a = outer.letters();
    let b = inner.letters();
    let end = a.len().min(d + b.len());
    if (d..end).any(|p| a[p] != b[p - d]) {
        return None;
    }
    if d + b.len() <= a.len() {
        Some(outer.clone())
    } else {
        Some(outer.concat(&inner.suffix_from(a.len() - d)))
    }
}

/// All ordered critical pairs, sorted by peak, then first and second instance.
pub fn enumerate_critical_pairs(sys: &SrsSystem) -> Vec<CriticalPair> {
    let mut out = Vec::new();
    for r1 in sys.rules() {
        for r2 in sys.rules() {
            for d in 0..r1.lhs.len() {
                if d == 0 && r1.name == r2.name {
                    continue;
                }
                let Some(peak) = overlap_word(&r1.lhs, &r2.lhs, d) else {
                    continue;
                };
                let i1 = RuleInstance::new(Word::empty(), r1.clone(), peak.suffix_from(r1.lhs.len()));
                let i2 = RuleInstance::new(peak.prefix(d), r2.clone(), peak.suffix_from(d + r2.lhs.len()));
                let strict_inside = |i: &RuleInstance| !i.left.is_empty() && !i.right.is_empty();
                let kind = if strict_inside(&i1) || strict_inside(&i2) {
                    PairKind::Inclusion
                } else {
                    PairKind::Overlap
                };
                out.push(CriticalPair {
                    kind,
                    first: i1.clone(),
                    second: i2.clone(),
                    peak: peak.clone(),
                });
                out.push(CriticalPair {
                    kind,
                    first: i2,
                    second: i1,
                    peak,
                });
            }
        }
    }
    out.sort_by(|a, b| {
        a.peak
            .cmp(&b.peak)
            .then_with(|| a.first.cmp(&b.first))
            .then_with(|| a.second.cmp(&b.second))
    });
    out.dedup();
    out
}

/// Convergence paths from the two reducts of a peak.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Joinability {
    pub target: Word,
    pub right_path: Path,
    pub bottom_path: Path,
}

/// Breadth-first distances and parent steps from `start`, to depth `bound`.
fn bfs_tree(sys: &SrsSystem, start: &Word, bound: usize) -> HashMap<Word, (usize, Option<Step>)> {
    let mut seen: HashMap<Word, (usize, Option<Step>)> = HashMap::new();
    seen.insert(start.clone(), (0, None));
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(cur) = queue.pop_front() {
        let depth = seen[&cur].0;
        if depth >= bound {
            continue;
        }
        for step in sys.steps_from(&cur) {
            if !seen.contains_key(&step.target) {
                queue.push_back(step.target.clone());
                seen.insert(step.target.clone(), (depth + 1, Some(step)));
            }
        }
    }
    seen
}

fn path_to(tree: &HashMap<Word, (usize, Option<Step>)>, start: &Word, end: &Word) -> Path {
    let mut steps = Vec::new();
    let mut cur = end.clone();
    while let Some((_, Some(step))) = tree.get(&cur) {
        cur = step.source.clone();
        steps.push(step.clone());
    }
    steps.reverse();
    Path {
        start: start.clone(),
        steps,
    }
}

/// Joins two words by forward paths of length at most `bound` each, choosing
/// the common reduct with the least total distance (ties by word order).
pub fn join_words(sys: &SrsSystem, b: &Word, c: &Word, bound: usize) -> Option<Joinability> {
    let tb = bfs_tree(sys, b, bound);
    let tc = bfs_tree(sys, c, bound);
    let target = tb
        .iter()
        .filter_map(|(w, (db, _))| tc.get(w).map(|(dc, _)| (db + dc, w)))
        .min()?
        .1
        .clone();
    Some(Joinability {
        right_path: path_to(&tb, b, &target),
        bottom_path: path_to(&tc, c, &target),
        target,
    })
}

pub fn join_pair(pair: &CriticalPair, sys: &SrsSystem, bound: usize) -> Option<Joinability> {
    join_words(sys, &pair.first.target(), &pair.second.target(), bound)
}

/// The square with `pair.first` on top, `pair.second` on the left and the
/// join paths on the right and bottom.
pub fn build_critical_ed(pair: &CriticalPair, j: &Joinability) -> Result<ElementaryDiagram, EdError> {
    ElementaryDiagram::proper(
        pair.first_step(),
        pair.second_step(),
        j.right_path.clone(),
        j.bottom_path.clone(),
    )
}

#[derive(Clone, Debug)]
pub struct ConfluenceReport {
    pub pairs: usize,
    pub bound: usize,
    pub failures: Vec<CriticalPair>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Joins every critical pair; passes iff all of them join within `bound`.
pub fn local_confluence_report(sys: &SrsSystem, bound: usize) -> ConfluenceReport {
    let pairs = enumerate_critical_pairs(sys);
    let failures = pairs
        .iter()
        .filter(|p| join_pair(p, sys, bound).is_none())
        .cloned()
        .collect();
    ConfluenceReport {
        pairs: pairs.len(),
        bound,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::srs::Rule;

    fn w(s: &str) -> Word {
        Word::parse(s, 9).unwrap()
    }

    #[test]
    fn idempotent_rule_has_two_ordered_pairs() {
        let sys = SrsSystem::new(1, vec![Rule::new("a1", w("11"), w("1")).unwrap()], None).unwrap();
        let pairs = enumerate_critical_pairs(&sys);
        assert_eq!(pairs.len(), 2);
        assert!(pairs.iter().all(|p| p.peak == w("111") && p.kind == PairKind::Overlap));
        let j = join_pair(&pairs[0], &sys, DEFAULT_JOIN_BOUND).unwrap();
        // Both reducts are already 11.
        assert_eq!(j.target, w("11"));
        assert_eq!((j.right_path.len(), j.bottom_path.len()), (0, 0));
    }

    #[test]
    fn disjoint_rules_have_no_pairs() {
        let sys = SrsSystem::new(
            2,
            vec![
                Rule::new("x", w("12"), w("1")).unwrap(),
                Rule::new("y", w("21"), w("1")).unwrap(),
            ],
            None,
        )
        .unwrap();
        // "12" and "21" overlap on "121" and "212".
        assert_eq!(enumerate_critical_pairs(&sys).len(), 4);
        let none = SrsSystem::new(2, vec![Rule::new("x", w("12"), w("2")).unwrap()], None).unwrap();
        assert!(enumerate_critical_pairs(&none).is_empty());
        assert!(local_confluence_report(&none, 4).passed());
    }

    #[test]
    fn interior_inclusion_is_classified() {
        let sys = SrsSystem::new(
            3,
            vec![
                Rule::new("big", w("123"), w("1")).unwrap(),
                Rule::new("mid", w("2"), w("3")).unwrap(),
            ],
            None,
        )
        .unwrap();
        let pairs = enumerate_critical_pairs(&sys);
        assert_eq!(pairs.len(), 2);
        assert!(pairs.iter().all(|p| p.kind == PairKind::Inclusion));
    }
}
