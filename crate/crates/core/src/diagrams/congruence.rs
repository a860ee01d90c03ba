use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::DiagramError;
use crate::order::ElementaryDiagram;
use crate::srs::{Path, RuleRef, Step, Word};

/// A named set of pairs of parallel paths.
#[derive(Clone, Debug, Default)]
pub struct CellFamily {
    pub name: String,
    pub members: Vec<(Path, Path)>,
    /// Also allow swapping adjacent steps at disjoint positions (the natural squares).
    pub naturals: bool,
}

impl CellFamily {
    pub fn new(name: impl Into<String>) -> Self {
        CellFamily {
            name: name.into(),
            ..CellFamily::default()
        }
    }

    /// Adds a pair, checking that both paths share source and target.
    pub fn push(&mut self, p: Path, q: Path) -> Result<(), DiagramError> {
        p.validate()?;
        q.validate()?;
        if p.start != q.start || p.end() != q.end() {
            return Err(DiagramError::NotParallel(format!(
                "{} ->> {} against {} ->> {}",
                p.start,
                p.end(),
                q.start,
                q.end()
            )));
        }
        self.members.push((p, q));
        Ok(())
    }

    /// Adds the two sides `top·right` and `left·bottom` of a square.
    pub fn push_square(&mut self, ed: &ElementaryDiagram) -> Result<(), DiagramError> {
        let p = ed.top.as_path().then(&ed.right)?;
        let q = ed.left.as_path().then(&ed.bottom)?;
        self.push(p, q)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn extend(&mut self, other: &CellFamily) {
        self.members.extend(other.members.iter().cloned());
        self.naturals |= other.naturals;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Equivalence {
    /// Found a chain of this many cell substitutions.
    Equivalent { substitutions: usize },
    /// Search budget spent without meeting.
    Unknown { explored: usize },
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent { .. })
    }
}

/// Steps as `(position, rule id)` from a fixed start word.
type Compact = Vec<(u32, u32)>;

struct Interner {
    ids: HashMap<String, u32>,
    rules: Vec<RuleRef>,
}

impl Interner {
    fn id(&mut self, r: &RuleRef) -> u32 {
        if let Some(&i) = self.ids.get(&r.name) {
            return i;
        }
        let i = self.rules.len() as u32;
        self.ids.insert(r.name.clone(), i);
        self.rules.push(r.clone());
        i
    }

    fn compact(&mut self, p: &Path) -> Compact {
        p.steps
            .iter()
            .map(|s| (s.position() as u32, self.id(s.rule())))
            .collect()
    }
}

struct Member {
    start: Word,
    from: Compact,
    to: Compact,
}

struct Search<'a> {
    rules: &'a [RuleRef],
    members: Vec<Member>,
    /// Members with non-empty source side, by the rule of their first step.
    by_first: HashMap<u32, Vec<usize>>,
    /// Members whose source side is empty (loop insertions).
    insertions: Vec<usize>,
    naturals: bool,
    max_len: usize,
}

impl Search<'_> {
    fn words(&self, start: &Word, c: &Compact) -> Vec<Word> {
        let mut out = Vec::with_capacity(c.len() + 1);
        let mut cur = start.clone();
        out.push(cur.clone());
        for &(pos, rid) in c {
            let r = &self.rules[rid as usize];
            cur = cur.splice(pos as usize, r.lhs.len(), &r.rhs);
            out.push(cur.clone());
        }
        out
    }

    fn neighbours(&self, start: &Word, c: &Compact) -> Vec<Compact> {
        let words = self.words(start, c);
        let mut out = Vec::new();
        if self.naturals {
            for i in 0..c.len().saturating_sub(1) {
                let (p1, r1) = c[i];
                let (p2, r2) = c[i + 1];
                let (l1, rh1) = (self.rules[r1 as usize].lhs.len() as u32, self.rules[r1 as usize].rhs.len() as u32);
                let (l2, rh2) = (self.rules[r2 as usize].lhs.len() as u32, self.rules[r2 as usize].rhs.len() as u32);
                let swapped = if p2 + l2 <= p1 {
                    Some([(p2, r2), (p1 + rh2 - l2, r1)])
                } else if p2 >= p1 + rh1 {
                    Some([(p2 + l1 - rh1, r2), (p1, r1)])
                } else {
                    None
                };
                if let Some(sw) = swapped {
                    let mut n = c.clone();
                    n[i] = sw[0];
                    n[i + 1] = sw[1];
                    out.push(n);
                }
            }
        }
        for i in 0..=c.len() {
            let w = &words[i];
            let candidates: Vec<usize> = match c.get(i) {
                Some((_, rid)) => self.by_first.get(rid).cloned().unwrap_or_default(),
                None => Vec::new(),
            };
            for &mi in candidates.iter().chain(self.insertions.iter()) {
                let m = &self.members[mi];
                if i + m.from.len() > c.len() || c.len() - m.from.len() + m.to.len() > self.max_len {
                    continue;
                }
                let offsets: Vec<u32> = if let Some(&(p0, _)) = m.from.first() {
                    // The first step pins the whisker.
                    match c[i].0.checked_sub(p0) {
                        Some(q) => vec![q],
                        None => continue,
                    }
                } else {
                    (0..=w.len().saturating_sub(m.start.len()) as u32).collect()
                };
                for q in offsets {
                    if !w.occurs_at(&m.start, q as usize) {
                        continue;
                    }
                    let matches = m
                        .from
                        .iter()
                        .enumerate()
                        .all(|(k, &(p, r))| c[i + k] == (p + q, r));
                    if !matches {
                        continue;
                    }
                    let mut n = Vec::with_capacity(c.len() - m.from.len() + m.to.len());
                    n.extend_from_slice(&c[..i]);
                    n.extend(m.to.iter().map(|&(p, r)| (p + q, r)));
                    n.extend_from_slice(&c[i + m.from.len()..]);
                    out.push(n);
                }
            }
        }
        out
    }
}

/// Semi-decides whether `p` and `q` are related by the congruence generated
/// by `base` under composition and whiskering: bidirectional breadth-first
/// search over paths, expanding at most `bound` paths in total.
pub fn paths_equivalent_mod_cells(
    u: &Word,
    p: &Path,
    q: &Path,
    base: &CellFamily,
    bound: usize,
) -> Result<Equivalence, DiagramError> {
    p.validate()?;
    q.validate()?;
    if &p.start != u || &q.start != u || p.end() != q.end() {
        return Err(DiagramError::NotParallel(format!(
            "paths {} ->> {} and {} ->> {} from {}",
            p.start,
            p.end(),
            q.start,
            q.end(),
            u
        )));
    }
    let mut interner = Interner {
        ids: HashMap::new(),
        rules: Vec::new(),
    };
    let cp = interner.compact(p);
    let cq = interner.compact(q);
    if cp == cq {
        return Ok(Equivalence::Equivalent { substitutions: 0 });
    }
    let mut members = Vec::new();
    for (a, b) in &base.members {
        let (ca, cb) = (interner.compact(a), interner.compact(b));
        members.push(Member {
            start: a.start.clone(),
            from: ca.clone(),
            to: cb.clone(),
        });
        members.push(Member {
            start: a.start.clone(),
            from: cb,
            to: ca,
        });
    }
    let mut by_first: HashMap<u32, Vec<usize>> = HashMap::new();
    let mut insertions = Vec::new();
    for (i, m) in members.iter().enumerate() {
        match m.from.first() {
            Some(&(_, r)) => by_first.entry(r).or_default().push(i),
            None => insertions.push(i),
        }
    }
    let longest_member = members.iter().map(|m| m.to.len()).max().unwrap_or(0);
    let search = Search {
        rules: &interner.rules,
        members,
        by_first,
        insertions,
        naturals: base.naturals,
        max_len: cp.len().max(cq.len()) + longest_member,
    };

    let mut seen = [HashMap::new(), HashMap::new()];
    let mut queues = [VecDeque::new(), VecDeque::new()];
    seen[0].insert(cp.clone(), 0usize);
    seen[1].insert(cq.clone(), 0usize);
    queues[0].push_back(cp);
    queues[1].push_back(cq);
    let mut explored = 0;
    while explored < bound && (!queues[0].is_empty() || !queues[1].is_empty()) {
        let side = if queues[1].is_empty() || (!queues[0].is_empty() && queues[0].len() <= queues[1].len()) {
            0
        } else {
            1
        };
        let cur = queues[side].pop_front().expect("non-empty queue");
        explored += 1;
        let d = seen[side][&cur];
        for n in search.neighbours(u, &cur) {
            if let Some(&e) = seen[1 - side].get(&n) {
                return Ok(Equivalence::Equivalent { substitutions: d + 1 + e });
            }
            if !seen[side].contains_key(&n) {
                seen[side].insert(n.clone(), d + 1);
                queues[side].push_back(n);
            }
        }
    }
    Ok(Equivalence::Unknown { explored })
}

/// Builds the path `start -[rule@pos]-> ...`, for writing cells by hand.
pub fn path_from_positions(start: &Word, steps: &[(usize, RuleRef)]) -> Result<Path, DiagramError> {
    let mut p = Path::empty(start.clone());
    for (pos, rule) in steps {
        let s = Step::at(p.end(), *pos, rule)?;
        p.push(s)?;
    }
    Ok(p)
}
