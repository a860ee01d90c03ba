//! Independent oracles shared by the integration tests. They work on plain
//! `Vec<u16>` words and rule triples so they share no code with the engine.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use ddiagram::hecke::{hecke_system, HeckeVariant};
use ddiagram::{SrsSystem, Word};

pub type Letters = Vec<u16>;

pub fn letters(w: &Word) -> Letters {
    w.letters().iter().map(|g| g.0).collect()
}

pub fn word(ls: &[u16]) -> Word {
    Word::from_indices(ls)
}

pub fn parse(s: &str) -> Word {
    Word::parse(s, 9).unwrap()
}

pub fn rfull(n: usize) -> SrsSystem {
    hecke_system(n, HeckeVariant::RFull).unwrap()
}

/// `(name, lhs, rhs)` triples of a system.
pub fn rule_table(sys: &SrsSystem) -> Vec<(String, Letters, Letters)> {
    sys.rules()
        .iter()
        .map(|r| (r.name.clone(), letters(&r.lhs), letters(&r.rhs)))
        .collect()
}

/// Every `(position, rule name)` whose lhs occurs in `w`, by a double loop.
pub fn naive_redexes(w: &[u16], rules: &[(String, Letters, Letters)]) -> BTreeSet<(usize, String)> {
    let mut out = BTreeSet::new();
    for p in 0..=w.len() {
        for (name, lhs, _) in rules {
            if p + lhs.len() <= w.len() && &w[p..p + lhs.len()] == lhs.as_slice() {
                out.insert((p, name.clone()));
            }
        }
    }
    out
}

/// One-step reducts of `w`.
pub fn naive_successors(w: &[u16], rules: &[(String, Letters, Letters)]) -> BTreeSet<Letters> {
    let mut out = BTreeSet::new();
    for (p, name) in naive_redexes(w, rules) {
        let (_, lhs, rhs) = rules.iter().find(|r| r.0 == name).unwrap();
        let mut v = w[..p].to_vec();
        v.extend_from_slice(rhs);
        v.extend_from_slice(&w[p + lhs.len()..]);
        out.insert(v);
    }
    out
}

pub fn all_words(n: u16, max_len: usize) -> Vec<Letters> {
    let mut out = vec![vec![]];
    let mut layer: Vec<Letters> = vec![vec![]];
    for _ in 0..max_len {
        let next: Vec<Letters> = layer
            .iter()
            .flat_map(|w| {
                (1..=n).map(move |g| {
                    let mut v = w.clone();
                    v.push(g);
                    v
                })
            })
            .collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Union-find over all words of length at most `max_len`, joined along
/// one-step rewrites in both directions.
pub struct CongruenceOracle {
    index: HashMap<Letters, usize>,
    parent: Vec<usize>,
}

impl CongruenceOracle {
    pub fn new(n: u16, rules: &[(String, Letters, Letters)], max_len: usize) -> Self {
        let words = all_words(n, max_len);
        let index: HashMap<Letters, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut o = CongruenceOracle {
            parent: (0..words.len()).collect(),
            index,
        };
        for w in &words {
            for v in naive_successors(w, rules) {
                if let Some(&j) = o.index.get(&v) {
                    let i = o.index[w];
                    o.union(i, j);
                }
            }
        }
        o
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub fn equal(&mut self, a: &[u16], b: &[u16]) -> bool {
        let (i, j) = (self.index[a], self.index[b]);
        self.find(i) == self.find(j)
    }

    pub fn classes(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

/// Critical pairs found by brute force: two distinct redexes of `w` whose
/// windows overlap and together cover all of `w`. Rendered as
/// `(peak, first position, first rule, second position, second rule)`.
pub fn brute_critical_pairs(
    n: u16,
    rules: &[(String, Letters, Letters)],
    max_len: usize,
) -> BTreeSet<(Letters, usize, String, usize, String)> {
    let mut out = BTreeSet::new();
    for w in all_words(n, max_len) {
        let rs: Vec<(usize, String)> = naive_redexes(&w, rules).into_iter().collect();
        for (p1, r1) in &rs {
            for (p2, r2) in &rs {
                if (p1, r1) == (p2, r2) {
                    continue;
                }
                let l1 = rules.iter().find(|r| &r.0 == r1).unwrap().1.len();
                let l2 = rules.iter().find(|r| &r.0 == r2).unwrap().1.len();
                let (e1, e2) = (p1 + l1, p2 + l2);
                let overlap = *p1 < e2 && *p2 < e1;
                if overlap && (*p1).min(*p2) == 0 && e1.max(e2) == w.len() {
                    out.insert((w.clone(), *p1, r1.clone(), *p2, r2.clone()));
                }
            }
        }
    }
    out
}
