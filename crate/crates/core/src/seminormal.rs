//! Semi-normal words, attractors and the word problem through attractor
//! canonical forms.

use std::collections::{BTreeSet, HashMap};
use std::sync::RwLock;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use thiserror::Error;

use crate::srs::{SrsSystem, Step, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeminormalError {
    #[error("reachability from {word} was truncated at {bound} steps")]
    Inexact { word: String, bound: usize },
    #[error("{word} has {classes} distinct attractor classes; the system is not confluent")]
    NotOneClass { word: String, classes: usize },
}

/// A class of mutually reachable semi-normal words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttractorClass {
    pub members: BTreeSet<Word>,
    /// Lexicographically least member.
    pub canon: Word,
}

/// The reduction graph on `reach(w)`, with its strongly connected components.
struct ReachGraph {
    words: Vec<Word>,
    graph: DiGraph<(), ()>,
    index: HashMap<Word, NodeIndex>,
}

impl ReachGraph {
    fn build(w: &Word, sys: &SrsSystem) -> Result<ReachGraph, SeminormalError> {
        let reach = sys.reach(w, None);
        if !reach.exact {
            return Err(SeminormalError::Inexact {
                word: sys.render(w),
                bound: crate::srs::DEFAULT_REACH_BOUND,
            });
        }
        let words: Vec<Word> = reach.words.into_iter().collect();
        let mut graph = DiGraph::new();
        let mut index = HashMap::new();
        for v in &words {
            index.insert(v.clone(), graph.add_node(()));
        }
        for v in &words {
            for t in sys.successors(v) {
                if let Some(&j) = index.get(&t) {
                    graph.add_edge(index[v], j, ());
                }
            }
        }
        Ok(ReachGraph { words, graph, index })
    }

    /// Components with no edge leaving them.
    fn bottom_components(&self) -> Vec<Vec<NodeIndex>> {
        let sccs = tarjan_scc(&self.graph);
        let mut comp = vec![0usize; self.words.len()];
        for (ci, c) in sccs.iter().enumerate() {
            for n in c {
                comp[n.index()] = ci;
            }
        }
        sccs.into_iter()
            .enumerate()
            .filter(|(ci, c)| {
                c.iter()
                    .all(|&n| self.graph.neighbors(n).all(|m| comp[m.index()] == *ci))
            })
            .map(|(_, c)| c)
            .collect()
    }
}

/// True iff every reduct of `w` reduces back to `w`.
pub fn is_seminormal(w: &Word, sys: &SrsSystem) -> Result<bool, SeminormalError> {
    let g = ReachGraph::build(w, sys)?;
    let start = g.index[w];
    Ok(g.bottom_components().iter().any(|c| c.contains(&start)))
}

/// The semi-normal reducts of `w`, which must form a single class.
pub fn attractor(w: &Word, sys: &SrsSystem) -> Result<AttractorClass, SeminormalError> {
    let g = ReachGraph::build(w, sys)?;
    let bottoms = g.bottom_components();
    if bottoms.len() != 1 {
        return Err(SeminormalError::NotOneClass {
            word: sys.render(w),
            classes: bottoms.len(),
        });
    }
    let members: BTreeSet<Word> = bottoms[0].iter().map(|n| g.words[n.index()].clone()).collect();
    let canon = members.iter().next().expect("components are non-empty").clone();
    Ok(AttractorClass { members, canon })
}

pub fn words_equal(w1: &Word, w2: &Word, sys: &SrsSystem) -> Result<bool, SeminormalError> {
    Ok(attractor(w1, sys)?.canon == attractor(w2, sys)?.canon)
}

/// Every step between two members of the class of a semi-normal `w`.
pub fn attractor_loop_steps(w: &Word, sys: &SrsSystem) -> Result<Vec<Step>, SeminormalError> {
    let class = attractor(w, sys)?;
    if !class.members.contains(w) {
        return Ok(Vec::new());
    }
    Ok(class
        .members
        .iter()
        .flat_map(|m| sys.steps_from(m))
        .filter(|s| class.members.contains(&s.target))
        .collect())
}

/// Memoized attractor canonical forms; safe to share between threads.
pub struct Canonicalizer<'a> {
    sys: &'a SrsSystem,
    memo: RwLock<HashMap<Word, Word>>,
}

impl<'a> Canonicalizer<'a> {
    pub fn new(sys: &'a SrsSystem) -> Self {
        Canonicalizer {
            sys,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn canon(&self, w: &Word) -> Result<Word, SeminormalError> {
        if let Some(c) = self.memo.read().expect("memo lock").get(w) {
            return Ok(c.clone());
        }
        let class = attractor(w, self.sys)?;
        let mut memo = self.memo.write().expect("memo lock");
        for m in &class.members {
            memo.insert(m.clone(), class.canon.clone());
        }
        memo.insert(w.clone(), class.canon.clone());
        Ok(class.canon)
    }

    pub fn equal(&self, a: &Word, b: &Word) -> Result<bool, SeminormalError> {
        Ok(self.canon(a)? == self.canon(b)?)
    }
}
