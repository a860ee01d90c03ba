use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use super::{Rule, RuleInstance, RuleRef, SrsError, Step, Word};
use crate::order::{InstanceOrder, OrderSpec};

/// Default depth bound for closures over systems with length-increasing rules.
pub const DEFAULT_REACH_BOUND: usize = 16;

/// A string rewriting system over the alphabet `{1, ..., n}`.
#[derive(Clone, Debug)]
pub struct SrsSystem {
    n: usize,
    /// Sorted by rule name.
    rules: Vec<RuleRef>,
    by_name: HashMap<String, RuleRef>,
    order: Option<OrderSpec>,
}

/// Result of a reachability closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reach {
    pub words: BTreeSet<Word>,
    /// False when the closure was truncated at the bound.
    pub exact: bool,
}

impl SrsSystem {
    pub fn new(n: usize, rules: Vec<Rule>, order: Option<OrderSpec>) -> Result<SrsSystem, SrsError> {
        let mut by_name = HashMap::new();
        let mut refs = Vec::with_capacity(rules.len());
        for r in rules {
            r.lhs.check_alphabet(n)?;
            r.rhs.check_alphabet(n)?;
            if r.lhs.is_empty() {
                return Err(SrsError::EmptyLhs(r.name));
            }
            let r = Arc::new(r);
            if by_name.insert(r.name.clone(), r.clone()).is_some() {
                return Err(SrsError::DuplicateRule(r.name.clone()));
            }
            refs.push(r);
        }
        refs.sort_by(|a, b| a.name.cmp(&b.name));
        Ok(SrsSystem {
            n,
            rules: refs,
            by_name,
            order,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rules(&self) -> &[RuleRef] {
        &self.rules
    }

    pub fn rule(&self, name: &str) -> Option<&RuleRef> {
        self.by_name.get(name)
    }

    pub fn rule_or_err(&self, name: &str) -> Result<&RuleRef, SrsError> {
        self.rule(name)
            .ok_or_else(|| SrsError::UnknownRule(name.to_string()))
    }

    pub fn order_spec(&self) -> Option<&OrderSpec> {
        self.order.as_ref()
    }

    pub fn with_order(mut self, order: Option<OrderSpec>) -> SrsSystem {
        self.order = order;
        self
    }

    /// The instance preorder carried by the system, or a length-tie default.
    pub fn instance_order(&self) -> Box<dyn InstanceOrder> {
        match &self.order {
            Some(spec) => spec.build(),
            None => OrderSpec::default_for(self).build(),
        }
    }

    pub fn is_length_nonincreasing(&self) -> bool {
        self.rules.iter().all(|r| r.is_length_nonincreasing())
    }

    pub fn render(&self, w: &Word) -> String {
        w.render(self.n)
    }

    pub fn parse_word(&self, s: &str) -> Result<Word, SrsError> {
        Word::parse(s, self.n)
    }

    /// Parses `LEFT:RULE:RIGHT`, with `-` for an empty context.
    pub fn parse_instance(&self, s: &str) -> Result<RuleInstance, SrsError> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        if parts.len() != 3 {
            return Err(SrsError::Parse(format!(
                "expected LEFT:RULE:RIGHT, got {s:?}"
            )));
        }
        let left = self.parse_word(parts[0])?;
        let rule = self.rule_or_err(parts[1])?.clone();
        let right = self.parse_word(parts[2])?;
        Ok(RuleInstance::new(left, rule, right))
    }

    /// Every `(u, r, v)` with `w = u·lhs(r)·v`, leftmost first, then by rule name.
    pub fn find_redexes(&self, w: &Word) -> Vec<RuleInstance> {
        let mut out = Vec::new();
        for pos in 0..w.len() {
            for r in &self.rules {
                if w.occurs_at(&r.lhs, pos) {
                    out.push(RuleInstance::new(
                        w.prefix(pos),
                        r.clone(),
                        w.suffix_from(pos + r.lhs.len()),
                    ));
                }
            }
        }
        out
    }

    pub fn steps_from(&self, w: &Word) -> Vec<Step> {
        self.find_redexes(w).into_iter().map(Step::new).collect()
    }

    /// Steps ending in `w` (occurrences of a right-hand side), for building zigzags.
    pub fn steps_into(&self, w: &Word) -> Vec<Step> {
        let mut out = Vec::new();
        for pos in 0..=w.len() {
            for r in &self.rules {
                if w.occurs_at(&r.rhs, pos) {
                    out.push(Step::new(RuleInstance::new(
                        w.prefix(pos),
                        r.clone(),
                        w.suffix_from(pos + r.rhs.len()),
                    )));
                }
            }
        }
        out
    }

    /// One-step successors of `w`, without duplicates.
    pub fn successors(&self, w: &Word) -> Vec<Word> {
        let mut seen = HashSet::new();
        self.find_redexes(w)
            .into_iter()
            .map(|i| i.target())
            .filter(|t| seen.insert(t.clone()))
            .collect()
    }

    /// `{v : w ->> v}`. Exact for length-nonincreasing systems; otherwise the
    /// breadth-first closure stops at `max_steps` (default
    /// [`DEFAULT_REACH_BOUND`]) and reports whether it was truncated.
    pub fn reach(&self, w: &Word, max_steps: Option<usize>) -> Reach {
        let bound = if self.is_length_nonincreasing() {
            None
        } else {
            Some(max_steps.unwrap_or(DEFAULT_REACH_BOUND))
        };
        let mut words = BTreeSet::new();
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.clone());
        queue.push_back((w.clone(), 0usize));
        let mut exact = true;
        while let Some((cur, depth)) = queue.pop_front() {
            let succ = self.successors(&cur);
            words.insert(cur);
            if let Some(b) = bound {
                if depth >= b {
                    if succ.iter().any(|s| !seen.contains(s)) {
                        exact = false;
                    }
                    continue;
                }
            }
            for s in succ {
                if seen.insert(s.clone()) {
                    queue.push_back((s, depth + 1));
                }
            }
        }
        Reach { words, exact }
    }

    /// Like [`reach`](Self::reach) but fails instead of truncating.
    pub fn reach_exact(&self, w: &Word, max_steps: Option<usize>) -> Result<BTreeSet<Word>, SrsError> {
        let r = self.reach(w, max_steps);
        if !r.exact {
            return Err(SrsError::BoundExceeded {
                bound: max_steps.unwrap_or(DEFAULT_REACH_BOUND),
            });
        }
        Ok(r.words)
    }
}
