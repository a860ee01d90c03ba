//! Preorders on rule instances, monomiality sampling and the decreasing
//! elementary-diagram predicate.

mod ed;

pub use ed::{is_decreasing_ed, Arrow, DecreasingWitness, EdError, EdSide, ElementaryDiagram};

use std::collections::BTreeMap;
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::hecke::HeckeOrder;
use crate::srs::{RuleInstance, SrsSystem, Word};

/// Outcome of comparing two rule instances under a preorder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderVerdict {
    Greater,
    Less,
    Equivalent,
}

impl OrderVerdict {
    pub fn reverse(self) -> OrderVerdict {
        match self {
            OrderVerdict::Greater => OrderVerdict::Less,
            OrderVerdict::Less => OrderVerdict::Greater,
            OrderVerdict::Equivalent => OrderVerdict::Equivalent,
        }
    }

    pub fn from_ordering(o: std::cmp::Ordering) -> OrderVerdict {
        match o {
            std::cmp::Ordering::Greater => OrderVerdict::Greater,
            std::cmp::Ordering::Less => OrderVerdict::Less,
            std::cmp::Ordering::Equal => OrderVerdict::Equivalent,
        }
    }
}

impl fmt::Display for OrderVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderVerdict::Greater => ">",
            OrderVerdict::Less => "<",
            OrderVerdict::Equivalent => "~",
        })
    }
}

/// A total comparison procedure on rule instances inducing a preorder.
pub trait InstanceOrder: Send + Sync {
    fn name(&self) -> &str;

    fn compare(&self, a: &RuleInstance, b: &RuleInstance) -> OrderVerdict;

    fn gt(&self, a: &RuleInstance, b: &RuleInstance) -> bool {
        self.compare(a, b) == OrderVerdict::Greater
    }

    fn equiv(&self, a: &RuleInstance, b: &RuleInstance) -> bool {
        self.compare(a, b) == OrderVerdict::Equivalent
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TiePolicy {
    /// Instances of equally ranked rules are equivalent.
    Equivalent,
    /// Equally ranked instances compare by the length of their source word.
    #[default]
    Length,
}

/// Serializable description of an instance order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OrderSpec {
    Hecke,
    RuleRank {
        #[serde(default)]
        ranks: BTreeMap<String, i64>,
        #[serde(default)]
        tie: TiePolicy,
    },
}

impl OrderSpec {
    /// All rules ranked equally, ties broken by source length.
    pub fn default_for(_sys: &SrsSystem) -> OrderSpec {
        OrderSpec::RuleRank {
            ranks: BTreeMap::new(),
            tie: TiePolicy::Length,
        }
    }

    pub fn build(&self) -> Box<dyn InstanceOrder> {
        match self {
            OrderSpec::Hecke => Box::new(HeckeOrder),
            OrderSpec::RuleRank { ranks, tie } => Box::new(RuleRankOrder::new(ranks.clone(), *tie)),
        }
    }
}

/// Rules are ranked by an integer (missing rules rank 0); a higher rank
/// dominates every instance of a lower one.
#[derive(Clone, Debug)]
pub struct RuleRankOrder {
    ranks: BTreeMap<String, i64>,
    tie: TiePolicy,
    name: String,
}

impl RuleRankOrder {
    pub fn new(ranks: BTreeMap<String, i64>, tie: TiePolicy) -> Self {
        let name = match tie {
            TiePolicy::Equivalent => "rule-rank/equivalent",
            TiePolicy::Length => "rule-rank/length",
        }
        .to_string();
        RuleRankOrder { ranks, tie, name }
    }

    fn rank(&self, i: &RuleInstance) -> i64 {
        self.ranks.get(&i.rule.name).copied().unwrap_or(0)
    }
}

impl InstanceOrder for RuleRankOrder {
    fn name(&self) -> &str {
        &self.name
    }

    fn compare(&self, a: &RuleInstance, b: &RuleInstance) -> OrderVerdict {
        let by_rank = self.rank(a).cmp(&self.rank(b));
        let o = match self.tie {
            TiePolicy::Equivalent => by_rank,
            TiePolicy::Length => by_rank.then_with(|| {
                let la = a.left.len() + a.rule.lhs.len() + a.right.len();
                let lb = b.left.len() + b.rule.lhs.len() + b.right.len();
                la.cmp(&lb)
            }),
        };
        OrderVerdict::from_ordering(o)
    }
}

/// Counterexamples found by [`check_monomial_sample`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonomialReport {
    pub trials: usize,
    pub counterexamples: Vec<String>,
}

impl MonomialReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn random_word(rng: &mut StdRng, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_indices(&(0..len).map(|_| rng.gen_range(1..=n as u16)).collect::<Vec<_>>())
}

/// A uniformly random instance with contexts of length at most `max_ctx`.
pub fn random_instance(rng: &mut StdRng, sys: &SrsSystem, max_ctx: usize) -> Option<RuleInstance> {
    if sys.rules().is_empty() || sys.n() == 0 {
        return None;
    }
    let rule = sys.rules()[rng.gen_range(0..sys.rules().len())].clone();
    let left = random_word(rng, sys.n(), max_ctx);
    let right = random_word(rng, sys.n(), max_ctx);
    Some(RuleInstance::new(left, rule, right))
}

/// Checks on random instance pairs that prepending or appending a common
/// context never changes the verdict.
pub fn check_monomial_sample(
    ord: &dyn InstanceOrder,
    sys: &SrsSystem,
    trials: usize,
    seed: u64,
) -> MonomialReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut report = MonomialReport {
        trials,
        counterexamples: Vec::new(),
    };
    for _ in 0..trials {
        let (Some(a), Some(b)) = (random_instance(&mut rng, sys, 3), random_instance(&mut rng, sys, 3)) else {
            break;
        };
        let w = random_word(&mut rng, sys.n(), 3);
        let base = ord.compare(&a, &b);
        let e = Word::empty();
        let left = ord.compare(&a.whisker(&w, &e), &b.whisker(&w, &e));
        let right = ord.compare(&a.whisker(&e, &w), &b.whisker(&e, &w));
        if base != left || base != right {
            report.counterexamples.push(format!(
                "{} vs {} is {base}, with {} prepended {left}, appended {right}",
                a.render(sys.n()),
                b.render(sys.n()),
                w.render(sys.n())
            ));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::srs::Rule;

    fn sys() -> SrsSystem {
        let w = |s: &str| Word::parse(s, 2).unwrap();
        SrsSystem::new(
            2,
            vec![
                Rule::new("x", w("11"), w("1")).unwrap(),
                Rule::new("y", w("22"), w("2")).unwrap(),
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn rule_rank_with_length_ties() {
        let s = sys();
        let mut ranks = BTreeMap::new();
        ranks.insert("y".to_string(), 1);
        let ord = RuleRankOrder::new(ranks, TiePolicy::Length);
        let x = RuleInstance::new(Word::parse("1111", 2).unwrap(), s.rule("x").unwrap().clone(), Word::empty());
        let y = RuleInstance::bare(s.rule("y").unwrap().clone());
        assert_eq!(ord.compare(&y, &x), OrderVerdict::Greater);
        assert_eq!(ord.compare(&x, &y), OrderVerdict::Less);
        let x0 = RuleInstance::bare(s.rule("x").unwrap().clone());
        assert_eq!(ord.compare(&x, &x0), OrderVerdict::Greater);
    }

    #[test]
    fn rule_rank_orders_are_monomial() {
        let s = sys();
        let ord = RuleRankOrder::new(BTreeMap::new(), TiePolicy::Length);
        assert!(check_monomial_sample(&ord, &s, 500, 7).passed());
        assert_eq!(check_monomial_sample(&ord, &s, 0, 7), MonomialReport::default());
    }

    #[test]
    fn order_spec_json_shapes() {
        let spec: OrderSpec = serde_json::from_str(r#"{"kind":"hecke"}"#).unwrap();
        assert_eq!(spec, OrderSpec::Hecke);
        let spec: OrderSpec =
            serde_json::from_str(r#"{"kind":"rule-rank","ranks":{"x":2},"tie":"equivalent"}"#).unwrap();
        assert!(matches!(spec, OrderSpec::RuleRank { tie: TiePolicy::Equivalent, .. }));
    }
}
