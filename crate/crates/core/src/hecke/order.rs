use std::cmp::Ordering;

use super::HeckeRuleName;
use crate::order::{InstanceOrder, OrderVerdict};
use crate::srs::{RuleInstance, Word};

/// The instance preorder of the 0-Hecke presentation.
///
/// Every `b_{ji}` instance is first rewritten as `b_{j,j-1}` with
/// `(j-2)...i` prepended to its right context. Rules are then ranked
/// `b ≫ inverse c ≫ forward c ≫ a`, with `b_{k,k-1}` ranked by `k`, forward
/// `c_{kj}` by `(k, j)` and inverse `c_{ij}` by `(i, j)`. Instances of the same
/// rule are refined by the count statistics of their contexts; all `a`
/// instances compare by the length of their source word.
#[derive(Clone, Copy, Debug, Default)]
pub struct HeckeOrder;

/// Comparison key of an instance; two instances compare as their keys do.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HeckeKey {
    /// Instances of rules outside the presentation, all equivalent.
    Foreign,
    A { len: usize },
    ForwardC { k: u16, j: u16, left_high: usize, right_low: usize },
    InverseC { i: u16, j: u16 },
    /// `counts[m]` is `#_{k-m}` of `u·v'`.
    B { k: u16, counts: Vec<usize> },
}

impl HeckeKey {
    fn class(&self) -> u8 {
        match self {
            HeckeKey::Foreign => 0,
            HeckeKey::A { .. } => 1,
            HeckeKey::ForwardC { .. } => 2,
            HeckeKey::InverseC { .. } => 3,
            HeckeKey::B { .. } => 4,
        }
    }

    pub fn compare(&self, other: &HeckeKey) -> Ordering {
        use HeckeKey::*;
        match (self, other) {
            (A { len: a }, A { len: b }) => a.cmp(b),
            (
                ForwardC { k, j, left_high, right_low },
                ForwardC { k: k2, j: j2, left_high: l2, right_low: r2 },
            ) => (k, j, left_high, right_low).cmp(&(k2, j2, l2, r2)),
            (InverseC { i, j }, InverseC { i: i2, j: j2 }) => (i, j).cmp(&(i2, j2)),
            (B { k, counts }, B { k: k2, counts: c2 }) => k.cmp(k2).then_with(|| counts.cmp(c2)),
            _ => self.class().cmp(&other.class()),
        }
    }
}

fn count_range(w: &Word, keep: impl Fn(u16) -> bool) -> usize {
    w.letters().iter().filter(|g| keep(g.0)).count()
}

impl HeckeOrder {
    pub fn key(inst: &RuleInstance) -> HeckeKey {
        let Some(name) = HeckeRuleName::classify(&inst.rule) else {
            return HeckeKey::Foreign;
        };
        match name {
            HeckeRuleName::A(_) => HeckeKey::A {
                len: inst.left.len() + 2 + inst.right.len(),
            },
            HeckeRuleName::C(s, t) if s > t => HeckeKey::ForwardC {
                k: s,
                j: t,
                left_high: count_range(&inst.left, |g| g >= s),
                right_low: count_range(&inst.right, |g| g <= t),
            },
            HeckeRuleName::C(s, t) => HeckeKey::InverseC { i: s, j: t },
            HeckeRuleName::B(k, i) => {
                // Letters of u·(k-2)...i·v, counted for k, k-1, ..., 1.
                let mut counts = vec![0usize; k as usize];
                let mut add = |g: u16| {
                    if g <= k {
                        counts[(k - g) as usize] += 1;
                    }
                };
                inst.left.letters().iter().for_each(|g| add(g.0));
                if k >= 2 {
                    (i..=k - 2).for_each(&mut add);
                }
                inst.right.letters().iter().for_each(|g| add(g.0));
                HeckeKey::B { k, counts }
            }
        }
    }
}

impl InstanceOrder for HeckeOrder {
    fn name(&self) -> &str {
        "hecke"
    }

    fn compare(&self, a: &RuleInstance, b: &RuleInstance) -> OrderVerdict {
        OrderVerdict::from_ordering(HeckeOrder::key(a).compare(&HeckeOrder::key(b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::srs::Word;
    use std::sync::Arc;

    fn inst(left: &[u16], r: HeckeRuleName, right: &[u16]) -> RuleInstance {
        RuleInstance::new(Word::from_indices(left), Arc::new(r.rule()), Word::from_indices(right))
    }

    #[test]
    fn longer_a_instance_is_greater() {
        let o = HeckeOrder;
        let a1 = HeckeRuleName::A(1);
        assert_eq!(o.compare(&inst(&[], a1, &[2]), &inst(&[], a1, &[])), OrderVerdict::Greater);
    }

    #[test]
    fn b_dominates_c_dominates_a() {
        let o = HeckeOrder;
        let b = inst(&[], HeckeRuleName::B(2, 1), &[]);
        let cf = inst(&[1, 1, 1, 1], HeckeRuleName::C(3, 1), &[1, 1]);
        let ci = inst(&[], HeckeRuleName::C(1, 3), &[]);
        let a = inst(&[3; 6], HeckeRuleName::A(3), &[]);
        assert_eq!(o.compare(&b, &cf), OrderVerdict::Greater);
        assert_eq!(o.compare(&b, &ci), OrderVerdict::Greater);
        assert_eq!(o.compare(&ci, &cf), OrderVerdict::Greater);
        assert_eq!(o.compare(&cf, &a), OrderVerdict::Greater);
    }

    #[test]
    fn forward_c_refined_by_context_counts() {
        let o = HeckeOrder;
        let c31 = HeckeRuleName::C(3, 1);
        assert_eq!(o.compare(&inst(&[3], c31, &[]), &inst(&[], c31, &[2])), OrderVerdict::Greater);
        assert_eq!(o.compare(&inst(&[], c31, &[1]), &inst(&[], c31, &[2])), OrderVerdict::Greater);
        assert_eq!(o.compare(&inst(&[1], c31, &[2]), &inst(&[], c31, &[])), OrderVerdict::Equivalent);
    }

    #[test]
    fn b_instances_normalize_to_adjacent_rule() {
        let o = HeckeOrder;
        for w in [&[][..], &[1, 3], &[2, 2, 1]] {
            let mut with_one = vec![1];
            with_one.extend_from_slice(w);
            assert_eq!(
                o.compare(&inst(&[], HeckeRuleName::B(3, 1), w), &inst(&[], HeckeRuleName::B(3, 2), &with_one)),
                OrderVerdict::Equivalent
            );
        }
        assert_eq!(
            o.compare(&inst(&[], HeckeRuleName::B(3, 2), &[]), &inst(&[2, 1], HeckeRuleName::B(2, 1), &[])),
            OrderVerdict::Greater
        );
    }

    #[test]
    fn inverse_c_same_rule_is_equivalent() {
        let o = HeckeOrder;
        let c = HeckeRuleName::C(1, 3);
        assert_eq!(o.compare(&inst(&[3, 3], c, &[]), &inst(&[], c, &[1])), OrderVerdict::Equivalent);
        assert_eq!(
            o.compare(&inst(&[], HeckeRuleName::C(2, 4), &[]), &inst(&[], c, &[])),
            OrderVerdict::Greater
        );
    }
}
