use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::HeckeError;
use crate::order::OrderSpec;
use crate::srs::{Path, Rule, SrsSystem, Word};

/// The three rule families of the 0-Hecke presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HeckeRuleName {
    /// `ii -> i`
    A(u16),
    /// `j (j-1) ... i j -> (j-1) j (j-1) ... i`, `i < j`
    B(u16, u16),
    /// `s t -> t s`, `|s - t| >= 2`
    C(u16, u16),
}

impl HeckeRuleName {
    pub fn lhs(self) -> Word {
        match self {
            HeckeRuleName::A(i) => Word::from_indices(&[i, i]),
            HeckeRuleName::B(j, i) => Word::descending(j, i).concat(&Word::from_indices(&[j])),
            HeckeRuleName::C(s, t) => Word::from_indices(&[s, t]),
        }
    }

    pub fn rhs(self) -> Word {
        match self {
            HeckeRuleName::A(i) => Word::from_indices(&[i]),
            HeckeRuleName::B(j, i) => Word::from_indices(&[j - 1]).concat(&Word::descending(j, i)),
            HeckeRuleName::C(s, t) => Word::from_indices(&[t, s]),
        }
    }

    pub fn rule(self) -> Rule {
        Rule::new(self.to_string(), self.lhs(), self.rhs()).expect("hecke rules have non-empty lhs")
    }

    /// Reads the family off a rule's shape, independent of its name.
    pub fn classify(rule: &Rule) -> Option<HeckeRuleName> {
        let l = rule.lhs.letters();
        let guess = match l.len() {
            0 | 1 => return None,
            2 if l[0] == l[1] => HeckeRuleName::A(l[0].0),
            2 if l[0].0.abs_diff(l[1].0) >= 2 => HeckeRuleName::C(l[0].0, l[1].0),
            _ => {
                let j = l[0].0;
                let i = l[l.len() - 2].0;
                if i >= j {
                    return None;
                }
                HeckeRuleName::B(j, i)
            }
        };
        (guess.lhs() == rule.lhs && guess.rhs() == rule.rhs).then_some(guess)
    }

    pub fn is_c(self) -> bool {
        matches!(self, HeckeRuleName::C(..))
    }

    /// `c_{st}` with `s >= t + 2`.
    pub fn is_forward_c(self) -> bool {
        matches!(self, HeckeRuleName::C(s, t) if s > t)
    }

    pub fn is_inverse_c(self) -> bool {
        matches!(self, HeckeRuleName::C(s, t) if s < t)
    }

    pub fn max_letter(self) -> u16 {
        match self {
            HeckeRuleName::A(i) => i,
            HeckeRuleName::B(j, _) => j,
            HeckeRuleName::C(s, t) => s.max(t),
        }
    }
}

impl fmt::Display for HeckeRuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeckeRuleName::A(i) => write!(f, "a{i}"),
            HeckeRuleName::B(j, i) => write!(f, "b{j}_{i}"),
            HeckeRuleName::C(s, t) => write!(f, "c{s}_{t}"),
        }
    }
}

impl FromStr for HeckeRuleName {
    type Err = HeckeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || HeckeError::BadRuleName(s.to_string());
        let num = |p: &str| p.parse::<u16>().map_err(|_| bad());
        let (head, rest) = s.split_at(s.chars().next().map(|c| c.len_utf8()).ok_or_else(bad)?);
        match head {
            "a" => Ok(HeckeRuleName::A(num(rest)?)),
            "b" | "c" => {
                let (x, y) = rest.split_once('_').ok_or_else(bad)?;
                let (x, y) = (num(x)?, num(y)?);
                if head == "b" {
                    (y < x).then_some(HeckeRuleName::B(x, y)).ok_or_else(bad)
                } else {
                    (x.abs_diff(y) >= 2).then_some(HeckeRuleName::C(x, y)).ok_or_else(bad)
                }
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HeckeVariant {
    /// `a_i`, `b_{i+1,i}` and forward commutations only.
    RPrime,
    /// `RPrime` plus the inverse commutations.
    RDoublePrime,
    /// `a_i`, every `b_{ji}` and every commutation.
    RFull,
}

impl FromStr for HeckeVariant {
    type Err = HeckeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rprime" => Ok(HeckeVariant::RPrime),
            "rdoubleprime" => Ok(HeckeVariant::RDoublePrime),
            "rfull" => Ok(HeckeVariant::RFull),
            _ => Err(HeckeError::BadVariant(s.to_string())),
        }
    }
}

impl fmt::Display for HeckeVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HeckeVariant::RPrime => "rprime",
            HeckeVariant::RDoublePrime => "rdoubleprime",
            HeckeVariant::RFull => "rfull",
        })
    }
}

/// Rule names of a variant, in family order.
pub fn hecke_rule_names(n: usize, variant: HeckeVariant) -> Vec<HeckeRuleName> {
    let n = n as u16;
    let mut out: Vec<HeckeRuleName> = (1..=n).map(HeckeRuleName::A).collect();
    for j in 2..=n {
        match variant {
            HeckeVariant::RFull => out.extend((1..j).map(|i| HeckeRuleName::B(j, i))),
            _ => out.push(HeckeRuleName::B(j, j - 1)),
        }
    }
    for s in 1..=n {
        for t in 1..=n {
            if s.abs_diff(t) < 2 {
                continue;
            }
            if s > t || variant != HeckeVariant::RPrime {
                out.push(HeckeRuleName::C(s, t));
            }
        }
    }
    out
}

/// The 0-Hecke presentation of rank `n`, carrying the built-in Hecke order.
pub fn hecke_system(n: usize, variant: HeckeVariant) -> Result<SrsSystem, HeckeError> {
    if n == 0 || n > u16::MAX as usize / 2 {
        return Err(HeckeError::InvalidRank(n));
    }
    let rules = hecke_rule_names(n, variant).into_iter().map(|r| r.rule()).collect();
    Ok(SrsSystem::new(n, rules, Some(OrderSpec::Hecke))?)
}

/// True iff every step uses a commutation rule (vacuous for the empty path).
pub fn is_c_path(p: &Path) -> bool {
    p.steps
        .iter()
        .all(|s| HeckeRuleName::classify(&s.instance.rule).is_some_and(|r| r.is_c()))
}

/// `(l(w), #_n w, #_{n-1} w, ..., #_2 w)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LengthVector(pub Vec<usize>);

pub fn length_vector(w: &Word, n: usize) -> LengthVector {
    let mut v = Vec::with_capacity(n.max(1));
    v.push(w.len());
    for g in (2..=n as u16).rev() {
        v.push(w.count(g));
    }
    LengthVector(v)
}
