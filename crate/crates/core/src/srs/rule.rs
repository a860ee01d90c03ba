use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::{SrsError, Word};

/// A named rewrite rule `lhs -> rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub name: String,
    pub lhs: Word,
    pub rhs: Word,
}

pub type RuleRef = Arc<Rule>;

impl Rule {
    pub fn new(name: impl Into<String>, lhs: Word, rhs: Word) -> Result<Rule, SrsError> {
        let name = name.into();
        if lhs.is_empty() {
            return Err(SrsError::EmptyLhs(name));
        }
        if name.is_empty() || name.contains([':', ';', ' ']) {
            return Err(SrsError::Parse(format!("invalid rule name {name:?}")));
        }
        Ok(Rule { name, lhs, rhs })
    }

    pub fn is_length_nonincreasing(&self) -> bool {
        self.rhs.len() <= self.lhs.len()
    }
}

/// A positioned rule `u r v`, one element of `X* r X*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RuleInstance {
    pub left: Word,
    pub rule: RuleRef,
    pub right: Word,
}

impl RuleInstance {
    pub fn new(left: Word, rule: RuleRef, right: Word) -> Self {
        RuleInstance { left, rule, right }
    }

    pub fn bare(rule: RuleRef) -> Self {
        RuleInstance::new(Word::empty(), rule, Word::empty())
    }

    pub fn source(&self) -> Word {
        Word::concat3(&self.left, &self.rule.lhs, &self.right)
    }

    pub fn target(&self) -> Word {
        Word::concat3(&self.left, &self.rule.rhs, &self.right)
    }

    /// Start of the redex inside the source word.
    pub fn position(&self) -> usize {
        self.left.len()
    }

    /// `u · self · v`.
    pub fn whisker(&self, u: &Word, v: &Word) -> RuleInstance {
        RuleInstance {
            left: u.concat(&self.left),
            rule: self.rule.clone(),
            right: self.right.concat(v),
        }
    }

    /// Strips `u` from the left context and `v` from the right context, if present.
    pub fn unwhisker(&self, u: usize, v: usize) -> Option<RuleInstance> {
        if self.left.len() < u || self.right.len() < v {
            return None;
        }
        Some(RuleInstance {
            left: self.left.suffix_from(u),
            rule: self.rule.clone(),
            right: self.right.prefix(self.right.len() - v),
        })
    }

    pub fn render(&self, n: usize) -> String {
        format!(
            "{}:{}:{}",
            render_context(&self.left, n),
            self.rule.name,
            render_context(&self.right, n)
        )
    }
}

fn render_context(w: &Word, n: usize) -> String {
    if w.is_empty() {
        "-".to_string()
    } else {
        w.render(n)
    }
}

impl Ord for RuleInstance {
    /// Leftmost redex first, then rule name, then contexts.
    fn cmp(&self, other: &Self) -> Ordering {
        self.left
            .len()
            .cmp(&other.left.len())
            .then_with(|| self.rule.name.cmp(&other.rule.name))
            .then_with(|| self.left.cmp(&other.left))
            .then_with(|| self.right.cmp(&other.right))
    }
}

impl PartialOrd for RuleInstance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RuleInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = if self.left.max_letter().max(self.right.max_letter()) <= 9 {
            9
        } else {
            usize::MAX
        };
        f.write_str(&self.render(n))
    }
}

/// Returns `inst.left · rhs · inst.right` provided `w = inst.left · lhs · inst.right`.
pub fn apply_instance(w: &Word, inst: &RuleInstance) -> Result<Word, SrsError> {
    let src_len = inst.left.len() + inst.rule.lhs.len() + inst.right.len();
    let matches = w.len() == src_len
        && w.starts_with(&inst.left)
        && w.occurs_at(&inst.rule.lhs, inst.left.len())
        && w.ends_with(&inst.right);
    if !matches {
        return Err(SrsError::SourceMismatch {
            word: w.to_string(),
            instance: inst.to_string(),
        });
    }
    Ok(inst.target())
}

/// One rewrite step `source -> target` witnessed by a rule instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub instance: RuleInstance,
    pub source: Word,
    pub target: Word,
}

impl Step {
    pub fn new(instance: RuleInstance) -> Step {
        let source = instance.source();
        let target = instance.target();
        Step {
            instance,
            source,
            target,
        }
    }

    /// The step rewriting `rule` at `pos` in `word`.
    pub fn at(word: &Word, pos: usize, rule: &RuleRef) -> Result<Step, SrsError> {
        if !word.occurs_at(&rule.lhs, pos) {
            return Err(SrsError::SourceMismatch {
                word: word.to_string(),
                instance: format!("{} at {}", rule.name, pos),
            });
        }
        Ok(Step::new(RuleInstance::new(
            word.prefix(pos),
            rule.clone(),
            word.suffix_from(pos + rule.lhs.len()),
        )))
    }

    pub fn rule(&self) -> &RuleRef {
        &self.instance.rule
    }

    pub fn position(&self) -> usize {
        self.instance.left.len()
    }

    pub fn whisker(&self, u: &Word, v: &Word) -> Step {
        Step::new(self.instance.whisker(u, v))
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -[{}]-> {}", self.source, self.instance, self.target)
    }
}
