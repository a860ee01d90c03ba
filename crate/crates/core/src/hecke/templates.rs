use std::fmt;

use serde::Serialize;

use super::{HeckeError, HeckeRuleName};
use crate::critical::CriticalPair;
use crate::diagrams::CriticalResolver;
use crate::order::ElementaryDiagram;
use crate::srs::{Path, RuleInstance, SrsSystem, Step, Word};

/// The shape used to resolve a critical pair of the full presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TemplateKind {
    /// Top step is an inverse commutation: undo it, then take the left step.
    Undo,
    /// Left step is an inverse commutation: transpose of `Undo`.
    Conc,
    AA,
    /// `a_k` against `b_{kj}` overlapping on the first letter.
    AB,
    /// `b_{kj}` against `a_k` overlapping on the last letter.
    BA,
    /// Two `b` rules, the first adjacent (`b_{k,k-1}`).
    BBAdjacent,
    /// Two `b` rules, the first `b_{kj}` with `j <= k-2`.
    BBFar,
    /// Forward `c_{kj}` against `b_{ji}`.
    CB,
    /// `b_{kj}` against forward `c_{ks}` with `j >= s+2`.
    Bc1,
    /// ... with `j = s+1`.
    Bc2,
    /// ... with `j = s`.
    Bc3,
    /// ... with `j+1 <= s <= k-2`.
    Bc4,
    CC,
    /// Forward `c_{st}` against `a_t` (overlap `stt`).
    AC,
    /// `a_s` against forward `c_{st}` (overlap `sst`).
    ACMirror,
}

impl TemplateKind {
    pub const ALL: [TemplateKind; 15] = [
        TemplateKind::Undo,
        TemplateKind::Conc,
        TemplateKind::AA,
        TemplateKind::AB,
        TemplateKind::BA,
        TemplateKind::BBAdjacent,
        TemplateKind::BBFar,
        TemplateKind::CB,
        TemplateKind::Bc1,
        TemplateKind::Bc2,
        TemplateKind::Bc3,
        TemplateKind::Bc4,
        TemplateKind::CC,
        TemplateKind::AC,
        TemplateKind::ACMirror,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TemplateKind::Undo => "undo",
            TemplateKind::Conc => "conc",
            TemplateKind::AA => "aa",
            TemplateKind::AB => "aB",
            TemplateKind::BA => "Ba",
            TemplateKind::BBAdjacent => "bB",
            TemplateKind::BBFar => "BB",
            TemplateKind::CB => "cB",
            TemplateKind::Bc1 => "Bc1",
            TemplateKind::Bc2 => "Bc2",
            TemplateKind::Bc3 => "Bc3",
            TemplateKind::Bc4 => "Bc4",
            TemplateKind::CC => "cc",
            TemplateKind::AC => "ac",
            TemplateKind::ACMirror => "ac-mirror",
        }
    }
}

impl fmt::Display for TemplateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A chosen critical e.d. with the template that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChosenEd {
    pub kind: TemplateKind,
    pub ed: ElementaryDiagram,
    /// Set when the template instance coincides with a generating cell of
    /// the `r''` coherence family (`aa`, `ab`, `ba`, `ac`, `bb`, `bc`, `cc`).
    pub base_class: Option<&'static str>,
}

/// Builds a path from explicit rule applications on `sys`.
pub(super) struct PathBuilder<'a> {
    sys: &'a SrsSystem,
    path: Path,
}

impl<'a> PathBuilder<'a> {
    pub(super) fn new(sys: &'a SrsSystem, start: Word) -> Self {
        PathBuilder {
            sys,
            path: Path::empty(start),
        }
    }

    pub(super) fn step(mut self, pos: usize, rule: HeckeRuleName) -> Result<Self, HeckeError> {
        let r = self.sys.rule_or_err(&rule.to_string())?.clone();
        let s = Step::at(self.path.end(), pos, &r)?;
        self.path.push(s)?;
        Ok(self)
    }

    /// Sorts towards `target` by commutations, leftmost letter first.
    pub(super) fn csort(mut self, target: &Word) -> Result<Self, HeckeError> {
        let goal = target.letters().to_vec();
        if self.path.end().len() != goal.len() {
            return Err(HeckeError::Template(format!("cannot commute {} into {}", self.path.end(), target)));
        }
        for i in 0..goal.len() {
            let cur = self.path.end().letters().to_vec();
            if cur[i] == goal[i] {
                continue;
            }
            let j = (i + 1..cur.len())
                .find(|&j| cur[j] == goal[i])
                .ok_or_else(|| HeckeError::Template(format!("cannot commute {} into {}", self.path.end(), target)))?;
            for p in (i..j).rev() {
                let w = self.path.end().letters().to_vec();
                let (s, t) = (w[p].0, w[p + 1].0);
                if s.abs_diff(t) < 2 {
                    return Err(HeckeError::Template(format!("cannot commute {} into {}", self.path.end(), target)));
                }
                self = self.step(p, HeckeRuleName::C(s, t))?;
            }
        }
        Ok(self)
    }

    pub(super) fn done(self) -> Path {
        self.path
    }
}

fn d(hi: u16, lo: u16) -> Word {
    Word::descending(hi, lo)
}

fn word(parts: &[Word]) -> Word {
    parts.iter().fold(Word::empty(), |acc, p| acc.concat(p))
}

fn letters(ls: &[u16]) -> Word {
    Word::from_indices(ls)
}

/// Right and bottom paths of the template whose top and left arrows are
/// A template's kind, right and bottom paths, and base cell class.
type Canonical = (TemplateKind, Path, Path, Option<&'static str>);

/// `top` and `left` on their minimal peak, if the pair has that shape.
fn canonical(
    sys: &SrsSystem,
    top: &RuleInstance,
    left: &RuleInstance,
) -> Result<Option<Canonical>, HeckeError> {
    use HeckeRuleName::*;
    let (Some(t), Some(l)) = (HeckeRuleName::classify(&top.rule), HeckeRuleName::classify(&left.rule)) else {
        return Ok(None);
    };
    let (pt, pl) = (top.left.len(), left.left.len());
    let rb = |start: Word| PathBuilder::new(sys, start);
    let (tt, lt) = (top.target(), left.target());
    if pl != 0 {
        return Ok(None);
    }
    let out = match (t, l) {
        (A(k), A(k2)) if k == k2 && pt == 1 => {
            let right = rb(tt).step(0, A(k))?.done();
            let bottom = rb(lt).step(0, A(k))?.done();
            (TemplateKind::AA, right, bottom, Some("aa"))
        }
        (B(k, j), A(k2)) if k == k2 && pt == 1 => {
            let right = rb(tt).step(0, B(k, k - 1))?.step(2, A(k - 1))?.done();
            let bottom = rb(lt).step(0, B(k, j))?.done();
            (TemplateKind::AB, right, bottom, (j == k - 1).then_some("ab"))
        }
        (A(k), B(k2, j)) if k == k2 && pt == (k - j + 1) as usize => {
            let right = rb(tt).step(0, B(k, j))?.done();
            let bottom = rb(lt).step(1, B(k, j))?.step(0, A(k - 1))?.done();
            (TemplateKind::BA, right, bottom, (j == k - 1).then_some("ba"))
        }
        (B(k, i), B(k2, j)) if k == k2 && pt == (k - j + 1) as usize => {
            if j == k - 1 {
                let right = rb(tt).step(1, A(k - 1))?.step(0, B(k, k - 1))?.step(2, A(k - 1))?.done();
                let bottom = rb(lt).step(2, A(k - 1))?.step(1, B(k, i))?.step(0, A(k - 1))?.done();
                (TemplateKind::BBAdjacent, right, bottom, (i == k - 1).then_some("bb"))
            } else {
                let (k1, k2_) = (k - 1, k - 2);
                let s = word(&[d(k.saturating_sub(3), j), d(k - 2, i)]);
                let tail = |ls: &[u16]| word(&[letters(ls), s.clone()]);
                let right = rb(tt)
                    .csort(&tail(&[k, k1, k2_, k1, k, k1]))?
                    .step(1, B(k1, k2_))?
                    .csort(&tail(&[k2_, k, k1, k, k2_, k1]))?
                    .step(1, B(k, k1))?
                    .step(3, B(k1, k2_))?
                    .done();
                let bottom = rb(lt)
                    .csort(&tail(&[k1, k, k1, k2_, k1, k]))?
                    .step(2, B(k1, k2_))?
                    .csort(&tail(&[k1, k2_, k, k1, k, k2_]))?
                    .step(2, B(k, k1))?
                    .step(0, B(k1, k2_))?
                    .csort(&tail(&[k2_, k1, k, k2_, k1, k2_]))?
                    .done();
                (TemplateKind::BBFar, right, bottom, None)
            }
        }
        (B(j, i), C(k, j2)) if j == j2 && k > j && pt == 1 => {
            let right = rb(tt).csort(&word(&[letters(&[j - 1]), d(j, i), letters(&[k])]))?.done();
            let m = (j - i + 1) as usize;
            let bottom = rb(lt)
                .csort(&word(&[d(j, i), letters(&[k, j])]))?
                .step(m, C(k, j))?
                .step(0, B(j, i))?
                .done();
            (TemplateKind::CB, right, bottom, (i + 1 == j).then_some("bc"))
        }
        (C(k, s), B(k2, j)) if k == k2 && k > s && pt == (k - j + 1) as usize => {
            let m = (k - j + 1) as usize;
            if j >= s + 2 {
                let right = rb(tt)
                    .csort(&word(&[letters(&[k, s]), d(k - 1, j), letters(&[k])]))?
                    .step(0, C(k, s))?
                    .step(1, B(k, j))?
                    .done();
                let bottom = rb(lt).csort(&word(&[letters(&[s, k - 1]), d(k, j)]))?.done();
                (TemplateKind::Bc1, right, bottom, None)
            } else if j == s + 1 {
                let right = rb(tt).step(0, B(k, s))?.done();
                let bottom = rb(lt).done();
                (TemplateKind::Bc2, right, bottom, None)
            } else if j == s {
                let right = rb(tt).step(m - 1, A(j))?.step(0, B(k, j))?.done();
                let bottom = rb(lt).step(m, A(j))?.done();
                (TemplateKind::Bc3, right, bottom, None)
            } else {
                let pos = (k - s + 1) as usize;
                let right = rb(tt)
                    .csort(&word(&[d(k, s + 1), letters(&[k]), d(s, j), letters(&[s])]))?
                    .step(pos, B(s, j))?
                    .step(0, B(k, s + 1))?
                    .done();
                let bottom = rb(lt).step(pos, B(s, j))?.done();
                (TemplateKind::Bc4, right, bottom, None)
            }
        }
        (C(j, i), C(k, j2)) if j == j2 && k > j && j > i && pt == 1 => {
            let right = rb(tt).step(0, C(k, i))?.step(1, C(k, j))?.done();
            let bottom = rb(lt).step(1, C(k, i))?.step(0, C(j, i))?.done();
            (TemplateKind::CC, right, bottom, Some("cc"))
        }
        (A(t_), C(s, t2)) if t_ == t2 && s > t_ && pt == 1 => {
            let right = rb(tt).step(0, C(s, t_))?.done();
            let bottom = rb(lt).step(1, C(s, t_))?.step(0, A(t_))?.done();
            (TemplateKind::AC, right, bottom, Some("ac"))
        }
        (C(s, t_), A(s2)) if s == s2 && s > t_ && pt == 1 => {
            let right = rb(tt).step(0, C(s, t_))?.step(1, A(s))?.done();
            let bottom = rb(lt).step(0, C(s, t_))?.done();
            (TemplateKind::ACMirror, right, bottom, None)
        }
        _ => return Ok(None),
    };
    Ok(Some(out))
}

/// The undo square for a top inverse commutation `c_{st}`: apply `c_{ts}`
/// at the same place, returning to the peak, then take the left step.
fn undo(sys: &SrsSystem, top: &RuleInstance, left: &RuleInstance) -> Result<(Path, Path), HeckeError> {
    let Some(HeckeRuleName::C(s, t)) = HeckeRuleName::classify(&top.rule) else {
        return Err(HeckeError::Template("undo needs a commutation on top".into()));
    };
    let mut right = PathBuilder::new(sys, top.target()).step(top.left.len(), HeckeRuleName::C(t, s))?.done();
    right.push(Step::new(left.clone()))?;
    Ok((right, Path::empty(left.target())))
}

fn is_inverse(i: &RuleInstance) -> bool {
    HeckeRuleName::classify(&i.rule).is_some_and(|r| r.is_inverse_c())
}

/// The chosen decreasing critical e.d. for a critical pair of the full
/// presentation, `pair.first` on top and `pair.second` on the left.
pub fn chosen_critical_ed(pair: &CriticalPair, sys: &SrsSystem) -> Result<ChosenEd, HeckeError> {
    let (f, s) = (&pair.first, &pair.second);
    let top = Step::new(f.clone());
    let left = Step::new(s.clone());
    let build = |right: Path, bottom: Path| ElementaryDiagram::proper(top.clone(), left.clone(), right, bottom);
    let unclassified = || HeckeError::UnclassifiedPair(pair.render(sys.n()));
    if is_inverse(f) {
        let (right, bottom) = undo(sys, f, s)?;
        return Ok(ChosenEd {
            kind: TemplateKind::Undo,
            ed: build(right, bottom)?,
            base_class: None,
        });
    }
    if is_inverse(s) {
        let (right, bottom) = undo(sys, s, f)?;
        return Ok(ChosenEd {
            kind: TemplateKind::Conc,
            ed: build(bottom, right)?,
            base_class: None,
        });
    }
    if let Some((kind, right, bottom, base_class)) = canonical(sys, f, s)? {
        return Ok(ChosenEd {
            kind,
            ed: build(right, bottom).map_err(|e| HeckeError::Template(format!("{kind}: {e}")))?,
            base_class,
        });
    }
    if let Some((kind, right, bottom, base_class)) = canonical(sys, s, f)? {
        // The template has the pair the other way round; use its transpose.
        return Ok(ChosenEd {
            kind,
            ed: build(bottom, right).map_err(|e| HeckeError::Template(format!("{kind}: {e}")))?,
            base_class,
        });
    }
    Err(unclassified())
}

/// Resolves critical pairs by the chosen templates.
pub struct HeckeResolver<'a> {
    pub sys: &'a SrsSystem,
}

impl CriticalResolver for HeckeResolver<'_> {
    fn resolve(&self, pair: &CriticalPair) -> Option<ElementaryDiagram> {
        chosen_critical_ed(pair, self.sys).ok().map(|c| c.ed)
    }
}

/// The template resolver when `sys` is a 0-Hecke presentation under the
/// Hecke order, otherwise joinability search up to `join_bound` steps.
pub fn default_resolver(sys: &SrsSystem, join_bound: usize) -> Box<dyn CriticalResolver + '_> {
    let hecke = sys.order_spec() == Some(&crate::order::OrderSpec::Hecke)
        && sys.rules().iter().all(|r| HeckeRuleName::classify(r).is_some());
    if hecke {
        Box::new(HeckeResolver { sys })
    } else {
        Box::new(crate::diagrams::JoinResolver { sys, bound: join_bound })
    }
}
