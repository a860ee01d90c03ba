use crate::order::ElementaryDiagram;
use crate::srs::{Path, RuleInstance, RuleRef, Step, Word};

/// The square of two disjoint redexes in `s(r)·w·s(r2)`: `r` on top, `r2` on
/// the left, each applied after the other on the opposite side.
pub fn natural_ed(r: &RuleRef, w: &Word, r2: &RuleRef) -> ElementaryDiagram {
    let e = Word::empty();
    let top = Step::new(RuleInstance::new(e.clone(), r.clone(), w.concat(&r2.lhs)));
    let left = Step::new(RuleInstance::new(r.lhs.concat(w), r2.clone(), e.clone()));
    let right = Path::single(Step::new(RuleInstance::new(r.rhs.concat(w), r2.clone(), e.clone())));
    let bottom = Path::single(Step::new(RuleInstance::new(e, r.clone(), w.concat(&r2.rhs))));
    ElementaryDiagram::proper(top, left, right, bottom).expect("natural squares are well formed")
}

/// The improper cell for a corner whose two arrows are the same step.
pub fn repeated_step_ed(step: &Step) -> ElementaryDiagram {
    ElementaryDiagram {
        top: crate::order::Arrow::Solid(step.clone()),
        left: crate::order::Arrow::Solid(step.clone()),
        right: Path::empty(step.target.clone()),
        bottom: Path::empty(step.target.clone()),
    }
}
