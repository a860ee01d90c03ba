use std::collections::{BTreeSet, VecDeque};

use super::{hecke_system, HeckeError, HeckeVariant};
use crate::seminormal::Canonicalizer;
use crate::srs::{Generator, Word};

/// Largest rank `enumerate_monoid` accepts unless told otherwise.
pub const DEFAULT_MONOID_CAP: usize = 5;

/// The elements of the 0-Hecke monoid of rank `n`, one attractor canonical
/// form per element, in shortlex order.
pub fn enumerate_monoid(n: usize, variant: HeckeVariant, cap: usize) -> Result<Vec<Word>, HeckeError> {
    if n > cap {
        return Err(HeckeError::CapExceeded { n, cap });
    }
    let sys = hecke_system(n, variant)?;
    let canon = Canonicalizer::new(&sys);
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    let e = canon.canon(&Word::empty())?;
    seen.insert(e.clone());
    queue.push_back(e);
    while let Some(x) = queue.pop_front() {
        for g in 1..=n as u16 {
            let y = canon.canon(&x.concat(&Word::new(vec![Generator(g)])))?;
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Word> = seen.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}
