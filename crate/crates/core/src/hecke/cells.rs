use super::templates::PathBuilder;
use super::{hecke_system, HeckeError, HeckeRuleName, HeckeVariant};
use crate::diagrams::CellFamily;
use crate::srs::{Path, SrsSystem, Word};

use HeckeRuleName::{A, B, C};

fn w(ls: &[u16]) -> Word {
    Word::from_indices(ls)
}

fn path(sys: &SrsSystem, start: &[u16], steps: &[(usize, HeckeRuleName)]) -> Result<Path, HeckeError> {
    let mut b = PathBuilder::new(sys, w(start));
    for &(pos, r) in steps {
        b = b.step(pos, r)?;
    }
    Ok(b.done())
}

/// The generating cells of the coherent presentation on `r''`: commutation
/// loops, `(aa)`, `(ba)`, `(ab)`, `(ac)`, `(bb)`, `(bc)`, `(cc)` and the
/// Zamolodchikov cells, on the alphabet `1..=n`.
pub fn cells_p(n: usize) -> Result<CellFamily, HeckeError> {
    let sys = hecke_system(n, HeckeVariant::RDoublePrime)?;
    let sys = &sys;
    let n = n as u16;
    let mut fam = CellFamily::new("P");
    let mut add = |start: &[u16], p: &[(usize, HeckeRuleName)], q: &[(usize, HeckeRuleName)]| -> Result<(), HeckeError> {
        fam.push(path(sys, start, p)?, path(sys, start, q)?)?;
        Ok(())
    };
    let pairs: Vec<(u16, u16)> = (1..=n)
        .flat_map(|s| (1..=n).map(move |t| (s, t)))
        .filter(|(s, t)| s.abs_diff(*t) >= 2)
        .collect();
    for &(s, t) in &pairs {
        add(&[s, t], &[(0, C(s, t)), (0, C(t, s))], &[])?;
    }
    for k in 1..=n {
        add(&[k, k, k], &[(1, A(k)), (0, A(k))], &[(0, A(k)), (0, A(k))])?;
    }
    for k in 2..=n {
        let k1 = k - 1;
        add(&[k, k1, k, k], &[(2, A(k)), (0, B(k, k1))], &[(0, B(k, k1)), (1, B(k, k1)), (0, A(k1))])?;
        add(
            &[k, k, k1, k],
            &[(1, B(k, k1)), (0, B(k, k1)), (2, A(k1))],
            &[(0, A(k)), (0, B(k, k1))],
        )?;
        add(
            &[k, k1, k, k1, k],
            &[(2, B(k, k1)), (1, A(k1)), (0, B(k, k1)), (2, A(k1))],
            &[(0, B(k, k1)), (2, A(k1)), (1, B(k, k1)), (0, A(k1))],
        )?;
    }
    for &(s, t) in &pairs {
        add(&[s, t, t], &[(1, A(t)), (0, C(s, t))], &[(0, C(s, t)), (1, C(s, t)), (0, A(t))])?;
    }
    for s in 2..=n {
        let s1 = s - 1;
        for t in 1..=n {
            if t.abs_diff(s) < 2 || t.abs_diff(s1) < 2 {
                continue;
            }
            add(
                &[t, s, s1, s],
                &[(1, B(s, s1)), (0, C(t, s1)), (1, C(t, s)), (2, C(t, s1))],
                &[(0, C(t, s)), (1, C(t, s1)), (2, C(t, s)), (0, B(s, s1))],
            )?;
        }
    }
    for k in 1..=n {
        for j in 1..=k.saturating_sub(2) {
            for i in 1..=j.saturating_sub(2) {
                add(
                    &[k, j, i],
                    &[(1, C(j, i)), (0, C(k, i)), (1, C(k, j))],
                    &[(0, C(k, j)), (1, C(k, i)), (0, C(j, i))],
                )?;
            }
        }
    }
    for k in 2..n {
        let (kk, k1) = (k + 1, k - 1);
        add(
            &[kk, k, k1, kk, k, kk],
            &[
                (3, B(kk, k)),
                (1, B(k, k1)),
                (0, C(kk, k1)),
                (3, C(k1, kk)),
                (1, B(kk, k)),
                (3, B(k, k1)),
                (2, C(kk, k1)),
            ],
            &[
                (2, C(k1, kk)),
                (0, B(kk, k)),
                (2, B(k, k1)),
                (1, C(kk, k1)),
                (4, C(k1, kk)),
                (2, B(kk, k)),
                (0, B(k, k1)),
            ],
        )?;
    }
    Ok(fam)
}
