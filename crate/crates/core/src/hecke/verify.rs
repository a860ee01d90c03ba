use std::collections::BTreeMap;

use rayon::prelude::*;

use super::templates::{chosen_critical_ed, ChosenEd, TemplateKind};
use super::{cells_p, hecke_system, HeckeError, HeckeOrder, HeckeRuleName, HeckeVariant};
use crate::critical::{enumerate_critical_pairs, CriticalPair};
use crate::diagrams::{natural_ed, paths_equivalent_mod_cells, CellFamily, Equivalence};
use crate::order::{check_monomial_sample, is_decreasing_ed};
use crate::report::{Report, Status};
use crate::seminormal::attractor;
use crate::srs::{RuleInstance, SrsSystem, Word};

pub const DEFAULT_COHERENCE_BOUND: usize = 100_000;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Paths expanded per coherence check before giving up.
    pub coherence_bound: usize,
    pub seed: u64,
    /// Longest word for the attractor-loop check.
    pub loop_word_len: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            coherence_bound: DEFAULT_COHERENCE_BOUND,
            seed: 0,
            loop_word_len: 6,
        }
    }
}

/// All words over `1..=n` of length at most `max_len`.
pub fn words_up_to(n: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * n);
        for w in &layer {
            for g in 1..=n as u16 {
                next.push(w.concat(&Word::from_indices(&[g])));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Pairs `p < q` with `w_p >= w_q + 2`; every forward commutation lowers it by one.
pub fn commuting_inversions(w: &Word) -> usize {
    let l = w.letters();
    (0..l.len())
        .flat_map(|p| (p + 1..l.len()).map(move |q| (p, q)))
        .filter(|&(p, q)| l[p].0 >= l[q].0 + 2)
        .count()
}

fn check_naturals(sys: &SrsSystem, report: &mut Report) {
    let ord = HeckeOrder;
    let words = words_up_to(sys.n(), 3);
    let rules = sys.rules();
    let failures: Vec<String> = rules
        .par_iter()
        .flat_map_iter(|r1| {
            let words = &words;
            rules.iter().flat_map(move |r2| {
                words.iter().filter_map(move |w| {
                    let ed = natural_ed(r1, w, r2);
                    let ok = is_decreasing_ed(&ord, &ed).0 && is_decreasing_ed(&ord, &ed.transpose()).0;
                    (!ok).then(|| ed.render(sys.n()))
                })
            })
        })
        .collect();
    let checked = rules.len() * rules.len() * words.len();
    report.push(
        "natural squares decreasing",
        Status::from_bool(failures.is_empty()),
        format!("{checked} natural squares with middle word of length <= 3, both orientations"),
        failures.first().cloned(),
    );
}

fn chosen_eds(sys: &SrsSystem) -> (Vec<ChosenEd>, Vec<String>) {
    let mut chosen = Vec::new();
    let mut errors = Vec::new();
    for pair in enumerate_critical_pairs(sys) {
        match chosen_critical_ed(&pair, sys) {
            Ok(c) => chosen.push(c),
            Err(e) => errors.push(e.to_string()),
        }
    }
    (chosen, errors)
}

fn check_critical(chosen: &[ChosenEd], errors: &[String], sys: &SrsSystem, report: &mut Report) {
    let ord = HeckeOrder;
    let mut counts: BTreeMap<TemplateKind, usize> = BTreeMap::new();
    let mut bad = Vec::new();
    for c in chosen {
        *counts.entry(c.kind).or_default() += 1;
        if !is_decreasing_ed(&ord, &c.ed).0 {
            bad.push(format!("{}: {}", c.kind, c.ed.render(sys.n())));
        }
    }
    let summary: Vec<String> = counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
    report.push(
        "critical pairs classified",
        Status::from_bool(errors.is_empty()),
        format!("{} ordered pairs ({})", chosen.len() + errors.len(), summary.join(", ")),
        errors.first().cloned(),
    );
    report.push(
        "chosen critical e.d.s decreasing",
        Status::from_bool(bad.is_empty()),
        format!("{} chosen e.d.s", chosen.len()),
        bad.first().cloned(),
    );
}

fn check_forward_c(sys: &SrsSystem, report: &mut Report) -> Result<(), HeckeError> {
    let rules: Vec<_> = sys
        .rules()
        .iter()
        .filter(|r| HeckeRuleName::classify(r).is_some_and(|h| h.is_forward_c()))
        .map(|r| (**r).clone())
        .collect();
    let fc = SrsSystem::new(sys.n(), rules, None)?;
    let words = words_up_to(sys.n(), 5);
    let increasing = words.par_iter().find_any(|w| {
        let m = commuting_inversions(w);
        fc.steps_from(w).iter().any(|s| commuting_inversions(&s.target) + 1 != m)
    });
    report.push(
        "forward commutations terminate",
        Status::from_bool(increasing.is_none()),
        format!("commuting-inversion count drops by one on every step, {} words up to length 5", words.len()),
        increasing.map(|w| w.render(sys.n())),
    );
    let pairs = enumerate_critical_pairs(&fc);
    let bad: Vec<String> = pairs
        .iter()
        .filter(|p| {
            let l = p.peak.letters();
            let shape = l.len() == 3 && l[0].0 >= l[1].0 + 2 && l[1].0 >= l[2].0 + 2;
            let lift = |i: &RuleInstance| match sys.rule(&i.rule.name) {
                Some(r) => RuleInstance::new(i.left.clone(), r.clone(), i.right.clone()),
                None => i.clone(),
            };
            let translated = CriticalPair {
                kind: p.kind,
                first: lift(&p.first),
                second: lift(&p.second),
                peak: p.peak.clone(),
            };
            let cc = chosen_critical_ed(&translated, sys).is_ok_and(|c| c.kind == TemplateKind::CC);
            !(shape && cc)
        })
        .map(|p| p.render(sys.n()))
        .collect();
    report.push(
        "forward commutation peaks are kji",
        Status::from_bool(bad.is_empty()),
        format!("{} ordered critical pairs, each resolved by a (cc) cell", pairs.len()),
        bad.first().cloned(),
    );
    Ok(())
}

fn check_loops(sys: &SrsSystem, max_len: usize, report: &mut Report) {
    let words = words_up_to(sys.n(), max_len);
    let bad = words.par_iter().find_map_any(|w| {
        let class = match attractor(w, sys) {
            Ok(c) => c,
            Err(e) => return Some(e.to_string()),
        };
        if class.canon != *w {
            // Each class is checked once, from its least member.
            return None;
        }
        class
            .members
            .iter()
            .flat_map(|m| sys.steps_from(m))
            .filter(|s| class.members.contains(&s.target))
            .find(|s| !HeckeRuleName::classify(s.rule()).is_some_and(|h| h.is_c()))
            .map(|s| s.instance.render(sys.n()))
    });
    report.push(
        "attractor loops are commutations",
        Status::from_bool(bad.is_none()),
        format!("attractors of {} words up to length {max_len}", words.len()),
        bad,
    );
}

/// Order in which chosen cells are proved from earlier ones.
fn induction_rank(k: TemplateKind) -> usize {
    use TemplateKind::*;
    [AA, AC, ACMirror, CC, Undo, Conc, Bc2, AB, BA, BBAdjacent, BBFar, CB, Bc1, Bc3, Bc4]
        .iter()
        .position(|&x| x == k)
        .unwrap_or(usize::MAX)
}

/// The coherence base: the `r''` generating cells, natural squares and the
/// `(Bc2)` squares relating each `b_{kj}` to `r''`.
pub fn coherence_base(n: usize, chosen: &[ChosenEd]) -> Result<CellFamily, HeckeError> {
    let mut base = cells_p(n)?;
    base.naturals = true;
    for c in chosen.iter().filter(|c| c.kind == TemplateKind::Bc2) {
        base.push_square(&c.ed)?;
    }
    Ok(base)
}

fn check_coherence(
    n: usize,
    chosen: &[ChosenEd],
    bound: usize,
    sys: &SrsSystem,
    report: &mut Report,
) -> Result<(), HeckeError> {
    let mut base = coherence_base(n, chosen)?;
    let mut order: Vec<&ChosenEd> = chosen.iter().collect();
    order.sort_by_key(|c| (induction_rank(c.kind), c.ed.x().len(), c.ed.x().clone()));
    let mut unknown = Vec::new();
    let mut proved = 0;
    let mut i = 0;
    while i < order.len() {
        // Cells of one kind and peak length are checked together against the
        // cells proved before them.
        let key = (induction_rank(order[i].kind), order[i].ed.x().len());
        let mut j = i;
        while j < order.len() && (induction_rank(order[j].kind), order[j].ed.x().len()) == key {
            j += 1;
        }
        let verdicts: Vec<Result<Equivalence, HeckeError>> = order[i..j]
            .par_iter()
            .map(|c| {
                let p = c.ed.top.as_path().then(&c.ed.right)?;
                let q = c.ed.left.as_path().then(&c.ed.bottom)?;
                Ok(paths_equivalent_mod_cells(c.ed.x(), &p, &q, &base, bound)?)
            })
            .collect();
        for (c, v) in order[i..j].iter().zip(verdicts) {
            match v? {
                Equivalence::Equivalent { .. } => {
                    proved += 1;
                    base.push_square(&c.ed)?;
                }
                Equivalence::Unknown { .. } => unknown.push(format!("{}: {}", c.kind, c.ed.render(sys.n()))),
            }
        }
        i = j;
    }
    let status = if unknown.is_empty() { Status::Pass } else { Status::Unknown };
    report.push(
        "chosen critical e.d.s coherent",
        status,
        format!(
            "{proved} of {} equivalent modulo the generating cells, bound {bound} paths each",
            chosen.len()
        ),
        unknown.first().cloned(),
    );
    Ok(())
}

/// Checks the decreasing-diagram proof for the full presentation of rank `n`.
pub fn verify_suite(n: usize, opts: &VerifyOptions) -> Result<Report, HeckeError> {
    let sys = hecke_system(n, HeckeVariant::RFull)?;
    let mut report = Report::new(format!("hecke verify n={n}"));
    let monomial = check_monomial_sample(&HeckeOrder, &sys, 2000, opts.seed);
    report.push(
        "order is monomial (sampled)",
        Status::from_bool(monomial.passed()),
        format!("{} random instance pairs, seed {}", monomial.trials, opts.seed),
        monomial.counterexamples.first().cloned(),
    );
    check_naturals(&sys, &mut report);
    let (chosen, errors) = chosen_eds(&sys);
    check_critical(&chosen, &errors, &sys, &mut report);
    check_forward_c(&sys, &mut report)?;
    check_loops(&sys, opts.loop_word_len, &mut report);
    check_coherence(n, &chosen, opts.coherence_bound, &sys, &mut report)?;
    Ok(report)
}
