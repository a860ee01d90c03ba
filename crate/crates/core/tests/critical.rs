mod common;

use std::collections::BTreeSet;

use common::*;
use ddiagram::critical::{
    build_critical_ed, enumerate_critical_pairs, join_pair, join_words, local_confluence_report, PairKind,
    DEFAULT_JOIN_BOUND,
};
use ddiagram::hecke::{hecke_system, HeckeRuleName, HeckeVariant};
use ddiagram::{Rule, SrsSystem};

fn pair_set(sys: &SrsSystem, max_len: usize) -> BTreeSet<(Vec<u16>, usize, String, usize, String)> {
    enumerate_critical_pairs(sys)
        .into_iter()
        .filter(|p| p.peak.len() <= max_len)
        .map(|p| (letters(&p.peak), p.first.position(), p.first.rule.name.clone(), p.second.position(), p.second.rule.name.clone()))
        .collect()
}

#[test]
fn matches_brute_force_overlaps() {
    for n in 1..=3 {
        for variant in [HeckeVariant::RPrime, HeckeVariant::RDoublePrime, HeckeVariant::RFull] {
            let sys = hecke_system(n, variant).unwrap();
            let brute = brute_critical_pairs(n as u16, &rule_table(&sys), 6);
            assert_eq!(pair_set(&sys, 6), brute, "n={n} {variant}");
        }
    }
}

#[test]
fn redex_pairs_in_words_are_disjoint_or_whiskered_critical() {
    let sys = rfull(3);
    let pairs: BTreeSet<_> = pair_set(&sys, 8);
    for w in all_words(3, 6) {
        let rs = sys.find_redexes(&word(&w));
        for a in &rs {
            for b in &rs {
                if a == b {
                    continue;
                }
                let (pa, ea) = (a.position(), a.position() + a.rule.lhs.len());
                let (pb, eb) = (b.position(), b.position() + b.rule.lhs.len());
                if ea <= pb || eb <= pa {
                    continue;
                }
                let lo = pa.min(pb);
                let hi = ea.max(eb);
                let key = (w[lo..hi].to_vec(), pa - lo, a.rule.name.clone(), pb - lo, b.rule.name.clone());
                assert!(pairs.contains(&key), "{w:?}: {key:?}");
            }
        }
    }
}

#[test]
fn idempotent_peak() {
    let one = rfull(1);
    let pairs = enumerate_critical_pairs(&one);
    assert_eq!(pairs.len(), 2);
    assert!(pairs.iter().all(|p| p.peak == parse("111")));
    let j = join_pair(&pairs[0], &one, DEFAULT_JOIN_BOUND).unwrap();
    assert_eq!(j.target, parse("11"));
    let ed = build_critical_ed(&pairs[0], &j).unwrap();
    assert!(ed.validate().is_ok());
}

#[test]
fn braid_overlaps() {
    let two = rfull(2);
    let pairs = enumerate_critical_pairs(&two);
    let ba = pairs
        .iter()
        .find(|p| p.peak == parse("2122") && p.first.render(2) == "21:a2:-" && p.second.render(2) == "-:b2_1:2")
        .expect("(ba) peak");
    let j = join_pair(ba, &two, DEFAULT_JOIN_BOUND).unwrap();
    assert_eq!(j.target, parse("121"));
    assert!(j.right_path.validate().is_ok() && j.bottom_path.validate().is_ok());

    let three = rfull(3);
    let pairs = enumerate_critical_pairs(&three);
    let suffix = pairs
        .iter()
        .find(|p| p.peak == parse("3213") && p.first.render(3) == "32:c1_3:-" && p.second.render(3) == "-:b3_1:-")
        .expect("suffix inclusion");
    assert_eq!(suffix.kind, PairKind::Overlap);
    let j = join_pair(suffix, &three, DEFAULT_JOIN_BOUND).unwrap();
    let ed = build_critical_ed(suffix, &j).unwrap();
    assert_eq!(ed.w(), &j.target);
}

#[test]
fn interior_inclusions_are_marked() {
    let sys = SrsSystem::new(
        2,
        vec![Rule::new("long", parse("121"), parse("1")).unwrap(), Rule::new("mid", parse("2"), parse("")).unwrap()],
        None,
    )
    .unwrap();
    let pairs = enumerate_critical_pairs(&sys);
    assert!(pairs.iter().any(|p| p.kind == PairKind::Inclusion && p.peak == parse("121")));
}

#[test]
fn confluence_of_the_three_presentations() {
    assert!(!local_confluence_report(&hecke_system(3, HeckeVariant::RPrime).unwrap(), 12).passed());
    let r = local_confluence_report(&hecke_system(3, HeckeVariant::RPrime).unwrap(), DEFAULT_JOIN_BOUND);
    assert!(r.failures.iter().any(|p| p.peak == parse("3231")));
    assert!(local_confluence_report(&hecke_system(3, HeckeVariant::RDoublePrime).unwrap(), 12).passed());
    assert!(local_confluence_report(&rfull(3), 12).passed());
    let disjoint = SrsSystem::new(2, vec![Rule::new("x", parse("12"), parse("1")).unwrap()], None).unwrap();
    assert!(local_confluence_report(&disjoint, 1).passed());
}

#[test]
fn rprime_fails_within_one_step() {
    let sys = hecke_system(2, HeckeVariant::RPrime).unwrap();
    let pairs = enumerate_critical_pairs(&sys);
    let p = pairs.iter().find(|p| p.peak == parse("2122")).unwrap();
    assert!(join_pair(p, &sys, 1).is_none());
    assert!(join_pair(p, &sys, DEFAULT_JOIN_BOUND).is_some());
}

#[test]
fn joins_are_valid_paths() {
    for n in 1..=4 {
        let sys = rfull(n);
        for p in enumerate_critical_pairs(&sys) {
            let j = join_pair(&p, &sys, DEFAULT_JOIN_BOUND).expect("rfull is locally confluent");
            assert!(j.right_path.validate().is_ok());
            assert_eq!(&j.right_path.start, &p.first.target());
            assert_eq!(&j.bottom_path.start, &p.second.target());
            assert_eq!(j.right_path.end(), j.bottom_path.end());
        }
    }
    assert!(join_words(&rfull(2), &parse("12"), &parse("21"), 8).is_none());
}

#[test]
fn enumeration_is_deterministic() {
    let a = enumerate_critical_pairs(&rfull(4));
    let b = enumerate_critical_pairs(&rfull(4));
    assert_eq!(a, b);
    // Every pair appears in both orders.
    let keys: BTreeSet<_> = a.iter().map(|p| (p.peak.clone(), p.first.clone(), p.second.clone())).collect();
    assert!(a.iter().all(|p| keys.contains(&(p.peak.clone(), p.second.clone(), p.first.clone()))));
    assert!(a.iter().all(|p| HeckeRuleName::classify(&p.first.rule).is_some()));
}
