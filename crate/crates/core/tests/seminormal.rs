mod common;

use common::*;
use ddiagram::hecke::{hecke_system, is_c_path, HeckeRuleName, HeckeVariant};
use ddiagram::seminormal::{attractor, attractor_loop_steps, is_seminormal, words_equal, Canonicalizer, SeminormalError};
use ddiagram::srs::{Path, SrsSystem};
use ddiagram::{Rule, Word};
use proptest::prelude::*;

#[test]
fn equality_matches_union_find() {
    for n in 1..=3u16 {
        let sys = rfull(n as usize);
        let mut oracle = CongruenceOracle::new(n, &rule_table(&sys), 6);
        let canon = Canonicalizer::new(&sys);
        let words = all_words(n, 5);
        for u in &words {
            for v in words.iter().filter(|v| v.len() <= u.len()) {
                assert_eq!(
                    canon.equal(&word(u), &word(v)).unwrap(),
                    oracle.equal(u, v),
                    "n={n} {u:?} {v:?}"
                );
            }
        }
    }
}

#[test]
fn attractor_examples() {
    let sys = rfull(3);
    let c = attractor(&parse("31"), &sys).unwrap();
    assert_eq!(c.members.len(), 2);
    assert_eq!(c.canon, parse("13"));
    assert!(is_seminormal(&parse("31"), &sys).unwrap());
    assert!(!is_seminormal(&parse("11"), &sys).unwrap());
    assert_eq!(attractor(&parse("121"), &sys).unwrap().canon, attractor(&parse("212"), &sys).unwrap().canon);
    assert!(words_equal(&parse("1121"), &parse("212"), &sys).unwrap());
    assert!(!words_equal(&parse("12"), &parse("21"), &sys).unwrap());
    assert_eq!(attractor(&Word::empty(), &sys).unwrap().canon, Word::empty());
    assert!(attractor_loop_steps(&parse("1122"), &sys).unwrap().is_empty());
    assert_eq!(attractor_loop_steps(&parse("13"), &sys).unwrap().len(), 2);
}

#[test]
fn non_confluent_words_are_rejected() {
    let sys = SrsSystem::new(
        2,
        vec![Rule::new("x", parse("12"), parse("1")).unwrap(), Rule::new("y", parse("12"), parse("2")).unwrap()],
        None,
    )
    .unwrap();
    let err = attractor(&parse("12"), &sys).unwrap_err();
    assert_eq!(err, SeminormalError::NotOneClass { word: "12".into(), classes: 2 });
}

#[test]
fn rprime_has_several_attractors() {
    let sys = hecke_system(3, HeckeVariant::RPrime).unwrap();
    assert!(matches!(attractor(&parse("3231"), &sys), Err(SeminormalError::NotOneClass { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn single_attractor_class(n in 1usize..=4, w in prop::collection::vec(1u16..=4, 0..=7)) {
        let w: Vec<u16> = w.into_iter().map(|g| (g - 1) % n as u16 + 1).collect();
        for v in [HeckeVariant::RDoublePrime, HeckeVariant::RFull] {
            let sys = hecke_system(n, v).unwrap();
            let c = attractor(&word(&w), &sys).unwrap();
            for m in &c.members {
                prop_assert!(is_seminormal(m, &sys).unwrap());
                prop_assert_eq!(&attractor(m, &sys).unwrap(), &c);
                prop_assert!(m.len() <= w.len());
            }
        }
    }

    #[test]
    fn loops_are_commutations(n in 1usize..=4, w in prop::collection::vec(1u16..=4, 0..=7)) {
        let w: Vec<u16> = w.into_iter().map(|g| (g - 1) % n as u16 + 1).collect();
        let sys = rfull(n);
        let canon = attractor(&word(&w), &sys).unwrap().canon;
        for s in attractor_loop_steps(&canon, &sys).unwrap() {
            prop_assert!(HeckeRuleName::classify(s.rule()).is_some_and(|h| h.is_c()));
            prop_assert!(is_c_path(&Path::single(s)));
        }
    }

    #[test]
    fn canonical_forms_are_a_congruence(n in 1usize..=3, u in prop::collection::vec(1u16..=3, 0..=5), v in prop::collection::vec(1u16..=3, 0..=5), x in prop::collection::vec(1u16..=3, 0..=3)) {
        let f = |w: Vec<u16>| word(&w.into_iter().map(|g| (g - 1) % n as u16 + 1).collect::<Vec<_>>());
        let (u, v, x) = (f(u), f(v), f(x));
        let sys = rfull(n);
        let c = Canonicalizer::new(&sys);
        // Canonical forms respect multiplication.
        let uv = c.canon(&u.concat(&v)).unwrap();
        prop_assert_eq!(&c.canon(&c.canon(&u).unwrap().concat(&c.canon(&v).unwrap())).unwrap(), &uv);
        if c.equal(&u, &v).unwrap() {
            prop_assert!(c.equal(&x.concat(&u), &x.concat(&v)).unwrap());
            prop_assert!(c.equal(&u.concat(&x), &v.concat(&x)).unwrap());
        }
        prop_assert_eq!(c.canon(&c.canon(&u).unwrap()).unwrap(), c.canon(&u).unwrap());
    }
}
