use std::collections::BTreeSet;

use cct::enumerate::EnumConfig;
use cct::family::{curry, disjoint_union, product, projections, set_family, transpose, uncurry_family};
use cct::function::{compose_fun, fun_from_graph, graph, identity_fun, inverse, is_injective};
use cct::laws;
use cct::relation::{compose, converse, identity, is_functional, union};
use cct::{Fun, Rel, VSet, Value};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn pool() -> Vec<Value> {
    ["a", "b", "c"].iter().map(|s| Value::sym(s)).collect()
}

fn grid() -> Vec<(Value, Value)> {
    let p = pool();
    p.iter().flat_map(|x| p.iter().map(move |y| (x.clone(), y.clone()))).collect()
}

fn rel() -> impl Strategy<Value = Rel> {
    let g = grid();
    let n = g.len();
    subsequence(g, 0..=n).prop_map(|ps| ps.into_iter().collect())
}

fn fun() -> impl Strategy<Value = Fun> {
    prop::collection::vec(prop::option::of(0..3usize), 3).prop_map(|picks| {
        let p = pool();
        p.iter().zip(picks).filter_map(|(x, k)| k.map(|k| (x.clone(), p[k].clone()))).collect()
    })
}

fn pairs(r: &Rel) -> BTreeSet<(Value, Value)> {
    r.iter().map(|(x, y)| (x.clone(), y.clone())).collect()
}

proptest! {
    #[test]
    fn compose_matches_definition(r in rel(), s in rel()) {
        let mut want = BTreeSet::new();
        for (x, y) in r.iter() {
            for (y2, z) in s.iter() {
                if y == y2 {
                    want.insert((x.clone(), z.clone()));
                }
            }
        }
        prop_assert_eq!(pairs(&compose(&s, &r)), want);
    }

    #[test]
    fn composition_is_associative(r in rel(), s in rel(), t in rel()) {
        prop_assert_eq!(compose(&t, &compose(&s, &r)), compose(&compose(&t, &s), &r));
    }

    #[test]
    fn converse_laws(r in rel(), s in rel()) {
        prop_assert_eq!(converse(&converse(&r)), r.clone());
        prop_assert_eq!(converse(&compose(&s, &r)), compose(&converse(&r), &converse(&s)));
        prop_assert_eq!(converse(&union(&r, &s)), union(&converse(&r), &converse(&s)));
    }

    #[test]
    fn identity_is_neutral(r in rel()) {
        let all: VSet = pool().into_iter().collect();
        prop_assert_eq!(compose(&r, &identity(&all)), r.clone());
        prop_assert_eq!(compose(&identity(&all), &r), r);
    }

    #[test]
    fn functional_iff_graph_of_a_function(r in rel()) {
        prop_assert_eq!(is_functional(&r), fun_from_graph(&r).is_ok());
        if let Ok(f) = fun_from_graph(&r) {
            prop_assert_eq!(graph(&f), r);
        }
    }

    #[test]
    fn converse_after_contains_identity(r in rel()) {
        // R˘ ∘ R contains id on dom R
        let back = compose(&converse(&r), &r);
        prop_assert!(identity(&r.dom()).is_subset(&back));
    }

    #[test]
    fn compose_fun_domain(f in fun(), g in fun()) {
        let h = compose_fun(&g, &f);
        let want: VSet = f.iter().filter(|(_, y)| g.contains(y)).map(|(x, _)| x.clone()).collect();
        prop_assert_eq!(h.dom(), want);
        prop_assert_eq!(graph(&h), compose(&graph(&g), &graph(&f)));
    }

    #[test]
    fn inverse_exactly_when_injective(f in fun()) {
        prop_assert_eq!(inverse(&f).is_ok(), is_injective(&f));
        if let Ok(h) = inverse(&f) {
            prop_assert_eq!(compose_fun(&h, &f), identity_fun(&f.dom()));
            prop_assert_eq!(compose_fun(&f, &h), identity_fun(&f.ran()));
        }
    }

    #[test]
    fn curry_round_trip(picks in prop::collection::vec(prop::option::of(0..3i64), 9)) {
        let f: Fun = grid()
            .into_iter()
            .zip(picks)
            .filter_map(|((x, y), k)| k.map(|k| (Value::pair(x, y), Value::int(k))))
            .collect();
        prop_assert_eq!(uncurry_family(&curry(&f).unwrap()).unwrap(), f);
    }

    #[test]
    fn family_sizes(sizes in prop::collection::vec(0..4usize, 1..4)) {
        let t = set_family(sizes.iter().enumerate().map(|(k, &n)| {
            (Value::int(k as i64), (0..n as i64).map(Value::int).collect::<VSet>())
        }));
        prop_assert_eq!(product(&t).unwrap().len(), sizes.iter().product::<usize>());
        prop_assert_eq!(disjoint_union(&t).unwrap().len(), sizes.iter().sum::<usize>());
        let prod = product(&t).unwrap();
        prop_assert_eq!(transpose(&projections(&t).unwrap()).unwrap(), identity_fun(&prod));
    }
}

#[test]
fn sampled_runs_are_reproducible_and_thread_independent() {
    let cfg = EnumConfig::sampled(3, 150, 99);
    let par = EnumConfig { jobs: 4, ..cfg.clone() };
    for law in laws::catalog() {
        let a = laws::run_law(law, &cfg).unwrap();
        assert_eq!(a, laws::run_law(law, &cfg).unwrap(), "{}", law.id);
        assert_eq!(a, laws::run_law(law, &par).unwrap(), "{}", law.id);
        assert!(law.as_expected(&a), "{}: {:?}", law.id, a.outcome);
    }
}

#[test]
fn exhaustive_default_is_as_expected() {
    let cfg = EnumConfig::default();
    for (law, report) in laws::run_suite(&["all"], &cfg).unwrap() {
        assert!(law.as_expected(&report), "{}: {:?}", law.id, report.outcome);
        if let Some(cx) = report.counterexample() {
            assert!(!law.replay(cx), "{} witness does not replay", law.id);
        }
    }
}
