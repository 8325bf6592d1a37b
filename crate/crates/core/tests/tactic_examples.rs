use std::collections::BTreeSet;
use std::path::Path;

use eqglue::proof::check;
use eqglue::tactic::{
    auto, auto_with_trace, read_theory, smart_apply, Entry, EquationSet, ProofTree, SearchConfig, Theory,
};
use eqglue::terms::{parse_term, Term};

fn theory(name: &str) -> Theory {
    read_theory(&Path::new(env!("CARGO_MANIFEST_DIR")).join("theories").join(name)).unwrap()
}

fn lemma(th: &Theory, name: &str) -> (Vec<Term>, Term) {
    match th.entry(name) {
        Some(Entry::Lemma {
            hypotheses,
            conclusion,
            ..
        }) => (hypotheses.clone(), conclusion.clone()),
        _ => panic!("{name} is not a lemma"),
    }
}

fn all_chains_check(t: &ProofTree) {
    check(&t.chain).unwrap();
    t.children.iter().for_each(all_chains_check);
}

#[test]
fn substitution_lemma_instantiates_j() {
    let th = theory("subst.thy");
    let goal = th.goals[0].1[0].clone();
    let (hyps, concl) = lemma(&th, "hind");
    let eqs = EquationSet::load(&th, &[]).unwrap();
    let m = smart_apply(&goal, &hyps, &concl, &eqs, 3).unwrap();
    check(&m.chain).unwrap();
    assert!(m.chain.rewrite_count() > 0);
    // J is the lemma's only variable.
    let images: Vec<Term> = m.subst.iter().map(|(_, t)| t.clone()).collect();
    assert_eq!(images, [parse_term("plus(i,one)").unwrap()]);

    let bare = th.without("plus_assoc");
    let eqs = EquationSet::load(&bare, &[]).unwrap();
    for budget in 0..=3 {
        assert!(smart_apply(&goal, &hyps, &concl, &eqs, budget).is_none());
    }
}

#[test]
fn reflection_of_successor() {
    let th = theory("pred.thy");
    let out = auto(&th, &th.goals[0].1, &SearchConfig::default()).unwrap().unwrap();
    assert_eq!(out.trees[0].by, "monotonic_pred");
    assert_eq!(out.trees[0].children[0].by, "h");
    all_chains_check(&out.trees[0]);
}

#[test]
fn arithmetic_glue() {
    let th = theory("arith.thy");
    let goal = th.goals[0].1.clone();
    let cfg = SearchConfig::default();
    let out = auto(&th, &goal, &cfg).unwrap().unwrap();
    let expected: BTreeSet<String> = ["le_plus_to_le", "monotonic_pred"].map(String::from).into();
    assert_eq!(out.trace, expected);
    let path: Vec<&str> = {
        let mut v = Vec::new();
        let mut t = &out.trees[0];
        loop {
            v.push(t.by.as_str());
            match t.children.first() {
                Some(c) => t = c,
                None => break,
            }
        }
        v
    };
    assert_eq!(path, ["monotonic_pred", "le_plus_to_le", "h"]);
    all_chains_check(&out.trees[0]);

    let again = auto_with_trace(&th, &goal, &out.trace, &cfg).unwrap().unwrap();
    assert_eq!(again.trace, out.trace);
    assert!(again.applications < out.applications);

    let partial: BTreeSet<String> = ["monotonic_pred".to_string()].into();
    assert!(auto_with_trace(&th, &goal, &partial, &cfg).unwrap().is_none());
}
