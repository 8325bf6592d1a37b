mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eqglue::proof::check;
use eqglue::tactic::{auto, auto_with_trace, cluster, parse_theory, smart_apply, Entry, EquationSet, SearchConfig, Theory};
use eqglue::terms::Term;

fn arg(rng: &mut ChaCha8Rng, depth: usize, vars: &[&str]) -> String {
    if depth == 0 || rng.gen_bool(0.4) {
        let mut leaves = vec!["a", "b"];
        leaves.extend_from_slice(vars);
        return leaves.choose(rng).unwrap().to_string();
    }
    let f = ["s", "pr"].choose(rng).unwrap();
    format!("{f}({})", arg(rng, depth - 1, vars))
}

fn atom(rng: &mut ChaCha8Rng, vars: &[&str]) -> String {
    if rng.gen_bool(0.5) {
        format!("p({})", arg(rng, 2, vars))
    } else {
        format!("q({},{})", arg(rng, 2, vars), arg(rng, 2, vars))
    }
}

/// A small Horn theory over `p/1` and `q/2` with `pr(s(X)) = X`.
fn random_theory(rng: &mut ChaCha8Rng) -> Theory {
    let mut text = String::new();
    if rng.gen_bool(0.7) {
        text.push_str("equation pr_s: pr(s(X)) = X.\n");
    }
    for i in 0..rng.gen_range(1..5) {
        let hyps: Vec<String> = (0..rng.gen_range(0..3)).map(|_| atom(rng, &["N", "M"])).collect();
        let mut parts = hyps;
        parts.push(atom(rng, &["N", "M"]));
        text.push_str(&format!("lemma l{i}: {}.\n", parts.join(" -> ")));
    }
    if rng.gen_bool(0.4) {
        text.push_str("lemma q_sym: q(N,M) -> q(M,N).\n");
    }
    for i in 0..rng.gen_range(0..3) {
        text.push_str(&format!("assume h{i}: {}.\n", atom(rng, &[])));
    }
    let goals: Vec<String> = (0..rng.gen_range(1..4))
        .map(|_| {
            let vars: &[&str] = if rng.gen_bool(0.3) { &["X"] } else { &[] };
            atom(rng, vars)
        })
        .collect();
    text.push_str(&format!("goal g: {}.\n", goals.join(", ")));
    parse_theory(&text).unwrap_or_else(|e| panic!("{e}\n{text}"))
}

/// Renumbers `X<n>` variables by first occurrence.
fn canonical(text: &str) -> String {
    let mut names: Vec<String> = Vec::new();
    let mut out = String::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if c == 'X' && chars.peek().is_some_and(char::is_ascii_digit) {
            let mut digits = String::new();
            while let Some(d) = chars.next_if(char::is_ascii_digit) {
                digits.push(d);
            }
            let k = names.iter().position(|n| *n == digits).unwrap_or_else(|| {
                names.push(digits);
                names.len() - 1
            });
            out.push_str(&format!("V{k}"));
        } else {
            out.push(c);
        }
    }
    out
}

fn config(depth: usize) -> SearchConfig {
    SearchConfig {
        max_depth: depth,
        max_narrowing: 2,
        ..SearchConfig::default()
    }
}

fn lemmas(th: &Theory) -> Vec<(&[Term], &Term)> {
    th.entries
        .iter()
        .filter_map(|e| match e {
            Entry::Lemma {
                hypotheses,
                conclusion,
                ..
            } => Some((hypotheses.as_slice(), conclusion)),
            _ => None,
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn smart_apply_chains_check_and_budgets_are_monotone(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let th = random_theory(&mut rng);
        let eqs = EquationSet::load(&th, &[]).unwrap();
        let targets: Vec<Term> = th.goals[0].1.iter().chain(th.assumptions.iter().map(|(_, a)| a)).cloned().collect();
        for goal in &targets {
            for (hyps, concl) in lemmas(&th) {
                let mut solved = false;
                for budget in 0..=3 {
                    match smart_apply(goal, hyps, concl, &eqs, budget) {
                        Some(m) => {
                            if let Err(e) = check(&m.chain) {
                                prop_assert!(false, "{} onto {}: {}\n{}", concl, goal, e, m.chain);
                            }
                            prop_assert_eq!(m.subgoals.len(), hyps.len());
                            solved = true;
                        }
                        None => prop_assert!(!solved, "{} onto {} lost at budget {}", concl, goal, budget),
                    }
                }
            }
        }
    }

    #[test]
    fn cluster_order_does_not_matter(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let th = random_theory(&mut rng);
        let goals = th.goals[0].1.clone();
        let mut blocks = cluster(&goals);
        blocks.reverse();
        let order: Vec<usize> = blocks.into_iter().flatten().collect();
        let permuted: Vec<Term> = order.iter().map(|&i| goals[i].clone()).collect();
        let a = auto(&th, &goals, &config(3)).unwrap();
        let b = auto(&th, &permuted, &config(3)).unwrap();
        prop_assert_eq!(a.is_some(), b.is_some());
        if let (Some(a), Some(b)) = (a, b) {
            for (k, &i) in order.iter().enumerate() {
                prop_assert_eq!(canonical(&a.trees[i].to_string()), canonical(&b.trees[k].to_string()));
            }
        }
    }

    #[test]
    fn traces_replay(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let th = random_theory(&mut rng);
        let goals = th.goals[0].1.clone();
        if let Some(out) = auto(&th, &goals, &config(3)).unwrap() {
            let again = auto_with_trace(&th, &goals, &out.trace, &config(3)).unwrap();
            let again = again.expect("the extracted trace suffices");
            prop_assert!(again.trace.is_subset(&out.trace));
        }
    }

    #[test]
    fn loop_pruning_keeps_provable_goals(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let th = random_theory(&mut rng);
        let goals = th.goals[0].1.clone();
        let unpruned = SearchConfig {
            loop_check: false,
            ..config(3)
        };
        if auto(&th, &goals, &unpruned).unwrap().is_some() {
            prop_assert!(auto(&th, &goals, &config(3)).unwrap().is_some());
        }
    }
}
