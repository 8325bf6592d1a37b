mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{bundled_problems, solvable_problem};
use eqglue::frontend::{parse_tptp, read_tptp, run, run_portfolio, verify, Mode, Problem, Status};
use eqglue::ordering::OrderingKind;
use eqglue::saturation::SaturationConfig;

fn limited() -> SaturationConfig {
    SaturationConfig {
        max_iterations: Some(300),
        ..SaturationConfig::default()
    }
}

fn random_problem(seed: u64) -> Problem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (axioms, goals) = solvable_problem(&mut rng);
    let mut p = Problem {
        name: format!("random{seed}"),
        axioms,
        conjectures: goals,
    };
    // Sometimes drop the axioms the goal needs.
    if rng.gen_bool(0.3) {
        p.axioms.truncate(1);
    }
    p
}

#[test]
fn bundled_problems_print_and_reparse() {
    for path in bundled_problems() {
        let p = read_tptp(&path).unwrap();
        let printed = p.to_string();
        let again = parse_tptp(&p.name, &printed).unwrap();
        assert_eq!(again, p, "{}", path.display());
        assert_eq!(again.to_string(), printed);
    }
}

#[test]
fn bundled_refutations_are_checked() {
    for path in bundled_problems() {
        let p = read_tptp(&path).unwrap();
        let report = run(&p, Mode::Prove, &limited()).unwrap();
        if report.status == Status::Unsatisfiable {
            verify(&p, report.proof.as_ref().unwrap()).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn printing_round_trips(seed: u64) {
        let p = random_problem(seed);
        let parsed = parse_tptp(&p.name, &p.to_string()).unwrap();
        for (a, b) in p.equations().zip(parsed.equations()) {
            prop_assert!(a.is_variant_of(b), "{} vs {}", a, b);
        }
        let printed = parsed.to_string();
        prop_assert_eq!(parse_tptp(&p.name, &printed).unwrap().to_string(), printed);
    }

    #[test]
    fn unsatisfiable_reports_carry_checked_proofs(seed: u64) {
        let p = random_problem(seed);
        let report = run(&p, Mode::Prove, &limited()).unwrap();
        prop_assert_eq!(report.status == Status::Unsatisfiable, report.proof.is_some());
        if let Some(proof) = &report.proof {
            prop_assert!(verify(&p, proof).is_ok());
        }
    }

    /// The portfolio refutes iff some member does, and otherwise reports
    /// a status that some member reported.
    #[test]
    fn portfolio_agrees_with_members(seed: u64) {
        let p = random_problem(seed);
        let names: Vec<String> = OrderingKind::ALL.iter().map(|k| k.name().to_string()).collect();
        let members: Vec<Status> = names
            .iter()
            .map(|n| {
                let cfg = SaturationConfig { ordering: n.clone(), ..limited() };
                run(&p, Mode::Prove, &cfg).unwrap().status
            })
            .collect();
        let portfolio = run_portfolio(&p, &names, &limited()).unwrap().status;
        prop_assert_eq!(portfolio == Status::Unsatisfiable, members.contains(&Status::Unsatisfiable));
        prop_assert!(members.contains(&portfolio), "{:?} from {:?}", portfolio, members);
    }
}
