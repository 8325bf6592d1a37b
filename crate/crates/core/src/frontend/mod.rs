//! Problem loading, runs, portfolio and status reporting.

mod tptp;

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::{mpsc, Arc};
use std::time::{Duration, Instant};

use crate::clause::Sign;
use crate::error::{Error, Result};
use crate::proof::{check, check_inputs, reconstruct, Proof};
use crate::saturation::{Outcome, ResourceReason, Saturation, SaturationConfig, Stats};
use crate::tactic::{auto, ProofTree, SearchConfig, Theory};
use crate::terms::Equation;

pub use tptp::{check_arities, parse_tptp, read_tptp, Problem};

/// SZS result status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Unsatisfiable,
    Satisfiable,
    GaveUp,
    ResourceOut,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Unsatisfiable => "Unsatisfiable",
            Status::Satisfiable => "Satisfiable",
            Status::GaveUp => "GaveUp",
            Status::ResourceOut => "ResourceOut",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Unsatisfiable => 0,
            Status::Satisfiable | Status::GaveUp => 1,
            Status::ResourceOut => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Refute the negated conjectures.
    Prove,
    /// Complete the axioms, ignoring conjectures.
    Saturate,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub problem: String,
    pub status: Status,
    /// Ordering of the run, or of the winning portfolio member.
    pub ordering: String,
    pub stats: Stats,
    pub elapsed: Duration,
    /// Present only when checked.
    pub proof: Option<Proof>,
    /// Active facts after a completed saturation.
    pub completion: Vec<Equation>,
    pub trees: Vec<ProofTree>,
    pub trace: Option<BTreeSet<String>>,
    /// Smart applications attempted by auto.
    pub applications: Option<usize>,
    pub note: Option<String>,
}

impl RunReport {
    fn new(problem: &str, ordering: &str) -> Self {
        RunReport {
            problem: problem.to_string(),
            status: Status::GaveUp,
            ordering: ordering.to_string(),
            stats: Stats::default(),
            elapsed: Duration::ZERO,
            proof: None,
            completion: Vec::new(),
            trees: Vec::new(),
            trace: None,
            applications: None,
            note: None,
        }
    }

    pub fn status_line(&self) -> String {
        format!("% SZS status {} for {}", self.status, self.problem)
    }

    /// The full report; `% time:` is the only line that varies between
    /// identical runs.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.status_line());
        if !self.ordering.is_empty() {
            let _ = writeln!(out, "% ordering: {}", self.ordering);
        }
        if let Some(n) = self.applications {
            let _ = writeln!(out, "% applications: {n}");
        } else {
            let s = self.stats;
            let _ = writeln!(out, "% iterations: {}", s.iterations);
            let _ = writeln!(out, "% generated: {}", s.generated);
            let _ = writeln!(out, "% kept: {}", s.kept);
        }
        let _ = writeln!(out, "% time: {:.3} s", self.elapsed.as_secs_f64());
        if let Some(note) = &self.note {
            let _ = writeln!(out, "% note: {note}");
        }
        if let Some(proof) = &self.proof {
            let _ = writeln!(out, "% SZS output start Proof for {}", self.problem);
            out.push_str(&proof.to_string());
            let _ = writeln!(out, "% SZS output end Proof for {}", self.problem);
        }
        if self.status == Status::Satisfiable && !self.completion.is_empty() {
            let _ = writeln!(out, "% SZS output start Saturation for {}", self.problem);
            for eq in &self.completion {
                let _ = writeln!(out, "{eq}");
            }
            let _ = writeln!(out, "% SZS output end Saturation for {}", self.problem);
        }
        for t in &self.trees {
            out.push_str(&t.to_string());
        }
        if let Some(trace) = &self.trace {
            let names: Vec<&str> = trace.iter().map(String::as_str).collect();
            let _ = writeln!(out, "% trace: {}", names.join(" "));
        }
        out
    }
}

/// Runs one saturation with `config.ordering`.
pub fn run(problem: &Problem, mode: Mode, config: &SaturationConfig) -> Result<RunReport> {
    run_cancellable(problem, mode, config, None)
}

fn run_cancellable(
    problem: &Problem,
    mode: Mode,
    config: &SaturationConfig,
    cancel: Option<Arc<AtomicBool>>,
) -> Result<RunReport> {
    let start = Instant::now();
    let goals: &[(String, Equation)] = match mode {
        Mode::Prove => &problem.conjectures,
        Mode::Saturate => &[],
    };
    let mut state = Saturation::from_problem(&problem.axioms, goals, config.clone())?;
    if let Some(flag) = cancel {
        state.set_cancel(flag);
    }
    let outcome = state.run()?;
    let mut report = RunReport::new(&problem.name, &config.ordering);
    report.stats = state.stats();
    match outcome {
        Outcome::Refutation(empty) => {
            let proof = reconstruct(state.bag(), empty)?;
            match verify(problem, &proof) {
                Ok(()) => {
                    report.status = Status::Unsatisfiable;
                    report.proof = Some(proof);
                }
                Err(message) => report.note = Some(format!("proof rejected: {message}")),
            }
        }
        Outcome::Saturated if config.max_weight.is_some() => {
            report.note = Some("saturated with a weight limit".into());
        }
        Outcome::Saturated => {
            report.status = Status::Satisfiable;
            report.completion = state
                .active_clauses()
                .filter(|c| c.sign == Sign::Positive)
                .map(|c| c.equation.clone())
                .collect();
        }
        Outcome::ResourceOut(reason) => {
            report.status = Status::ResourceOut;
            report.note = Some(
                match reason {
                    ResourceReason::Iterations => "iteration limit",
                    ResourceReason::Timeout => "timeout",
                    ResourceReason::Cancelled => "cancelled",
                }
                .into(),
            );
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Checks a proof against the problem it claims to solve.
pub fn verify(problem: &Problem, proof: &Proof) -> std::result::Result<(), String> {
    let goal = problem
        .conjectures
        .iter()
        .find(|(n, _)| *n == proof.goal_name)
        .ok_or_else(|| format!("unknown goal `{}`", proof.goal_name))?;
    check_inputs(proof, &problem.axioms, &goal.1).map_err(|e| e.to_string())
}

/// Runs one saturation per ordering in parallel. The first checked proof
/// wins and the other runs are cancelled. Without a proof the result is
/// Satisfiable only if every member saturated.
pub fn run_portfolio(problem: &Problem, orderings: &[String], config: &SaturationConfig) -> Result<RunReport> {
    if orderings.is_empty() {
        return Err(Error::Config("empty portfolio".into()));
    }
    let start = Instant::now();
    let cancel = Arc::new(AtomicBool::new(false));
    let (tx, rx) = mpsc::channel::<(usize, Result<RunReport>)>();
    let mut results: Vec<Option<Result<RunReport>>> = (0..orderings.len()).map(|_| None).collect();
    let mut winner = None;
    std::thread::scope(|scope| {
        for (i, name) in orderings.iter().enumerate() {
            let tx = tx.clone();
            let cancel = Arc::clone(&cancel);
            let config = SaturationConfig {
                ordering: name.clone(),
                ..config.clone()
            };
            scope.spawn(move || {
                let r = run_cancellable(problem, Mode::Prove, &config, Some(cancel));
                let _ = tx.send((i, r));
            });
        }
        drop(tx);
        for (i, r) in rx {
            if winner.is_none() && matches!(&r, Ok(rep) if rep.status == Status::Unsatisfiable) {
                winner = Some(i);
                cancel.store(true, AtomicOrdering::Relaxed);
            }
            results[i] = Some(r);
        }
    });
    let results: Vec<RunReport> = results
        .into_iter()
        .map(|r| r.expect("every member reports"))
        .collect::<Result<_>>()?;
    if let Some(i) = winner {
        return Ok(results.into_iter().nth(i).expect("winner exists"));
    }
    let mut report = RunReport::new(&problem.name, &orderings.join(","));
    report.status = if results.iter().all(|r| r.status == Status::Satisfiable) {
        Status::Satisfiable
    } else if results.iter().any(|r| r.status == Status::ResourceOut) {
        Status::ResourceOut
    } else {
        Status::GaveUp
    };
    if report.status == Status::Satisfiable {
        report.completion = results[0].completion.clone();
    }
    for r in &results {
        report.stats.iterations += r.stats.iterations;
        report.stats.generated += r.stats.generated;
        report.stats.kept += r.stats.kept;
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Runs auto on every goal of the theory.
pub fn run_auto(name: &str, theory: &Theory, config: &SearchConfig) -> Result<RunReport> {
    let start = Instant::now();
    let mut report = RunReport::new(name, "");
    report.applications = Some(0);
    let mut trace = BTreeSet::new();
    report.status = Status::Unsatisfiable;
    if theory.goals.is_empty() {
        report.status = Status::GaveUp;
        report.note = Some("no goals".into());
    }
    for (goal_name, goal) in &theory.goals {
        let outcome = auto(theory, goal, config)?;
        let Some(out) = outcome else {
            report.status = Status::GaveUp;
            report.note = Some(format!("no proof of `{goal_name}` within the depth bound"));
            break;
        };
        *report.applications.as_mut().expect("set above") += out.applications;
        if let Err(e) = out.trees.iter().try_for_each(check_tree) {
            report.status = Status::GaveUp;
            report.note = Some(format!("rewrite chain rejected: {e}"));
            break;
        }
        trace.extend(out.trace);
        report.trees.extend(out.trees);
    }
    if report.status == Status::Unsatisfiable {
        report.trace = Some(trace);
    } else {
        report.trees.clear();
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

fn check_tree(t: &ProofTree) -> std::result::Result<(), crate::proof::CheckFailure> {
    check(&t.chain)?;
    t.children.iter().try_for_each(check_tree)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(text: &str) -> Problem {
        parse_tptp("p", text).unwrap()
    }

    #[test]
    fn trivial_problem_is_unsatisfiable_with_checked_proof() {
        let p = problem("cnf(ab, axiom, a = b). cnf(g, negated_conjecture, f(a) != f(b)).");
        let r = run(&p, Mode::Prove, &SaturationConfig::default()).unwrap();
        assert_eq!(r.status, Status::Unsatisfiable);
        assert!(r.proof.is_some());
        assert!(r.render().starts_with("% SZS status Unsatisfiable for p\n"));
    }

    #[test]
    fn disjoint_problem_is_satisfiable() {
        let p = problem("cnf(ab, axiom, a = b). cnf(g, negated_conjecture, c != d).");
        let r = run(&p, Mode::Prove, &SaturationConfig::default()).unwrap();
        assert_eq!(r.status, Status::Satisfiable);
        assert_eq!(r.status.exit_code(), 1);
    }

    #[test]
    fn saturate_mode_ignores_conjectures() {
        let p = problem("cnf(ab, axiom, a = b). cnf(g, negated_conjecture, a != b).");
        let r = run(&p, Mode::Saturate, &SaturationConfig::default()).unwrap();
        assert_eq!(r.status, Status::Satisfiable);
        assert_eq!(r.completion.len(), 1);
    }

    #[test]
    fn iteration_limit_is_resource_out() {
        let p = problem(
            "cnf(a, axiom, f(f(X)) = g(X)). cnf(b, axiom, g(g(X)) = f(X)).\n\
             cnf(c, axiom, h(X,Y) = h(Y,X)). cnf(g, negated_conjecture, h(a,f(b)) != h(c,d)).",
        );
        let cfg = SaturationConfig {
            max_iterations: Some(1),
            ..SaturationConfig::default()
        };
        let r = run(&p, Mode::Prove, &cfg).unwrap();
        assert_eq!(r.status, Status::ResourceOut);
        assert_eq!(r.status.exit_code(), 2);
    }

    #[test]
    fn single_member_portfolio_matches_run() {
        let p = problem("cnf(ab, axiom, a = b). cnf(g, negated_conjecture, f(a) != f(b)).");
        let cfg = SaturationConfig::default();
        let a = run(&p, Mode::Prove, &cfg).unwrap();
        let b = run_portfolio(&p, &["kbo".to_string()], &cfg).unwrap();
        let strip = |s: String| s.lines().filter(|l| !l.starts_with("% time")).collect::<Vec<_>>().join("\n");
        assert_eq!(strip(a.render()), strip(b.render()));
        assert!(run_portfolio(&p, &[], &cfg).is_err());
    }

    #[test]
    fn tampered_proof_fails_verification() {
        let p = problem("cnf(ab, axiom, a = b). cnf(g, negated_conjecture, f(a) != f(b)).");
        let r = run(&p, Mode::Prove, &SaturationConfig::default()).unwrap();
        let proof = r.proof.unwrap();
        assert!(verify(&p, &proof).is_ok());
        let other = problem("cnf(ab, axiom, a = c). cnf(g, negated_conjecture, f(a) != f(b)).");
        assert!(verify(&other, &proof).is_err());
    }
}
