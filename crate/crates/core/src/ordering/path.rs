use std::cmp::Ordering;

use super::{Precedence, TermOrdering};
use crate::error::Result;
use crate::terms::Term;

/// Lexicographic path ordering.
#[derive(Debug, Clone)]
pub struct Lpo {
    precedence: Precedence,
}

impl Lpo {
    pub fn new(precedence: Precedence) -> Result<Self> {
        Ok(Lpo { precedence })
    }
}

/// Recursive path ordering: every symbol has multiset status.
#[derive(Debug, Clone)]
pub struct Rpo {
    precedence: Precedence,
}

impl Rpo {
    pub fn new(precedence: Precedence) -> Result<Self> {
        Ok(Rpo { precedence })
    }
}

#[derive(Clone, Copy)]
enum Status {
    Lexicographic,
    Multiset,
}

fn path_greater(p: &Precedence, status: Status, s: &Term, t: &Term) -> bool {
    let gt = |a: &Term, b: &Term| path_greater(p, status, a, b);
    match (s, t) {
        (Term::Var(_), _) => false,
        (_, Term::Var(x)) => s.occurs(*x),
        (Term::App(f, ss), Term::App(g, ts)) => {
            if ss.iter().any(|si| si == t || gt(si, t)) {
                return true;
            }
            match p.compare_symbols(f, g) {
                Ordering::Greater => ts.iter().all(|tj| gt(s, tj)),
                Ordering::Less => false,
                Ordering::Equal => match status {
                    Status::Lexicographic => {
                        match ss.iter().zip(ts).position(|(a, b)| a != b) {
                            Some(i) => gt(&ss[i], &ts[i]) && ts[i + 1..].iter().all(|tj| gt(s, tj)),
                            None => false,
                        }
                    }
                    Status::Multiset => multiset_greater(ss, ts, gt),
                },
            }
        }
    }
}

/// Dershowitz-Manna extension of `gt` to multisets.
fn multiset_greater(ms: &[Term], ns: &[Term], gt: impl Fn(&Term, &Term) -> bool) -> bool {
    let mut ms: Vec<&Term> = ms.iter().collect();
    let mut ns: Vec<&Term> = ns.iter().collect();
    let mut i = 0;
    while i < ms.len() {
        if let Some(j) = ns.iter().position(|n| *n == ms[i]) {
            ns.swap_remove(j);
            ms.swap_remove(i);
        } else {
            i += 1;
        }
    }
    !ms.is_empty() && ns.iter().all(|n| ms.iter().any(|m| gt(m, n)))
}

impl TermOrdering for Lpo {
    fn name(&self) -> &'static str {
        "lpo"
    }

    fn precedence(&self) -> &Precedence {
        &self.precedence
    }

    fn greater(&self, s: &Term, t: &Term) -> bool {
        path_greater(&self.precedence, Status::Lexicographic, s, t)
    }
}

impl TermOrdering for Rpo {
    fn name(&self) -> &'static str {
        "rpo"
    }

    fn precedence(&self) -> &Precedence {
        &self.precedence
    }

    fn greater(&self, s: &Term, t: &Term) -> bool {
        path_greater(&self.precedence, Status::Multiset, s, t)
    }
}
