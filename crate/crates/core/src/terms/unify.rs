use std::collections::BTreeMap;

use super::{Substitution, Term, Var};

/// Most general unifier of `s` and `t`, with occurs check.
///
/// The result is idempotent: no bound variable occurs in any binding.
pub fn unify(s: &Term, t: &Term) -> Option<Substitution> {
    let mut triangular: BTreeMap<Var, Term> = BTreeMap::new();
    let mut work = vec![(s.clone(), t.clone())];
    while let Some((a, b)) = work.pop() {
        let a = walk(&triangular, &a);
        let b = walk(&triangular, &b);
        match (&a, &b) {
            (Term::Var(x), Term::Var(y)) if x == y => {}
            (Term::Var(x), other) | (other, Term::Var(x)) => {
                if occurs_deep(&triangular, *x, other) {
                    return None;
                }
                triangular.insert(*x, other.clone());
            }
            (Term::App(f, fa), Term::App(g, ga)) => {
                if f != g || fa.len() != ga.len() {
                    return None;
                }
                work.extend(fa.iter().cloned().zip(ga.iter().cloned()).rev());
            }
        }
    }
    let mut out = Substitution::new();
    for v in triangular.keys() {
        out.bind(*v, resolve(&triangular, &Term::Var(*v)));
    }
    Some(out)
}

fn walk(bindings: &BTreeMap<Var, Term>, t: &Term) -> Term {
    let mut cur = t;
    while let Term::Var(v) = cur {
        match bindings.get(v) {
            Some(next) => cur = next,
            None => break,
        }
    }
    cur.clone()
}

fn occurs_deep(bindings: &BTreeMap<Var, Term>, v: Var, t: &Term) -> bool {
    match walk(bindings, t) {
        Term::Var(w) => w == v,
        Term::App(_, args) => args.iter().any(|a| occurs_deep(bindings, v, a)),
    }
}

fn resolve(bindings: &BTreeMap<Var, Term>, t: &Term) -> Term {
    match walk(bindings, t) {
        Term::Var(v) => Term::Var(v),
        Term::App(f, args) => Term::App(f, args.iter().map(|a| resolve(bindings, a)).collect()),
    }
}

/// One-sided matching: a substitution over the variables of `pattern`
/// with `pattern·σ ≡ t`. Variables of `t` are treated as constants.
pub fn match_term(pattern: &Term, t: &Term) -> Option<Substitution> {
    let mut bindings: BTreeMap<Var, Term> = BTreeMap::new();
    if match_into(&mut bindings, pattern, t) {
        Some(Substitution::from_pairs(bindings))
    } else {
        None
    }
}

fn match_into(bindings: &mut BTreeMap<Var, Term>, pattern: &Term, t: &Term) -> bool {
    match pattern {
        Term::Var(v) => match bindings.get(v) {
            Some(bound) => bound == t,
            None => {
                bindings.insert(*v, t.clone());
                true
            }
        },
        Term::App(f, pa) => match t {
            Term::App(g, ta) if f == g && pa.len() == ta.len() => pa
                .iter()
                .zip(ta)
                .all(|(p, s)| match_into(bindings, p, s)),
            _ => false,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{parse_term, Term};

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn v(i: Var) -> Term {
        Term::Var(i)
    }

    fn f(args: Vec<Term>) -> Term {
        Term::app("f", args)
    }

    fn g(arg: Term) -> Term {
        Term::app("g", vec![arg])
    }

    #[test]
    fn unify_examples() {
        // f(x,a) vs f(b,y) with x = 0, y = 1
        let s = f(vec![v(0), t("a")]);
        let u = f(vec![t("b"), v(1)]);
        let sigma = unify(&s, &u).unwrap();
        assert_eq!(sigma.get(0), Some(&t("b")));
        assert_eq!(sigma.get(1), Some(&t("a")));
        assert_eq!(sigma.len(), 2);

        assert!(unify(&v(0), &f(vec![v(0)])).is_none());

        // f(x,x) vs f(g(y),g(a))
        let s = f(vec![v(0), v(0)]);
        let u = f(vec![g(v(1)), g(t("a"))]);
        let sigma = unify(&s, &u).unwrap();
        assert_eq!(sigma.get(0), Some(&g(t("a"))));
        assert_eq!(sigma.get(1), Some(&t("a")));
        assert!(sigma.is_idempotent());
    }

    #[test]
    fn unify_same_variable_is_empty() {
        assert!(unify(&v(3), &v(3)).unwrap().is_empty());
    }

    #[test]
    fn unify_occurs_check_through_chain() {
        // f(x, y) vs f(y, g(x))
        let s = f(vec![v(0), v(1)]);
        let u = f(vec![v(1), g(v(0))]);
        assert!(unify(&s, &u).is_none());
    }

    #[test]
    fn match_examples() {
        let plus = |a, b| Term::app("plus", vec![a, b]);
        let sigma = match_term(&plus(v(0), v(1)), &plus(t("a"), t("b"))).unwrap();
        assert_eq!(sigma.get(0), Some(&t("a")));
        assert_eq!(sigma.get(1), Some(&t("b")));

        assert!(match_term(&plus(t("a"), v(0)), &plus(t("b"), t("c"))).is_none());
        assert!(match_term(&f(vec![v(0), v(0)]), &f(vec![t("a"), t("b")])).is_none());
    }

    #[test]
    fn match_does_not_bind_target_variables() {
        assert!(match_term(&t("a"), &v(0)).is_none());
        let sigma = match_term(&v(0), &v(0)).unwrap();
        assert!(sigma.is_empty());
    }
}
