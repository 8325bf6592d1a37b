use super::{var_counts_dominate, Precedence, TermOrdering};
use crate::error::Result;
use crate::terms::{Symbol, Term};

/// Knuth-Bendix ordering.
#[derive(Debug, Clone)]
pub struct Kbo {
    precedence: Precedence,
}

impl Kbo {
    pub fn new(precedence: Precedence) -> Result<Self> {
        precedence.validate_kbo(true)?;
        Ok(Kbo { precedence })
    }
}

impl TermOrdering for Kbo {
    fn name(&self) -> &'static str {
        "kbo"
    }

    fn precedence(&self) -> &Precedence {
        &self.precedence
    }

    fn greater(&self, s: &Term, t: &Term) -> bool {
        let p = &self.precedence;
        match (s, t) {
            (Term::Var(_), _) => false,
            // s > x iff x occurs properly in s; this also covers f^n(x) > x
            // for a weight-0 unary f.
            (_, Term::Var(x)) => s.occurs(*x),
            (Term::App(f, ss), Term::App(g, ts)) => {
                if !var_counts_dominate(s, t) {
                    return false;
                }
                let (ws, wt) = (p.term_weight(s), p.term_weight(t));
                if ws != wt {
                    return ws > wt;
                }
                if f != g {
                    return p.compare_symbols(f, g).is_gt();
                }
                match ss.iter().zip(ts).find(|(a, b)| a != b) {
                    Some((a, b)) => self.greater(a, b),
                    None => false,
                }
            }
        }
    }
}

/// Knuth-Bendix without recursion on arguments: ties on weight are broken
/// by the first difference between the pre-order symbol strings.
#[derive(Debug, Clone)]
pub struct NonRecursiveKbo {
    precedence: Precedence,
}

impl NonRecursiveKbo {
    pub fn new(precedence: Precedence) -> Result<Self> {
        precedence.validate_kbo(false)?;
        Ok(NonRecursiveKbo { precedence })
    }
}

enum Item<'a> {
    Sym(&'a Symbol),
    Var(u32),
}

fn flatten<'a>(t: &'a Term, out: &mut Vec<Item<'a>>) {
    match t {
        Term::Var(v) => out.push(Item::Var(*v)),
        Term::App(f, args) => {
            out.push(Item::Sym(f));
            args.iter().for_each(|a| flatten(a, out));
        }
    }
}

impl TermOrdering for NonRecursiveKbo {
    fn name(&self) -> &'static str {
        "nrkbo"
    }

    fn precedence(&self) -> &Precedence {
        &self.precedence
    }

    fn greater(&self, s: &Term, t: &Term) -> bool {
        let p = &self.precedence;
        if s.is_var() || s == t || !var_counts_dominate(s, t) {
            return false;
        }
        let (ws, wt) = (p.term_weight(s), p.term_weight(t));
        if ws != wt {
            return ws > wt;
        }
        let (mut fs, mut ft) = (Vec::new(), Vec::new());
        flatten(s, &mut fs);
        flatten(t, &mut ft);
        for (a, b) in fs.iter().zip(&ft) {
            match (a, b) {
                (Item::Sym(f), Item::Sym(g)) if f == g => {}
                (Item::Var(x), Item::Var(y)) if x == y => {}
                (Item::Sym(f), Item::Sym(g)) => return p.compare_symbols(f, g).is_gt(),
                _ => return false,
            }
        }
        false
    }
}
