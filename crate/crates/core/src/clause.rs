//! Unit clauses, their provenance, and the clause bag.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::terms::{
    match_term, Equation, Position, Renamable, Substitution, Term, TermParser, Var, VarScope,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClauseId(pub usize);

impl fmt::Display for ClauseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Positive clauses are facts `⊢ l = r`; negative ones are goals `l = r ⊢`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    SuperpositionLeft,
    SuperpositionRight,
    Demodulation,
}

impl Rule {
    pub fn tag(self) -> &'static str {
        match self {
            Rule::SuperpositionLeft => "sup_left",
            Rule::SuperpositionRight => "sup_right",
            Rule::Demodulation => "demod",
        }
    }
}

/// Which side of the rewriting equation is matched against the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// The left side is found in the target and replaced by the right side.
    LeftToRight,
    RightToLeft,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::LeftToRight => Direction::RightToLeft,
            Direction::RightToLeft => Direction::LeftToRight,
        }
    }

    /// `(matched side, replacement side)` of `eq` in this direction.
    pub fn sides(self, eq: &Equation) -> (&Term, &Term) {
        match self {
            Direction::LeftToRight => (&eq.left, &eq.right),
            Direction::RightToLeft => (&eq.right, &eq.left),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Direction::LeftToRight => "ltr",
            Direction::RightToLeft => "rtl",
        }
    }
}

/// How a clause was obtained.
///
/// For a `Step`, `parent1` is the rewritten clause and `parent2` the
/// equation applied to it. The position is clause-level (first index picks
/// the side of `parent1`). The substitution ranges over the variables of
/// `parent1` and of `parent2` renamed apart from `parent1` with
/// [`crate::terms::rename_apart`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProofStep {
    Input(String),
    Step {
        rule: Rule,
        parent1: ClauseId,
        parent2: ClauseId,
        direction: Direction,
        position: Position,
        subst: Substitution,
    },
    EqualityResolution {
        parent: ClauseId,
        subst: Substitution,
    },
}

impl ProofStep {
    pub fn parents(&self) -> Vec<ClauseId> {
        match self {
            ProofStep::Input(_) => Vec::new(),
            ProofStep::Step {
                parent1, parent2, ..
            } => vec![*parent1, *parent2],
            ProofStep::EqualityResolution { parent, .. } => vec![*parent],
        }
    }
}

impl Direction {
    pub fn parse(p: &mut TermParser) -> Result<Direction> {
        match p.ident()?.as_str() {
            "ltr" => Ok(Direction::LeftToRight),
            "rtl" => Ok(Direction::RightToLeft),
            other => Err(p.error(format!("unknown direction `{other}`"))),
        }
    }
}

impl ProofStep {
    /// Reads the notation produced by `Display`, with `X<n>` variables.
    pub fn parse(p: &mut TermParser) -> Result<ProofStep> {
        let tag = p.ident()?;
        p.expect("(")?;
        let mut scope = VarScope::Literal;
        let step = match tag.as_str() {
            "input" => ProofStep::Input(p.until(')')?),
            "eq_res" => {
                let parent = ClauseId(p.number()?);
                p.expect(",")?;
                let subst = p.substitution(&mut scope)?;
                ProofStep::EqualityResolution { parent, subst }
            }
            _ => {
                let rule = match tag.as_str() {
                    "sup_left" => Rule::SuperpositionLeft,
                    "sup_right" => Rule::SuperpositionRight,
                    "demod" => Rule::Demodulation,
                    other => return Err(p.error(format!("unknown inference `{other}`"))),
                };
                let parent1 = ClauseId(p.number()?);
                p.expect(",")?;
                let parent2 = ClauseId(p.number()?);
                p.expect(",")?;
                let direction = Direction::parse(p)?;
                p.expect(",")?;
                let position = p.position()?;
                p.expect(",")?;
                let subst = p.substitution(&mut scope)?;
                ProofStep::Step {
                    rule,
                    parent1,
                    parent2,
                    direction,
                    position,
                    subst,
                }
            }
        };
        p.expect(")")?;
        Ok(step)
    }
}

impl fmt::Display for ProofStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofStep::Input(name) => write!(f, "input({name})"),
            ProofStep::Step {
                rule,
                parent1,
                parent2,
                direction,
                position,
                subst,
            } => write!(
                f,
                "{}({parent1}, {parent2}, {}, {position}, {subst})",
                rule.tag(),
                direction.tag()
            ),
            ProofStep::EqualityResolution { parent, subst } => {
                write!(f, "eq_res({parent}, {subst})")
            }
        }
    }
}

/// A clause that has been derived but not yet registered in a bag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conclusion {
    pub sign: Sign,
    pub equation: Equation,
    pub step: ProofStep,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitClause {
    pub id: ClauseId,
    pub sign: Sign,
    pub equation: Equation,
    pub step: ProofStep,
    /// Creation order.
    pub birth: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub u32);

impl UnitClause {
    pub fn left(&self) -> &Term {
        &self.equation.left
    }

    pub fn right(&self) -> &Term {
        &self.equation.right
    }

    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Positive
    }

    pub fn is_goal(&self) -> bool {
        self.sign == Sign::Negative
    }

    /// The empty clause is stored as the resolved goal instance.
    pub fn is_empty_clause(&self) -> bool {
        matches!(self.step, ProofStep::EqualityResolution { .. })
    }
}

impl Renamable for UnitClause {
    fn max_var(&self) -> Option<Var> {
        self.equation.max_var()
    }

    fn shift_vars(&self, by: Var) -> Self {
        UnitClause {
            equation: self.equation.shift_vars(by),
            ..self.clone()
        }
    }
}

impl fmt::Display for UnitClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty_clause() {
            return write!(f, "{}: [] ⟵ {}", self.id, self.step);
        }
        let sign = match self.sign {
            Sign::Positive => '+',
            Sign::Negative => '-',
        };
        write!(f, "{}: [{sign}] {} ⟵ {}", self.id, self.equation, self.step)
    }
}

/// Total number of symbol and variable occurrences on both sides.
pub fn weigh(c: &UnitClause) -> Weight {
    Weight((c.left().size() + c.right().size()) as u32)
}

pub fn is_tautology(c: &UnitClause) -> bool {
    c.is_positive() && c.left() == c.right()
}

/// A substitution mapping `c` onto `d`, trying both orientations of `d`.
pub fn subsumes(c: &UnitClause, d: &UnitClause) -> Option<Substitution> {
    if c.sign != d.sign {
        return None;
    }
    equation_subsumes(&c.equation, &d.equation)
}

pub fn equation_subsumes(c: &Equation, d: &Equation) -> Option<Substitution> {
    let pattern = c.as_term();
    match_term(&pattern, &d.as_term()).or_else(|| match_term(&pattern, &d.flipped().as_term()))
}

/// All clauses ever created during a run, by id.
#[derive(Debug, Clone, Default)]
pub struct ClauseBag {
    clauses: BTreeMap<ClauseId, UnitClause>,
    next_id: usize,
}

impl ClauseBag {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a conclusion under the next id, renaming its variables
    /// to 0, 1, ... in first-occurrence order.
    pub fn insert(&mut self, c: Conclusion) -> Result<ClauseId> {
        let id = ClauseId(self.next_id);
        for parent in c.step.parents() {
            if parent >= id || !self.clauses.contains_key(&parent) {
                return Err(Error::MalformedBag(format!(
                    "clause {id} refers to unknown parent {parent}"
                )));
            }
        }
        self.clauses.insert(
            id,
            UnitClause {
                id,
                sign: c.sign,
                equation: c.equation.normalized(),
                step: c.step,
                birth: id.0 as u64,
            },
        );
        self.next_id += 1;
        Ok(id)
    }

    /// Restores a clause with a fixed id (snapshot loading).
    pub fn restore(&mut self, clause: UnitClause) -> Result<()> {
        if self.clauses.contains_key(&clause.id) {
            return Err(Error::MalformedBag(format!("duplicate id {}", clause.id)));
        }
        self.next_id = self.next_id.max(clause.id.0 + 1);
        self.clauses.insert(clause.id, clause);
        Ok(())
    }

    pub fn set_next_id(&mut self, next: usize) {
        self.next_id = self.next_id.max(next);
    }

    pub fn next_id(&self) -> usize {
        self.next_id
    }

    pub fn get(&self, id: ClauseId) -> Option<&UnitClause> {
        self.clauses.get(&id)
    }

    pub fn clause(&self, id: ClauseId) -> Result<&UnitClause> {
        self.get(id)
            .ok_or_else(|| Error::MalformedBag(format!("no clause {id}")))
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &UnitClause> {
        self.clauses.values()
    }

    /// Ids reachable from `root` through proof steps, ascending.
    pub fn ancestors(&self, root: ClauseId) -> Result<Vec<ClauseId>> {
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![root];
        while let Some(id) = stack.pop() {
            if seen.insert(id) {
                stack.extend(self.clause(id)?.step.parents());
            }
        }
        Ok(seen.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{parse_term, TermParser, VarScope};

    fn eq(src: &str) -> Equation {
        let mut p = TermParser::new(src);
        let mut scope = VarScope::fresh();
        let l = p.term(&mut scope).unwrap();
        p.expect("=").unwrap();
        let r = p.term(&mut scope).unwrap();
        Equation::new(l, r)
    }

    fn fact(id: usize, src: &str) -> UnitClause {
        UnitClause {
            id: ClauseId(id),
            sign: Sign::Positive,
            equation: eq(src),
            step: ProofStep::Input(format!("c{id}")),
            birth: id as u64,
        }
    }

    #[test]
    fn weigh_examples() {
        assert_eq!(weigh(&fact(0, "a = a")), Weight(2));
        assert_eq!(weigh(&fact(0, "f(X,g(a)) = b")), Weight(5));
        assert_eq!(weigh(&fact(0, "X = Y")), Weight(2));
    }

    #[test]
    fn weigh_ignores_renaming() {
        let c = fact(0, "f(X,Y) = g(Y)");
        assert_eq!(weigh(&c), weigh(&c.shift_vars(17)));
    }

    #[test]
    fn tautology_examples() {
        assert!(is_tautology(&fact(0, "plus(X,Y) = plus(X,Y)")));
        assert!(!is_tautology(&fact(0, "plus(X,Y) = plus(Y,X)")));
        assert!(!is_tautology(&fact(0, "a = b")));
    }

    #[test]
    fn subsumption_examples() {
        let comm = fact(0, "plus(X,Y) = plus(Y,X)");
        let inst = fact(1, "plus(a,b) = plus(b,a)");
        let sigma = subsumes(&comm, &inst).unwrap();
        assert_eq!(sigma.get(0), Some(&parse_term("a").unwrap()));
        assert_eq!(sigma.get(1), Some(&parse_term("b").unwrap()));
        assert_eq!(comm.equation.apply(&sigma), inst.equation);

        assert!(subsumes(&inst, &comm).is_none());

        let refl = fact(0, "X = X");
        let sigma = subsumes(&refl, &fact(1, "a = a")).unwrap();
        assert_eq!(sigma.get(0), Some(&parse_term("a").unwrap()));
    }

    #[test]
    fn subsumption_tries_flipped_orientation() {
        let c = fact(0, "f(X) = a");
        let d = fact(1, "a = f(b)");
        let sigma = subsumes(&c, &d).unwrap();
        assert_eq!(c.equation.apply(&sigma), d.equation.flipped());
    }

    #[test]
    fn subsumption_respects_sign() {
        let c = fact(0, "X = X");
        let mut d = fact(1, "a = a");
        d.sign = Sign::Negative;
        assert!(subsumes(&c, &d).is_none());
    }

    #[test]
    fn bag_rejects_dangling_parents() {
        let mut bag = ClauseBag::new();
        let a = bag
            .insert(Conclusion {
                sign: Sign::Positive,
                equation: eq("a = b"),
                step: ProofStep::Input("ax".into()),
            })
            .unwrap();
        assert_eq!(a, ClauseId(0));
        let bad = Conclusion {
            sign: Sign::Negative,
            equation: eq("a = a"),
            step: ProofStep::EqualityResolution {
                parent: ClauseId(5),
                subst: Substitution::new(),
            },
        };
        assert!(matches!(bag.insert(bad), Err(Error::MalformedBag(_))));
    }

    #[test]
    fn steps_round_trip_through_text() {
        let steps = [
            ProofStep::Input("plus comm".into()),
            ProofStep::Step {
                rule: Rule::SuperpositionLeft,
                parent1: ClauseId(4),
                parent2: ClauseId(1),
                direction: Direction::RightToLeft,
                position: Position(vec![2, 1]),
                subst: Substitution::from_pairs([(3, parse_term("f(a)").unwrap()), (0, Term::Var(7))]),
            },
            ProofStep::EqualityResolution {
                parent: ClauseId(9),
                subst: Substitution::new(),
            },
        ];
        for step in steps {
            let text = step.to_string();
            let mut p = TermParser::new(&text);
            assert_eq!(ProofStep::parse(&mut p).unwrap(), step, "{text}");
            p.expect_end().unwrap();
        }
    }

    #[test]
    fn display_format() {
        let c = fact(3, "f(X) = a");
        assert_eq!(c.to_string(), "3: [+] f(X0) = a ⟵ input(c3)");
    }
}
