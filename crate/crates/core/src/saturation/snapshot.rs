//! Text images of a saturation state.
//!
//! ```text
//! % snapshot-version: 1
//! % ordering: kbo
//! % selection: age-weight 5
//! % precedence: a/0 plus/2
//! % var-weight: 1
//! % weights: h/1=0
//! % next-id: 3
//! % picks: 2
//! % stats: 2 4 1
//! clause(0, active, fact, plus(X0,X1) = plus(X1,X0), input(plusC)).
//! ```
//!
//! Every clause in the bag is listed so that proofs can still be traced
//! back to inputs after reloading. The set field is `active`, `passive` or
//! `none`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use super::{Saturation, SaturationConfig, Stats};
use crate::clause::{weigh, ClauseId, ProofStep, Sign, UnitClause};
use crate::error::{Error, Result};
use crate::ordering::Precedence;
use crate::terms::{Symbol, TermParser, VarScope};

pub const SNAPSHOT_VERSION: u32 = 1;

fn symbol_text(s: &Symbol) -> String {
    format!("{}/{}", s.name(), s.arity())
}

fn parse_symbol(text: &str) -> Result<Symbol> {
    let (name, arity) = text
        .rsplit_once('/')
        .ok_or_else(|| Error::Snapshot(format!("bad symbol `{text}`")))?;
    let arity = arity
        .parse()
        .map_err(|_| Error::Snapshot(format!("bad arity in `{text}`")))?;
    Ok(Symbol::new(name, arity))
}

impl Saturation {
    /// Serializes the whole state except limits and the cancel flag.
    pub fn snapshot(&self) -> String {
        let prec = self.ord.precedence();
        let mut out = String::new();
        let _ = writeln!(out, "% snapshot-version: {SNAPSHOT_VERSION}");
        let _ = writeln!(out, "% ordering: {}", self.config.ordering);
        let _ = writeln!(out, "% selection: {} {}", self.config.selection, self.config.ratio);
        let order: Vec<_> = prec.order().iter().map(symbol_text).collect();
        let _ = writeln!(out, "% precedence: {}", order.join(" "));
        let _ = writeln!(out, "% var-weight: {}", prec.var_weight());
        let weights: Vec<_> = prec
            .explicit_weights()
            .map(|(s, w)| format!("{}={w}", symbol_text(s)))
            .collect();
        let _ = writeln!(out, "% weights: {}", weights.join(" "));
        let _ = writeln!(out, "% next-id: {}", self.bag.next_id());
        let _ = writeln!(out, "% picks: {}", self.passive.picks());
        let s = self.stats;
        let _ = writeln!(out, "% stats: {} {} {}", s.iterations, s.generated, s.kept);
        let passive: std::collections::BTreeSet<_> = self.passive.ids().into_iter().collect();
        for c in self.bag.iter() {
            let set = if self.active.contains(&c.id) {
                "active"
            } else if passive.contains(&c.id) {
                "passive"
            } else {
                "none"
            };
            let sign = if c.is_positive() { "fact" } else { "goal" };
            let _ = writeln!(
                out,
                "clause({}, {set}, {sign}, {}, {}).",
                c.id, c.equation, c.step
            );
        }
        out
    }

    pub fn write_snapshot(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.snapshot()).map_err(|e| Error::io(path, e))
    }

    /// Rebuilds a state from [`Saturation::snapshot`] output. Ordering and
    /// selection come from the snapshot; limits come from `config`.
    pub fn load_snapshot(text: &str, config: SaturationConfig) -> Result<Saturation> {
        let mut header = BTreeMap::new();
        let mut body = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if let Some(rest) = line.strip_prefix('%') {
                if let Some((k, v)) = rest.split_once(':') {
                    header.insert(k.trim().to_string(), v.trim().to_string());
                }
            } else if !line.is_empty() {
                body.push((n + 1, line));
            }
        }
        let get = |key: &str| {
            header
                .get(key)
                .map(String::as_str)
                .ok_or_else(|| Error::Snapshot(format!("missing header `{key}`")))
        };
        let num = |key: &str| -> Result<u64> {
            get(key)?
                .parse()
                .map_err(|_| Error::Snapshot(format!("bad number in `{key}`")))
        };
        if num("snapshot-version")? != SNAPSHOT_VERSION as u64 {
            return Err(Error::Snapshot("unsupported snapshot version".into()));
        }
        let mut config = config;
        config.ordering = get("ordering")?.to_string();
        let mut sel = get("selection")?.split_whitespace();
        config.selection = sel.next().unwrap_or_default().to_string();
        config.ratio = sel
            .next()
            .and_then(|r| r.parse().ok())
            .ok_or_else(|| Error::Snapshot("bad selection header".into()))?;

        let order = get("precedence")?
            .split_whitespace()
            .map(parse_symbol)
            .collect::<Result<Vec<_>>>()?;
        let mut prec = Precedence::from_order(order).with_var_weight(num("var-weight")? as u32);
        for item in get("weights")?.split_whitespace() {
            let (sym, w) = item
                .rsplit_once('=')
                .ok_or_else(|| Error::Snapshot(format!("bad weight `{item}`")))?;
            let w = w
                .parse()
                .map_err(|_| Error::Snapshot(format!("bad weight `{item}`")))?;
            prec = prec.with_weight(parse_symbol(sym)?, w);
        }

        let mut state = Saturation::new(config, prec)?;
        let mut active = Vec::new();
        for (line_no, line) in body {
            let (clause, set) = parse_clause(line)
                .map_err(|e| Error::Snapshot(format!("line {line_no}: {e}")))?;
            if clause.is_empty_clause() && state.refutation.is_none() {
                state.refutation = Some(clause.id);
            }
            match set {
                "active" => active.push(clause.id),
                "passive" => state.passive.insert(clause.id, weigh(&clause)),
                _ => {}
            }
            state.bag.restore(clause)?;
        }
        for id in active {
            let c = state.bag.clause(id)?.clone();
            state.activate(&c);
        }
        state.bag.set_next_id(num("next-id")? as usize);
        state.passive.set_picks(num("picks")?);
        let stats: Vec<u64> = get("stats")?
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| Error::Snapshot("bad stats".into())))
            .collect::<Result<_>>()?;
        if let [iterations, generated, kept] = stats[..] {
            state.stats = Stats {
                iterations,
                generated,
                kept,
            };
        } else {
            return Err(Error::Snapshot("bad stats".into()));
        }
        Ok(state)
    }

    pub fn read_snapshot(path: &Path, config: SaturationConfig) -> Result<Saturation> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::load_snapshot(&text, config)
    }
}

fn parse_clause(line: &str) -> Result<(UnitClause, &'static str)> {
    let mut p = TermParser::new(line);
    p.expect("clause")?;
    p.expect("(")?;
    let id = ClauseId(p.number()?);
    p.expect(",")?;
    let set = match p.ident()?.as_str() {
        "active" => "active",
        "passive" => "passive",
        "none" => "none",
        other => return Err(p.error(format!("unknown set `{other}`"))),
    };
    p.expect(",")?;
    let sign = match p.ident()?.as_str() {
        "fact" => Sign::Positive,
        "goal" => Sign::Negative,
        other => return Err(p.error(format!("unknown sign `{other}`"))),
    };
    p.expect(",")?;
    let equation = p.equation(&mut VarScope::Literal)?;
    p.expect(",")?;
    let step = ProofStep::parse(&mut p)?;
    p.expect(")")?;
    p.expect(".")?;
    p.expect_end()?;
    Ok((
        UnitClause {
            id,
            sign,
            equation,
            step,
            birth: id.0 as u64,
        },
        set,
    ))
}
