//! Line-based text format for instances.
//!
//! ```text
//! bip2 <nvars> <ncons>
//! v <id> <weight> <B|N>
//! c <a> <i> <b> <j> <rhs> <dweight|H>
//! ```
//!
//! Ids run from 1 to `nvars`; every variable needs exactly one `v` line.
//! `H` marks a hard constraint. A unary constraint has `b = 0` (its `j` is
//! ignored but must still be a valid id). Blank lines and lines starting
//! with `#` are skipped.

use super::{Bip2Error, Bip2Instance, Constraint, Domain, Variable};
use crate::half::BigWeight;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Whitespace-separated tokens of one line with their 1-based columns.
pub struct Tokens<'a> {
    line: usize,
    items: Vec<(usize, &'a str)>,
    pos: usize,
    end: usize,
}

impl<'a> Tokens<'a> {
    pub fn new(line: usize, text: &'a str) -> Self {
        let mut items = Vec::new();
        let mut start = None;
        for (i, ch) in text.char_indices().chain(std::iter::once((text.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (true, Some(s)) => {
                    items.push((s + 1, &text[s..i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        Tokens { line, items, pos: 0, end: text.trim_end().len() + 1 }
    }

    pub fn error_at(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column, message: message.into() }
    }

    fn column(&self) -> usize {
        self.items.get(self.pos).map_or(self.end, |t| t.0)
    }

    pub fn next_str(&mut self, what: &str) -> Result<(usize, &'a str), ParseError> {
        let t = self.items.get(self.pos).copied().ok_or_else(|| self.error_at(self.column(), format!("missing {what}")))?;
        self.pos += 1;
        Ok(t)
    }

    pub fn next_int<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, ParseError> {
        let (col, s) = self.next_str(what)?;
        s.parse().map_err(|_| self.error_at(col, format!("expected {what}, found `{s}`")))
    }

    pub fn finish(&self) -> Result<(), ParseError> {
        match self.items.get(self.pos) {
            Some(&(col, s)) => Err(self.error_at(col, format!("unexpected `{s}`"))),
            None => Ok(()),
        }
    }
}

/// Meaningful lines with their 1-based numbers.
pub fn content_lines<'a>(text: &'a str, comment: &[&str]) -> impl Iterator<Item = (usize, &'a str)> {
    let comment: Vec<String> = comment.iter().map(|s| s.to_string()).collect();
    text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(move |(_, l)| {
        let t = l.trim_start();
        !t.is_empty() && !comment.iter().any(|c| t.starts_with(c.as_str()))
    })
}

fn id(t: &mut Tokens<'_>, n: usize, what: &str) -> Result<usize, ParseError> {
    let (col, s) = t.next_str(what)?;
    match s.parse::<usize>() {
        Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
        _ => Err(t.error_at(col, format!("{what} must be an id in 1..={n}, found `{s}`"))),
    }
}

fn coefficient(t: &mut Tokens<'_>) -> Result<i64, ParseError> {
    let (col, s) = t.next_str("coefficient")?;
    match s.parse::<i64>() {
        Ok(v) if (-1..=1).contains(&v) => Ok(v),
        _ => Err(t.error_at(col, format!("coefficient must be -1, 0 or 1, found `{s}`"))),
    }
}

fn weight(t: &mut Tokens<'_>, what: &str) -> Result<i64, ParseError> {
    let (col, s) = t.next_str(what)?;
    match s.parse::<i64>() {
        Ok(v) if v >= 0 => Ok(v),
        _ => Err(t.error_at(col, format!("{what} must be a nonnegative integer, found `{s}`"))),
    }
}

pub fn parse(text: &str) -> Result<Bip2Instance, ParseError> {
    let mut lines = content_lines(text, &["#"]);
    let Some((hl, header)) = lines.next() else {
        return Err(ParseError { line: 1, column: 1, message: "missing `bip2` header".into() });
    };
    let mut t = Tokens::new(hl, header);
    let (col, tag) = t.next_str("header")?;
    if tag != "bip2" {
        return Err(t.error_at(col, "expected `bip2` header"));
    }
    let n: usize = t.next_int("variable count")?;
    let m: usize = t.next_int("constraint count")?;
    t.finish()?;
    let mut vars: Vec<Option<Variable>> = vec![None; n];
    let mut cons = Vec::with_capacity(m);
    let mut last_line = hl;
    for (ln, line) in lines {
        last_line = ln;
        let mut t = Tokens::new(ln, line);
        let (col, tag) = t.next_str("line tag")?;
        match tag {
            "v" => {
                let v = id(&mut t, n, "variable")?;
                let w = weight(&mut t, "weight")?;
                let (dcol, d) = t.next_str("domain")?;
                let domain = match d {
                    "B" => Domain::Binary,
                    "N" => Domain::Nonneg,
                    _ => return Err(t.error_at(dcol, format!("domain must be B or N, found `{d}`"))),
                };
                if vars[v].is_some() {
                    return Err(t.error_at(col, format!("variable {} declared twice", v + 1)));
                }
                vars[v] = Some(Variable { weight: BigWeight::int(w), domain });
            }
            "c" => {
                let a = coefficient(&mut t)?;
                let i = id(&mut t, n, "first variable")?;
                let b = coefficient(&mut t)?;
                let j = id(&mut t, n, "second variable")?;
                let c: i64 = t.next_int("right-hand side")?;
                let (dcol, d) = t.next_str("independent weight or H")?;
                let indep = match d {
                    "H" => None,
                    _ => match d.parse::<i64>() {
                        Ok(v) if v >= 0 => Some(BigWeight::int(v)),
                        _ => return Err(t.error_at(dcol, format!("expected a nonnegative weight or H, found `{d}`"))),
                    },
                };
                if cons.len() == m {
                    return Err(t.error_at(col, format!("more than {m} constraints")));
                }
                cons.push(if b == 0 { Constraint::unary(a, i, c, indep) } else { Constraint::pair(a, i, b, j, c, indep) });
            }
            _ => return Err(t.error_at(col, format!("unknown line tag `{tag}`"))),
        }
        t.finish()?;
    }
    if cons.len() != m {
        return Err(ParseError { line: last_line, column: 1, message: format!("expected {m} constraints, found {}", cons.len()) });
    }
    let vars: Vec<Variable> = vars
        .into_iter()
        .enumerate()
        .map(|(v, x)| x.ok_or_else(|| ParseError { line: last_line, column: 1, message: format!("variable {} never declared", v + 1) }))
        .collect::<Result<_, _>>()?;
    Bip2Instance::new(vars, cons).map_err(|e| ParseError { line: hl, column: 1, message: describe(e) })
}

fn describe(e: Bip2Error) -> String {
    format!("invalid instance: {e}")
}

/// Writes an instance with finite weights; [`parse`] reads it back.
pub fn format(inst: &Bip2Instance) -> Result<String, Bip2Error> {
    if !inst.constant().is_finite() || inst.constant() != BigWeight::ZERO {
        return Err(Bip2Error::Pair("only instances without a constant term can be written".into()));
    }
    let w = inst.concrete_weights(0)?;
    let d = inst.concrete_indep(0)?;
    if inst.vars().iter().any(|v| !v.weight.is_finite()) {
        return Err(Bip2Error::Pair("symbolic weights cannot be written".into()));
    }
    let mut out = format!("bip2 {} {}\n", inst.var_count(), inst.constraints().len());
    for (v, var) in inst.vars().iter().enumerate() {
        let dom = if var.domain == Domain::Binary { "B" } else { "N" };
        let _ = writeln!(out, "v {} {} {dom}", v + 1, w[v]);
    }
    for (con, d) in inst.constraints().iter().zip(&d) {
        let d = d.map_or("H".to_string(), |x| x.to_string());
        let _ = writeln!(out, "c {} {} {} {} {} {d}", con.a, con.i + 1, con.b, con.j + 1, con.c);
    }
    Ok(out)
}
