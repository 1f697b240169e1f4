//! DIMACS graph and CNF readers and writers.
//!
//! Graph files follow the `edge` flavour with two extra line kinds:
//!
//! ```text
//! c comment
//! p edge <n> <m>
//! e <u> <v>
//! w <v> <weight>      (optional, default 1)
//! t <v>               (terminal, multiway only)
//! ```
//!
//! Vertex ids are 1-indexed in files and 0-indexed in memory.

use abovelp::bip2::text::{content_lines, ParseError, Tokens};
use abovelp::frontends::Cnf;
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimacsGraph {
    pub weights: Vec<i64>,
    pub edges: Vec<(usize, usize)>,
    pub terminals: Vec<usize>,
}

fn vertex(t: &mut Tokens<'_>, n: usize) -> Result<usize, ParseError> {
    let (col, s) = t.next_str("vertex")?;
    match s.parse::<usize>() {
        Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
        _ => Err(t.error_at(col, format!("vertex must be in 1..={n}, found `{s}`"))),
    }
}

pub fn parse_graph(text: &str) -> Result<DimacsGraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut g = DimacsGraph { weights: Vec::new(), edges: Vec::new(), terminals: Vec::new() };
    let mut last = 1;
    for (ln, line) in content_lines(text, &["c", "%"]) {
        last = ln;
        let mut t = Tokens::new(ln, line);
        let (col, tag) = t.next_str("line tag")?;
        if tag != "p" && header.is_none() {
            return Err(t.error_at(col, "expected `p edge <n> <m>` before other lines"));
        }
        match tag {
            "p" => {
                if header.is_some() {
                    return Err(t.error_at(col, "second `p` line"));
                }
                let (fcol, format) = t.next_str("format")?;
                if format != "edge" && format != "col" {
                    return Err(t.error_at(fcol, format!("expected `edge`, found `{format}`")));
                }
                let n: usize = t.next_int("vertex count")?;
                let m: usize = t.next_int("edge count")?;
                header = Some((n, m));
                g.weights = vec![1; n];
            }
            "e" => {
                let n = g.weights.len();
                let u = vertex(&mut t, n)?;
                let v = vertex(&mut t, n)?;
                if u == v {
                    return Err(t.error_at(col, format!("self-loop at vertex {}", u + 1)));
                }
                g.edges.push((u, v));
            }
            "w" => {
                let v = vertex(&mut t, g.weights.len())?;
                let (wcol, s) = t.next_str("weight")?;
                g.weights[v] = match s.parse::<i64>() {
                    Ok(w) if w >= 0 => w,
                    _ => return Err(t.error_at(wcol, format!("weight must be a nonnegative integer, found `{s}`"))),
                };
            }
            "t" => {
                let v = vertex(&mut t, g.weights.len())?;
                if g.terminals.contains(&v) {
                    return Err(t.error_at(col, format!("terminal {} listed twice", v + 1)));
                }
                g.terminals.push(v);
            }
            _ => return Err(t.error_at(col, format!("unknown line tag `{tag}`"))),
        }
        t.finish()?;
    }
    let Some((_, m)) = header else {
        return Err(ParseError { line: last, column: 1, message: "missing `p edge` line".into() });
    };
    if g.edges.len() != m {
        return Err(ParseError { line: last, column: 1, message: format!("header announces {m} edges, found {}", g.edges.len()) });
    }
    Ok(g)
}

pub fn write_graph(g: &DimacsGraph) -> String {
    let mut out = format!("p edge {} {}\n", g.weights.len(), g.edges.len());
    for (v, &w) in g.weights.iter().enumerate() {
        if w != 1 {
            let _ = writeln!(out, "w {} {w}", v + 1);
        }
    }
    for &t in &g.terminals {
        let _ = writeln!(out, "t {}", t + 1);
    }
    for &(u, v) in &g.edges {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

/// DIMACS CNF. Clauses end with `0` and may span lines. With
/// `exact_len`, every clause must have that many literals.
pub fn parse_cnf(text: &str, exact_len: Option<usize>) -> Result<Cnf, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<(usize, bool)>> = Vec::new();
    let mut current: Vec<(usize, bool)> = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    let mut last = 1;
    for (ln, line) in content_lines(text, &["c", "%"]) {
        last = ln;
        let mut t = Tokens::new(ln, line);
        let Some((vars, _)) = header else {
            let (col, tag) = t.next_str("header")?;
            if tag != "p" {
                return Err(t.error_at(col, "expected `p cnf <vars> <clauses>`"));
            }
            let (fcol, format) = t.next_str("format")?;
            if format != "cnf" {
                return Err(t.error_at(fcol, format!("expected `cnf`, found `{format}`")));
            }
            header = Some((t.next_int("variable count")?, t.next_int("clause count")?));
            t.finish()?;
            continue;
        };
        while let Ok((col, s)) = t.next_str("literal") {
            let lit: i64 = s.parse().map_err(|_| t.error_at(col, format!("expected a literal, found `{s}`")))?;
            if lit == 0 {
                if let Some(len) = exact_len {
                    if current.len() != len {
                        let (l, c) = start.unwrap_or((ln, col));
                        return Err(ParseError { line: l, column: c, message: format!("clause has {} literals, expected {len}", current.len()) });
                    }
                }
                clauses.push(std::mem::take(&mut current));
                start = None;
                continue;
            }
            let var = lit.unsigned_abs() as usize;
            if var > vars {
                return Err(t.error_at(col, format!("variable {var} exceeds the declared {vars}")));
            }
            start.get_or_insert((ln, col));
            current.push((var - 1, lit > 0));
        }
    }
    let Some((vars, m)) = header else {
        return Err(ParseError { line: last, column: 1, message: "missing `p cnf` line".into() });
    };
    if !current.is_empty() {
        return Err(ParseError { line: last, column: 1, message: "last clause is not terminated by 0".into() });
    }
    if clauses.len() != m {
        return Err(ParseError { line: last, column: 1, message: format!("header announces {m} clauses, found {}", clauses.len()) });
    }
    Ok(Cnf { vars, clauses })
}

pub fn write_cnf(cnf: &Cnf) -> String {
    let mut out = format!("p cnf {} {}\n", cnf.vars, cnf.clauses.len());
    for clause in &cnf.clauses {
        for &(v, pos) in clause {
            let _ = write!(out, "{}{} ", if pos { "" } else { "-" }, v + 1);
        }
        out.push_str("0\n");
    }
    out
}
