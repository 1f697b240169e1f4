//! Encoders of classic problems into binary BIP2, decoders back, and
//! verifiers that recheck certificates from scratch.
//!
//! Each encoding keeps the problem objective equal to the instance
//! objective plus a recorded constant. Normal forms of the encodings:
//!
//! | problem | shared variables | rows |
//! |---|---|---|
//! | vertex cover | `x_v` | `x_u + x_v ≥ 1` hard |
//! | odd cycle transversal | `l_v, r_v` | `l_v + r_v + z_v ≥ 1` (weight `w(v)`), `−l_u − l_v ≥ −1`, `−r_u − r_v ≥ −1` hard |
//! | almost 2-SAT | `x_v` | one row per clause, `−1` on negated literals, rhs `1 − #neg`, weight 1 |
//! | edge bipartization | side `s_v` | `s_u + s_v + z ≥ 1` and `−s_u − s_v + z ≥ −1`, both weight `w(e)` |
//! | min SAT | `x_v`, `s_C` (weight 1) | `s_C ≥ ℓ` hard for every literal `ℓ ∈ C` |
//! | generalized vertex cover | `x_v`, `q_e` (weight `d₁ − d₂`) | `x_u + x_v + z ≥ 1` (weight `d₀ − d₁`), `q_e + x_u ≥ 1`, `q_e + x_v ≥ 1` hard; constant `Σ d₂` |
//! | generalized 2-SAT | `x_v` (weight `w(v)`) | every clause hard |
//! | clique complement | `x_v` | `x_u + x_v ≥ 1` hard per non-adjacent pair |
//! | almost boolean 2-CSP | `x_v` | one weight-1 clause per forbidden tuple |
//! | directed min uncut | `x_v`, `b_e` (weight `w(e)`) | `b_e + x_u ≥ 1`, `b_e − x_v ≥ 0` hard |
//! | split vertex deletion | `c_v, i_v` | `c_v + i_v + z_v ≥ 1` (weight `w(v)`), `−i_u − i_v ≥ −1` per edge, `−c_u − c_v ≥ −1` per non-edge |
//!
//! Clique complement and split vertex deletion constrain non-adjacent
//! pairs, so their size is linear in the complement graph instead.

use crate::bip2::chain::Bip2Solution;
use crate::bip2::solve::{solve_bip2, solve_bip2_auto};
use crate::bip2::{Bip2Error, Bip2Instance, Constraint, Domain, Variable};
use crate::half::{BigWeight, HalfInt};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FrontendError {
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("negative weight {0}")]
    NegativeWeight(i64),
    #[error("edge {0}: generalized weights must satisfy d0 ≥ d1 ≥ d2 ≥ 0")]
    EdgeWeightOrder(usize),
    #[error("variable {var} out of range (n = {n})")]
    VariableOutOfRange { var: usize, n: usize },
    #[error("clause {clause} has {len} literals; 1 or 2 allowed")]
    ClauseLength { clause: usize, len: usize },
    #[error("constraint {0} must mention one or two variables")]
    Scope(usize),
    #[error(transparent)]
    Bip2(#[from] Bip2Error),
}

/// A literal: variable and polarity (`true` for positive).
pub type Lit = (usize, bool);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedGraph {
    pub weights: Vec<i64>,
    pub edges: Vec<(usize, usize)>,
}

/// Edges carry weights; used undirected or directed by the variant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeWeightedGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cnf {
    pub vars: usize,
    pub clauses: Vec<Vec<Lit>>,
}

/// Edge costs `[d₀, d₁, d₂]` by number of selected endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GvcInstance {
    pub weights: Vec<i64>,
    pub edges: Vec<(usize, usize, [i64; 3])>,
}

/// A constraint on one or two variables given by its allowed tuples:
/// `allowed[2a + b]` for a pair, `allowed[a]` for a single variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CspConstraint {
    pub scope: Vec<usize>,
    pub allowed: [bool; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Csp {
    pub vars: usize,
    pub constraints: Vec<CspConstraint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProblemInstance {
    VertexCover(WeightedGraph),
    OddCycleTransversal(WeightedGraph),
    Almost2Sat(Cnf),
    EdgeBipartization(EdgeWeightedGraph),
    MinSat(Cnf),
    GeneralizedVertexCover(GvcInstance),
    Generalized2Sat { cnf: Cnf, weights: Vec<i64> },
    CliqueComplement(WeightedGraph),
    AlmostBoolean2Csp(Csp),
    DirectedMinUncut(EdgeWeightedGraph),
    SplitVertexDeletion(WeightedGraph),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certificate {
    /// Selected or deleted vertices, ascending.
    Vertices(Vec<usize>),
    /// Indices of deleted edges, ascending.
    Edges(Vec<usize>),
    Assignment(Vec<bool>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemSolution {
    pub certificate: Certificate,
    pub objective: i64,
}

/// What [`decode`] needs besides the instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoder {
    /// Problem objective minus instance objective.
    pub offset: i64,
}

fn bin(w: i64) -> Variable {
    Variable { weight: BigWeight::int(w), domain: Domain::Binary }
}

fn soft(w: i64) -> Option<BigWeight> {
    Some(BigWeight::int(w))
}

fn check_weights(ws: impl IntoIterator<Item = i64>) -> Result<(), FrontendError> {
    match ws.into_iter().find(|&w| w < 0) {
        Some(w) => Err(FrontendError::NegativeWeight(w)),
        None => Ok(()),
    }
}

fn check_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<(), FrontendError> {
    for (u, v) in edges {
        for x in [u, v] {
            if x >= n {
                return Err(FrontendError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(FrontendError::SelfLoop(u));
        }
    }
    Ok(())
}

fn check_cnf(cnf: &Cnf, max_len: Option<usize>) -> Result<(), FrontendError> {
    for (c, clause) in cnf.clauses.iter().enumerate() {
        if let Some(max) = max_len {
            if clause.is_empty() || clause.len() > max {
                return Err(FrontendError::ClauseLength { clause: c, len: clause.len() });
            }
        }
        if let Some(&(var, _)) = clause.iter().find(|l| l.0 >= cnf.vars) {
            return Err(FrontendError::VariableOutOfRange { var, n: cnf.vars });
        }
    }
    Ok(())
}

/// The row "at least one literal of the clause holds". A repeated literal
/// counts once; a clause with both polarities of a variable always holds
/// and needs no row.
fn clause_row(clause: &[Lit], indep: Option<BigWeight>) -> Option<Constraint> {
    let coef = |p: bool| if p { 1 } else { -1 };
    let neg = |p: bool| i64::from(!p);
    match *clause {
        [(u, p)] => Some(Constraint::unary(coef(p), u, 1 - neg(p), indep)),
        [(u, p), (v, q)] if u == v => (p == q).then(|| Constraint::unary(coef(p), u, 1 - neg(p), indep)),
        [(u, p), (v, q)] => Some(Constraint::pair(coef(p), u, coef(q), v, 1 - neg(p) - neg(q), indep)),
        _ => unreachable!("clauses are checked to have one or two literals"),
    }
}

fn non_edges(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let adj: BTreeSet<(usize, usize)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|e| !adj.contains(e)).collect()
}

/// Forbidden tuples of a constraint as clauses.
fn forbidden_clauses(c: &CspConstraint) -> Vec<Vec<Lit>> {
    match c.scope.as_slice() {
        [u] => (0..2).filter(|&a| !c.allowed[a]).map(|a| vec![(*u, a == 0)]).collect(),
        [u, v] => (0..4).filter(|&t| !c.allowed[t]).map(|t| vec![(*u, t / 2 == 0), (*v, t % 2 == 0)]).collect(),
        _ => Vec::new(),
    }
}

pub fn validate(p: &ProblemInstance) -> Result<(), FrontendError> {
    use ProblemInstance::*;
    match p {
        VertexCover(g) | OddCycleTransversal(g) | CliqueComplement(g) | SplitVertexDeletion(g) => {
            check_weights(g.weights.iter().copied())?;
            check_edges(g.weights.len(), g.edges.iter().copied())
        }
        EdgeBipartization(g) | DirectedMinUncut(g) => {
            check_weights(g.edges.iter().map(|e| e.2))?;
            check_edges(g.n, g.edges.iter().map(|e| (e.0, e.1)))
        }
        Almost2Sat(cnf) => check_cnf(cnf, Some(2)),
        MinSat(cnf) => check_cnf(cnf, None),
        Generalized2Sat { cnf, weights } => {
            check_cnf(cnf, Some(2))?;
            check_weights(weights.iter().copied())?;
            if weights.len() != cnf.vars {
                return Err(FrontendError::VariableOutOfRange { var: weights.len(), n: cnf.vars });
            }
            Ok(())
        }
        GeneralizedVertexCover(g) => {
            check_weights(g.weights.iter().copied())?;
            check_edges(g.weights.len(), g.edges.iter().map(|e| (e.0, e.1)))?;
            for (i, e) in g.edges.iter().enumerate() {
                let [d0, d1, d2] = e.2;
                if !(d0 >= d1 && d1 >= d2 && d2 >= 0) {
                    return Err(FrontendError::EdgeWeightOrder(i));
                }
            }
            Ok(())
        }
        AlmostBoolean2Csp(csp) => {
            for (i, c) in csp.constraints.iter().enumerate() {
                if c.scope.is_empty() || c.scope.len() > 2 {
                    return Err(FrontendError::Scope(i));
                }
                if let Some(&var) = c.scope.iter().find(|&&v| v >= csp.vars) {
                    return Err(FrontendError::VariableOutOfRange { var, n: csp.vars });
                }
            }
            Ok(())
        }
    }
}

pub fn encode(p: &ProblemInstance) -> Result<(Bip2Instance, Decoder), FrontendError> {
    use ProblemInstance::*;
    validate(p)?;
    let mut offset = 0;
    let (vars, cons) = match p {
        VertexCover(g) => (g.weights.iter().map(|&w| bin(w)).collect(), g.edges.iter().map(|&(u, v)| Constraint::pair(1, u, 1, v, 1, None)).collect()),
        OddCycleTransversal(g) => {
            let n = g.weights.len();
            let mut cons: Vec<Constraint> = (0..n).map(|v| Constraint::pair(1, 2 * v, 1, 2 * v + 1, 1, soft(g.weights[v]))).collect();
            for &(u, v) in &g.edges {
                cons.push(Constraint::pair(-1, 2 * u, -1, 2 * v, -1, None));
                cons.push(Constraint::pair(-1, 2 * u + 1, -1, 2 * v + 1, -1, None));
            }
            (vec![bin(0); 2 * n], cons)
        }
        Almost2Sat(cnf) => (vec![bin(0); cnf.vars], cnf.clauses.iter().filter_map(|c| clause_row(c, soft(1))).collect()),
        EdgeBipartization(g) => {
            let mut cons = Vec::with_capacity(2 * g.edges.len());
            for &(u, v, w) in &g.edges {
                cons.push(Constraint::pair(1, u, 1, v, 1, soft(w)));
                cons.push(Constraint::pair(-1, u, -1, v, -1, soft(w)));
            }
            (vec![bin(0); g.n], cons)
        }
        MinSat(cnf) => {
            let mut vars = vec![bin(0); cnf.vars];
            let mut cons = Vec::new();
            for clause in &cnf.clauses {
                let s = vars.len();
                vars.push(bin(1));
                for &(v, pos) in clause {
                    cons.push(if pos { Constraint::pair(1, s, -1, v, 0, None) } else { Constraint::pair(1, s, 1, v, 1, None) });
                }
            }
            (vars, cons)
        }
        GeneralizedVertexCover(g) => {
            let mut vars: Vec<Variable> = g.weights.iter().map(|&w| bin(w)).collect();
            let mut cons = Vec::new();
            for &(u, v, [d0, d1, d2]) in &g.edges {
                offset += d2;
                let q = vars.len();
                vars.push(bin(d1 - d2));
                cons.push(Constraint::pair(1, u, 1, v, 1, soft(d0 - d1)));
                cons.push(Constraint::pair(1, q, 1, u, 1, None));
                cons.push(Constraint::pair(1, q, 1, v, 1, None));
            }
            (vars, cons)
        }
        Generalized2Sat { cnf, weights } => (weights.iter().map(|&w| bin(w)).collect(), cnf.clauses.iter().filter_map(|c| clause_row(c, None)).collect()),
        CliqueComplement(g) => {
            let n = g.weights.len();
            (g.weights.iter().map(|&w| bin(w)).collect(), non_edges(n, &g.edges).into_iter().map(|(u, v)| Constraint::pair(1, u, 1, v, 1, None)).collect())
        }
        AlmostBoolean2Csp(csp) => {
            let cons = csp.constraints.iter().flat_map(forbidden_clauses).filter_map(|c| clause_row(&c, soft(1))).collect();
            (vec![bin(0); csp.vars], cons)
        }
        DirectedMinUncut(g) => {
            let mut vars = vec![bin(0); g.n];
            let mut cons = Vec::new();
            for &(u, v, w) in &g.edges {
                let b = vars.len();
                vars.push(bin(w));
                cons.push(Constraint::pair(1, b, 1, u, 1, None));
                cons.push(Constraint::pair(1, b, -1, v, 0, None));
            }
            (vars, cons)
        }
        SplitVertexDeletion(g) => {
            let n = g.weights.len();
            let mut cons: Vec<Constraint> = (0..n).map(|v| Constraint::pair(1, 2 * v, 1, 2 * v + 1, 1, soft(g.weights[v]))).collect();
            for &(u, v) in &g.edges {
                cons.push(Constraint::pair(-1, 2 * u + 1, -1, 2 * v + 1, -1, None));
            }
            for (u, v) in non_edges(n, &g.edges) {
                cons.push(Constraint::pair(-1, 2 * u, -1, 2 * v, -1, None));
            }
            (vec![bin(0); 2 * n], cons)
        }
    };
    Ok((Bip2Instance::new(vars, cons)?, Decoder { offset }))
}

fn chosen(x: &[i64], n: usize) -> Vec<usize> {
    (0..n).filter(|&v| x[v] == 1).collect()
}

/// Reads the problem certificate off an integral solution of the encoding.
pub fn decode(p: &ProblemInstance, sol: &Bip2Solution, ctx: &Decoder) -> ProblemSolution {
    use ProblemInstance::*;
    let x = &sol.x;
    let assignment = |n: usize| Certificate::Assignment(x[..n].iter().map(|&v| v == 1).collect());
    let certificate = match p {
        VertexCover(g) | CliqueComplement(g) => Certificate::Vertices(chosen(x, g.weights.len())),
        GeneralizedVertexCover(g) => Certificate::Vertices(chosen(x, g.weights.len())),
        OddCycleTransversal(g) | SplitVertexDeletion(g) => Certificate::Vertices((0..g.weights.len()).filter(|&v| x[2 * v] + x[2 * v + 1] == 0).collect()),
        EdgeBipartization(g) => Certificate::Edges(g.edges.iter().enumerate().filter(|(_, e)| x[e.0] == x[e.1]).map(|(i, _)| i).collect()),
        Almost2Sat(cnf) | MinSat(cnf) | Generalized2Sat { cnf, .. } => assignment(cnf.vars),
        AlmostBoolean2Csp(csp) => assignment(csp.vars),
        DirectedMinUncut(g) => assignment(g.n),
    };
    ProblemSolution { certificate, objective: sol.objective + ctx.offset }
}

/// Encodes, solves to optimality and decodes.
pub fn solve_problem(p: &ProblemInstance) -> Result<ProblemSolution, FrontendError> {
    let (inst, ctx) = encode(p)?;
    let out = solve_bip2_auto(&inst)?;
    Ok(decode(p, &out.solution, &ctx))
}

/// Like [`solve_problem`] but only accepts solutions within `k` of the LP
/// bound of the encoding; `None` when there is none.
pub fn solve_problem_within(p: &ProblemInstance, k: HalfInt) -> Result<Option<ProblemSolution>, FrontendError> {
    let (inst, ctx) = encode(p)?;
    let out = solve_bip2(&inst, k)?;
    Ok(out.solution.map(|s| decode(p, &s, &ctx)))
}

// Verification below deliberately avoids the encodings above.

fn graph_is_bipartite(n: usize, edges: impl Iterator<Item = (usize, usize)> + Clone, keep: &[bool]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for (u, v) in edges {
        if keep[u] && keep[v] {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut color: Vec<Option<bool>> = vec![None; n];
    for s in 0..n {
        if !keep[s] || color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let cu = color[u].unwrap();
            for &v in &adj[u] {
                match color[v] {
                    None => {
                        color[v] = Some(!cu);
                        stack.push(v);
                    }
                    Some(cv) if cv == cu => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

fn is_split(n: usize, edges: &[(usize, usize)], keep: &[bool]) -> bool {
    // Split graphs are exactly those whose degree sequence d₁ ≥ … ≥ d_n
    // satisfies Σ_{i≤m} d_i = m(m−1) + Σ_{i>m} d_i for m = max{i : d_i ≥ i−1}.
    let mut deg = vec![0usize; n];
    for &(u, v) in edges {
        if keep[u] && keep[v] && u != v {
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    let mut d: Vec<usize> = (0..n).filter(|&v| keep[v]).map(|v| deg[v]).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    let m = (1..=d.len()).filter(|&i| d[i - 1] + 1 >= i).max().unwrap_or(0);
    let head: usize = d[..m].iter().sum();
    let tail: usize = d[m..].iter().sum();
    head == m * m.saturating_sub(1) + tail
}

fn lit_true(a: &[bool], l: &Lit) -> bool {
    a[l.0] == l.1
}

/// Rechecks a certificate and recomputes its objective. Violations are
/// listed one per failing element; a claimed objective that differs from
/// the recomputed one is a violation too.
pub fn verify(p: &ProblemInstance, sol: &ProblemSolution) -> Result<i64, Vec<String>> {
    use ProblemInstance::*;
    let mut bad = Vec::new();
    let set_mask = |n: usize, set: &[usize], bad: &mut Vec<String>| {
        let mut mask = vec![false; n];
        for &v in set {
            if v >= n {
                bad.push(format!("vertex {v} out of range"));
            } else if mask[v] {
                bad.push(format!("vertex {v} listed twice"));
            } else {
                mask[v] = true;
            }
        }
        mask
    };
    let objective = match (p, &sol.certificate) {
        (VertexCover(g) | OddCycleTransversal(g) | CliqueComplement(g) | SplitVertexDeletion(g), Certificate::Vertices(s)) => {
            let n = g.weights.len();
            let inset = set_mask(n, s, &mut bad);
            match p {
                VertexCover(_) => {
                    for &(u, v) in &g.edges {
                        if !inset[u] && !inset[v] {
                            bad.push(format!("edge {{{u}, {v}}} uncovered"));
                        }
                    }
                }
                OddCycleTransversal(_) => {
                    let keep: Vec<bool> = inset.iter().map(|b| !b).collect();
                    if !graph_is_bipartite(n, g.edges.iter().copied(), &keep) {
                        bad.push("an odd cycle remains".into());
                    }
                }
                CliqueComplement(_) => {
                    let adj: BTreeSet<(usize, usize)> = g.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
                    for u in (0..n).filter(|&u| !inset[u]) {
                        for v in (u + 1..n).filter(|&v| !inset[v]) {
                            if !adj.contains(&(u, v)) {
                                bad.push(format!("kept vertices {u} and {v} are not adjacent"));
                            }
                        }
                    }
                }
                _ => {
                    let keep: Vec<bool> = inset.iter().map(|b| !b).collect();
                    if !is_split(n, &g.edges, &keep) {
                        bad.push("the remaining graph is not split".into());
                    }
                }
            }
            s.iter().filter(|&&v| v < n).map(|&v| g.weights[v]).sum()
        }
        (GeneralizedVertexCover(g), Certificate::Vertices(s)) => {
            let inset = set_mask(g.weights.len(), s, &mut bad);
            let vertices: i64 = s.iter().filter(|&&v| v < g.weights.len()).map(|&v| g.weights[v]).sum();
            vertices + g.edges.iter().map(|&(u, v, d)| d[usize::from(inset[u]) + usize::from(inset[v])]).sum::<i64>()
        }
        (EdgeBipartization(g), Certificate::Edges(s)) => {
            let mut cut = vec![false; g.edges.len()];
            for &e in s {
                if e >= g.edges.len() || cut[e] {
                    bad.push(format!("edge index {e} invalid or repeated"));
                } else {
                    cut[e] = true;
                }
            }
            let kept = g.edges.iter().zip(&cut).filter(|(_, c)| !**c).map(|(e, _)| (e.0, e.1));
            if !graph_is_bipartite(g.n, kept, &vec![true; g.n]) {
                bad.push("an odd cycle remains".into());
            }
            g.edges.iter().zip(&cut).filter(|(_, c)| **c).map(|(e, _)| e.2).sum()
        }
        (Almost2Sat(cnf) | MinSat(cnf) | Generalized2Sat { cnf, .. }, Certificate::Assignment(a)) if a.len() == cnf.vars => {
            let sat = cnf.clauses.iter().filter(|c| c.iter().any(|l| lit_true(a, l))).count() as i64;
            match p {
                Almost2Sat(_) => cnf.clauses.len() as i64 - sat,
                MinSat(_) => sat,
                Generalized2Sat { weights, .. } => {
                    for (i, c) in cnf.clauses.iter().enumerate() {
                        if !c.iter().any(|l| lit_true(a, l)) {
                            bad.push(format!("clause {i} unsatisfied"));
                        }
                    }
                    (0..cnf.vars).filter(|&v| a[v]).map(|v| weights[v]).sum()
                }
                _ => unreachable!(),
            }
        }
        (AlmostBoolean2Csp(csp), Certificate::Assignment(a)) if a.len() == csp.vars => csp
            .constraints
            .iter()
            .filter(|c| {
                let idx = c.scope.iter().fold(0, |acc, &v| 2 * acc + usize::from(a[v]));
                !c.allowed[idx]
            })
            .count() as i64,
        (DirectedMinUncut(g), Certificate::Assignment(a)) if a.len() == g.n => g.edges.iter().filter(|e| !(a[e.0] && !a[e.1])).map(|e| e.2).sum(),
        _ => return Err(vec!["certificate kind or length does not fit the problem".into()]),
    };
    if objective != sol.objective {
        bad.push(format!("claimed objective {} but the certificate costs {objective}", sol.objective));
    }
    if bad.is_empty() {
        Ok(objective)
    } else {
        Err(bad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> WeightedGraph {
        WeightedGraph { weights: vec![1; 3], edges: vec![(0, 1), (1, 2), (0, 2)] }
    }

    #[test]
    fn vertex_cover_passthrough() {
        let p = ProblemInstance::VertexCover(WeightedGraph { weights: vec![1, 1], edges: vec![(0, 1)] });
        let (inst, _) = encode(&p).unwrap();
        assert_eq!(inst.constraints(), &[Constraint::pair(1, 0, 1, 1, 1, None)]);
    }

    #[test]
    fn odd_cycle_transversal_of_a_triangle() {
        let p = ProblemInstance::OddCycleTransversal(k3());
        let sol = solve_problem(&p).unwrap();
        assert_eq!(sol.objective, 1);
        assert_eq!(verify(&p, &sol), Ok(1));
        let lone = ProblemInstance::OddCycleTransversal(WeightedGraph { weights: vec![1], edges: vec![] });
        let (inst, _) = encode(&lone).unwrap();
        assert_eq!(inst.constraints().len(), 1);
        assert_eq!(solve_problem(&lone).unwrap().objective, 0);
    }

    #[test]
    fn almost_2sat_contradiction() {
        let cnf = Cnf { vars: 2, clauses: vec![vec![(0, true), (1, true)], vec![(0, true), (1, false)], vec![(0, false), (1, true)], vec![(0, false), (1, false)]] };
        let p = ProblemInstance::Almost2Sat(cnf);
        let (inst, _) = encode(&p).unwrap();
        // (v ∨ ¬u) becomes x_v − x_u + z ≥ 0.
        assert_eq!(inst.constraints()[1], Constraint::pair(1, 0, -1, 1, 0, soft(1)));
        let sol = solve_problem(&p).unwrap();
        assert_eq!(verify(&p, &sol), Ok(1));
    }

    #[test]
    fn verifier_rejects_bad_certificates() {
        let p = ProblemInstance::OddCycleTransversal(k3());
        let err = verify(&p, &ProblemSolution { certificate: Certificate::Vertices(vec![]), objective: 0 }).unwrap_err();
        assert!(err[0].contains("odd cycle"));
        let err = verify(&p, &ProblemSolution { certificate: Certificate::Vertices(vec![0]), objective: 0 }).unwrap_err();
        assert!(err[0].contains("claimed objective"));
        let cnf = Cnf { vars: 1, clauses: vec![vec![(0, true)]] };
        let p = ProblemInstance::Almost2Sat(cnf);
        assert!(verify(&p, &ProblemSolution { certificate: Certificate::Assignment(vec![false]), objective: 0 }).is_err());
    }

    #[test]
    fn split_recognition() {
        // A triangle with a pendant vertex is split; C4 is not.
        let keep = vec![true; 4];
        assert!(is_split(4, &[(0, 1), (1, 2), (0, 2), (2, 3)], &keep));
        assert!(!is_split(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], &keep));
    }

    #[test]
    fn invalid_inputs() {
        let p = ProblemInstance::VertexCover(WeightedGraph { weights: vec![1], edges: vec![(0, 0)] });
        assert_eq!(encode(&p).unwrap_err(), FrontendError::SelfLoop(0));
        let g = GvcInstance { weights: vec![0, 0], edges: vec![(0, 1, [1, 2, 0])] };
        assert_eq!(encode(&ProblemInstance::GeneralizedVertexCover(g)).unwrap_err(), FrontendError::EdgeWeightOrder(0));
    }
}
