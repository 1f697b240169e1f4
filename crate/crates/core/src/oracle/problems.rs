//! Exhaustive optima for the concrete problems behind the frontends and
//! for node multiway cut.

use super::{Meter, OracleBudget, OracleError};
use crate::frontends::{Cnf, ProblemInstance};

pub const BRUTE_PROBLEM_LIMIT: usize = 16;
/// Split vertex deletion enumerates three states per vertex.
pub const BRUTE_SPLIT_LIMIT: usize = 12;

fn limit(what: &'static str, size: usize, cap: usize) -> Result<(), OracleError> {
    if size > cap {
        return Err(OracleError::TooLarge { what, size, limit: cap });
    }
    Ok(())
}

fn bit(mask: u32, v: usize) -> bool {
    mask >> v & 1 == 1
}

/// Odd cycles are found by trying every two-colouring of the kept
/// vertices; fine at this scale and shares nothing with a BFS colouring.
fn bipartite_by_colourings(n: usize, edges: &[(usize, usize)], keep: u32, meter: &mut Meter) -> Result<bool, OracleError> {
    for colour in 0u32..(1u32 << n) {
        meter.tick()?;
        if colour & !keep != 0 {
            continue;
        }
        if edges.iter().all(|&(u, v)| !bit(keep, u) || !bit(keep, v) || bit(colour, u) != bit(colour, v)) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn satisfied(cnf: &Cnf, a: u32) -> usize {
    cnf.clauses.iter().filter(|c| c.iter().any(|&(v, pos)| bit(a, v) == pos)).count()
}

fn min_over_masks(n: usize, meter: &mut Meter, mut cost: impl FnMut(u32, &mut Meter) -> Result<Option<i64>, OracleError>) -> Result<Option<i64>, OracleError> {
    let mut best: Option<i64> = None;
    for mask in 0u32..(1u32 << n) {
        meter.tick()?;
        if let Some(c) = cost(mask, meter)? {
            best = Some(best.map_or(c, |b| b.min(c)));
        }
    }
    Ok(best)
}

/// The optimum of a problem instance, or `None` when it has no feasible
/// solution.
pub fn brute_problem(p: &ProblemInstance, budget: OracleBudget) -> Result<Option<i64>, OracleError> {
    use ProblemInstance::*;
    let mut meter = Meter::new(budget);
    let m = &mut meter;
    let weight_of = |w: &[i64], mask: u32| -> i64 { (0..w.len()).filter(|&v| bit(mask, v)).map(|v| w[v]).sum() };
    match p {
        VertexCover(g) => {
            limit("vertices", g.weights.len(), BRUTE_PROBLEM_LIMIT)?;
            min_over_masks(g.weights.len(), m, |s, _| Ok(g.edges.iter().all(|&(u, v)| bit(s, u) || bit(s, v)).then(|| weight_of(&g.weights, s))))
        }
        OddCycleTransversal(g) => {
            let n = g.weights.len();
            limit("vertices", n, 12)?;
            let full = (1u32 << n) - 1;
            min_over_masks(n, m, |s, m| Ok(bipartite_by_colourings(n, &g.edges, full & !s, m)?.then(|| weight_of(&g.weights, s))))
        }
        CliqueComplement(g) => {
            let n = g.weights.len();
            limit("vertices", n, BRUTE_PROBLEM_LIMIT)?;
            let adjacent = |u: usize, v: usize| g.edges.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u));
            min_over_masks(n, m, |s, _| {
                let clique = (0..n).all(|u| bit(s, u) || (u + 1..n).all(|v| bit(s, v) || adjacent(u, v)));
                Ok(clique.then(|| weight_of(&g.weights, s)))
            })
        }
        SplitVertexDeletion(g) => {
            // Every vertex is deleted, on the clique side or on the
            // independent side; 3^n labelings.
            let n = g.weights.len();
            limit("vertices", n, BRUTE_SPLIT_LIMIT)?;
            let adjacent = |u: usize, v: usize| g.edges.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u));
            let mut best = i64::MAX;
            let mut label = vec![0u8; n];
            loop {
                m.tick()?;
                let ok = (0..n).all(|u| {
                    (u + 1..n).all(|v| match (label[u], label[v]) {
                        (1, 1) => adjacent(u, v),
                        (2, 2) => !adjacent(u, v),
                        _ => true,
                    })
                });
                if ok {
                    best = best.min((0..n).filter(|&v| label[v] == 0).map(|v| g.weights[v]).sum());
                }
                let Some(i) = (0..n).find(|&i| label[i] < 2) else { break };
                label[i] += 1;
                label[..i].iter_mut().for_each(|l| *l = 0);
            }
            Ok(Some(best))
        }
        EdgeBipartization(g) => {
            limit("vertices", g.n, BRUTE_PROBLEM_LIMIT)?;
            min_over_masks(g.n, m, |side, _| Ok(Some(g.edges.iter().filter(|e| bit(side, e.0) == bit(side, e.1)).map(|e| e.2).sum())))
        }
        DirectedMinUncut(g) => {
            limit("vertices", g.n, BRUTE_PROBLEM_LIMIT)?;
            min_over_masks(g.n, m, |s, _| Ok(Some(g.edges.iter().filter(|e| !(bit(s, e.0) && !bit(s, e.1))).map(|e| e.2).sum())))
        }
        GeneralizedVertexCover(g) => {
            limit("vertices", g.weights.len(), BRUTE_PROBLEM_LIMIT)?;
            min_over_masks(g.weights.len(), m, |s, _| {
                let edges: i64 = g.edges.iter().map(|&(u, v, d)| d[bit(s, u) as usize + bit(s, v) as usize]).sum();
                Ok(Some(weight_of(&g.weights, s) + edges))
            })
        }
        Almost2Sat(cnf) => {
            limit("variables", cnf.vars, BRUTE_PROBLEM_LIMIT)?;
            min_over_masks(cnf.vars, m, |a, _| Ok(Some((cnf.clauses.len() - satisfied(cnf, a)) as i64)))
        }
        MinSat(cnf) => {
            limit("variables", cnf.vars, BRUTE_PROBLEM_LIMIT)?;
            min_over_masks(cnf.vars, m, |a, _| Ok(Some(satisfied(cnf, a) as i64)))
        }
        Generalized2Sat { cnf, weights } => {
            limit("variables", cnf.vars, BRUTE_PROBLEM_LIMIT)?;
            min_over_masks(cnf.vars, m, |a, _| Ok((satisfied(cnf, a) == cnf.clauses.len()).then(|| weight_of(weights, a))))
        }
        AlmostBoolean2Csp(csp) => {
            limit("variables", csp.vars, BRUTE_PROBLEM_LIMIT)?;
            min_over_masks(csp.vars, m, |a, _| {
                let violated = csp
                    .constraints
                    .iter()
                    .filter(|c| {
                        let tuple = match c.scope.as_slice() {
                            [u] => bit(a, *u) as usize,
                            [u, v] => 2 * bit(a, *u) as usize + bit(a, *v) as usize,
                            _ => return false,
                        };
                        !c.allowed[tuple]
                    })
                    .count();
                Ok(Some(violated as i64))
            })
        }
    }
}

pub const BRUTE_MULTIWAY_LIMIT: usize = 20;

/// Vertices reachable from `from` avoiding `removed`.
fn component(edges: &[(usize, usize)], removed: u32, from: usize) -> u32 {
    let mut seen = 1u32 << from;
    let mut changed = true;
    while changed {
        changed = false;
        for &(u, v) in edges {
            if bit(removed, u) || bit(removed, v) {
                continue;
            }
            if bit(seen, u) != bit(seen, v) {
                seen |= 1 << u | 1 << v;
                changed = true;
            }
        }
    }
    seen
}

fn separates(edges: &[(usize, usize)], terminals: &[usize], removed: u32) -> bool {
    terminals.iter().all(|&t| {
        let reach = component(edges, removed, t);
        terminals.iter().all(|&o| o == t || !bit(reach, o))
    })
}

/// Minimum node multiway cut over all subsets of non-terminals, with the
/// first optimal cut in mask order. `None` when two terminals are adjacent.
pub fn brute_multiway(n: usize, edges: &[(usize, usize)], terminals: &[usize], budget: OracleBudget) -> Result<Option<(usize, Vec<usize>)>, OracleError> {
    limit("vertices", n, BRUTE_MULTIWAY_LIMIT)?;
    let mut meter = Meter::new(budget);
    let tmask: u32 = terminals.iter().map(|&t| 1u32 << t).sum();
    let mut best: Option<u32> = None;
    for s in 0u32..(1u32 << n) {
        meter.tick()?;
        if s & tmask != 0 || best.is_some_and(|b| b.count_ones() <= s.count_ones()) {
            continue;
        }
        if separates(edges, terminals, s) {
            best = Some(s);
        }
    }
    Ok(best.map(|s| (s.count_ones() as usize, (0..n).filter(|&v| bit(s, v)).collect())))
}

/// Every minimum isolating cut of terminal `t` with its region (the
/// component of `t` once the cut is removed). `None` when `t` is adjacent
/// to another terminal.
pub fn all_min_isolating_cuts(n: usize, edges: &[(usize, usize)], terminals: &[usize], t: usize, budget: OracleBudget) -> Result<Option<Vec<(Vec<usize>, Vec<usize>)>>, OracleError> {
    limit("vertices", n, BRUTE_MULTIWAY_LIMIT)?;
    let mut meter = Meter::new(budget);
    let tmask: u32 = terminals.iter().map(|&x| 1u32 << x).sum();
    let others = tmask & !(1 << t);
    let mut best = u32::MAX;
    let mut cuts = Vec::new();
    for s in 0u32..(1u32 << n) {
        meter.tick()?;
        if s & tmask != 0 || s.count_ones() > best {
            continue;
        }
        let region = component(edges, s, t);
        if region & others != 0 {
            continue;
        }
        if s.count_ones() < best {
            best = s.count_ones();
            cuts.clear();
        }
        let list = |m: u32| (0..n).filter(|&v| bit(m, v)).collect::<Vec<_>>();
        cuts.push((list(s), list(region)));
    }
    Ok((best != u32::MAX).then_some(cuts))
}
