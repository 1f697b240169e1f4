//! End-to-end solving: LP pair, chain, search on the graph, decoding.

use super::chain::{reduce_to_vc, Bip2Solution, ReductionTrace};
use super::pair::compute_halfint_pair;
use super::{Bip2Error, Bip2Instance, LpPair};
use crate::flownet::{scc_condense, Boundary, Capacity, FlowState, NetBuilder};
use crate::half::HalfInt;
use crate::vcal::{solve_above_lp, SearchStats};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct Bip2Outcome {
    /// `None` when the optimum exceeds the LP value by more than the budget.
    pub solution: Option<Bip2Solution>,
    pub lp: HalfInt,
    pub stats: SearchStats,
    pub trace: ReductionTrace,
}

#[derive(Clone, Debug)]
pub struct Bip2AutoOutcome {
    pub solution: Bip2Solution,
    pub lp: HalfInt,
    /// The smallest budget that succeeded.
    pub k: HalfInt,
    pub last: SearchStats,
    pub total: SearchStats,
    pub trace: ReductionTrace,
}

/// Whether the hard rows of an all-binary instance admit a 0/1 solution,
/// decided as 2-SAT on literals through strongly connected components.
pub fn hard_rows_satisfiable(inst: &Bip2Instance) -> bool {
    let n = inst.var_count();
    // Node 2 + 2v is "x_v = 1", 3 + 2v is "x_v = 0"; 0 and 1 are unused
    // terminals.
    let lit = |v: usize, coef: i64| 2 + 2 * v + usize::from(coef < 0);
    let neg = |l: usize| l ^ 1;
    let mut b = NetBuilder::new(2 + 2 * n);
    for con in inst.constraints().iter().filter(|c| c.is_hard()) {
        let lits: Vec<usize> = con.terms().map(|(v, coef)| lit(v, coef)).collect();
        match (con.c + con.negatives(), lits.as_slice()) {
            (c, _) if c <= 0 => {}
            (1, [p, q]) => {
                b.add_arc(neg(*p), *q, Capacity::Unbounded);
                b.add_arc(neg(*q), *p, Capacity::Unbounded);
            }
            (1, [p]) => {
                b.add_arc(neg(*p), *p, Capacity::Unbounded);
            }
            (2, [p, q]) => {
                b.add_arc(neg(*p), *p, Capacity::Unbounded);
                b.add_arc(neg(*q), *q, Capacity::Unbounded);
            }
            _ => return false,
        }
    }
    let flow = FlowState::zero(Arc::new(b.build(0, 1)));
    let view = flow.residual();
    let mut restricted = vec![true; 2 + 2 * n];
    restricted[0] = false;
    restricted[1] = false;
    let scc = scc_condense(&view, &restricted, Boundary::Ignore);
    (0..n).all(|v| scc.component[2 + 2 * v] != scc.component[3 + 2 * v])
}

fn pair_for(inst: &Bip2Instance) -> Result<LpPair, Bip2Error> {
    if !inst.is_all_binary() {
        return Err(Bip2Error::PairRequired);
    }
    if !hard_rows_satisfiable(inst) {
        return Err(Bip2Error::Infeasible);
    }
    Ok(compute_halfint_pair(inst)?.0)
}

fn vc_err(e: impl std::fmt::Display) -> Bip2Error {
    Bip2Error::Pair(e.to_string())
}

/// Solves an instance whose objective may exceed its LP value by at most
/// `k`. Binary instances get their LP pair computed; others must go through
/// [`solve_bip2_with_pair`].
pub fn solve_bip2(inst: &Bip2Instance, k: HalfInt) -> Result<Bip2Outcome, Bip2Error> {
    solve_bip2_with_pair(inst, &pair_for(inst)?, k)
}

pub fn solve_bip2_with_pair(inst: &Bip2Instance, pair: &LpPair, k: HalfInt) -> Result<Bip2Outcome, Bip2Error> {
    let trace = reduce_to_vc(inst, pair)?;
    let (x, y) = &trace.vc_pair;
    let (sol, stats) = solve_above_lp(&trace.vc, (x, y), k).map_err(vc_err)?;
    let solution = sol.map(|s| trace.decode(&s.selected)).transpose()?;
    Ok(Bip2Outcome { solution, lp: trace.original.lp, stats, trace })
}

/// Iterative deepening over `k = 0, ½, 1, …`.
pub fn solve_bip2_auto(inst: &Bip2Instance) -> Result<Bip2AutoOutcome, Bip2Error> {
    solve_bip2_auto_with_pair(inst, &pair_for(inst)?)
}

/// Like [`solve_bip2_auto`] with a caller-supplied pair. The budget stops
/// growing at `M₀/2`, past any gap a feasible instance can have; reaching it
/// means the hard rows have no integral solution.
pub fn solve_bip2_auto_with_pair(inst: &Bip2Instance, pair: &LpPair) -> Result<Bip2AutoOutcome, Bip2Error> {
    let trace = reduce_to_vc(inst, pair)?;
    let (x, y) = &trace.vc_pair;
    let mut total = SearchStats::default();
    let mut k = HalfInt::ZERO;
    while k.doubled() <= trace.m0 {
        let (sol, stats) = solve_above_lp(&trace.vc, (x, y), k).map_err(vc_err)?;
        total.absorb(&stats);
        if let Some(s) = sol {
            let solution = trace.decode(&s.selected)?;
            return Ok(Bip2AutoOutcome { solution, lp: trace.original.lp, k, last: stats, total, trace });
        }
        k += HalfInt::HALF;
    }
    Err(Bip2Error::Infeasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bip2::tests::bin;
    use crate::bip2::Constraint;

    fn k3() -> Bip2Instance {
        let cons = [(0, 1), (1, 2), (0, 2)].iter().map(|&(i, j)| Constraint::pair(1, i, 1, j, 1, None)).collect();
        Bip2Instance::new(vec![bin(1); 3], cons).unwrap()
    }

    #[test]
    fn triangle_needs_half() {
        assert!(solve_bip2(&k3(), HalfInt::ZERO).unwrap().solution.is_none());
        let out = solve_bip2(&k3(), HalfInt::HALF).unwrap();
        assert_eq!(out.solution.unwrap().objective, 2);
        let auto = solve_bip2_auto(&k3()).unwrap();
        assert_eq!(auto.k, HalfInt::HALF);
    }

    #[test]
    fn parity_conflict_is_infeasible() {
        // x0 = x1 and x0 + x1 = 1: the LP has x = ½ but no integral point.
        let cons = vec![
            Constraint::pair(1, 0, -1, 1, 0, None),
            Constraint::pair(-1, 0, 1, 1, 0, None),
            Constraint::pair(1, 0, 1, 1, 1, None),
            Constraint::pair(-1, 0, -1, 1, -1, None),
        ];
        let inst = Bip2Instance::new(vec![bin(1); 2], cons).unwrap();
        assert!(!hard_rows_satisfiable(&inst));
        assert_eq!(solve_bip2_auto(&inst).unwrap_err(), Bip2Error::Infeasible);
    }

    #[test]
    fn satisfiable_hard_rows() {
        assert!(hard_rows_satisfiable(&k3()));
        let inst = Bip2Instance::new(vec![bin(1)], vec![Constraint::unary(1, 0, 1, None), Constraint::unary(-1, 0, 0, None)]).unwrap();
        assert!(!hard_rows_satisfiable(&inst));
    }
}
