//! Optimal half-integral LP pairs for all-binary instances.
//!
//! Each variable becomes two literals, `x` and `1 − x`, each carrying a
//! large weight `M₀` that forces exactly one of them to 1. A constraint whose
//! shifted right-hand side `c + #negatives` is 1 becomes a covering edge
//! between its literals; one with a larger right-hand side is linear in the
//! literals and is paid up front. The literal cover LP is solved as a max
//! flow on its bipartite double cover.

use super::{Bip2Error, Bip2Instance, LpPair};
use crate::flownet::{reachable_from, Capacity, DirectedNet, FlowState, NetBuilder};
use crate::half::HalfInt;
use std::sync::Arc;

const SOURCE: usize = 0;
const SINK: usize = 1;

fn lnode(lit: usize) -> usize {
    2 + 2 * lit
}

fn rnode(lit: usize) -> usize {
    3 + 2 * lit
}

fn literal(var: usize, coef: i64) -> usize {
    2 * var + usize::from(coef < 0)
}

#[derive(Clone, Copy, Debug)]
enum Row {
    /// Satisfied by every binary assignment.
    Slack,
    /// Covering edge between two literals; arcs `first` and `first + 1`.
    Edge { first: usize },
    /// Covering a single literal; arcs `first` and `first + 1`.
    Single { first: usize },
    /// Paid linearly with dual `y`.
    Linear { y: i64 },
}

struct LiteralNet {
    net: Arc<DirectedNet>,
    rows: Vec<Row>,
    /// Arc of `l(P) → r(N)` for each variable; the next arc is `l(N) → r(P)`.
    consistency: Vec<usize>,
    m0: i64,
    /// LP value minus half the flow amount.
    offset: HalfInt,
}

fn overflow<T>(_: T) -> Bip2Error {
    Bip2Error::Overflow
}

fn build(inst: &Bip2Instance) -> Result<LiteralNet, Bip2Error> {
    if !inst.is_all_binary() {
        return Err(Bip2Error::PairRequired);
    }
    if inst.vars().iter().any(|v| !v.weight.is_finite()) || inst.constraints().iter().any(|c| c.indep.is_some_and(|d| !d.is_finite())) {
        return Err(Bip2Error::Pair("symbolic weights need a supplied pair".into()));
    }
    let n = inst.var_count();
    let w = inst.concrete_weights(0)?;
    let d = inst.concrete_indep(0)?;
    let s: i128 = w.iter().map(|&x| x as i128).sum::<i128>() + d.iter().flatten().map(|&x| x as i128).sum::<i128>();
    let big = 2 * s + 2;

    let mut reduction = vec![0i128; 2 * n];
    let mut linear_const: i128 = 0;
    let mut plan = Vec::with_capacity(inst.constraints().len());
    for (r, con) in inst.constraints().iter().enumerate() {
        let shifted = con.c + con.negatives();
        let cap = d[r].map_or(big, |x| x as i128);
        let kind = match (shifted, con.is_unary(), con.is_hard()) {
            (c, _, _) if c <= 0 => 0,
            (1, _, _) => 1,
            (2, false, true) | (_, _, false) => 2,
            _ => return Err(Bip2Error::Infeasible),
        };
        if kind == 2 {
            for (v, coef) in con.terms() {
                reduction[literal(v, coef)] += cap;
            }
            linear_const += shifted as i128 * cap;
        }
        plan.push((kind, cap));
    }
    let m0 = 2 * s + 2 + reduction.iter().sum::<i128>();
    let m0_i: i64 = m0.try_into().map_err(overflow)?;
    let cap = |v: i128| -> Result<Capacity, Bip2Error> {
        let v = i64::try_from(v).map_err(overflow)?;
        v.checked_mul(2).ok_or(Bip2Error::Overflow)?;
        Ok(Capacity::Finite(HalfInt::from_int(v)))
    };

    let mut b = NetBuilder::with_capacity(2 + 4 * n, 6 * n + 2 * inst.constraints().len());
    for _ in 0..4 * n {
        b.add_node();
    }
    for lit in 0..2 * n {
        let base = if lit % 2 == 0 { m0 + w[lit / 2] as i128 } else { m0 };
        b.add_arc(SOURCE, lnode(lit), cap(base - reduction[lit])?);
    }
    let mut consistency = Vec::with_capacity(n);
    for v in 0..n {
        consistency.push(b.add_arc(lnode(2 * v), rnode(2 * v + 1), Capacity::Unbounded));
        b.add_arc(lnode(2 * v + 1), rnode(2 * v), Capacity::Unbounded);
    }
    let mut rows = Vec::with_capacity(plan.len());
    for (con, &(kind, c)) in inst.constraints().iter().zip(&plan) {
        let lits: Vec<usize> = con.terms().map(|(v, coef)| literal(v, coef)).collect();
        rows.push(match kind {
            0 => Row::Slack,
            2 => Row::Linear { y: c.try_into().map_err(overflow)? },
            _ => match lits.as_slice() {
                [p, q] => {
                    let first = b.add_arc(lnode(*p), rnode(*q), cap(c)?);
                    b.add_arc(lnode(*q), rnode(*p), cap(c)?);
                    Row::Edge { first }
                }
                [p] => {
                    let first = b.add_arc(SOURCE, rnode(*p), cap(c)?);
                    b.add_arc(lnode(*p), SINK, cap(c)?);
                    Row::Single { first }
                }
                _ => unreachable!(),
            },
        });
    }
    for lit in 0..2 * n {
        let base = if lit % 2 == 0 { m0 + w[lit / 2] as i128 } else { m0 };
        b.add_arc(rnode(lit), SINK, cap(base - reduction[lit])?);
    }
    let k = inst.concrete_constant(0)?.doubled() as i128 + 2 * (linear_const - n as i128 * m0);
    let offset = HalfInt::from_doubled(k.try_into().map_err(overflow)?);
    Ok(LiteralNet { net: Arc::new(b.build(SOURCE, SINK)), rows, consistency, m0: m0_i, offset })
}

fn read_pair(inst: &Bip2Instance, ln: &LiteralNet, flow: &FlowState) -> Result<LpPair, Bip2Error> {
    let n = inst.var_count();
    let reach = reachable_from(&flow.residual(), SOURCE);
    let value = |lit: usize| HalfInt::from_doubled(i64::from(!reach[lnode(lit)]) + i64::from(reach[rnode(lit)]));
    let mut x = Vec::with_capacity(n);
    for v in 0..n {
        if value(2 * v) + value(2 * v + 1) != HalfInt::ONE {
            return Err(Bip2Error::Infeasible);
        }
        x.push(value(2 * v));
    }
    let pair_flow = |a: usize| HalfInt::from_doubled((flow.arc_flow(a) + flow.arc_flow(a + 1)).doubled() / 2);
    let mut y = Vec::with_capacity(ln.rows.len());
    let mut z = Vec::with_capacity(ln.rows.len());
    let mut neg_load = vec![HalfInt::ZERO; n];
    for (con, row) in inst.constraints().iter().zip(&ln.rows) {
        let yr = match *row {
            Row::Slack => HalfInt::ZERO,
            Row::Edge { first } | Row::Single { first } => pair_flow(first),
            Row::Linear { y } => HalfInt::from_int(y),
        };
        let lhs: HalfInt = con.terms().map(|(v, coef)| x[v] * coef).sum();
        let short = (HalfInt::from_int(con.c) - lhs).max(HalfInt::ZERO);
        if con.is_hard() && short > HalfInt::ZERO {
            return Err(Bip2Error::Infeasible);
        }
        for (v, coef) in con.terms() {
            if coef < 0 {
                neg_load[v] += yr;
            }
        }
        y.push(yr);
        z.push(if con.is_hard() { HalfInt::ZERO } else { short });
    }
    let beta = (0..n).map(|v| HalfInt::from_int(ln.m0) - pair_flow(ln.consistency[v]) - neg_load[v]).collect();
    Ok(LpPair { x, z, y, beta })
}

/// An optimal half-integral primal and dual LP solution of an all-binary
/// instance with finite weights, together with the LP optimum.
pub fn compute_halfint_pair(inst: &Bip2Instance) -> Result<(LpPair, HalfInt), Bip2Error> {
    compute_halfint_pair_bounded(inst, None)?.ok_or(Bip2Error::Overflow)
}

/// Like [`compute_halfint_pair`] but gives up with `None` once the LP
/// optimum is known to exceed `limit`.
pub fn compute_halfint_pair_bounded(inst: &Bip2Instance, limit: Option<HalfInt>) -> Result<Option<(LpPair, HalfInt)>, Bip2Error> {
    let ln = build(inst)?;
    let mut flow = FlowState::zero(Arc::clone(&ln.net));
    // The LP value is amount/2 + offset.
    let cap = limit.map(|l| (l - ln.offset) * 2);
    let out = flow.augment_with_cap(cap).map_err(|e| Bip2Error::Pair(e.to_string()))?;
    if out.exceeded {
        return Ok(None);
    }
    let pair = read_pair(inst, &ln, &flow)?;
    let value = pair.check(inst, 0)?;
    debug_assert_eq!(value.doubled(), flow.amount().doubled() / 2 + ln.offset.doubled());
    Ok(Some((pair, value)))
}
