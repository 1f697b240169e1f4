//! The reduction chain to vertex cover.
//!
//! Three rewriting stages, each carrying an optimal LP pair along:
//!
//! 1. every hard constraint gets an independent variable of weight `M`;
//! 2. each variable `x` splits into `x⁺ = x` and `x⁻ = X − x` so that all
//!    coefficients become +1, with a bound row `x⁺ + x⁻ ≥ X`;
//! 3. each independent variable is replaced by a three-row gadget on two
//!    fresh shared variables, leaving only hard rows `x_p + x_q ≥ c`.
//!
//! The last instance is then shifted by the floor of its half-integral LP
//! optimum; the rows that stay tight between two half-valued variables form
//! a vertex cover instance with the same integrality gap.
//!
//! `M` stays symbolic in the stage instances ([`BigWeight`]); pairs and the
//! final graph use a concrete `M₀` chosen large enough for the given pair.

use super::{concretize, Bip2Error, Bip2Instance, Constraint, Domain, LpPair, Variable};
use crate::half::{BigWeight, HalfInt};
use crate::vclp::{verify_pair, DualVc, PrimalVc, VcInstance};
use std::collections::BTreeMap;
use std::sync::Arc;

const M: BigWeight = BigWeight::M;

/// One stage instance with its transported pair and LP value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub instance: Bip2Instance,
    pub pair: LpPair,
    pub lp: HalfInt,
}

/// How a row of the split stage was rewritten when its independent variable
/// was eliminated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Gadget {
    /// A bound row `x⁺ + x⁻ ≥ X`, copied as is.
    Bound,
    /// A one-variable row whose independent variable became shared.
    Shared,
    /// A two-variable row replaced by three rows on `zi`, `zj`.
    Split,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub m0: i64,
    pub original: Stage,
    pub with_indep: Stage,
    pub monotone: Stage,
    /// The split constant `X` of each original variable.
    pub split: Vec<i64>,
    pub no_indep: Stage,
    gadgets: Vec<Gadget>,
    /// `⌊x*⌋` for every variable of the last stage.
    pub floors: Vec<i64>,
    pub vc: Arc<VcInstance>,
    pub vc_pair: (PrimalVc, DualVc),
    pub vc_lp: HalfInt,
    /// `Σ w ⌊x*⌋`: the LP value of the last stage minus that of the graph.
    pub vc_offset: i64,
}

/// An integral solution of an instance and its objective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bip2Solution {
    pub x: Vec<i64>,
    pub objective: i64,
}

fn ovf<T>(_: T) -> Bip2Error {
    Bip2Error::Overflow
}

fn to_i64(v: i128) -> Result<i64, Bip2Error> {
    v.try_into().map_err(ovf)
}

/// `M₀` for an instance with finite weights and an optimal pair.
///
/// It exceeds twice an upper bound on the optimum over the box
/// `⌊x⌋ ≤ x ≤ ⌈x⌉` around the pair (which contains an optimal solution when
/// one exists), and every dual value that a hard row or a bound row of the
/// split stage must absorb.
pub fn choose_m0(inst: &Bip2Instance, pair: &LpPair) -> Result<i64, Bip2Error> {
    let w = inst.concrete_weights(0).map_err(|_| Bip2Error::Pair("weights must be finite".into()))?;
    let d = inst.concrete_indep(0).map_err(|_| Bip2Error::Pair("weights must be finite".into()))?;
    if !inst.constant().is_finite() {
        return Err(Bip2Error::Pair("constant must be finite".into()));
    }
    let upper: Vec<i128> = inst.vars().iter().zip(&pair.x).map(|(v, x)| if v.domain == Domain::Binary { 1 } else { x.ceil().max(0) as i128 }).collect();
    let top = upper.iter().copied().max().unwrap_or(0);
    let mut ub: i128 = inst.constant().base.ceil().unsigned_abs() as i128;
    for (wi, u) in w.iter().zip(&upper) {
        ub += *wi as i128 * u;
    }
    for (con, dr) in inst.constraints().iter().zip(&d) {
        if let Some(dr) = dr {
            ub += *dr as i128 * (con.c.unsigned_abs() as i128 + 2 * top);
        }
    }
    let duals: i128 = pair.y.iter().chain(&pair.beta).map(|h| h.ceil() as i128).sum();
    to_i64((2 * ub + 1).max(duals + 1))
}

/// Stage 1: gives every hard row an independent variable of weight `M`.
pub fn add_independent_vars(inst: &Bip2Instance) -> Bip2Instance {
    let cons = inst.constraints().iter().map(|c| Constraint { indep: Some(c.indep.unwrap_or(M)), ..*c }).collect();
    Bip2Instance::from_parts(inst.vars().to_vec(), cons, inst.constant())
}

/// Split constants: 1 for binary variables, otherwise large enough to
/// exceed every right-hand side and the rounded-up LP value.
pub fn split_constants(inst: &Bip2Instance, x: &[HalfInt]) -> Vec<i64> {
    let cmax = inst.constraints().iter().map(|c| c.c.abs()).max().unwrap_or(0).max(1);
    let base = 2 * cmax + 2;
    inst.vars().iter().zip(x).map(|(v, x)| if v.domain == Domain::Binary { 1 } else { base.max(x.ceil() + 1) }).collect()
}

fn plus(i: usize) -> usize {
    2 * i
}

fn minus(i: usize) -> usize {
    2 * i + 1
}

/// Stage 2: all coefficients +1. Variable `i` becomes `x⁺ = 2i` and
/// `x⁻ = 2i + 1`; rows keep their order and are followed by one bound row
/// per variable. Expects every row to have an independent variable.
pub fn monotonize(inst: &Bip2Instance, split: &[i64]) -> Result<Bip2Instance, Bip2Error> {
    let mut vars = Vec::with_capacity(2 * inst.var_count());
    for v in inst.vars() {
        vars.push(Variable { weight: M + v.weight, domain: Domain::Nonneg });
        vars.push(Variable { weight: M, domain: Domain::Nonneg });
    }
    let mut cons = Vec::with_capacity(inst.constraints().len() + inst.var_count());
    for con in inst.constraints() {
        let d = con.indep.ok_or_else(|| Bip2Error::Pair("hard row left before splitting".into()))?;
        let mut c = con.c as i128;
        let mut lits = Vec::with_capacity(2);
        for (v, coef) in con.terms() {
            if coef < 0 {
                c += split[v] as i128;
                lits.push(minus(v));
            } else {
                lits.push(plus(v));
            }
        }
        let c = to_i64(c)?;
        cons.push(match lits.as_slice() {
            [p] => Constraint::unary(1, *p, c, Some(d)),
            [p, q] => Constraint::pair(1, *p, 1, *q, c, Some(d)),
            _ => unreachable!(),
        });
    }
    for (i, &x) in split.iter().enumerate() {
        cons.push(Constraint::pair(1, plus(i), 1, minus(i), x, None));
    }
    Ok(Bip2Instance::from_parts(vars, cons, inst.constant()))
}

fn monotonize_pair(inst: &Bip2Instance, pair: &LpPair, split: &[i64], m0: i64) -> LpPair {
    let n = inst.var_count();
    let mut x = Vec::with_capacity(2 * n);
    for i in 0..n {
        x.push(pair.x[i]);
        x.push(HalfInt::from_int(split[i]) - pair.x[i]);
    }
    let mut neg_load = vec![HalfInt::ZERO; n];
    for (con, &y) in inst.constraints().iter().zip(&pair.y) {
        for (v, coef) in con.terms() {
            if coef < 0 {
                neg_load[v] += y;
            }
        }
    }
    let mut y = pair.y.clone();
    y.extend((0..n).map(|i| HalfInt::from_int(m0) - neg_load[i] - pair.beta[i]));
    let mut z = pair.z.clone();
    z.extend(std::iter::repeat(HalfInt::ZERO).take(n));
    LpPair { x, z, y, beta: vec![HalfInt::ZERO; 2 * n] }
}

/// Stage 3: replaces independent variables by gadgets. Returns the instance
/// and, per input row, the kind of rewrite. Negative right-hand sides are
/// raised to 0, which changes no optimum since such rows never bind.
fn eliminate(inst: &Bip2Instance) -> (Bip2Instance, Vec<Gadget>) {
    let mut vars = inst.vars().to_vec();
    let mut cons = Vec::new();
    let mut gadgets = Vec::with_capacity(inst.constraints().len());
    for con in inst.constraints() {
        let Some(d) = con.indep else {
            cons.push(*con);
            gadgets.push(Gadget::Bound);
            continue;
        };
        let c = con.c.max(0);
        let zi = vars.len();
        vars.push(Variable { weight: d, domain: Domain::Nonneg });
        if con.is_unary() {
            cons.push(Constraint::pair(1, con.i, 1, zi, c, None));
            gadgets.push(Gadget::Shared);
        } else {
            let zj = vars.len();
            vars.push(Variable { weight: d, domain: Domain::Nonneg });
            cons.push(Constraint::pair(1, con.i, 1, zi, c, None));
            cons.push(Constraint::pair(1, con.j, 1, zj, c, None));
            cons.push(Constraint::pair(1, zi, 1, zj, c, None));
            gadgets.push(Gadget::Split);
        }
    }
    (Bip2Instance::from_parts(vars, cons, inst.constant()), gadgets)
}

/// Stage 3 on its own, for callers that only want the instance.
pub fn eliminate_independent(inst: &Bip2Instance) -> Bip2Instance {
    eliminate(inst).0
}

fn eliminate_pair(inst: &Bip2Instance, gadgets: &[Gadget], pair: &LpPair, m0: i64) -> Result<LpPair, Bip2Error> {
    let mut x = pair.x.clone();
    let mut y = Vec::new();
    for ((con, g), (&z, &yr)) in inst.constraints().iter().zip(gadgets).zip(pair.z.iter().zip(&pair.y)) {
        let c = HalfInt::from_int(con.c.max(0));
        match g {
            Gadget::Bound => y.push(yr),
            Gadget::Shared => {
                x.push(z);
                y.push(yr);
            }
            Gadget::Split => {
                let d = HalfInt::from_int(concretize(con.indep.expect("split rows are soft"), m0)?);
                let zi = (c - pair.x[con.i]).max(HalfInt::ZERO);
                let zj = (c - zi).max(c - pair.x[con.j]);
                x.push(zi);
                x.push(zj);
                y.extend([yr, yr, d - yr]);
            }
        }
    }
    let n = x.len();
    let m = y.len();
    Ok(LpPair { x, z: vec![HalfInt::ZERO; m], y, beta: vec![HalfInt::ZERO; n] })
}

fn stage(instance: Bip2Instance, pair: LpPair, m0: i64, what: &str) -> Result<Stage, Bip2Error> {
    let lp = pair.check(&instance, m0).map_err(|e| Bip2Error::Pair(format!("{what}: {e}")))?;
    Ok(Stage { instance, pair, lp })
}

/// The vertex cover instance of the last stage: one vertex per variable,
/// one edge per tight row between half-valued variables (parallel rows
/// merged, their duals summed).
fn binarize(inst: &Bip2Instance, pair: &LpPair, m0: i64) -> Result<(VcInstance, PrimalVc, DualVc, Vec<i64>, i64), Bip2Error> {
    let w = inst.concrete_weights(m0)?;
    let floors: Vec<i64> = pair.x.iter().map(|h| h.floor()).collect();
    let half = |v: usize| !pair.x[v].is_integral();
    let mut merged: BTreeMap<(usize, usize), HalfInt> = BTreeMap::new();
    for (con, &y) in inst.constraints().iter().zip(&pair.y) {
        let (p, q) = (con.i, con.j);
        if con.is_unary() || !half(p) || !half(q) || pair.x[p] + pair.x[q] != HalfInt::from_int(con.c) {
            continue;
        }
        *merged.entry((p.min(q), p.max(q))).or_insert(HalfInt::ZERO) += y;
    }
    let edges: Vec<(usize, usize)> = merged.keys().copied().collect();
    let duals: Vec<HalfInt> = merged.values().copied().collect();
    let offset = w.iter().zip(&floors).try_fold(0i64, |acc, (&wi, &f)| wi.checked_mul(f).and_then(|p| acc.checked_add(p))).ok_or(Bip2Error::Overflow)?;
    let vc = VcInstance::new(w, edges).map_err(|e| Bip2Error::Pair(e.to_string()))?;
    let x = PrimalVc((0..inst.var_count()).map(|v| if half(v) { HalfInt::HALF } else { HalfInt::ZERO }).collect());
    let y = DualVc::from_halves(&duals);
    Ok((vc, x, y, floors, offset))
}

/// Runs the whole chain on an instance with finite weights and an optimal
/// half-integral LP pair, checking the transported pair at every stage.
pub fn reduce_to_vc(inst: &Bip2Instance, pair: &LpPair) -> Result<ReductionTrace, Bip2Error> {
    let m0 = choose_m0(inst, pair)?;
    let original = stage(inst.clone(), pair.clone(), m0, "input pair")?;

    let i1 = add_independent_vars(inst);
    let with_indep = stage(i1, pair.clone(), m0, "independent variables")?;

    let split = split_constants(inst, &pair.x);
    let i2 = monotonize(&with_indep.instance, &split)?;
    let p2 = monotonize_pair(&with_indep.instance, &with_indep.pair, &split, m0);
    let monotone = stage(i2, p2, m0, "monotone")?;

    let (i3, gadgets) = eliminate(&monotone.instance);
    let p3 = eliminate_pair(&monotone.instance, &gadgets, &monotone.pair, m0)?;
    let no_indep = stage(i3, p3, m0, "gadgets")?;

    let (vc, x, y, floors, vc_offset) = binarize(&no_indep.instance, &no_indep.pair, m0)?;
    let vc_lp = verify_pair(&vc, &x, &y).map_err(|e| Bip2Error::Pair(format!("vertex cover: {e}")))?;
    if vc_lp + HalfInt::from_int(vc_offset) != no_indep.lp - no_indep.instance.concrete_constant(m0)? {
        return Err(Bip2Error::Pair("vertex cover LP value does not match".into()));
    }
    Ok(ReductionTrace {
        m0,
        original,
        with_indep,
        monotone,
        split,
        no_indep,
        gadgets,
        floors,
        vc: Arc::new(vc),
        vc_pair: (x, y),
        vc_lp,
        vc_offset,
    })
}

impl ReductionTrace {
    /// Maps a vertex cover of the final graph to a solution of every stage,
    /// last stage first, ending with the original instance.
    pub fn decode_stages(&self, selected: &[usize]) -> Result<[Vec<i64>; 4], Bip2Error> {
        let mut x3 = self.floors.clone();
        for &v in selected {
            x3[v] += 1;
        }
        let n = self.original.instance.var_count();
        let x2 = x3[..2 * n].to_vec();
        let mut x1 = Vec::with_capacity(n);
        for i in 0..n {
            if x2[plus(i)] + x2[minus(i)] != self.split[i] {
                return Err(Bip2Error::Decode(format!("split pair of x{i} does not sum to {}", self.split[i])));
            }
            x1.push(x2[plus(i)]);
        }
        let x0 = x1.clone();
        Ok([x3, x2, x1, x0])
    }

    /// Decodes a vertex cover of the final graph into a solution of the
    /// original instance. A cover that forces a hard row to be violated means
    /// the instance has no integral solution.
    pub fn decode(&self, selected: &[usize]) -> Result<Bip2Solution, Bip2Error> {
        let [_, _, _, x] = self.decode_stages(selected)?;
        let inst = &self.original.instance;
        for (r, con) in inst.constraints().iter().enumerate() {
            let lhs: i64 = con.terms().map(|(v, coef)| x[v] * coef).sum();
            if con.is_hard() && lhs < con.c {
                return Err(if self.hard_rows_feasible() { Bip2Error::Decode(format!("hard constraint {r} violated")) } else { Bip2Error::Infeasible });
            }
        }
        let objective = inst.evaluate(&x, self.m0)?;
        Ok(Bip2Solution { x, objective })
    }

    fn hard_rows_feasible(&self) -> bool {
        // Only used to tell an infeasible instance from an internal error.
        !self.original.instance.is_all_binary() || super::solve::hard_rows_satisfiable(&self.original.instance)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bip2::pair::compute_halfint_pair;
    use crate::bip2::tests::bin;

    fn k3_vc() -> Bip2Instance {
        let cons = [(0, 1), (1, 2), (0, 2)].iter().map(|&(i, j)| Constraint::pair(1, i, 1, j, 1, None)).collect();
        Bip2Instance::new(vec![bin(1); 3], cons).unwrap()
    }

    #[test]
    fn hard_rows_get_big_weights() {
        let i1 = add_independent_vars(&k3_vc());
        assert!(i1.constraints().iter().all(|c| c.indep == Some(M)));
        let soft = Bip2Instance::new(vec![bin(1); 2], vec![Constraint::pair(1, 0, 1, 1, 1, Some(BigWeight::int(3)))]).unwrap();
        assert_eq!(add_independent_vars(&soft), soft);
    }

    #[test]
    fn negative_coefficients_move_to_minus_copies() {
        let inst = Bip2Instance::new(vec![bin(1); 2], vec![Constraint::pair(1, 0, -1, 1, 0, Some(BigWeight::int(1)))]).unwrap();
        let i2 = monotonize(&inst, &[1, 1]).unwrap();
        assert_eq!(i2.constraints()[0], Constraint::pair(1, 0, 1, 3, 1, Some(BigWeight::int(1))));
        assert_eq!(i2.constraints()[1], Constraint::pair(1, 0, 1, 1, 1, None));
        assert_eq!(i2.vars()[0].weight, BigWeight::new(1, HalfInt::from_int(1)));
    }

    #[test]
    fn gadget_rows() {
        let inst = Bip2Instance::from_parts(vec![Variable { weight: BigWeight::int(1), domain: Domain::Nonneg }; 2], vec![Constraint::pair(1, 0, 1, 1, 1, Some(BigWeight::int(1)))], BigWeight::ZERO);
        let (i3, g) = eliminate(&inst);
        assert_eq!(g, vec![Gadget::Split]);
        assert_eq!(i3.var_count(), 4);
        let rows: Vec<(usize, usize, i64)> = i3.constraints().iter().map(|c| (c.i, c.j, c.c)).collect();
        assert_eq!(rows, vec![(0, 2, 1), (1, 3, 1), (2, 3, 1)]);
    }

    #[test]
    fn triangle_chain_keeps_the_gap() {
        let inst = k3_vc();
        let (pair, lp) = compute_halfint_pair(&inst).unwrap();
        let trace = reduce_to_vc(&inst, &pair).unwrap();
        assert_eq!(trace.original.lp, lp);
        assert_eq!(trace.with_indep.lp, lp);
        // Every vertex of the triangle is half, so the graph has edges.
        assert!(trace.vc.edge_count() > 0);
        let (opt, cover) = crate::oracle::vc::exact_vc(trace.vc.weights(), trace.vc.edges(), Default::default()).unwrap();
        let selected: Vec<usize> = (0..cover.len()).filter(|&v| cover[v]).collect();
        assert_eq!(HalfInt::from_int(opt) - trace.vc_lp, HalfInt::HALF);
        let sol = trace.decode(&selected).unwrap();
        assert_eq!(sol.objective, 2);
    }
}
