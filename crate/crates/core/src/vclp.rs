//! The vertex-cover LP as a bipartite flow network.
//!
//! Every vertex `v` gets a left copy `l_v` and a right copy `r_v`. Arcs
//! `s→l_v` and `r_v→t` have capacity `w(v)`; each edge `{u, v}` contributes
//! unbounded arcs `l_u→r_v` and `l_v→r_u`. A maximum flow is twice an optimal
//! dual, and residual reachability from `s` yields a half-integral optimal
//! primal.

use crate::flownet::{self, Boundary, Capacity, FlowError, FlowState, NetBuilder};
use crate::half::HalfInt;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VcError {
    #[error("edge {edge} is a self-loop on vertex {vertex}")]
    SelfLoop { edge: usize, vertex: usize },
    #[error("edge {edge} references vertex {vertex} but there are only {n} vertices")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("vertex {vertex} has negative weight {weight}")]
    NegativeWeight { vertex: usize, weight: i64 },
    #[error("total weight overflows the flow arithmetic")]
    Overflow,
    #[error("expected {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("dual value on edge {edge} is negative ({value})")]
    NegativeDual { edge: usize, value: HalfInt },
    #[error("dual load {load} on vertex {vertex} exceeds its weight {weight}")]
    DualOverload { vertex: usize, load: HalfInt, weight: i64 },
    #[error("primal value {value} on vertex {vertex} is not in {{0, 1/2, 1}}")]
    PrimalOutOfRange { vertex: usize, value: HalfInt },
    #[error("edge {edge} = {{{u}, {v}}} is not covered: x_u + x_v = {sum}")]
    Uncovered { edge: usize, u: usize, v: usize, sum: HalfInt },
    #[error("primal value {primal} differs from dual value {dual}")]
    ValueMismatch { primal: HalfInt, dual: HalfInt },
    #[error("dual value is not half-integral")]
    NotHalfIntegral,
    #[error(transparent)]
    Flow(#[from] FlowError),
}

/// A vertex-weighted undirected graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VcInstance {
    weights: Vec<i64>,
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    incident: Vec<Vec<usize>>,
}

impl VcInstance {
    pub fn new(weights: Vec<i64>, edges: Vec<(usize, usize)>) -> Result<Self, VcError> {
        let n = weights.len();
        for (v, &w) in weights.iter().enumerate() {
            if w < 0 {
                return Err(VcError::NegativeWeight { vertex: v, weight: w });
            }
        }
        let total = weights.iter().try_fold(0i64, |acc, &w| acc.checked_add(w)).ok_or(VcError::Overflow)?;
        // Flows are doubled and an edge may carry the full weight of both ends.
        total.checked_mul(8).ok_or(VcError::Overflow)?;
        let mut incident = vec![Vec::new(); n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(VcError::VertexOutOfRange { edge: e, vertex: x, n });
                }
            }
            if u == v {
                return Err(VcError::SelfLoop { edge: e, vertex: u });
            }
            incident[u].push(e);
            incident[v].push(e);
        }
        Ok(VcInstance { weights, edges, incident })
    }

    pub fn unit(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, VcError> {
        VcInstance::new(vec![1; n], edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, v: usize) -> i64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn total_weight(&self) -> i64 {
        self.weights.iter().sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incident[v].iter().map(move |&e| {
            let (a, b) = self.edges[e];
            if a == v {
                b
            } else {
                a
            }
        })
    }

    pub fn is_cover(&self, selected: &[bool]) -> bool {
        self.edges.iter().all(|&(u, v)| selected[u] || selected[v])
    }
}

/// Per-vertex LP values in `{0, ½, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimalVc(pub Vec<HalfInt>);

impl PrimalVc {
    pub fn all_half(n: usize) -> Self {
        PrimalVc(vec![HalfInt::HALF; n])
    }

    pub fn value(&self, inst: &VcInstance) -> HalfInt {
        self.0.iter().zip(inst.weights()).map(|(&x, &w)| x * w).sum()
    }

    pub fn check(&self, inst: &VcInstance) -> Result<(), VcError> {
        if self.0.len() != inst.vertex_count() {
            return Err(VcError::WrongLength { expected: inst.vertex_count(), got: self.0.len() });
        }
        for (v, &x) in self.0.iter().enumerate() {
            if x < HalfInt::ZERO || x > HalfInt::ONE {
                return Err(VcError::PrimalOutOfRange { vertex: v, value: x });
            }
        }
        for (e, &(u, v)) in inst.edges().iter().enumerate() {
            let sum = self.0[u] + self.0[v];
            if sum < HalfInt::ONE {
                return Err(VcError::Uncovered { edge: e, u, v, sum });
            }
        }
        Ok(())
    }
}

/// Per-edge dual values, kept in quarter units.
///
/// Duals supplied by callers are half-integral. A dual read back from an
/// arbitrary maximum flow averages two half-integral arc flows and can land
/// on a quarter, so the representation carries that resolution.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualVc {
    quarters: Vec<i64>,
}

impl DualVc {
    pub fn from_halves(values: &[HalfInt]) -> Self {
        DualVc { quarters: values.iter().map(|h| h.doubled() * 2).collect() }
    }

    pub fn zero(m: usize) -> Self {
        DualVc { quarters: vec![0; m] }
    }

    pub fn len(&self) -> usize {
        self.quarters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quarters.is_empty()
    }

    pub fn quarters(&self) -> &[i64] {
        &self.quarters
    }

    /// The value on `edge` if it is half-integral.
    pub fn get(&self, edge: usize) -> Option<HalfInt> {
        let q = self.quarters[edge];
        (q % 2 == 0).then_some(HalfInt::from_doubled(q / 2))
    }

    pub fn half_values(&self) -> Option<Vec<HalfInt>> {
        (0..self.len()).map(|e| self.get(e)).collect()
    }

    pub fn value_quarters(&self) -> i64 {
        self.quarters.iter().sum()
    }

    /// `Σ y_e` if it is half-integral.
    pub fn value(&self) -> Option<HalfInt> {
        let q = self.value_quarters();
        (q % 2 == 0).then_some(HalfInt::from_doubled(q / 2))
    }

    pub fn check(&self, inst: &VcInstance) -> Result<(), VcError> {
        if self.len() != inst.edge_count() {
            return Err(VcError::WrongLength { expected: inst.edge_count(), got: self.len() });
        }
        for (e, &q) in self.quarters.iter().enumerate() {
            if q < 0 {
                return Err(VcError::NegativeDual { edge: e, value: HalfInt::from_doubled(q / 2) });
            }
        }
        for v in 0..inst.vertex_count() {
            let load: i64 = inst.incident(v).iter().map(|&e| self.quarters[e]).sum();
            if load > inst.weight(v) * 4 {
                return Err(VcError::DualOverload { vertex: v, load: HalfInt::from_doubled(load / 2), weight: inst.weight(v) });
            }
        }
        Ok(())
    }
}

/// Checks that `(x, y)` is a feasible, half-integral pair with equal values
/// and returns that value, the LP optimum.
pub fn verify_pair(inst: &VcInstance, x: &PrimalVc, y: &DualVc) -> Result<HalfInt, VcError> {
    x.check(inst)?;
    y.check(inst)?;
    let dual = y.value().ok_or(VcError::NotHalfIntegral)?;
    y.half_values().ok_or(VcError::NotHalfIntegral)?;
    let primal = x.value(inst);
    if primal != dual {
        return Err(VcError::ValueMismatch { primal, dual });
    }
    Ok(primal)
}

pub const SOURCE: usize = 0;
pub const SINK: usize = 1;

pub fn left(v: usize) -> usize {
    2 + 2 * v
}

pub fn right(v: usize) -> usize {
    3 + 2 * v
}

/// Vertex of a non-terminal network node and whether it is the right copy.
pub fn vertex_of(node: usize) -> (usize, bool) {
    debug_assert!(node >= 2);
    ((node - 2) / 2, (node - 2) % 2 == 1)
}

/// A vertex-cover instance, its network, a maximum flow, and the vertices
/// fixed so far.
///
/// Vertices are never deleted: fixing one marks it and removes its two
/// network copies from the flow state, so node and arc ids stay stable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcFlowBundle {
    inst: Arc<VcInstance>,
    flow: FlowState,
    fixed: Vec<Option<bool>>,
    fixed_weight: i64,
}

impl VcFlowBundle {
    /// The network for `inst` carrying the zero flow.
    pub fn build_network(inst: Arc<VcInstance>) -> Self {
        let (n, m) = (inst.vertex_count(), inst.edge_count());
        let mut b = NetBuilder::with_capacity(2 * n + 2, 2 * n + 2 * m);
        for v in 0..n {
            b.add_arc(SOURCE, left(v), Capacity::Finite(HalfInt::from_int(inst.weight(v))));
        }
        for &(u, v) in inst.edges() {
            b.add_arc(left(u), right(v), Capacity::Unbounded);
            b.add_arc(left(v), right(u), Capacity::Unbounded);
        }
        for v in 0..n {
            b.add_arc(right(v), SINK, Capacity::Finite(HalfInt::from_int(inst.weight(v))));
        }
        let flow = FlowState::zero(Arc::new(b.build(SOURCE, SINK)));
        VcFlowBundle { fixed: vec![None; n], fixed_weight: 0, inst, flow }
    }

    /// The flow `f(s,l_v) = f(r_v,t) = Σ_{e∋v} y_e`, `f(l_u,r_v) = f(l_v,r_u) = y_uv`
    /// of amount `2·val(y)`.
    pub fn from_dual(inst: Arc<VcInstance>, y: &DualVc) -> Result<Self, VcError> {
        y.check(&inst)?;
        let halves = y.half_values().ok_or(VcError::NotHalfIntegral)?;
        let mut bundle = VcFlowBundle::build_network(Arc::clone(&inst));
        bundle.flow = dual_to_flow(&bundle, &halves)?;
        Ok(bundle)
    }

    pub fn instance(&self) -> &Arc<VcInstance> {
        &self.inst
    }

    pub fn flow(&self) -> &FlowState {
        &self.flow
    }

    pub fn fixed(&self) -> &[Option<bool>] {
        &self.fixed
    }

    pub fn fixed_weight(&self) -> i64 {
        self.fixed_weight
    }

    pub fn is_live(&self, v: usize) -> bool {
        self.fixed[v].is_none()
    }

    pub fn live_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.inst.vertex_count()).filter(|&v| self.is_live(v))
    }

    pub fn live_edges(&self) -> impl Iterator<Item = (usize, (usize, usize))> + '_ {
        self.inst.edges().iter().copied().enumerate().filter(|&(_, (u, v))| self.is_live(u) && self.is_live(v))
    }

    fn s_arc(&self, v: usize) -> usize {
        v
    }

    fn t_arc(&self, v: usize) -> usize {
        self.inst.vertex_count() + 2 * self.inst.edge_count() + v
    }

    fn edge_arcs(&self, e: usize) -> (usize, usize) {
        let base = self.inst.vertex_count() + 2 * e;
        (base, base + 1)
    }

    /// Current LP value: fixed weight plus half the flow amount.
    pub fn lp_value(&self) -> HalfInt {
        let a = self.flow.amount().doubled();
        debug_assert!(a % 2 == 0, "maximum flow amount should be integral");
        HalfInt::from_doubled(2 * self.fixed_weight + a / 2)
    }

    /// Augments the current flow to a maximum one; returns the increase.
    pub fn maximize(&mut self) -> Result<HalfInt, VcError> {
        Ok(self.flow.augment_to_max()?)
    }

    /// The optimal primal read off residual reachability from `s`:
    /// `0` if only `l_v` is reachable, `1` if only `r_v` is, `½` otherwise.
    /// Fixed vertices report their fixed value.
    ///
    /// Panics if the primal and dual values disagree, which means the flow
    /// was not maximum.
    pub fn primal_from_residual(&self) -> PrimalVc {
        let view = self.flow.residual();
        let reach = flownet::reachable_from(&view, SOURCE);
        let mut x = Vec::with_capacity(self.inst.vertex_count());
        let mut doubled_value = 0i64;
        for v in 0..self.inst.vertex_count() {
            let value = match self.fixed[v] {
                Some(true) => HalfInt::ONE,
                Some(false) => HalfInt::ZERO,
                None => {
                    let value = match (reach[left(v)], reach[right(v)]) {
                        (true, false) => HalfInt::ZERO,
                        (false, true) => HalfInt::ONE,
                        _ => HalfInt::HALF,
                    };
                    doubled_value += value.doubled() * self.inst.weight(v);
                    value
                }
            };
            x.push(value);
        }
        assert_eq!(
            2 * doubled_value,
            self.flow.amount().doubled(),
            "primal/dual certificate failed: flow is not maximum"
        );
        PrimalVc(x)
    }

    /// Per-edge duals from the flow: `y_uv = ½(f(l_u,r_v) + f(l_v,r_u))`.
    /// Edges with a fixed endpoint get zero.
    pub fn flow_to_dual(&self) -> DualVc {
        let quarters = (0..self.inst.edge_count())
            .map(|e| {
                let (a, b) = self.edge_arcs(e);
                self.flow.arc_flow(a).doubled() + self.flow.arc_flow(b).doubled()
            })
            .collect();
        DualVc { quarters }
    }

    fn fix(&mut self, v: usize, selected: bool) {
        debug_assert!(self.fixed[v].is_none());
        self.fixed[v] = Some(selected);
        if selected {
            self.fixed_weight += self.inst.weight(v);
        }
    }

    /// Cancels flow through both copies of `v` and removes them.
    fn drop_copies(&mut self, v: usize) -> HalfInt {
        self.flow.remove_node_flow(left(v)) + self.flow.remove_node_flow(right(v))
    }

    /// Fixes every vertex whose value in `x` is integral and restricts the
    /// flow to what remains. The remaining flow is again maximum and the
    /// all-half vector is optimal for the remaining graph.
    pub fn peel_integral(&mut self, x: &PrimalVc) -> Vec<(usize, bool)> {
        let mut fixed = Vec::new();
        for v in 0..self.inst.vertex_count() {
            if self.fixed[v].is_some() {
                continue;
            }
            if x.0[v] == HalfInt::ONE {
                fixed.push((v, true));
            } else if x.0[v] == HalfInt::ZERO {
                fixed.push((v, false));
            }
        }
        for &(v, sel) in &fixed {
            self.fix(v, sel);
            self.drop_copies(v);
        }
        debug_assert!(self.is_maximum(), "restricted flow lost maximality");
        fixed
    }

    /// Fixes every vertex of weight zero to 1. This never changes the LP or
    /// IP optimum and keeps later branching steps strictly increasing.
    pub fn select_free_vertices(&mut self) -> Vec<usize> {
        let free: Vec<usize> = self.live_vertices().filter(|&v| self.inst.weight(v) == 0).collect();
        for &v in &free {
            self.fix(v, true);
            self.drop_copies(v);
        }
        free
    }

    /// Repeatedly removes tail strongly connected components `S` of the
    /// residual graph on the live copies with `S_L ∩ S_R = ∅`, fixing `S_L`
    /// to 0 and `S_R = N(S_L)` to 1.
    ///
    /// Requires that the all-half vector is optimal (so every live source and
    /// sink arc is saturated). Runs one condensation and a reverse
    /// topological sweep with successor counting. A tail that does not
    /// qualify is never removed and so keeps blocking its ancestors.
    pub fn fix_tail_sccs(&mut self) -> Vec<(usize, bool)> {
        debug_assert!(self.sources_saturated(), "all-half vector is not optimal");
        let n = self.inst.vertex_count();
        let nodes = self.flow.net().node_count();
        let mut restricted = vec![false; nodes];
        for v in self.live_vertices() {
            restricted[left(v)] = true;
            restricted[right(v)] = true;
        }
        let dec = flownet::scc_condense(&self.flow.residual(), &restricted, Boundary::Ignore);
        let preds = dec.predecessors();
        let k = dec.len();
        let mut remaining: Vec<usize> = (0..k).map(|c| dec.successors[c].len()).collect();
        let mut dead = vec![false; k];
        let mut queue: VecDeque<usize> = (0..k).rev().filter(|&c| remaining[c] == 0).collect();
        let mut fixed = Vec::new();
        let mut in_left = vec![false; n];

        let retire = |c: usize, dead: &mut Vec<bool>, remaining: &mut Vec<usize>, queue: &mut VecDeque<usize>| {
            dead[c] = true;
            for &p in &preds[c] {
                remaining[p] -= 1;
                if remaining[p] == 0 && !dead[p] {
                    queue.push_back(p);
                }
            }
        };

        while let Some(c) = queue.pop_front() {
            if dead[c] {
                continue;
            }
            let members = &dec.members[c];
            let mut qualifies = true;
            for &node in members {
                let (v, is_right) = vertex_of(node);
                if !is_right {
                    in_left[v] = true;
                }
            }
            for &node in members {
                let (v, is_right) = vertex_of(node);
                if is_right && in_left[v] {
                    qualifies = false;
                }
            }
            for &node in members {
                in_left[vertex_of(node).0] = false;
            }
            if !qualifies {
                continue;
            }
            retire(c, &mut dead, &mut remaining, &mut queue);
            let mut mirrors = Vec::new();
            for &node in members {
                let (v, is_right) = vertex_of(node);
                self.fix(v, is_right);
                fixed.push((v, is_right));
                mirrors.push(if is_right { left(v) } else { right(v) });
            }
            // The other copies of the fixed vertices form whole components
            // that no live component points into.
            for node in mirrors {
                if let Some(d) = dec.component[node] {
                    if !dead[d] {
                        debug_assert!(dec.members[d].iter().all(|&x| self.fixed[vertex_of(x).0].is_some()));
                        retire(d, &mut dead, &mut remaining, &mut queue);
                    }
                }
            }
        }
        for &(v, _) in &fixed {
            self.drop_copies(v);
        }
        debug_assert!(self.is_maximum(), "flow lost maximality after tail removal");
        debug_assert!(self.sources_saturated());
        fixed
    }

    /// Every live source and sink arc is saturated.
    pub fn sources_saturated(&self) -> bool {
        self.live_vertices().all(|v| {
            let w = HalfInt::from_int(self.inst.weight(v));
            self.flow.arc_flow(self.s_arc(v)) == w && self.flow.arc_flow(self.t_arc(v)) == w
        })
    }

    /// Checks maximality by attempting one augmentation on a copy.
    pub fn is_maximum(&self) -> bool {
        let mut probe = self.flow.clone();
        matches!(probe.augment_to_max(), Ok(d) if d == HalfInt::ZERO)
    }

    /// The uncovered edge with the lexicographically smallest `(min, max)`
    /// endpoint pair.
    pub fn first_uncovered_edge(&self) -> Option<(usize, usize)> {
        self.live_edges().map(|(_, (u, v))| (u.min(v), u.max(v))).min()
    }

    /// Puts `v` into the cover, cancels flow through its copies and
    /// re-maximizes. Returns the augmentation amount `Δ` and the number of
    /// augmenting paths; the LP value rises by `Δ/2`.
    pub fn select_vertex(&mut self, v: usize) -> Result<(HalfInt, u64), VcError> {
        assert!(self.is_live(v), "vertex {v} is already fixed");
        self.fix(v, true);
        self.drop_copies(v);
        let before = self.flow.augmentations();
        let delta = self.flow.augment_to_max()?;
        Ok((delta, self.flow.augmentations() - before))
    }

    /// The graph induced by live vertices, with a map back to original ids.
    pub fn live_subgraph(&self) -> (VcInstance, Vec<usize>) {
        let mut index = vec![usize::MAX; self.inst.vertex_count()];
        let mut back = Vec::new();
        for v in self.live_vertices() {
            index[v] = back.len();
            back.push(v);
        }
        let weights = back.iter().map(|&v| self.inst.weight(v)).collect();
        let edges = self.live_edges().map(|(_, (u, v))| (index[u], index[v])).collect();
        (VcInstance::new(weights, edges).expect("subgraph of a valid instance"), back)
    }
}

/// Builds the flow of a half-integral dual on the bundle's network.
pub fn dual_to_flow(bundle: &VcFlowBundle, y: &[HalfInt]) -> Result<FlowState, VcError> {
    let inst = &bundle.inst;
    DualVc::from_halves(y).check(inst)?;
    let net = Arc::clone(bundle.flow.net());
    let mut flows = vec![HalfInt::ZERO; net.arc_count()];
    for (e, &(u, v)) in inst.edges().iter().enumerate() {
        let (a, b) = bundle.edge_arcs(e);
        flows[a] = y[e];
        flows[b] = y[e];
        for x in [u, v] {
            flows[bundle.s_arc(x)] += y[e];
            flows[bundle.t_arc(x)] += y[e];
        }
    }
    Ok(FlowState::from_arc_flows(net, &flows)?)
}

/// Computes a half-integral optimal pair with a maximum flow from zero.
///
/// The dual is read from an integral maximum flow, so it is half-integral.
pub fn optimal_pair(inst: &Arc<VcInstance>) -> Result<(PrimalVc, DualVc), VcError> {
    let mut bundle = VcFlowBundle::build_network(Arc::clone(inst));
    bundle.maximize()?;
    let x = bundle.primal_from_residual();
    let y = bundle.flow_to_dual();
    debug_assert!(y.half_values().is_some());
    Ok((x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(inst: VcInstance) -> Arc<VcInstance> {
        Arc::new(inst)
    }

    #[test]
    fn single_edge_network_layout() {
        let inst = arc(VcInstance::unit(2, vec![(0, 1)]).unwrap());
        let b = VcFlowBundle::build_network(inst);
        let net = b.flow().net();
        assert_eq!(net.node_count(), 6);
        let one = Capacity::Finite(HalfInt::ONE);
        let arcs: Vec<_> = net.arcs().iter().map(|a| (a.tail, a.head, a.cap)).collect();
        assert_eq!(
            arcs,
            vec![
                (SOURCE, left(0), one),
                (SOURCE, left(1), one),
                (left(0), right(1), Capacity::Unbounded),
                (left(1), right(0), Capacity::Unbounded),
                (right(0), SINK, one),
                (right(1), SINK, one),
            ]
        );
    }

    #[test]
    fn isolated_vertex_network_and_primal() {
        let inst = arc(VcInstance::unit(1, vec![]).unwrap());
        let b = VcFlowBundle::build_network(inst);
        assert_eq!(b.flow().net().arc_count(), 2);
        assert_eq!(b.primal_from_residual().0, vec![HalfInt::ZERO]);
    }

    #[test]
    fn triangle_has_six_middle_arcs() {
        let inst = arc(VcInstance::unit(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap());
        let b = VcFlowBundle::build_network(inst);
        let middle =
            b.flow().net().arcs().iter().filter(|a| a.cap == Capacity::Unbounded).count();
        assert_eq!(middle, 6);
    }

    #[test]
    fn dual_to_flow_amounts() {
        let inst = arc(VcInstance::unit(2, vec![(0, 1)]).unwrap());
        let b = VcFlowBundle::from_dual(Arc::clone(&inst), &DualVc::from_halves(&[HalfInt::ONE])).unwrap();
        assert_eq!(b.flow().amount(), HalfInt::from_int(2));
        let z = VcFlowBundle::from_dual(inst, &DualVc::zero(1)).unwrap();
        assert_eq!(z.flow().amount(), HalfInt::ZERO);

        let tri = arc(VcInstance::unit(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap());
        let y = DualVc::from_halves(&[HalfInt::HALF; 3]);
        let b = VcFlowBundle::from_dual(tri, &y).unwrap();
        assert_eq!(b.flow().amount(), HalfInt::from_int(3));
        assert!(b.sources_saturated());
        assert_eq!(b.flow_to_dual(), y);
    }

    #[test]
    fn infeasible_dual_is_reported() {
        let inst = arc(VcInstance::unit(2, vec![(0, 1)]).unwrap());
        let err = VcFlowBundle::from_dual(inst, &DualVc::from_halves(&[HalfInt::from_int(2)])).unwrap_err();
        assert!(matches!(err, VcError::DualOverload { vertex: 0, .. }));
    }

    #[test]
    fn weighted_edge_primal_and_dual() {
        let inst = arc(VcInstance::new(vec![1, 2], vec![(0, 1)]).unwrap());
        let mut b = VcFlowBundle::build_network(inst);
        b.maximize().unwrap();
        assert_eq!(b.flow().amount(), HalfInt::from_int(2));
        let reach = flownet::reachable_from(&b.flow().residual(), SOURCE);
        let set: Vec<usize> = (0..6).filter(|&i| reach[i]).collect();
        assert_eq!(set, vec![SOURCE, right(0), left(1)]);
        let x = b.primal_from_residual();
        assert_eq!(x.0, vec![HalfInt::ONE, HalfInt::ZERO]);
        assert_eq!(b.flow_to_dual().value(), Some(HalfInt::ONE));
        let fixed = b.peel_integral(&x);
        assert_eq!(fixed, vec![(0, true), (1, false)]);
        assert_eq!(b.live_vertices().count(), 0);
        assert_eq!(b.lp_value(), HalfInt::ONE);
    }

    #[test]
    fn triangle_is_all_half_and_nothing_fixes() {
        let inst = arc(VcInstance::unit(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap());
        let mut b = VcFlowBundle::build_network(inst);
        b.maximize().unwrap();
        let x = b.primal_from_residual();
        assert_eq!(x, PrimalVc::all_half(3));
        assert_eq!(x.value(b.instance()), HalfInt::from_doubled(3));
        assert!(b.peel_integral(&x).is_empty());
        assert!(b.fix_tail_sccs().is_empty());
        assert_eq!(b.live_vertices().count(), 3);
    }

    #[test]
    fn c4_is_fixed_entirely_by_tail_components() {
        let inst = arc(VcInstance::unit(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap());
        let y = DualVc::from_halves(&[HalfInt::HALF; 4]);
        let mut b = VcFlowBundle::from_dual(inst, &y).unwrap();
        let x = b.primal_from_residual();
        b.peel_integral(&x);
        let fixed = b.fix_tail_sccs();
        assert_eq!(fixed.len(), 4);
        assert_eq!(b.fixed_weight(), 2);
        let mut ones: Vec<usize> = fixed.iter().filter(|f| f.1).map(|f| f.0).collect();
        ones.sort();
        assert!(ones == vec![0, 2] || ones == vec![1, 3]);
        assert_eq!(b.live_vertices().count(), 0);
    }

    #[test]
    fn single_edge_from_half_dual_fixes_one_side() {
        let inst = arc(VcInstance::unit(2, vec![(0, 1)]).unwrap());
        let mut b = VcFlowBundle::from_dual(inst, &DualVc::from_halves(&[HalfInt::ONE])).unwrap();
        let x = b.primal_from_residual();
        b.peel_integral(&x);
        b.fix_tail_sccs();
        assert_eq!(b.fixed_weight(), 1);
        assert_eq!(b.live_vertices().count(), 0);
        assert!(b.instance().is_cover(&b.fixed().iter().map(|f| *f == Some(true)).collect::<Vec<_>>()));
    }

    #[test]
    fn triangle_remove_vertex_flow() {
        let inst = arc(VcInstance::unit(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap());
        let mut b = VcFlowBundle::build_network(inst);
        b.maximize().unwrap();
        assert_eq!(b.flow().amount(), HalfInt::from_int(3));
        let removed = b.drop_copies(0);
        assert_eq!(removed, HalfInt::from_int(2));
        assert_eq!(b.flow().amount(), HalfInt::ONE);
        b.flow().check_feasible().unwrap();
    }

    #[test]
    fn select_vertex_on_triangle_raises_lp_by_half_delta() {
        let inst = arc(VcInstance::unit(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap());
        let mut b = VcFlowBundle::from_dual(inst, &DualVc::from_halves(&[HalfInt::HALF; 3])).unwrap();
        let before = b.lp_value();
        b.fixed.iter().for_each(|f| assert!(f.is_none()));
        let (delta, _) = b.select_vertex(0).unwrap();
        assert_eq!(delta, HalfInt::ONE);
        assert_eq!(b.lp_value() - before, HalfInt::HALF);
        assert_eq!(b.lp_value(), HalfInt::from_int(2));
        assert_eq!(b.live_edges().count(), 1);
    }

    #[test]
    fn verify_pair_reports_problems() {
        let inst = VcInstance::unit(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let half = PrimalVc::all_half(3);
        let y = DualVc::from_halves(&[HalfInt::HALF; 3]);
        assert_eq!(verify_pair(&inst, &half, &y), Ok(HalfInt::from_doubled(3)));
        let y0 = DualVc::zero(3);
        assert!(matches!(verify_pair(&inst, &half, &y0), Err(VcError::ValueMismatch { .. })));
        let bad = PrimalVc(vec![HalfInt::ZERO, HalfInt::HALF, HalfInt::ONE]);
        assert!(matches!(verify_pair(&inst, &bad, &y), Err(VcError::Uncovered { edge: 0, .. })));
    }

    #[test]
    fn validation_rejects_bad_graphs() {
        assert_eq!(VcInstance::unit(2, vec![(1, 1)]), Err(VcError::SelfLoop { edge: 0, vertex: 1 }));
        assert!(matches!(VcInstance::unit(2, vec![(0, 2)]), Err(VcError::VertexOutOfRange { .. })));
        assert!(matches!(VcInstance::new(vec![-1], vec![]), Err(VcError::NegativeWeight { .. })));
    }
}
