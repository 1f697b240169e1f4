//! Directed s-t networks over half-integral capacities.
//!
//! A [`DirectedNet`] is immutable once built and shared between search
//! branches through an [`Arc`]. Everything that changes during a search (arc
//! flows, which nodes are still present) lives in [`FlowState`], so cloning a
//! state is a plain `O(|V| + |E|)` copy.

use crate::half::HalfInt;
use std::collections::{HashMap, VecDeque};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FlowError {
    #[error("augmenting path consists only of unbounded arcs")]
    UnboundedFlow,
    #[error("arc {arc} carries {flow} outside [0, {cap}]")]
    CapacityViolated { arc: usize, flow: HalfInt, cap: String },
    #[error("node {node}: inflow {inflow} differs from outflow {outflow}")]
    ConservationViolated { node: usize, inflow: HalfInt, outflow: HalfInt },
    #[error("cached amount {cached} differs from source outflow {actual}")]
    AmountMismatch { cached: HalfInt, actual: HalfInt },
    #[error("arc {arc} touches removed node but carries {flow}")]
    FlowOnRemovedNode { arc: usize, flow: HalfInt },
    #[error("expected {expected} arc flows, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("arithmetic overflow")]
    Overflow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Capacity {
    Finite(HalfInt),
    Unbounded,
}

impl Capacity {
    fn admits(self, flow: i64) -> bool {
        match self {
            Capacity::Finite(c) => flow <= c.doubled(),
            Capacity::Unbounded => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NetArc {
    pub tail: usize,
    pub head: usize,
    pub cap: Capacity,
}

/// Incrementally collects arcs; [`NetBuilder::build`] fixes the adjacency.
#[derive(Clone, Debug, Default)]
pub struct NetBuilder {
    nodes: usize,
    arcs: Vec<NetArc>,
}

impl NetBuilder {
    pub fn new(nodes: usize) -> Self {
        NetBuilder { nodes, arcs: Vec::new() }
    }

    pub fn with_capacity(nodes: usize, arcs: usize) -> Self {
        NetBuilder { nodes, arcs: Vec::with_capacity(arcs) }
    }

    pub fn add_node(&mut self) -> usize {
        self.nodes += 1;
        self.nodes - 1
    }

    pub fn add_arc(&mut self, tail: usize, head: usize, cap: Capacity) -> usize {
        assert!(tail < self.nodes && head < self.nodes, "arc endpoint out of range");
        if let Capacity::Finite(c) = cap {
            assert!(c.doubled() >= 0, "negative capacity");
        }
        self.arcs.push(NetArc { tail, head, cap });
        self.arcs.len() - 1
    }

    pub fn build(self, source: usize, sink: usize) -> DirectedNet {
        assert!(source < self.nodes && sink < self.nodes && source != sink);
        let n = self.nodes;
        let (out_start, out_arcs) = csr(n, self.arcs.iter().map(|a| a.tail));
        let (in_start, in_arcs) = csr(n, self.arcs.iter().map(|a| a.head));
        DirectedNet { nodes: n, arcs: self.arcs, source, sink, out_start, out_arcs, in_start, in_arcs }
    }
}

fn csr(n: usize, keys: impl Iterator<Item = usize> + Clone) -> (Vec<usize>, Vec<usize>) {
    let mut start = vec![0usize; n + 1];
    for k in keys.clone() {
        start[k + 1] += 1;
    }
    for i in 0..n {
        start[i + 1] += start[i];
    }
    let mut fill = start.clone();
    let mut list = vec![0usize; start[n]];
    for (id, k) in keys.enumerate() {
        list[fill[k]] = id;
        fill[k] += 1;
    }
    (start, list)
}

/// A directed network with distinguished source and sink.
///
/// Both outgoing and incoming arc lists are kept (in insertion order) so the
/// residual graph can be walked without materializing reverse arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedNet {
    nodes: usize,
    arcs: Vec<NetArc>,
    source: usize,
    sink: usize,
    out_start: Vec<usize>,
    out_arcs: Vec<usize>,
    in_start: Vec<usize>,
    in_arcs: Vec<usize>,
}

impl DirectedNet {
    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arc(&self, id: usize) -> NetArc {
        self.arcs[id]
    }

    pub fn arcs(&self) -> &[NetArc] {
        &self.arcs
    }

    pub fn out_arcs(&self, node: usize) -> &[usize] {
        &self.out_arcs[self.out_start[node]..self.out_start[node + 1]]
    }

    pub fn in_arcs(&self, node: usize) -> &[usize] {
        &self.in_arcs[self.in_start[node]..self.in_start[node + 1]]
    }
}

/// Outcome of a (possibly capped) augmentation run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Augmented {
    pub delta: HalfInt,
    /// Set when augmentation stopped because the amount passed the cap.
    pub exceeded: bool,
}

/// A feasible s-t flow on a shared network, with a mask of removed nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowState {
    net: Arc<DirectedNet>,
    flow: Vec<i64>,
    alive: Vec<bool>,
    amount: HalfInt,
    augmentations: u64,
}

impl FlowState {
    pub fn zero(net: Arc<DirectedNet>) -> Self {
        let (m, n) = (net.arc_count(), net.node_count());
        FlowState { net, flow: vec![0; m], alive: vec![true; n], amount: HalfInt::ZERO, augmentations: 0 }
    }

    /// Builds a state from explicit arc flows and validates it.
    pub fn from_arc_flows(net: Arc<DirectedNet>, flows: &[HalfInt]) -> Result<Self, FlowError> {
        if flows.len() != net.arc_count() {
            return Err(FlowError::WrongLength { expected: net.arc_count(), got: flows.len() });
        }
        let mut state = FlowState::zero(net);
        for (slot, f) in state.flow.iter_mut().zip(flows) {
            *slot = f.doubled();
        }
        state.amount = state.source_outflow();
        state.check_feasible()?;
        Ok(state)
    }

    pub fn net(&self) -> &Arc<DirectedNet> {
        &self.net
    }

    pub fn amount(&self) -> HalfInt {
        self.amount
    }

    pub fn arc_flow(&self, arc: usize) -> HalfInt {
        HalfInt::from_doubled(self.flow[arc])
    }

    pub fn is_alive(&self, node: usize) -> bool {
        self.alive[node]
    }

    pub fn alive_mask(&self) -> &[bool] {
        &self.alive
    }

    /// Number of successful augmenting paths pushed through this state.
    pub fn augmentations(&self) -> u64 {
        self.augmentations
    }

    /// Residual capacity of `arc` in its forward direction; `None` if unbounded.
    fn forward_room(&self, arc: usize) -> Option<i64> {
        match self.net.arcs[arc].cap {
            Capacity::Finite(c) => Some(c.doubled() - self.flow[arc]),
            Capacity::Unbounded => None,
        }
    }

    fn source_outflow(&self) -> HalfInt {
        let s = self.net.source;
        let out: i64 = self.net.out_arcs(s).iter().map(|&a| self.flow[a]).sum();
        let inn: i64 = self.net.in_arcs(s).iter().map(|&a| self.flow[a]).sum();
        HalfInt::from_doubled(out - inn)
    }

    /// Flow entering `node`.
    pub fn throughput(&self, node: usize) -> HalfInt {
        HalfInt::from_doubled(self.net.in_arcs(node).iter().map(|&a| self.flow[a]).sum())
    }

    /// Verifies capacity bounds, conservation, the cached amount, and that
    /// removed nodes carry no flow.
    pub fn check_feasible(&self) -> Result<(), FlowError> {
        let net = &*self.net;
        for (id, arc) in net.arcs.iter().enumerate() {
            let f = self.flow[id];
            if f < 0 || !arc.cap.admits(f) {
                let cap = match arc.cap {
                    Capacity::Finite(c) => c.to_string(),
                    Capacity::Unbounded => "inf".into(),
                };
                return Err(FlowError::CapacityViolated { arc: id, flow: HalfInt::from_doubled(f), cap });
            }
            if f != 0 && !(self.alive[arc.tail] && self.alive[arc.head]) {
                return Err(FlowError::FlowOnRemovedNode { arc: id, flow: HalfInt::from_doubled(f) });
            }
        }
        for v in 0..net.nodes {
            if v == net.source || v == net.sink {
                continue;
            }
            let inflow = self.throughput(v);
            let outflow = HalfInt::from_doubled(net.out_arcs(v).iter().map(|&a| self.flow[a]).sum());
            if inflow != outflow {
                return Err(FlowError::ConservationViolated { node: v, inflow, outflow });
            }
        }
        let actual = self.source_outflow();
        if actual != self.amount {
            return Err(FlowError::AmountMismatch { cached: self.amount, actual });
        }
        let t = net.sink;
        let into_sink: i64 = net.in_arcs(t).iter().map(|&a| self.flow[a]).sum::<i64>()
            - net.out_arcs(t).iter().map(|&a| self.flow[a]).sum::<i64>();
        if into_sink != actual.doubled() {
            return Err(FlowError::AmountMismatch { cached: self.amount, actual: HalfInt::from_doubled(into_sink) });
        }
        Ok(())
    }

    pub fn residual(&self) -> ResidualView<'_> {
        ResidualView { state: self }
    }

    /// Augments along depth-first residual paths until none remains.
    pub fn augment_to_max(&mut self) -> Result<HalfInt, FlowError> {
        self.augment_with_cap(None).map(|a| a.delta)
    }

    /// Like [`FlowState::augment_to_max`] but stops as soon as the amount
    /// exceeds `cap`.
    pub fn augment_with_cap(&mut self, cap: Option<HalfInt>) -> Result<Augmented, FlowError> {
        let start = self.amount;
        let n = self.net.nodes;
        let mut mark = vec![0u32; n];
        let mut pos = vec![0usize; n];
        let mut parent: Vec<(usize, bool)> = vec![(usize::MAX, true); n];
        let mut stamp = 0u32;
        loop {
            if let Some(c) = cap {
                if self.amount > c {
                    return Ok(Augmented { delta: self.amount - start, exceeded: true });
                }
            }
            stamp += 1;
            if !self.find_path(stamp, &mut mark, &mut pos, &mut parent) {
                return Ok(Augmented { delta: self.amount - start, exceeded: false });
            }
            self.push_along(&parent)?;
        }
    }

    /// Iterative DFS from the source; arcs are tried outgoing-first, each list
    /// in insertion order.
    fn find_path(&self, stamp: u32, mark: &mut [u32], pos: &mut [usize], parent: &mut [(usize, bool)]) -> bool {
        let net = &*self.net;
        let (s, t) = (net.source, net.sink);
        if !self.alive[s] || !self.alive[t] {
            return false;
        }
        let mut stack = vec![s];
        mark[s] = stamp;
        pos[s] = 0;
        while let Some(&u) = stack.last() {
            let outs = net.out_arcs(u);
            let ins = net.in_arcs(u);
            let mut advanced = false;
            while pos[u] < outs.len() + ins.len() {
                let i = pos[u];
                pos[u] += 1;
                let (arc, forward, v) = if i < outs.len() {
                    let a = outs[i];
                    (a, true, net.arcs[a].head)
                } else {
                    let a = ins[i - outs.len()];
                    (a, false, net.arcs[a].tail)
                };
                if !self.alive[v] || mark[v] == stamp {
                    continue;
                }
                let open = if forward { self.forward_room(arc).map_or(true, |r| r > 0) } else { self.flow[arc] > 0 };
                if !open {
                    continue;
                }
                mark[v] = stamp;
                pos[v] = 0;
                parent[v] = (arc, forward);
                if v == t {
                    return true;
                }
                stack.push(v);
                advanced = true;
                break;
            }
            if !advanced {
                stack.pop();
            }
        }
        false
    }

    fn push_along(&mut self, parent: &[(usize, bool)]) -> Result<(), FlowError> {
        let net = Arc::clone(&self.net);
        let (s, t) = (net.source, net.sink);
        let mut bottleneck: Option<i64> = None;
        let mut v = t;
        while v != s {
            let (arc, forward) = parent[v];
            let room = if forward { self.forward_room(arc) } else { Some(self.flow[arc]) };
            if let Some(r) = room {
                bottleneck = Some(bottleneck.map_or(r, |b| b.min(r)));
            }
            v = if forward { net.arcs[arc].tail } else { net.arcs[arc].head };
        }
        let b = bottleneck.ok_or(FlowError::UnboundedFlow)?;
        debug_assert!(b > 0);
        let mut v = t;
        while v != s {
            let (arc, forward) = parent[v];
            if forward {
                self.flow[arc] += b;
                v = net.arcs[arc].tail;
            } else {
                self.flow[arc] -= b;
                v = net.arcs[arc].head;
            }
        }
        self.amount = self.amount.checked_add(HalfInt::from_doubled(b)).ok_or(FlowError::Overflow)?;
        self.augmentations += 1;
        Ok(())
    }

    /// Cancels every unit of flow through `node` along whole source-sink
    /// paths (and cycles), then removes the node. Returns the decrease of the
    /// amount.
    ///
    /// Each cancellation walks backward to the source and forward to the sink
    /// over positive-flow arcs, so on networks whose flow paths are short (as
    /// in the bipartite vertex-cover network) this costs `O(degree)`.
    pub fn remove_node_flow(&mut self, node: usize) -> HalfInt {
        let net = Arc::clone(&self.net);
        assert!(node != net.source && node != net.sink, "cannot remove source or sink");
        let before = self.amount;
        let mut in_ptr: HashMap<usize, usize> = HashMap::new();
        let mut out_ptr: HashMap<usize, usize> = HashMap::new();
        while self.throughput(node).doubled() > 0 {
            let back = self.walk(node, net.source, false, &mut in_ptr);
            let fwd = match back {
                Walk::Path(_) => self.walk(node, net.sink, true, &mut out_ptr),
                Walk::CycleCancelled => continue,
            };
            let (Walk::Path(back), Walk::Path(fwd)) = (back, fwd) else { continue };
            let b = back.iter().chain(fwd.iter()).map(|&a| self.flow[a]).min().expect("non-empty path");
            for &a in back.iter().chain(fwd.iter()) {
                self.flow[a] -= b;
            }
            self.amount -= HalfInt::from_doubled(b);
        }
        self.alive[node] = false;
        before - self.amount
    }

    /// Follows positive-flow arcs from `start` (backward when `forward` is
    /// false) until reaching `goal`. A repeated node closes a flow cycle,
    /// which is cancelled in place.
    fn walk(&mut self, start: usize, goal: usize, forward: bool, ptr: &mut HashMap<usize, usize>) -> Walk {
        let net = Arc::clone(&self.net);
        let mut path: Vec<usize> = Vec::new();
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut cur = start;
        seen.insert(cur, 0);
        while cur != goal {
            let list = if forward { net.out_arcs(cur) } else { net.in_arcs(cur) };
            let p = ptr.entry(cur).or_insert(0);
            while *p < list.len() && self.flow[list[*p]] == 0 {
                *p += 1;
            }
            let arc = list[*p];
            path.push(arc);
            cur = if forward { net.arcs[arc].head } else { net.arcs[arc].tail };
            if let Some(&idx) = seen.get(&cur) {
                let cycle = &path[idx..];
                let b = cycle.iter().map(|&a| self.flow[a]).min().expect("non-empty cycle");
                for &a in cycle {
                    self.flow[a] -= b;
                }
                return Walk::CycleCancelled;
            }
            seen.insert(cur, path.len());
        }
        Walk::Path(path)
    }

    /// Removes a node that carries no flow (or whose flow was already cancelled).
    pub fn disable_node(&mut self, node: usize) {
        debug_assert_eq!(self.throughput(node).doubled(), 0);
        self.alive[node] = false;
    }

    /// Brings a removed node back. It carries no flow, so the state stays
    /// feasible; only capacities grow.
    pub fn revive_node(&mut self, node: usize) {
        self.alive[node] = true;
    }
}

enum Walk {
    Path(Vec<usize>),
    CycleCancelled,
}

/// The residual graph of a flow, derived on the fly from the arc flows.
///
/// Arc `(u, v)` is present iff some original arc `u→v` has `f < c`, or some
/// original arc `v→u` has `f > 0`. Removed nodes are skipped.
#[derive(Clone, Copy)]
pub struct ResidualView<'a> {
    state: &'a FlowState,
}

impl<'a> ResidualView<'a> {
    pub fn node_count(&self) -> usize {
        self.state.net.nodes
    }

    pub fn is_alive(&self, node: usize) -> bool {
        self.state.alive[node]
    }

    /// Heads of residual arcs leaving `u` (with multiplicity).
    pub fn successors(&self, u: usize) -> impl Iterator<Item = usize> + 'a {
        let st = self.state;
        let net = &*st.net;
        let fwd = net
            .out_arcs(u)
            .iter()
            .filter(move |&&a| st.forward_room(a).map_or(true, |r| r > 0))
            .map(move |&a| net.arcs[a].head);
        let back = net.in_arcs(u).iter().filter(move |&&a| st.flow[a] > 0).map(move |&a| net.arcs[a].tail);
        fwd.chain(back).filter(move |&v| st.alive[v])
    }

    /// Tails of residual arcs entering `v` (with multiplicity).
    pub fn predecessors(&self, v: usize) -> impl Iterator<Item = usize> + 'a {
        let st = self.state;
        let net = &*st.net;
        let fwd = net
            .in_arcs(v)
            .iter()
            .filter(move |&&a| st.forward_room(a).map_or(true, |r| r > 0))
            .map(move |&a| net.arcs[a].tail);
        let back = net.out_arcs(v).iter().filter(move |&&a| st.flow[a] > 0).map(move |&a| net.arcs[a].head);
        fwd.chain(back).filter(move |&u| st.alive[u])
    }

    /// All residual arcs as `(tail, head)` pairs; test helper.
    pub fn arc_list(&self) -> Vec<(usize, usize)> {
        (0..self.node_count())
            .filter(|&u| self.is_alive(u))
            .flat_map(|u| self.successors(u).map(move |v| (u, v)))
            .collect()
    }
}

/// Nodes reachable from `origin` along residual arcs.
pub fn reachable_from(view: &ResidualView<'_>, origin: usize) -> Vec<bool> {
    search(view, origin, true)
}

/// Nodes from which `target` is reachable along residual arcs.
pub fn reaching(view: &ResidualView<'_>, target: usize) -> Vec<bool> {
    search(view, target, false)
}

fn search(view: &ResidualView<'_>, origin: usize, forward: bool) -> Vec<bool> {
    let mut seen = vec![false; view.node_count()];
    if !view.is_alive(origin) {
        return seen;
    }
    seen[origin] = true;
    let mut queue = VecDeque::from([origin]);
    while let Some(u) = queue.pop_front() {
        let next: Box<dyn Iterator<Item = usize>> =
            if forward { Box::new(view.successors(u)) } else { Box::new(view.predecessors(u)) };
        for v in next {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

/// How arcs leaving the restricted node set affect tail status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    /// Arcs to nodes outside the set do not exist for this decomposition.
    Ignore,
    /// Arcs to nodes outside the set keep a component from being a tail.
    Count,
}

/// Strongly connected components of a residual graph restricted to a node set.
#[derive(Clone, Debug)]
pub struct SccDecomposition {
    /// Component id per node, `None` outside the restricted set.
    pub component: Vec<Option<usize>>,
    /// Members of each component; ids follow a topological order of the
    /// condensation (arcs only go from lower to higher ids).
    pub members: Vec<Vec<usize>>,
    /// Condensation arcs out of each component, with multiplicity.
    pub successors: Vec<Vec<usize>>,
    /// Arcs from each component to nodes outside the set.
    pub external_out: Vec<usize>,
    boundary: Boundary,
}

impl SccDecomposition {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn successor_count(&self, c: usize) -> usize {
        self.successors[c].len()
            + match self.boundary {
                Boundary::Ignore => 0,
                Boundary::Count => self.external_out[c],
            }
    }

    pub fn is_tail(&self, c: usize) -> bool {
        self.successor_count(c) == 0
    }

    /// Predecessor lists of the condensation, with multiplicity.
    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut preds = vec![Vec::new(); self.len()];
        for (c, succ) in self.successors.iter().enumerate() {
            for &d in succ {
                preds[d].push(c);
            }
        }
        preds
    }
}

/// Tarjan's algorithm, iterative, over the residual graph induced by
/// `restricted` (and alive nodes).
pub fn scc_condense(view: &ResidualView<'_>, restricted: &[bool], boundary: Boundary) -> SccDecomposition {
    let n = view.node_count();
    let inside = |v: usize| restricted[v] && view.is_alive(v);
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comp_rev: Vec<Option<usize>> = vec![None; n];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0usize;
    let succ_of = |u: usize| -> Vec<usize> { view.successors(u).filter(|&v| inside(v)).collect() };

    for root in 0..n {
        if !inside(root) || index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, succ_of(root), 0));
        while let Some(frame) = call.last_mut() {
            let u = frame.0;
            if frame.2 < frame.1.len() {
                let v = frame.1[frame.2];
                frame.2 += 1;
                if index[v] == UNSEEN {
                    index[v] = counter;
                    low[v] = counter;
                    counter += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    let s = succ_of(v);
                    call.push((v, s, 0));
                } else if on_stack[v] {
                    low[u] = low[u].min(index[v]);
                }
            } else {
                call.pop();
                if let Some(parent) = call.last() {
                    let p = parent.0;
                    low[p] = low[p].min(low[u]);
                }
                if low[u] == index[u] {
                    let id = groups.len();
                    let mut group = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp_rev[w] = Some(id);
                        group.push(w);
                        if w == u {
                            break;
                        }
                    }
                    group.sort_unstable();
                    groups.push(group);
                }
            }
        }
    }

    // Tarjan emits sink components first; flip to topological order.
    let k = groups.len();
    let component: Vec<Option<usize>> = comp_rev.iter().map(|c| c.map(|c| k - 1 - c)).collect();
    groups.reverse();
    let mut successors = vec![Vec::new(); k];
    let mut external_out = vec![0usize; k];
    for (c, group) in groups.iter().enumerate() {
        for &u in group {
            for v in view.successors(u) {
                match component[v] {
                    Some(d) if d != c => successors[c].push(d),
                    Some(_) => {}
                    None => external_out[c] += 1,
                }
            }
        }
    }
    SccDecomposition { component, members: groups, successors, external_out, boundary }
}
