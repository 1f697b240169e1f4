//! Node multiway cut by farthest minimum isolating cuts.
//!
//! Terminals are handled one at a time in ascending order. For the current
//! terminal `t` a vertex-capacity flow from `t` to the other terminals gives
//! the minimum isolating cut; the farthest such cut is read off the residual
//! graph, its region is contracted into `t`, and the search branches on the
//! smallest neighbour `v` of `t`: delete `v` (budget drops by one) or merge
//! `v` into `t` (the isolating cut grows by at least one). The measure
//! `2·budget − flow` drops on both sides, so the tree has at most
//! `4^k` leaves.
//!
//! Network layout: every vertex `v` has an in node, an out node and a
//! source copy. The split arc in→out has capacity one for an ordinary
//! vertex. A vertex merged into `t` gets its source copy switched on (an
//! unbounded arc from the source to its out node); a vertex merged into
//! another terminal drains into the sink. Merging and deleting only switch
//! nodes on or off, so one network per terminal serves a whole subtree.

use crate::flownet::{reaching, Capacity, FlowState, NetBuilder};
use crate::half::HalfInt;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MultiwayError {
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("terminal {0} listed twice")]
    DuplicateTerminal(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IsolatingError {
    #[error("minimum isolating cut exceeds the budget")]
    TooBig,
    #[error("terminal {0} is adjacent to another terminal")]
    Adjacent(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiwayInstance {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub terminals: Vec<usize>,
}

impl MultiwayInstance {
    /// Checks ranges and sorts the terminals; a repeated terminal is an error.
    pub fn new(n: usize, edges: Vec<(usize, usize)>, mut terminals: Vec<usize>) -> Result<Self, MultiwayError> {
        for &(u, v) in &edges {
            for x in [u, v] {
                if x >= n {
                    return Err(MultiwayError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(MultiwayError::SelfLoop(u));
            }
        }
        terminals.sort_unstable();
        if let Some(w) = terminals.windows(2).find(|w| w[0] == w[1]) {
            return Err(MultiwayError::DuplicateTerminal(w[0]));
        }
        if let Some(&t) = terminals.iter().find(|&&t| t >= n) {
            return Err(MultiwayError::VertexOutOfRange { vertex: t, n });
        }
        Ok(MultiwayInstance { n, edges, terminals })
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }
}

const NONE: usize = usize::MAX;
const SOURCE: usize = 0;
const SINK: usize = 1;

fn in_node(v: usize) -> usize {
    2 + 3 * v
}

fn out_node(v: usize) -> usize {
    3 + 3 * v
}

fn src_node(v: usize) -> usize {
    4 + 3 * v
}

/// The graph as seen by one branch: deleted vertices, and for every vertex
/// the terminal it has been merged into.
#[derive(Clone, Debug)]
struct Work {
    adj: Arc<Vec<Vec<usize>>>,
    owner: Vec<usize>,
    gone: Vec<bool>,
    cut: Vec<usize>,
    /// Terminals still to process, ascending.
    pending: VecDeque<usize>,
}

impl Work {
    fn new(inst: &MultiwayInstance) -> Self {
        let mut owner = vec![NONE; inst.n];
        for &t in &inst.terminals {
            owner[t] = t;
        }
        Work { adj: Arc::new(inst.adjacency()), owner, gone: vec![false; inst.n], cut: Vec::new(), pending: inst.terminals.iter().copied().collect() }
    }

    fn n(&self) -> usize {
        self.owner.len()
    }

    fn live_neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied().filter(move |&u| !self.gone[u])
    }

    /// Whether `v` touches a vertex merged into a terminal other than `t`.
    fn touches_other(&self, v: usize, t: usize) -> bool {
        self.live_neighbours(v).any(|u| self.owner[u] != NONE && self.owner[u] != t)
    }

    fn group_touches_other(&self, t: usize) -> bool {
        (0..self.n()).any(|v| !self.gone[v] && self.owner[v] == t && self.touches_other(v, t))
    }

    /// Vertices connected to the group of `t` avoiding `blocked`.
    fn component(&self, t: usize, blocked: &[bool]) -> Vec<usize> {
        let mut seen = vec![false; self.n()];
        let mut queue: VecDeque<usize> = (0..self.n()).filter(|&v| !self.gone[v] && self.owner[v] == t).collect();
        for &v in &queue {
            seen[v] = true;
        }
        while let Some(u) = queue.pop_front() {
            for v in self.live_neighbours(u) {
                if !seen[v] && !blocked[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        (0..self.n()).filter(|&v| seen[v]).collect()
    }

    fn neighbourhood(&self, t: usize) -> Vec<usize> {
        let mut nb: Vec<usize> = (0..self.n())
            .filter(|&v| !self.gone[v] && self.owner[v] == t)
            .flat_map(|v| self.live_neighbours(v).filter(|&u| self.owner[u] != t).collect::<Vec<_>>())
            .collect();
        nb.sort_unstable();
        nb.dedup();
        nb
    }

    /// A zero flow on a fresh network for terminal `t`.
    fn network(&self, t: usize) -> FlowState {
        let n = self.n();
        let mut b = NetBuilder::new(2 + 3 * n);
        for v in 0..n {
            b.add_arc(SOURCE, src_node(v), Capacity::Unbounded);
            b.add_arc(src_node(v), out_node(v), Capacity::Unbounded);
            match self.owner[v] {
                NONE => {
                    b.add_arc(in_node(v), out_node(v), Capacity::Finite(HalfInt::ONE));
                }
                o if o != t => {
                    b.add_arc(in_node(v), SINK, Capacity::Unbounded);
                }
                _ => {}
            }
            for &u in &self.adj[v] {
                b.add_arc(out_node(v), in_node(u), Capacity::Unbounded);
            }
        }
        let mut flow = FlowState::zero(Arc::new(b.build(SOURCE, SINK)));
        for v in 0..n {
            if self.gone[v] {
                flow.disable_node(in_node(v));
                flow.disable_node(out_node(v));
            }
            if self.gone[v] || self.owner[v] != t {
                flow.disable_node(src_node(v));
            }
        }
        flow
    }

    /// Augments up to `cap`; `false` when the flow passes it.
    fn augment(flow: &mut FlowState, cap: usize) -> bool {
        let out = flow.augment_with_cap(Some(HalfInt::from_int(cap as i64))).expect("terminal groups are never adjacent here");
        !out.exceeded
    }

    /// The farthest minimum isolating cut of `t` under a maximum flow.
    fn farthest(&self, flow: &FlowState, t: usize) -> IsolatingCutResult {
        let closing = reaching(&flow.residual(), SINK);
        let mut blocked = vec![false; self.n()];
        let cut: Vec<usize> = (0..self.n())
            .filter(|&v| !self.gone[v] && self.owner[v] == NONE && !closing[in_node(v)] && closing[out_node(v)])
            .collect();
        for &v in &cut {
            blocked[v] = true;
        }
        let region = self.component(t, &blocked);
        IsolatingCutResult { amount: flow.amount().floor() as usize, cut, region }
    }

    fn merge(&mut self, flow: &mut FlowState, v: usize, t: usize) {
        self.owner[v] = t;
        flow.revive_node(src_node(v));
    }

    fn delete(&mut self, flow: &mut FlowState, v: usize) {
        self.gone[v] = true;
        self.cut.push(v);
        flow.remove_node_flow(in_node(v));
        flow.remove_node_flow(out_node(v));
    }
}

/// A maximum isolating flow for one terminal.
#[derive(Clone, Debug)]
pub struct IsolatingFlow {
    work: Work,
    terminal: usize,
    flow: FlowState,
}

impl IsolatingFlow {
    pub fn amount(&self) -> usize {
        self.flow.amount().floor() as usize
    }

    pub fn state(&self) -> &FlowState {
        &self.flow
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatingCutResult {
    /// Cut vertices, ascending.
    pub cut: Vec<usize>,
    /// Component of the terminal once the cut is removed, ascending.
    pub region: Vec<usize>,
    pub amount: usize,
}

/// Maximum vertex-capacity flow from `t` to the other terminals, giving up
/// once it exceeds `cap`.
pub fn min_isolating_flow(inst: &MultiwayInstance, t: usize, cap: usize) -> Result<IsolatingFlow, IsolatingError> {
    let work = Work::new(inst);
    assert_eq!(work.owner.get(t), Some(&t), "{t} is not a terminal");
    if work.group_touches_other(t) {
        return Err(IsolatingError::Adjacent(t));
    }
    let mut flow = work.network(t);
    if !Work::augment(&mut flow, cap) {
        return Err(IsolatingError::TooBig);
    }
    Ok(IsolatingFlow { work, terminal: t, flow })
}

pub fn farthest_min_isolating_cut(flow: &IsolatingFlow) -> IsolatingCutResult {
    flow.work.farthest(&flow.flow, flow.terminal)
}

/// Merges `region` into `t`: `t` inherits every edge leaving the region and
/// the other region vertices become isolated. Vertex ids are kept.
pub fn contract_region(inst: &MultiwayInstance, t: usize, region: &[usize]) -> MultiwayInstance {
    let mut inside = vec![false; inst.n];
    for &v in region {
        inside[v] = true;
    }
    inside[t] = true;
    let mut edges: Vec<(usize, usize)> = inst
        .edges
        .iter()
        .filter(|&&(u, v)| !(inside[u] && inside[v]))
        .map(|&(u, v)| {
            let u = if inside[u] { t } else { u };
            let v = if inside[v] { t } else { v };
            (u.min(v), u.max(v))
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    MultiwayInstance { n: inst.n, edges, terminals: inst.terminals.clone() }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiwayStats {
    pub nodes: u64,
    pub leaves: u64,
    pub depth: u32,
    pub augmentations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiwayOutcome {
    /// A multiway cut of size at most the budget, ascending.
    pub cut: Option<Vec<usize>>,
    pub stats: MultiwayStats,
}

struct Search {
    stats: MultiwayStats,
}

impl Search {
    fn leaf(&mut self, found: Option<Vec<usize>>) -> Option<Vec<usize>> {
        self.stats.leaves += 1;
        found
    }

    fn run(&mut self, mut w: Work, mut carried: Option<FlowState>, k: usize, depth: u32) -> Option<Vec<usize>> {
        self.stats.depth = self.stats.depth.max(depth);
        loop {
            if w.pending.len() <= 1 {
                let mut cut = w.cut;
                cut.sort_unstable();
                return self.leaf(Some(cut));
            }
            let t = w.pending[0];
            if w.group_touches_other(t) {
                return self.leaf(None);
            }
            let mut flow = match carried.take() {
                Some(f) => f,
                None => {
                    let mut f = w.network(t);
                    if !Work::augment(&mut f, k) {
                        self.stats.augmentations += f.augmentations();
                        return self.leaf(None);
                    }
                    f
                }
            };
            let lambda = flow.amount().floor() as usize;
            if lambda == 0 {
                // Separated: nothing reachable from t matters any more.
                self.stats.augmentations += flow.augmentations();
                for v in w.component(t, &vec![false; w.n()]) {
                    w.gone[v] = true;
                }
                w.pending.pop_front();
                continue;
            }
            let found = w.farthest(&flow, t);
            debug_assert_eq!(found.cut.len(), lambda);
            for &r in &found.region {
                if w.owner[r] == NONE {
                    w.merge(&mut flow, r, t);
                }
            }
            debug_assert_eq!(w.farthest(&flow, t).cut, w.neighbourhood(t), "after contraction the farthest cut is N(t)");
            let v = found.cut[0];
            let measure = 2 * k as i64 - lambda as i64;
            self.stats.nodes += 1;

            let mut with_v = w.clone();
            let mut flow_with = flow.clone();
            with_v.delete(&mut flow_with, v);
            if k >= 1 && Work::augment(&mut flow_with, k - 1) {
                let child = 2 * (k as i64 - 1) - flow_with.amount().floor();
                assert!(child < measure, "measure must drop when deleting");
                if let Some(cut) = self.run(with_v, Some(flow_with), k - 1, depth + 1) {
                    return Some(cut);
                }
            } else {
                self.stats.augmentations += flow_with.augmentations();
                self.leaf(None);
            }

            if w.touches_other(v, t) {
                return self.leaf(None);
            }
            w.merge(&mut flow, v, t);
            if !Work::augment(&mut flow, k) {
                self.stats.augmentations += flow.augmentations();
                return self.leaf(None);
            }
            let grown = flow.amount().floor() as usize;
            assert!(grown > lambda, "merging a vertex of the unique minimum cut must grow the flow");
            assert!(2 * k as i64 - (grown as i64) < measure);
            return self.run(w, Some(flow), k, depth + 1);
        }
    }
}

/// A node multiway cut with at most `k` vertices, if one exists.
pub fn solve_multiway(inst: &MultiwayInstance, k: usize) -> MultiwayOutcome {
    let mut search = Search { stats: MultiwayStats::default() };
    let cut = search.run(Work::new(inst), None, k, 0);
    MultiwayOutcome { cut, stats: search.stats }
}

/// The smallest `k` admitting a cut; `None` when two terminals are
/// adjacent.
pub fn solve_multiway_auto(inst: &MultiwayInstance) -> Option<(usize, MultiwayOutcome)> {
    let w = Work::new(inst);
    if inst.terminals.iter().any(|&t| w.group_touches_other(t)) {
        return None;
    }
    (0..=inst.n).map(|k| (k, solve_multiway(inst, k))).find(|(_, out)| out.cut.is_some())
}

/// Whether removing `cut` leaves every pair of terminals disconnected.
pub fn is_multiway_cut(inst: &MultiwayInstance, cut: &[usize]) -> bool {
    let mut removed = vec![false; inst.n];
    for &v in cut {
        if v >= inst.n || inst.terminals.contains(&v) {
            return false;
        }
        removed[v] = true;
    }
    let adj = inst.adjacency();
    let mut label = vec![NONE; inst.n];
    for &t in &inst.terminals {
        if label[t] != NONE {
            return false;
        }
        label[t] = t;
        let mut stack = vec![t];
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if removed[v] || label[v] == t {
                    continue;
                }
                if label[v] != NONE {
                    return false;
                }
                label[v] = t;
                stack.push(v);
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(n: usize, edges: &[(usize, usize)], terminals: &[usize]) -> MultiwayInstance {
        MultiwayInstance::new(n, edges.to_vec(), terminals.to_vec()).unwrap()
    }

    #[test]
    fn isolating_flows() {
        let path = inst(3, &[(0, 1), (1, 2)], &[0, 2]);
        assert_eq!(min_isolating_flow(&path, 0, 5).unwrap().amount(), 1);
        assert_eq!(min_isolating_flow(&path, 0, 0).unwrap_err(), IsolatingError::TooBig);
        let two = inst(4, &[(0, 1), (1, 3), (0, 2), (2, 3)], &[0, 3]);
        assert_eq!(min_isolating_flow(&two, 0, 5).unwrap().amount(), 2);
        let touching = inst(2, &[(0, 1)], &[0, 1]);
        assert_eq!(min_isolating_flow(&touching, 0, 5).unwrap_err(), IsolatingError::Adjacent(0));
    }

    #[test]
    fn farthest_cuts() {
        let p4 = inst(4, &[(0, 1), (1, 2), (2, 3)], &[0, 3]);
        let f = min_isolating_flow(&p4, 0, 5).unwrap();
        assert_eq!(farthest_min_isolating_cut(&f), IsolatingCutResult { cut: vec![2], region: vec![0, 1], amount: 1 });
        let p3 = inst(3, &[(0, 1), (1, 2)], &[0, 2]);
        let f = min_isolating_flow(&p3, 0, 5).unwrap();
        assert_eq!(farthest_min_isolating_cut(&f).region, vec![0]);
        let star = inst(4, &[(0, 1), (0, 2), (0, 3)], &[1, 2, 3]);
        for t in 1..4 {
            let f = min_isolating_flow(&star, t, 5).unwrap();
            assert_eq!(farthest_min_isolating_cut(&f), IsolatingCutResult { cut: vec![0], region: vec![t], amount: 1 });
        }
    }

    #[test]
    fn contraction() {
        let p4 = inst(4, &[(0, 1), (1, 2), (2, 3)], &[0, 3]);
        assert_eq!(contract_region(&p4, 0, &[0, 1]).edges, vec![(0, 2), (2, 3)]);
        assert_eq!(contract_region(&p4, 0, &[0]), p4);
    }

    #[test]
    fn small_cuts() {
        let p3 = inst(3, &[(0, 1), (1, 2)], &[0, 2]);
        assert_eq!(solve_multiway(&p3, 1).cut, Some(vec![1]));
        assert_eq!(solve_multiway(&p3, 0).cut, None);
        assert_eq!(solve_multiway(&inst(2, &[(0, 1)], &[0, 1]), 5).cut, None);
        let star = inst(4, &[(0, 1), (0, 2), (0, 3)], &[1, 2, 3]);
        assert_eq!(solve_multiway(&star, 1).cut, Some(vec![0]));
        assert_eq!(solve_multiway(&star, 0).cut, None);
        assert_eq!(solve_multiway(&inst(3, &[], &[0]), 0).cut, Some(vec![]));
    }

    #[test]
    fn cut_checker() {
        let p3 = inst(3, &[(0, 1), (1, 2)], &[0, 2]);
        assert!(is_multiway_cut(&p3, &[1]));
        assert!(!is_multiway_cut(&p3, &[]));
        assert!(!is_multiway_cut(&p3, &[0]));
    }
}
