//! Vertex Cover above LP by branching on a flow that certifies the LP bound.
//!
//! Each search node first fixes every coordinate it can without loss: the
//! integral part of the residual primal, then qualifying tail components.
//! What remains has the all-half vector as its unique LP optimum, so putting
//! either endpoint of an uncovered edge into the cover raises the LP value by
//! at least ½. The budget therefore drops by at least ½ per level.

use crate::half::HalfInt;
use crate::vclp::{verify_pair, DualVc, PrimalVc, VcError, VcFlowBundle, VcInstance};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// The remaining gap budget `k`. Signed, so an overspent branch is visible
/// before it is pruned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Budget {
    pub remaining: HalfInt,
}

impl Budget {
    pub fn new(k: HalfInt) -> Self {
        Budget { remaining: k }
    }

    /// Charges an augmentation of `delta` units of flow, i.e. `delta/2` of LP.
    pub fn spend_flow(self, delta: HalfInt) -> Budget {
        let lp_gain = delta.halved().expect("augmentation amounts are integral");
        Budget { remaining: self.remaining - lp_gain }
    }

    pub fn exhausted(self) -> bool {
        self.remaining < HalfInt::ZERO
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub leaves: u64,
    pub augmentations: u64,
    pub max_depth: usize,
    pub branches: u64,
    pub pruned: u64,
}

impl SearchStats {
    pub fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.leaves += other.leaves;
        self.augmentations += other.augmentations;
        self.max_depth = self.max_depth.max(other.max_depth);
        self.branches += other.branches;
        self.pruned += other.pruned;
    }

    /// Depth at most `2k` and at most `4^k` leaves.
    pub fn within_bounds(&self, k: HalfInt) -> bool {
        let two_k = k.doubled().max(0) as u64;
        let leaf_cap = if two_k >= 64 { u64::MAX } else { 1u64 << two_k };
        (self.max_depth as u64) <= two_k && self.leaves <= leaf_cap.max(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VcSolution {
    pub selected: Vec<usize>,
    pub weight: i64,
    pub lp: HalfInt,
    pub certified: bool,
}

impl VcSolution {
    pub fn gap(&self) -> HalfInt {
        HalfInt::from_int(self.weight) - self.lp
    }

    fn certify(inst: &VcInstance, selected: Vec<usize>, lp: HalfInt) -> Self {
        let mut mask = vec![false; inst.vertex_count()];
        for &v in &selected {
            mask[v] = true;
        }
        let weight = selected.iter().map(|&v| inst.weight(v)).sum();
        VcSolution { certified: inst.is_cover(&mask), selected, weight, lp }
    }
}

/// Hooks called during the search, for instrumentation and tests.
pub trait SearchObserver {
    /// A search node after its fixing phase, right before branching.
    fn on_node(&mut self, _bundle: &VcFlowBundle, _depth: usize) {}
    /// A child produced by selecting `vertex`, which augmented by `delta`.
    fn on_branch(&mut self, _parent: &VcFlowBundle, _child: &VcFlowBundle, _vertex: usize, _delta: HalfInt) {}
}

pub struct NoObserver;

impl SearchObserver for NoObserver {}

/// The fixing phase of one search node: fix the integral coordinates of the
/// residual primal, then the qualifying tail components.
pub fn reduce(bundle: &mut VcFlowBundle) {
    let x = bundle.primal_from_residual();
    bundle.peel_integral(&x);
    bundle.fix_tail_sccs();
}

/// Selects `v` on a copy of `bundle` and charges the budget.
///
/// Panics if `v` has no live neighbour: such a vertex is fixed to 0 by the
/// reduction before branching ever sees it.
pub fn branch_fix_one(bundle: &VcFlowBundle, budget: Budget, v: usize) -> Result<(VcFlowBundle, Budget, HalfInt, u64), VcError> {
    assert!(
        bundle.instance().neighbors(v).any(|u| bundle.is_live(u)),
        "branching on vertex {v} which has no uncovered edge"
    );
    let mut child = bundle.clone();
    let (delta, paths) = child.select_vertex(v)?;
    assert!(delta > HalfInt::ZERO, "branching on {v} did not raise the LP value");
    Ok((child, budget.spend_flow(delta), delta, paths))
}

struct Search<'a, O: SearchObserver> {
    observer: &'a mut O,
    stats: SearchStats,
    initial: HalfInt,
    root_lp: HalfInt,
    /// Covers whose gap exceeds this are not wanted.
    limit: HalfInt,
    best: Option<Vec<usize>>,
}

impl<O: SearchObserver> Search<'_, O> {
    fn run(&mut self, mut bundle: VcFlowBundle, budget: Budget, depth: usize) -> Result<(), VcError> {
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        reduce(&mut bundle);
        let Some((u, v)) = bundle.first_uncovered_edge() else {
            self.stats.leaves += 1;
            let consumed = self.initial - budget.remaining;
            debug_assert_eq!(bundle.lp_value(), self.root_lp + consumed);
            debug_assert_eq!(HalfInt::from_int(bundle.fixed_weight()), bundle.lp_value());
            if consumed <= self.limit {
                self.limit = consumed - HalfInt::HALF;
                let selected = (0..bundle.fixed().len()).filter(|&x| bundle.fixed()[x] == Some(true)).collect();
                self.best = Some(selected);
            }
            return Ok(());
        };
        self.observer.on_node(&bundle, depth);
        let mut expanded = false;
        for pick in [u, v] {
            let (child, child_budget, delta, paths) = branch_fix_one(&bundle, budget, pick)?;
            self.stats.augmentations += paths;
            self.stats.branches += 1;
            self.observer.on_branch(&bundle, &child, pick, delta);
            if child_budget.exhausted() || self.initial - child_budget.remaining > self.limit {
                self.stats.pruned += 1;
                continue;
            }
            expanded = true;
            self.run(child, child_budget, depth + 1)?;
        }
        if !expanded {
            self.stats.leaves += 1;
        }
        Ok(())
    }
}

/// Finds a minimum-weight vertex cover of weight at most `lp + k`, or `None`
/// when the optimum exceeds that.
pub fn solve_above_lp(inst: &Arc<VcInstance>, pair: (&PrimalVc, &DualVc), k: HalfInt) -> Result<(Option<VcSolution>, SearchStats), VcError> {
    solve_above_lp_observed(inst, pair, k, &mut NoObserver)
}

pub fn solve_above_lp_observed<O: SearchObserver>(
    inst: &Arc<VcInstance>,
    pair: (&PrimalVc, &DualVc),
    k: HalfInt,
    observer: &mut O,
) -> Result<(Option<VcSolution>, SearchStats), VcError> {
    let lp = verify_pair(inst, pair.0, pair.1)?;
    let mut bundle = VcFlowBundle::from_dual(Arc::clone(inst), pair.1)?;
    let before = bundle.flow().augmentations();
    let extra = bundle.maximize()?;
    assert_eq!(extra, HalfInt::ZERO, "a verified optimal dual must give a maximum flow");
    bundle.select_free_vertices();
    let mut search = Search { observer, stats: SearchStats::default(), initial: k, root_lp: lp, limit: k, best: None };
    search.stats.augmentations = bundle.flow().augmentations() - before;
    if k >= HalfInt::ZERO {
        search.run(bundle, Budget::new(k), 0)?;
    }
    let stats = search.stats;
    let solution = search.best.map(|selected| {
        let sol = VcSolution::certify(inst, selected, lp);
        assert!(sol.certified, "search produced a set that is not a cover");
        sol
    });
    Ok((solution, stats))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutoOutcome {
    pub solution: VcSolution,
    /// The smallest budget that succeeded.
    pub k: HalfInt,
    /// Statistics of the successful round alone.
    pub last: SearchStats,
    /// Statistics summed over all rounds.
    pub total: SearchStats,
}

/// Iterative deepening over `k = 0, ½, 1, …` until a cover is found.
pub fn solve_auto(inst: &Arc<VcInstance>, pair: (&PrimalVc, &DualVc)) -> Result<AutoOutcome, VcError> {
    solve_auto_observed(inst, pair, &mut NoObserver)
}

pub fn solve_auto_observed<O: SearchObserver>(
    inst: &Arc<VcInstance>,
    pair: (&PrimalVc, &DualVc),
    observer: &mut O,
) -> Result<AutoOutcome, VcError> {
    let mut total = SearchStats::default();
    let mut k = HalfInt::ZERO;
    loop {
        let (solution, stats) = solve_above_lp_observed(inst, pair, k, observer)?;
        total.absorb(&stats);
        if let Some(solution) = solution {
            return Ok(AutoOutcome { solution, k, last: stats, total });
        }
        k += HalfInt::HALF;
    }
}
