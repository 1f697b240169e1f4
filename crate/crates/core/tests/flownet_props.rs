use abovelp::flownet::{reachable_from, scc_condense, Boundary, Capacity, DirectedNet, FlowState, NetBuilder};
use abovelp::HalfInt;
use proptest::prelude::*;
use std::collections::BTreeSet;
use std::sync::Arc;

const SOURCE: usize = 0;
const SINK: usize = 1;

/// Arcs as (tail, head, doubled capacity or `None` for unbounded). Arcs
/// leaving the source and entering the sink are finite, so no path is
/// unbounded.
fn arb_net() -> impl Strategy<Value = (usize, Vec<(usize, usize, Option<i64>)>)> {
    (2usize..=10).prop_flat_map(|n| {
        let arc = (0..n, 0..n, prop_oneof![4 => (0i64..=4).prop_map(Some), 1 => Just(None)]);
        (Just(n), proptest::collection::vec(arc, 0..=24))
    })
    .prop_map(|(n, arcs)| {
        let arcs = arcs
            .into_iter()
            .filter(|&(u, v, _)| u != v && u != SINK && v != SOURCE)
            .map(|(u, v, c)| (u, v, if u == SOURCE || v == SINK { Some(c.unwrap_or(4)) } else { c }))
            .collect();
        (n, arcs)
    })
}

fn build(n: usize, arcs: &[(usize, usize, Option<i64>)]) -> Arc<DirectedNet> {
    let mut b = NetBuilder::new(n);
    for &(u, v, c) in arcs {
        b.add_arc(u, v, c.map_or(Capacity::Unbounded, |c| Capacity::Finite(HalfInt::from_doubled(c))));
    }
    Arc::new(b.build(SOURCE, SINK))
}

/// Minimum over all source-side sets of the doubled cut capacity, ignoring
/// nodes in `dead`.
fn brute_min_cut(n: usize, arcs: &[(usize, usize, Option<i64>)], dead: &[usize]) -> i64 {
    let free: Vec<usize> = (2..n).filter(|v| !dead.contains(v)).collect();
    let mut best = i64::MAX;
    for mask in 0u32..(1 << free.len()) {
        let mut side = vec![false; n];
        side[SOURCE] = true;
        for (i, &v) in free.iter().enumerate() {
            side[v] = mask >> i & 1 == 1;
        }
        let mut cut = 0i64;
        for &(u, v, c) in arcs {
            if dead.contains(&u) || dead.contains(&v) || !side[u] || side[v] {
                continue;
            }
            cut = cut.saturating_add(c.unwrap_or(i64::MAX / 4));
        }
        best = best.min(cut);
    }
    best
}

fn reference_reach(n: usize, succ: &[BTreeSet<usize>], from: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(u) = stack.pop() {
        for &v in &succ[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

/// Residual arcs straight from the definition, over alive nodes.
fn reference_residual(flow: &FlowState) -> Vec<BTreeSet<usize>> {
    let net = flow.net();
    let mut succ = vec![BTreeSet::new(); net.node_count()];
    for (id, a) in net.arcs().iter().enumerate() {
        if !flow.is_alive(a.tail) || !flow.is_alive(a.head) {
            continue;
        }
        let f = flow.arc_flow(id).doubled();
        let below = match a.cap {
            Capacity::Finite(c) => f < c.doubled(),
            Capacity::Unbounded => true,
        };
        if below {
            succ[a.tail].insert(a.head);
        }
        if f > 0 {
            succ[a.head].insert(a.tail);
        }
    }
    succ
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn max_flow_equals_min_cut((n, arcs) in arb_net()) {
        let mut flow = FlowState::zero(build(n, &arcs));
        let delta = flow.augment_to_max().unwrap();
        flow.check_feasible().unwrap();
        prop_assert_eq!(delta, flow.amount());
        prop_assert_eq!(flow.amount().doubled(), brute_min_cut(n, &arcs, &[]));
        prop_assert_eq!(flow.augment_to_max().unwrap(), HalfInt::ZERO);
    }

    #[test]
    fn removal_keeps_a_feasible_flow((n, arcs) in arb_net(), picks in proptest::collection::vec(2usize..10, 1..4)) {
        let mut flow = FlowState::zero(build(n, &arcs));
        flow.augment_to_max().unwrap();
        let mut dead = Vec::new();
        for v in picks.into_iter().filter(|&v| v < n) {
            if dead.contains(&v) {
                continue;
            }
            let before = flow.amount();
            let drop = flow.remove_node_flow(v);
            dead.push(v);
            flow.check_feasible().unwrap();
            prop_assert_eq!(before - drop, flow.amount());
            prop_assert_eq!(flow.throughput(v), HalfInt::ZERO);
            flow.augment_to_max().unwrap();
            flow.check_feasible().unwrap();
            prop_assert_eq!(flow.amount().doubled(), brute_min_cut(n, &arcs, &dead));
        }
    }

    #[test]
    fn residual_matches_definition((n, arcs) in arb_net(), cap in 0i64..6) {
        let mut flow = FlowState::zero(build(n, &arcs));
        flow.augment_with_cap(Some(HalfInt::from_doubled(cap))).unwrap();
        flow.check_feasible().unwrap();
        let expected = reference_residual(&flow);
        let view = flow.residual();
        for u in 0..n {
            let got: BTreeSet<usize> = view.successors(u).collect();
            prop_assert_eq!(&got, &expected[u], "successors of {}", u);
        }
        let reach = reachable_from(&view, SOURCE);
        prop_assert_eq!(reach, reference_reach(n, &expected, SOURCE));
    }

    #[test]
    fn scc_matches_pairwise_reachability((n, arcs) in arb_net(), restrict in proptest::collection::vec(any::<bool>(), 10)) {
        let mut flow = FlowState::zero(build(n, &arcs));
        flow.augment_to_max().unwrap();
        let restricted: Vec<bool> = restrict[..n].to_vec();
        let full = reference_residual(&flow);
        let succ: Vec<BTreeSet<usize>> = (0..n)
            .map(|u| if restricted[u] { full[u].iter().copied().filter(|&v| restricted[v]).collect() } else { BTreeSet::new() })
            .collect();
        let reach: Vec<Vec<bool>> = (0..n).map(|u| reference_reach(n, &succ, u)).collect();
        let scc = scc_condense(&flow.residual(), &restricted, Boundary::Ignore);
        for u in 0..n {
            prop_assert_eq!(scc.component[u].is_some(), restricted[u]);
            for v in 0..n {
                if restricted[u] && restricted[v] {
                    let same = reach[u][v] && reach[v][u];
                    prop_assert_eq!(scc.component[u] == scc.component[v], same);
                }
            }
        }
        for c in 0..scc.len() {
            for &d in &scc.successors[c] {
                prop_assert!(c < d, "condensation arc {} -> {} against the order", c, d);
            }
            let leaves = scc.members[c].iter().any(|&u| succ[u].iter().any(|&v| scc.component[v] != Some(c)));
            prop_assert_eq!(scc.is_tail(c), !leaves);
        }
        let counted = scc_condense(&flow.residual(), &restricted, Boundary::Count);
        for c in 0..counted.len() {
            let leaves = counted.members[c].iter().any(|&u| full[u].iter().any(|&v| counted.component[v] != Some(c)));
            prop_assert_eq!(counted.is_tail(c), !leaves);
        }
    }
}
