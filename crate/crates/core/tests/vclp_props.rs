use abovelp::flownet::{scc_condense, Boundary, FlowState};
use abovelp::oracle::vc::{brute_halfint_lp_vc, brute_vc};
use abovelp::oracle::OracleBudget;
use abovelp::vcal::{reduce, solve_above_lp};
use abovelp::vclp::{dual_to_flow, left, optimal_pair, right, vertex_of, DualVc, VcFlowBundle, VcInstance, SINK, SOURCE};
use abovelp::HalfInt;
use proptest::prelude::*;
use std::collections::BTreeSet;
use std::sync::Arc;

fn budget() -> OracleBudget {
    OracleBudget::default()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = (Vec<i64>, Vec<(usize, usize)>)> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let m = pairs.len().min(25);
        (proptest::collection::vec(0i64..=4, n), proptest::sample::subsequence(pairs, 0..=m))
    })
}

fn maximized(w: &[i64], e: &[(usize, usize)]) -> VcFlowBundle {
    let inst = Arc::new(VcInstance::new(w.to_vec(), e.to_vec()).unwrap());
    let mut b = VcFlowBundle::build_network(inst);
    b.maximize().unwrap();
    b
}

fn independent_sets(n: usize, e: &[(usize, usize)]) -> impl Iterator<Item = (u32, u32)> + '_ {
    (1u32..1 << n).filter_map(move |s| {
        let nbrs = e.iter().fold(0u32, |m, &(u, v)| m | if s >> u & 1 == 1 { 1 << v } else { 0 } | if s >> v & 1 == 1 { 1 << u } else { 0 });
        (nbrs & s == 0).then_some((s, nbrs))
    })
}

fn mask_weight(w: &[i64], mask: u32) -> i64 {
    (0..w.len()).filter(|&v| mask >> v & 1 == 1).map(|v| w[v]).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn primal_and_dual_values_meet((w, e) in arb_graph(14)) {
        let b = maximized(&w, &e);
        b.flow().check_feasible().unwrap();
        let x = b.primal_from_residual();
        let y = b.flow_to_dual();
        let inst = b.instance();
        x.check(inst).unwrap();
        y.check(inst).unwrap();
        prop_assert_eq!(x.value(inst).doubled() * 2, y.value_quarters());
        let lp = brute_halfint_lp_vc(&w, &e, budget()).unwrap();
        prop_assert_eq!(x.value(inst).doubled(), lp.doubled_value);
    }

    #[test]
    fn dual_round_trip_keeps_the_value((w, e) in arb_graph(12)) {
        let inst = Arc::new(VcInstance::new(w, e).unwrap());
        let (_, y) = optimal_pair(&inst).unwrap();
        let halves = y.half_values().unwrap();
        let b = VcFlowBundle::build_network(Arc::clone(&inst));
        let flow: FlowState = dual_to_flow(&b, &halves).unwrap();
        flow.check_feasible().unwrap();
        let again = VcFlowBundle::from_dual(Arc::clone(&inst), &y).unwrap().flow_to_dual();
        prop_assert_eq!(again.value_quarters(), y.value_quarters());
        prop_assert_eq!(DualVc::from_halves(&halves), y);
    }

    #[test]
    fn tail_components_pair_a_set_with_its_neighbourhood((w, e) in arb_graph(12)) {
        let mut b = maximized(&w, &e);
        b.select_free_vertices();
        let x = b.primal_from_residual();
        b.peel_integral(&x);
        let inst = Arc::clone(b.instance());
        for v in b.live_vertices() {
            prop_assert_eq!(b.flow().throughput(left(v)), HalfInt::from_int(w[v]), "source arc of {} unsaturated", v);
            prop_assert_eq!(b.flow().throughput(right(v)), HalfInt::from_int(w[v]), "sink arc of {} unsaturated", v);
        }
        let view = b.flow().residual();
        let mut restricted = vec![true; view.node_count()];
        restricted[SOURCE] = false;
        restricted[SINK] = false;
        let scc = scc_condense(&view, &restricted, Boundary::Ignore);
        for c in (0..scc.len()).filter(|&c| scc.is_tail(c)) {
            let (mut sl, mut sr) = (BTreeSet::new(), BTreeSet::new());
            for &node in &scc.members[c] {
                let (v, is_right) = vertex_of(node);
                if is_right { sr.insert(v) } else { sl.insert(v) };
            }
            let nbrs: BTreeSet<usize> = sl.iter().flat_map(|&v| inst.neighbors(v)).filter(|&u| b.is_live(u)).collect();
            prop_assert_eq!(&nbrs, &sr, "N(S_L) != S_R");
            let ws: i64 = sl.iter().map(|&v| w[v]).sum();
            let wn: i64 = sr.iter().map(|&v| w[v]).sum();
            prop_assert_eq!(ws, wn);
        }
    }

    #[test]
    fn all_half_optimal_means_no_heavy_independent_set((w, e) in arb_graph(12)) {
        let lp = brute_halfint_lp_vc(&w, &e, budget()).unwrap();
        prop_assume!(lp.doubled_value == w.iter().sum::<i64>());
        for (s, nbrs) in independent_sets(w.len(), &e) {
            prop_assert!(mask_weight(&w, s) <= mask_weight(&w, nbrs), "w(S) > w(N(S)) for S = {:b}", s);
        }
    }

    #[test]
    fn fixing_keeps_the_optimum((w, e) in arb_graph(14)) {
        let mut b = maximized(&w, &e);
        b.select_free_vertices();
        reduce(&mut b);
        let (sub, back) = b.live_subgraph();
        let (opt, _) = brute_vc(&w, &e, budget()).unwrap();
        let (rest, _) = brute_vc(sub.weights(), sub.edges(), budget()).unwrap();
        prop_assert_eq!(opt, b.fixed_weight() + rest);
        for (s, nbrs) in independent_sets(sub.vertex_count(), sub.edges()) {
            prop_assert!(mask_weight(sub.weights(), s) < mask_weight(sub.weights(), nbrs), "tight set survives fixing: {:?}", back);
        }
    }

    #[test]
    fn cover_is_lp_plus_consumed_budget((w, e) in arb_graph(12), k in 0i64..6) {
        let inst = Arc::new(VcInstance::new(w.clone(), e.clone()).unwrap());
        let (x, y) = optimal_pair(&inst).unwrap();
        let (sol, stats) = solve_above_lp(&inst, (&x, &y), HalfInt::from_doubled(k)).unwrap();
        let (opt, _) = brute_vc(&w, &e, budget()).unwrap();
        let lp = x.value(&inst);
        prop_assert!(stats.within_bounds(HalfInt::from_doubled(k)));
        match sol {
            Some(sol) => {
                prop_assert_eq!(sol.weight, opt);
                prop_assert_eq!(sol.gap(), HalfInt::from_int(opt) - lp);
                prop_assert!(sol.gap().doubled() <= k);
                let mut mask = vec![false; w.len()];
                for &v in &sol.selected {
                    mask[v] = true;
                }
                prop_assert!(e.iter().all(|&(u, v)| mask[u] || mask[v]));
            }
            None => prop_assert!(2 * opt - lp.doubled() > k),
        }
    }
}
