use abovelp::multiway::{contract_region, farthest_min_isolating_cut, is_multiway_cut, min_isolating_flow, solve_multiway, solve_multiway_auto, IsolatingError, MultiwayInstance};
use abovelp::oracle::gen::{random_edges, random_terminals, rng};
use abovelp::oracle::problems::{all_min_isolating_cuts, brute_multiway};
use abovelp::oracle::OracleBudget;
use rand::Rng;

fn random_instance<R: Rng>(r: &mut R, max_n: usize) -> MultiwayInstance {
    let n = r.gen_range(2..=max_n);
    let m = r.gen_range(0..=(n * (n - 1) / 2).min(2 * n));
    let t = r.gen_range(1..=4.min(n));
    MultiwayInstance::new(n, random_edges(r, n, m), random_terminals(r, n, t)).unwrap()
}

#[test]
fn matches_brute_force() {
    let mut r = rng(81);
    let mut with_cut = 0;
    let mut total = 0;
    while with_cut < 300 || total < 400 {
        total += 1;
        let inst = random_instance(&mut r, 12);
        let brute = brute_multiway(inst.n, &inst.edges, &inst.terminals, OracleBudget::default()).unwrap();
        let auto = solve_multiway_auto(&inst);
        match (&brute, &auto) {
            (None, None) => {}
            (Some((size, _)), Some((k, out))) => {
                with_cut += 1;
                assert_eq!(size, k, "{inst:?}");
                let cut = out.cut.as_ref().unwrap();
                assert!(cut.len() <= *k && is_multiway_cut(&inst, cut), "{inst:?}");
                assert!(out.stats.leaves <= 4u64.pow(*k as u32) && out.stats.depth as usize <= 2 * k, "{inst:?}: {:?}", out.stats);
                if *k > 0 {
                    assert_eq!(solve_multiway(&inst, k - 1).cut, None, "{inst:?}");
                }
            }
            _ => panic!("{inst:?}: brute {brute:?} vs solver {auto:?}"),
        }
    }
}

#[test]
fn farthest_cut_is_the_unique_largest_region() {
    let mut r = rng(82);
    let mut checked = 0;
    while checked < 300 {
        let inst = random_instance(&mut r, 10);
        if inst.terminals.len() < 2 {
            continue;
        }
        for &t in &inst.terminals {
            let all = all_min_isolating_cuts(inst.n, &inst.edges, &inst.terminals, t, OracleBudget::default()).unwrap();
            let flow = min_isolating_flow(&inst, t, inst.n);
            let (Some(all), Ok(flow)) = (all, flow) else {
                assert!(matches!(min_isolating_flow(&inst, t, inst.n), Err(IsolatingError::Adjacent(_))));
                continue;
            };
            checked += 1;
            let got = farthest_min_isolating_cut(&flow);
            assert_eq!(got.amount, all[0].0.len());
            assert_eq!(got.cut.len(), got.amount);
            let (cut, region) = all.iter().find(|(c, _)| *c == got.cut).expect("returned cut is a minimum isolating cut");
            assert_eq!(*region, got.region);
            for (c, reg) in &all {
                if c != cut {
                    assert!(reg.len() < region.len(), "{inst:?} t={t}: region {reg:?} not smaller than {region:?}");
                    assert!(reg.iter().all(|v| region.contains(v)), "farthest region contains every other region");
                }
            }
        }
    }
}

#[test]
fn contraction_makes_the_neighbourhood_the_farthest_cut() {
    let mut r = rng(83);
    for _ in 0..200 {
        // A random tree with two terminals.
        let n = r.gen_range(3..=10);
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (r.gen_range(0..v), v)).collect();
        let terminals = random_terminals(&mut r, n, 2);
        let inst = MultiwayInstance::new(n, edges, terminals.clone()).unwrap();
        let t = terminals[0];
        let Ok(flow) = min_isolating_flow(&inst, t, n) else { continue };
        let first = farthest_min_isolating_cut(&flow);
        let merged = contract_region(&inst, t, &first.region);
        let again = farthest_min_isolating_cut(&min_isolating_flow(&merged, t, n).unwrap());
        let mut nb: Vec<usize> = merged.edges.iter().filter_map(|&(u, v)| if u == t { Some(v) } else if v == t { Some(u) } else { None }).collect();
        nb.sort_unstable();
        assert_eq!(again.cut, nb);
        assert_eq!(again.cut, first.cut);
    }
}

#[test]
fn flow_amount_is_the_min_isolating_cut() {
    let mut r = rng(84);
    for _ in 0..300 {
        let inst = random_instance(&mut r, 12);
        for &t in &inst.terminals {
            let brute = all_min_isolating_cuts(inst.n, &inst.edges, &inst.terminals, t, OracleBudget::default()).unwrap();
            match (brute, min_isolating_flow(&inst, t, inst.n)) {
                (Some(all), Ok(flow)) => {
                    assert_eq!(flow.amount(), all[0].0.len());
                    flow.state().check_feasible().unwrap();
                }
                (None, Err(IsolatingError::Adjacent(_))) => {}
                (b, f) => panic!("{inst:?}: {b:?} vs {f:?}"),
            }
        }
    }
}
