use abovelp::bip2::chain::{reduce_to_vc, ReductionTrace};
use abovelp::bip2::pair::compute_halfint_pair;
use abovelp::bip2::solve::{hard_rows_satisfiable, solve_bip2_auto};
use abovelp::bip2::{Bip2Error, Bip2Instance};
use abovelp::oracle::bip2::bip2_program;
use abovelp::oracle::gen::{random_binary_bip2, rng};
use abovelp::oracle::simplex::{rat, Rat};
use abovelp::oracle::vc::exact_vc;
use abovelp::oracle::{brute_halfint_lp, ip_optimum, lp_value, OracleBudget};
use abovelp::HalfInt;

fn budget() -> OracleBudget {
    OracleBudget::default()
}

fn half(h: HalfInt) -> Rat {
    rat(h.doubled()) / rat(2)
}

/// (IP optimum, LP optimum) of an instance with `M = m0`, by oracle.
fn optima(inst: &Bip2Instance, m0: i64) -> (Option<Rat>, Option<Rat>) {
    let (p, constant) = bip2_program(inst, m0).expect("weights concretize");
    let c = half(constant);
    let ip = ip_optimum(&p, budget()).unwrap().map(|(v, _)| rat(v) + &c);
    let lp = lp_value(&p, budget()).unwrap().map(|v| v + &c);
    (ip, lp)
}

fn stage_gaps(trace: &ReductionTrace) -> Vec<Rat> {
    let mut gaps = Vec::new();
    for (name, st) in [("original", &trace.original), ("independent", &trace.with_indep), ("monotone", &trace.monotone), ("gadgets", &trace.no_indep)] {
        let (ip, lp) = optima(&st.instance, trace.m0);
        let lp = lp.unwrap_or_else(|| panic!("{name}: LP infeasible"));
        assert_eq!(lp, half(st.lp), "{name}: transported pair is not optimal");
        gaps.push(ip.unwrap_or_else(|| panic!("{name}: IP infeasible")) - lp);
    }
    let (opt, _) = exact_vc(trace.vc.weights(), trace.vc.edges(), budget()).unwrap();
    gaps.push(rat(opt) - half(trace.vc_lp));
    gaps
}

#[test]
fn chain_preserves_gap_and_pairs() {
    let mut r = rng(2024);
    let (mut chained, mut infeasible) = (0, 0);
    for _ in 0..200 {
        let inst = random_binary_bip2(&mut r, 6, 8);
        let (p, _) = bip2_program(&inst, 0).unwrap();
        let grid = brute_halfint_lp(&p, budget()).unwrap();
        let (ip, _) = optima(&inst, 0);
        match compute_halfint_pair(&inst) {
            Err(Bip2Error::Infeasible) => {
                assert!(grid.is_none(), "{inst:?}");
                infeasible += 1;
                continue;
            }
            Err(e) => panic!("{e}"),
            Ok((pair, lp)) => {
                let grid = grid.expect("LP feasible");
                assert_eq!(grid.doubled_value, lp.doubled() - inst.concrete_constant(0).unwrap().doubled());
                assert!(pair.x.iter().chain(&pair.y).all(|h| h.doubled() >= 0));
                let Some(opt) = ip else {
                    assert!(!hard_rows_satisfiable(&inst));
                    assert_eq!(solve_bip2_auto(&inst).unwrap_err(), Bip2Error::Infeasible);
                    infeasible += 1;
                    continue;
                };
                let trace = reduce_to_vc(&inst, &pair).unwrap();
                let gaps = stage_gaps(&trace);
                assert!(gaps.iter().all(|g| *g == gaps[0]), "gaps {gaps:?} for {inst:?}");
                let out = solve_bip2_auto(&inst).unwrap();
                assert_eq!(rat(out.solution.objective), opt);
                assert_eq!(half(out.k), gaps[0]);
                chained += 1;
            }
        }
    }
    assert!(chained >= 100, "only {chained} feasible instances ({infeasible} infeasible)");
}
