use abovelp::bip2::chain::reduce_to_vc;
use abovelp::bip2::pair::compute_halfint_pair;
use abovelp::bip2::{text, Bip2Instance};
use abovelp::oracle::gen::{random_binary_bip2, rng};
use abovelp::oracle::vc::exact_vc;
use abovelp::oracle::OracleBudget;
use abovelp::HalfInt;
use proptest::prelude::*;
use rand::Rng;

fn instance(seed: u64) -> Bip2Instance {
    random_binary_bip2(&mut rng(seed), 6, 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn pair_is_complementary(seed in any::<u64>()) {
        let inst = instance(seed);
        let Ok((pair, _)) = compute_halfint_pair(&inst) else { return Ok(()) };
        let w = inst.concrete_weights(0).unwrap();
        let d = inst.concrete_indep(0).unwrap();
        let mut load = vec![HalfInt::ZERO; inst.var_count()];
        for (r, con) in inst.constraints().iter().enumerate() {
            let (y, z) = (pair.y[r], pair.z[r]);
            let mut lhs = z;
            for (v, coef) in con.terms() {
                load[v] += y * coef;
                lhs += pair.x[v] * coef;
            }
            prop_assert!(lhs >= HalfInt::from_int(con.c), "row {} violated", r);
            if y > HalfInt::ZERO {
                prop_assert_eq!(lhs, HalfInt::from_int(con.c), "row {} has a dual but is slack", r);
            }
            match d[r] {
                Some(d) => {
                    prop_assert!(y <= HalfInt::from_int(d));
                    if z > HalfInt::ZERO {
                        prop_assert_eq!(y, HalfInt::from_int(d), "row {} pays for z below its weight", r);
                    }
                }
                None => prop_assert_eq!(z, HalfInt::ZERO),
            }
        }
        for i in 0..inst.var_count() {
            let reduced = HalfInt::from_int(w[i]) - load[i] + pair.beta[i];
            prop_assert!(reduced >= HalfInt::ZERO, "x{} has negative reduced cost", i);
            if pair.x[i] > HalfInt::ZERO {
                prop_assert_eq!(reduced, HalfInt::ZERO, "x{} positive with slack", i);
            }
            if pair.beta[i] > HalfInt::ZERO {
                prop_assert_eq!(pair.x[i], HalfInt::ONE);
            }
        }
    }

    #[test]
    fn decoding_never_widens_the_gap(seed in any::<u64>()) {
        let inst = instance(seed);
        let Ok((pair, _)) = compute_halfint_pair(&inst) else { return Ok(()) };
        let trace = reduce_to_vc(&inst, &pair).unwrap();
        let vc = &trace.vc;
        let (best_w, mask) = exact_vc(vc.weights(), vc.edges(), OracleBudget::default()).unwrap();
        let best_cover: Vec<usize> = (0..mask.len()).filter(|&v| mask[v]).collect();
        let Ok(best) = trace.decode(&best_cover) else { return Ok(()) };
        prop_assert_eq!(inst.evaluate(&best.x, trace.m0).unwrap(), best.objective);
        let mut r = rng(seed ^ 0x5eed);
        for _ in 0..20 {
            let mut sel: Vec<bool> = (0..vc.vertex_count()).map(|_| r.gen_bool(0.3)).collect();
            for &(u, v) in vc.edges() {
                if !sel[u] && !sel[v] {
                    sel[if r.gen_bool(0.5) { u } else { v }] = true;
                }
            }
            let cover: Vec<usize> = (0..sel.len()).filter(|&v| sel[v]).collect();
            let weight: i64 = cover.iter().map(|&v| vc.weight(v)).sum();
            if let Ok(sol) = trace.decode(&cover) {
                prop_assert_eq!(inst.evaluate(&sol.x, trace.m0).unwrap(), sol.objective);
                prop_assert!(sol.objective - best.objective <= weight - best_w);
            }
        }
    }

    #[test]
    fn text_round_trip(seed in any::<u64>()) {
        let inst = instance(seed);
        let written = text::format(&inst).unwrap();
        prop_assert_eq!(text::parse(&written).unwrap(), inst);
    }
}
