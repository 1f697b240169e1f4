use abovelp::frontends::{decode, encode, solve_problem, verify, Cnf, ProblemInstance, WeightedGraph};
use abovelp::bip2::solve::solve_bip2_auto;
use abovelp::oracle::gen::{random_a2sat, random_oct, random_problem, rng, PROBLEM_KINDS};
use abovelp::oracle::problems::brute_problem;
use abovelp::oracle::OracleBudget;

/// Solves through the encoding and checks against brute force; returns the
/// optimum.
fn check(p: &ProblemInstance) -> Option<i64> {
    let brute = brute_problem(p, OracleBudget::default()).unwrap();
    let (inst, ctx) = encode(p).unwrap();
    match solve_bip2_auto(&inst) {
        Ok(out) => {
            let sol = decode(p, &out.solution, &ctx);
            let value = verify(p, &sol).unwrap_or_else(|v| panic!("{p:?}: {v:?}"));
            assert_eq!(Some(value), brute, "{p:?}");
            brute
        }
        Err(e) => {
            assert_eq!(brute, None, "{p:?}: solver said {e}");
            None
        }
    }
}

/// Shared variables plus constraints, against n + m of the source.
fn size_ratio(p: &ProblemInstance) -> f64 {
    use ProblemInstance::*;
    let (inst, _) = encode(p).unwrap();
    let source = match p {
        VertexCover(g) | OddCycleTransversal(g) => g.weights.len() + g.edges.len(),
        // These constrain non-adjacent pairs.
        CliqueComplement(g) | SplitVertexDeletion(g) => {
            let n = g.weights.len();
            n + n * (n - 1) / 2
        }
        EdgeBipartization(g) | DirectedMinUncut(g) => g.n + g.edges.len(),
        Almost2Sat(c) | Generalized2Sat { cnf: c, .. } => c.vars + c.clauses.len(),
        MinSat(c) => c.vars + c.clauses.iter().map(|c| c.len() + 1).sum::<usize>(),
        GeneralizedVertexCover(g) => g.weights.len() + g.edges.len(),
        AlmostBoolean2Csp(c) => c.vars + c.constraints.len(),
    };
    (inst.var_count() + inst.constraints().len()) as f64 / source.max(1) as f64
}

#[test]
fn fixed_cases() {
    let k3 = WeightedGraph { weights: vec![1; 3], edges: vec![(0, 1), (1, 2), (0, 2)] };
    assert_eq!(check(&ProblemInstance::OddCycleTransversal(k3.clone())), Some(1));
    let contradiction = Cnf { vars: 2, clauses: vec![vec![(0, true), (1, true)], vec![(0, true), (1, false)], vec![(0, false), (1, true)], vec![(0, false), (1, false)]] };
    assert_eq!(check(&ProblemInstance::Almost2Sat(contradiction)), Some(1));
    let c4 = WeightedGraph { weights: vec![1; 4], edges: vec![(0, 1), (1, 2), (2, 3), (3, 0)] };
    let sol = solve_problem(&ProblemInstance::OddCycleTransversal(c4)).unwrap();
    assert_eq!(sol.objective, 0);
    let unsat = Cnf { vars: 1, clauses: vec![vec![(0, true)], vec![(0, false)]] };
    assert_eq!(check(&ProblemInstance::Generalized2Sat { cnf: unsat, weights: vec![1] }), None);
    assert_eq!(check(&ProblemInstance::VertexCover(k3)), Some(2));
}

#[test]
fn oct_matches_brute_force() {
    let mut r = rng(71);
    for _ in 0..300 {
        check(&random_oct(&mut r, 10, 18, 3));
    }
}

#[test]
fn almost_2sat_matches_brute_force() {
    let mut r = rng(72);
    for _ in 0..300 {
        check(&random_a2sat(&mut r, 10, 16));
    }
}

#[test]
fn every_variant_matches_brute_force() {
    let mut r = rng(73);
    for (kind, name) in PROBLEM_KINDS.iter().enumerate() {
        let mut worst: f64 = 0.0;
        for _ in 0..60 {
            let p = random_problem(&mut r, kind, 8);
            check(&p);
            worst = worst.max(size_ratio(&p));
        }
        // Every encoding spends a bounded number of rows per source element.
        assert!(worst <= 4.0, "{name}: encoding size ratio {worst}");
    }
}
