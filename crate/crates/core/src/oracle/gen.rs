//! Seeded random instance generators.

use crate::bip2::{Bip2Instance, Constraint, Domain, Variable};
use crate::frontends::{Cnf, Csp, CspConstraint, EdgeWeightedGraph, GvcInstance, ProblemInstance, WeightedGraph};
use crate::half::BigWeight;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `m` distinct edges drawn uniformly (capped at `n(n-1)/2`).
pub fn random_edges<R: Rng>(rng: &mut R, n: usize, m: usize) -> Vec<(usize, usize)> {
    let mut all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    all.shuffle(rng);
    all.truncate(m);
    all.sort();
    all
}

/// A graph on `1..=max_n` vertices with up to `max_m` edges and weights in
/// `1..=max_w`.
pub fn random_weighted_graph<R: Rng>(rng: &mut R, max_n: usize, max_m: usize, max_w: i64) -> (Vec<i64>, Vec<(usize, usize)>) {
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(0..=max_m.min(n * (n - 1) / 2));
    let weights = (0..n).map(|_| rng.gen_range(1..=max_w)).collect();
    (weights, random_edges(rng, n, m))
}

/// A literal is a variable with a polarity (`true` means positive).
pub type Literal = (usize, bool);

pub fn random_2cnf<R: Rng>(rng: &mut R, vars: usize, clauses: usize) -> Vec<[Literal; 2]> {
    (0..clauses)
        .map(|_| {
            let a = (rng.gen_range(0..vars), rng.gen_bool(0.5));
            let b = (rng.gen_range(0..vars), rng.gen_bool(0.5));
            [a, b]
        })
        .collect()
}

/// Random terminal set of size `t` among `n` vertices, sorted.
pub fn random_terminals<R: Rng>(rng: &mut R, n: usize, t: usize) -> Vec<usize> {
    let mut vs: Vec<usize> = (0..n).collect();
    vs.shuffle(rng);
    vs.truncate(t);
    vs.sort();
    vs
}

/// An all-binary instance with up to `max_vars` variables and `max_cons`
/// constraints: weights in `0..=3`, right-hand sides in `-1..=2`, and about
/// a third of the constraints hard.
pub fn random_binary_bip2<R: Rng>(rng: &mut R, max_vars: usize, max_cons: usize) -> Bip2Instance {
    let n = rng.gen_range(2..=max_vars.max(2));
    let vars = (0..n).map(|_| Variable { weight: BigWeight::int(rng.gen_range(0..=3)), domain: Domain::Binary }).collect();
    let m = rng.gen_range(0..=max_cons);
    let cons = (0..m)
        .map(|_| {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let a = if rng.gen_bool(0.5) { 1 } else { -1 };
            let b = [-1, 0, 1][rng.gen_range(0..3)];
            let c = rng.gen_range(-1..=2);
            let indep = (!rng.gen_bool(0.33)).then(|| BigWeight::int(rng.gen_range(0..=3)));
            if b == 0 {
                Constraint::unary(a, i, c, indep)
            } else {
                Constraint::pair(a, i, b, j, c, indep)
            }
        })
        .collect();
    Bip2Instance::new(vars, cons).expect("generated instances are valid")
}

/// Names of the frontend variants in the order [`random_problem`] takes.
pub const PROBLEM_KINDS: [&str; 11] = ["vc", "oct", "a2sat", "edge-bip", "min-sat", "gvc", "g2sat", "clique-compl", "csp", "dir-uncut", "split-vd"];

fn random_cnf<R: Rng>(rng: &mut R, vars: usize, clauses: usize, max_len: usize) -> Cnf {
    let clauses = (0..clauses)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            (0..len).map(|_| (rng.gen_range(0..vars), rng.gen_bool(0.5))).collect()
        })
        .collect();
    Cnf { vars, clauses }
}

pub fn random_oct<R: Rng>(rng: &mut R, max_n: usize, max_m: usize, max_w: i64) -> ProblemInstance {
    let (weights, edges) = random_weighted_graph(rng, max_n, max_m, max_w);
    ProblemInstance::OddCycleTransversal(WeightedGraph { weights, edges })
}

/// Clauses with two literals each (possibly on one variable).
pub fn random_a2sat<R: Rng>(rng: &mut R, max_vars: usize, max_clauses: usize) -> ProblemInstance {
    let vars = rng.gen_range(1..=max_vars);
    let m = rng.gen_range(0..=max_clauses);
    let clauses = random_2cnf(rng, vars, m).into_iter().map(|c| c.to_vec()).collect();
    ProblemInstance::Almost2Sat(Cnf { vars, clauses })
}

/// A small instance of variant `kind` (an index into [`PROBLEM_KINDS`])
/// on at most `max_n` vertices or variables.
pub fn random_problem<R: Rng>(rng: &mut R, kind: usize, max_n: usize) -> ProblemInstance {
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(0..=(n * (n - 1) / 2).min(2 * n));
    let weights = |rng: &mut R| (0..n).map(|_| rng.gen_range(0..=3)).collect::<Vec<i64>>();
    let graph = |rng: &mut R| WeightedGraph { weights: weights(rng), edges: random_edges(rng, n, m) };
    let weighted_edges = |rng: &mut R, directed: bool| {
        let edges = random_edges(rng, n, m)
            .into_iter()
            .map(|(u, v)| {
                let (u, v) = if directed && rng.gen_bool(0.5) { (v, u) } else { (u, v) };
                (u, v, rng.gen_range(0..=3))
            })
            .collect();
        EdgeWeightedGraph { n, edges }
    };
    match kind {
        0 => ProblemInstance::VertexCover(graph(rng)),
        1 => ProblemInstance::OddCycleTransversal(graph(rng)),
        2 => ProblemInstance::Almost2Sat(random_cnf(rng, n, m, 2)),
        3 => ProblemInstance::EdgeBipartization(weighted_edges(rng, false)),
        4 => ProblemInstance::MinSat(random_cnf(rng, n, m, 4)),
        5 => {
            let weights = weights(rng);
            let edges = random_edges(rng, n, m)
                .into_iter()
                .map(|(u, v)| {
                    let mut d = [rng.gen_range(0..=4), rng.gen_range(0..=4), rng.gen_range(0..=4)];
                    d.sort_unstable_by(|a, b| b.cmp(a));
                    (u, v, d)
                })
                .collect();
            ProblemInstance::GeneralizedVertexCover(GvcInstance { weights, edges })
        }
        6 => ProblemInstance::Generalized2Sat { cnf: random_cnf(rng, n, m, 2), weights: weights(rng) },
        7 => ProblemInstance::CliqueComplement(graph(rng)),
        8 => {
            let constraints = (0..m)
                .map(|_| {
                    let u = rng.gen_range(0..n);
                    let scope = if n > 1 && rng.gen_bool(0.8) { vec![u, (u + rng.gen_range(1..n)) % n] } else { vec![u] };
                    let allowed = [rng.gen_bool(0.6), rng.gen_bool(0.6), rng.gen_bool(0.6), rng.gen_bool(0.6)];
                    CspConstraint { scope, allowed }
                })
                .collect();
            ProblemInstance::AlmostBoolean2Csp(Csp { vars: n, constraints })
        }
        9 => ProblemInstance::DirectedMinUncut(weighted_edges(rng, true)),
        10 => ProblemInstance::SplitVertexDeletion(graph(rng)),
        _ => panic!("unknown problem kind {kind}"),
    }
}
