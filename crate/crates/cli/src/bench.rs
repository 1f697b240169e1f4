//! Timing of fixed-gap vertex cover families.
//!
//! Each family comes with an LP pair written down directly, so only the
//! search is timed. Its budget is the family's gap.

use crate::report::half;
use crate::{BenchArgs, Family, Outcome, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use abovelp::vcal::solve_above_lp;
use abovelp::vclp::{DualVc, PrimalVc, VcInstance};
use abovelp::HalfInt;
use serde::Serialize;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

pub struct FamilyInstance {
    pub inst: Arc<VcInstance>,
    pub primal: PrimalVc,
    pub dual: DualVc,
    pub gap: HalfInt,
    pub optimum: i64,
}

/// Left vertex `i` meets right vertices `i`, `i+1` and `i+3` (mod `n/2`);
/// the left side is a cover and the first edges form a perfect matching.
pub fn bipartite(n: usize) -> FamilyInstance {
    let h = (n / 2).max(1);
    let mut edges = Vec::with_capacity(3 * h);
    for i in 0..h {
        for s in [0, 1, 3] {
            let e = (i, h + (i + s) % h);
            if !edges[edges.len().saturating_sub(2)..].contains(&e) {
                edges.push(e);
            }
        }
    }
    let matching: Vec<HalfInt> = edges.iter().map(|&(i, r)| if r == h + i { HalfInt::ONE } else { HalfInt::ZERO }).collect();
    let x = (0..2 * h).map(|v| if v < h { HalfInt::ONE } else { HalfInt::ZERO }).collect();
    FamilyInstance {
        inst: Arc::new(VcInstance::unit(2 * h, edges).expect("valid family")),
        primal: PrimalVc(x),
        dual: DualVc::from_halves(&matching),
        gap: HalfInt::ZERO,
        optimum: h as i64,
    }
}

/// A triangle and a disjoint path on an even number of vertices.
pub fn k3_path(n: usize) -> FamilyInstance {
    let p = n.saturating_sub(3) / 2 * 2;
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut y = vec![HalfInt::HALF; 3];
    for j in 0..p.saturating_sub(1) {
        edges.push((3 + j, 4 + j));
        y.push(if j % 2 == 0 { HalfInt::ONE } else { HalfInt::ZERO });
    }
    let mut x = vec![HalfInt::HALF; 3];
    x.extend((0..p).map(|j| if j % 2 == 1 { HalfInt::ONE } else { HalfInt::ZERO }));
    FamilyInstance {
        inst: Arc::new(VcInstance::unit(3 + p, edges).expect("valid family")),
        primal: PrimalVc(x),
        dual: DualVc::from_halves(&y),
        gap: HalfInt::HALF,
        optimum: 2 + p as i64 / 2,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub k: String,
    pub objective: i64,
    /// Median over the repetitions.
    pub seconds: f64,
    pub nodes: u64,
}

pub fn build(family: Family, n: usize) -> FamilyInstance {
    match family {
        Family::Bipartite => bipartite(n),
        Family::K3Path => k3_path(n),
    }
}

/// Times the search once per repetition and checks the optimum.
pub fn measure(family: Family, n: usize, repetitions: usize) -> Result<BenchRow, String> {
    let f = build(family, n);
    let mut times = Vec::with_capacity(repetitions.max(1));
    let mut last = None;
    for _ in 0..repetitions.max(1) {
        let start = Instant::now();
        let (sol, stats) = solve_above_lp(&f.inst, (&f.primal, &f.dual), f.gap).map_err(|e| e.to_string())?;
        times.push(start.elapsed().as_secs_f64());
        last = Some((sol, stats));
    }
    let (sol, stats) = last.expect("at least one repetition");
    let sol = sol.ok_or_else(|| format!("n = {n}: no cover within the family gap"))?;
    if sol.weight != f.optimum {
        return Err(format!("n = {n}: cover of weight {} but the optimum is {}", sol.weight, f.optimum));
    }
    times.sort_by(f64::total_cmp);
    Ok(BenchRow { n: f.inst.vertex_count(), m: f.inst.edge_count(), k: half(f.gap), objective: sol.weight, seconds: times[times.len() / 2], nodes: stats.nodes })
}

/// Least-squares line `t = a·n + b` and its coefficient of determination.
pub fn linear_fit(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let len = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / len;
    let my = points.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let a = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let b = my - a * mx;
    let ss_res: f64 = points.iter().map(|p| (p.1 - a * p.0 - b).powi(2)).sum();
    let ss_tot: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    let r2 = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    (a, b, r2)
}

pub fn cmd_bench(a: &BenchArgs) -> Outcome {
    if a.sizes.is_empty() || a.sizes.contains(&0) {
        return Outcome::fail(EXIT_USAGE, "sizes must be positive");
    }
    let mut rows = Vec::new();
    for &n in &a.sizes {
        match measure(a.family, n, a.repetitions) {
            Ok(r) => rows.push(r),
            Err(e) => return Outcome::fail(EXIT_FAILED, e),
        }
    }
    let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.seconds)).collect();
    let (slope, intercept, r2) = linear_fit(&points);
    let stdout = if a.json {
        let doc = serde_json::json!({ "rows": rows, "fit": { "slope": slope, "intercept": intercept, "r2": r2 } });
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    } else {
        let mut out = format!("{:>10} {:>10} {:>4} {:>10} {:>12} {:>6}\n", "n", "m", "k", "objective", "seconds", "nodes");
        for r in &rows {
            let _ = writeln!(out, "{:>10} {:>10} {:>4} {:>10} {:>12.6} {:>6}", r.n, r.m, r.k, r.objective, r.seconds, r.nodes);
        }
        let _ = writeln!(out, "fit: t = {slope:.3e}·n + {intercept:.3e}, R² = {r2:.4}");
        out
    };
    Outcome { code: EXIT_OK, stdout, stderr: String::new() }
}
