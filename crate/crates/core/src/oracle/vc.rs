//! Vertex cover baselines on plain weight and edge lists.

use super::{brute_halfint_lp, HalfIntLp, IntProgram, Meter, OracleBudget, OracleError};

pub const BRUTE_VC_LIMIT: usize = 20;

fn covers(edges: &[(usize, usize)], mask: u32) -> bool {
    edges.iter().all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1)
}

/// Minimum weight vertex cover over all `2^n` subsets. Returns the optimum
/// and the lexicographically first optimal subset as a membership mask.
pub fn brute_vc(weights: &[i64], edges: &[(usize, usize)], budget: OracleBudget) -> Result<(i64, Vec<bool>), OracleError> {
    let n = weights.len();
    if n > BRUTE_VC_LIMIT {
        return Err(OracleError::TooLarge { what: "vertices", size: n, limit: BRUTE_VC_LIMIT });
    }
    let mut meter = Meter::new(budget);
    let mut best = (i64::MAX, 0u32);
    for mask in 0u32..(1u32 << n) {
        meter.tick()?;
        let w: i64 = (0..n).filter(|&v| mask >> v & 1 == 1).map(|v| weights[v]).sum();
        if w < best.0 && covers(edges, mask) {
            best = (w, mask);
        }
    }
    Ok((best.0, (0..n).map(|v| best.1 >> v & 1 == 1).collect()))
}

/// Minimum weight vertex cover by branching on a vertex of maximum
/// uncovered degree: either it joins the cover or all its neighbours do.
/// Handles a few dozen vertices on sparse graphs.
pub fn exact_vc(weights: &[i64], edges: &[(usize, usize)], budget: OracleBudget) -> Result<(i64, Vec<bool>), OracleError> {
    let n = weights.len();
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        if u != v {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut state = VcBranch { weights, adj, taken: vec![false; n], gone: vec![false; n], best: i64::MAX, best_set: vec![], meter: Meter::new(budget) };
    // Self-loops force their vertex.
    let mut base = 0;
    for &(u, v) in edges {
        if u == v && !state.taken[u] {
            state.taken[u] = true;
            state.gone[u] = true;
            base += weights[u];
        }
    }
    state.go(base)?;
    Ok((state.best, state.best_set))
}

struct VcBranch<'a> {
    weights: &'a [i64],
    adj: Vec<Vec<usize>>,
    taken: Vec<bool>,
    gone: Vec<bool>,
    best: i64,
    best_set: Vec<bool>,
    meter: Meter,
}

impl VcBranch<'_> {
    fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&u| !self.gone[u]).count()
    }

    fn go(&mut self, cost: i64) -> Result<(), OracleError> {
        self.meter.tick()?;
        if cost >= self.best {
            return Ok(());
        }
        let pick = (0..self.weights.len()).filter(|&v| !self.gone[v]).max_by_key(|&v| (self.degree(v), std::cmp::Reverse(v)));
        let Some(v) = pick.filter(|&v| self.degree(v) > 0) else {
            self.best = cost;
            self.best_set = self.taken.clone();
            return Ok(());
        };
        // v in the cover.
        self.gone[v] = true;
        self.taken[v] = true;
        self.go(cost + self.weights[v])?;
        self.taken[v] = false;
        // v out: every live neighbour is in.
        let nbrs: Vec<usize> = self.adj[v].iter().copied().filter(|&u| !self.gone[u]).collect();
        let mut extra = 0;
        for &u in &nbrs {
            if !self.gone[u] {
                self.gone[u] = true;
                self.taken[u] = true;
                extra += self.weights[u];
            }
        }
        self.go(cost + extra)?;
        for &u in &nbrs {
            self.gone[u] = false;
            self.taken[u] = false;
        }
        self.gone[v] = false;
        Ok(())
    }
}

pub fn vc_program(weights: &[i64], edges: &[(usize, usize)]) -> IntProgram {
    let mut p = IntProgram::default();
    for &w in weights {
        p.add_var(w, Some(1));
    }
    for &(u, v) in edges {
        p.add_row(vec![(u, 1), (v, 1)], 1);
    }
    p
}

/// The vertex cover LP optimum over `{0, ½, 1}^n`, with an exact dual.
pub fn brute_halfint_lp_vc(weights: &[i64], edges: &[(usize, usize)], budget: OracleBudget) -> Result<HalfIntLp, OracleError> {
    let lp = brute_halfint_lp(&vc_program(weights, edges), budget)?;
    lp.ok_or_else(|| OracleError::CertificationFailed("vertex cover LP cannot be infeasible".into()))
}

/// Independent sets `S` (nonempty) with `w(S) = w(N(S))`, by enumeration.
pub fn tight_independent_sets(weights: &[i64], edges: &[(usize, usize)], budget: OracleBudget) -> Result<Vec<Vec<usize>>, OracleError> {
    let n = weights.len();
    if n > BRUTE_VC_LIMIT {
        return Err(OracleError::TooLarge { what: "vertices", size: n, limit: BRUTE_VC_LIMIT });
    }
    let mut nbr_mask = vec![0u32; n];
    for &(u, v) in edges {
        nbr_mask[u] |= 1 << v;
        nbr_mask[v] |= 1 << u;
    }
    let mut meter = Meter::new(budget);
    let mut out = Vec::new();
    for s in 1u32..(1u32 << n) {
        meter.tick()?;
        let members: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        let nbrs = members.iter().fold(0u32, |m, &v| m | nbr_mask[v]);
        if nbrs & s != 0 {
            continue;
        }
        let ws: i64 = members.iter().map(|&v| weights[v]).sum();
        let wn: i64 = (0..n).filter(|&v| nbrs >> v & 1 == 1).map(|v| weights[v]).sum();
        if ws == wn {
            out.push(members);
        }
    }
    Ok(out)
}
