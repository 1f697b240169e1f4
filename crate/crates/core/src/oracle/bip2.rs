//! Integer programs for BIP2 instances, with `M` concretized.

use super::IntProgram;
use crate::bip2::{Bip2Instance, Domain};
use crate::half::HalfInt;

/// The program `min Σ w x + Σ d z` for `inst` with `M = m0`, plus the
/// instance's constant term. Independent variables follow the shared ones,
/// one per soft constraint.
///
/// Upper bounds: binary variables 1; nonnegative ones the largest
/// right-hand side when every coefficient is +1 (larger values never help),
/// otherwise `Σ|c| + 1`. Independent variables get the largest shortfall
/// their row can have within those bounds.
pub fn bip2_program(inst: &Bip2Instance, m0: i64) -> Option<(IntProgram, HalfInt)> {
    let cons = inst.constraints();
    let monotone = cons.iter().all(|c| c.a >= 0 && c.b >= 0);
    let cmax = cons.iter().map(|c| c.c).max().unwrap_or(0).max(0);
    let csum: i64 = cons.iter().map(|c| c.c.abs()).sum();
    let mut p = IntProgram::default();
    let mut top = 0;
    for v in inst.vars() {
        let u = match v.domain {
            Domain::Binary => 1,
            Domain::Nonneg if monotone => cmax,
            Domain::Nonneg => csum + 1,
        };
        top = top.max(u);
        p.add_var(whole(v.weight.concretize(m0)?)?, Some(u));
    }
    for con in cons {
        let mut terms = vec![(con.i, con.a)];
        if con.b != 0 {
            terms.push((con.j, con.b));
        }
        if let Some(d) = con.indep {
            let z = p.add_var(whole(d.concretize(m0)?)?, Some(con.c.abs() + 2 * top));
            terms.push((z, 1));
        }
        p.add_row(terms, con.c);
    }
    Some((p, inst.constant().concretize(m0)?))
}

fn whole(h: HalfInt) -> Option<i64> {
    h.is_integral().then(|| h.floor())
}
