use super::{CheckScope, Checker};
use crate::error::Result;
use crate::fusion::FusionOperator;
use crate::logic::World;
use crate::verdict::{PostulateId, Verdict, Witness};

/// Consequences of the standard domain postulate: for any agent `i` with
/// state `E_i` and distinct worlds `w, w', w''`,
/// (i) every agent `j` has a state preferring `w` over both others while
/// judging `{w', w''}` like `E_i`, and (ii) every agent `k` has a state with
/// `w ≻ w'`, `w'' ≻ w'` judging `{w, w''}` like `E_i`.
///
/// Skipped when the operator fails SD at scope.
pub fn check_prop5_consequences(op: &FusionOperator, scope: &CheckScope) -> Result<Verdict> {
    let ch = Checker::new(op, scope)?;
    let sd = ch.check(PostulateId::SD)?;
    if !sd.is_satisfied() {
        return Ok(Verdict::Skipped {
            reason: format!("precondition ESF-SD fails for {}: {}", op.name(), sd.witness().map_or("", |w| &w.note)),
        });
    }
    let n = ch.world_count();
    let m = ch.scope.agents.len();
    let bit = |w: usize| 1u16 << w;
    let pair = |a: usize, b: usize| ch.canon[(bit(a) | bit(b)) as usize];
    let mut claims = 0usize;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if x == y || x == z || y == z {
                    continue;
                }
                let (cxy, cxz, cyz) = (pair(x, y), pair(x, z), pair(y, z));
                // per agent: achievable results on {y,z} for claim (i) and on {x,z} for claim (ii)
                let mut first = vec![0u32; m];
                let mut second = vec![0u32; m];
                for (j, (f, s)) in first.iter_mut().zip(second.iter_mut()).enumerate() {
                    for &g in ch.single(j) {
                        if ch.res(g, cxy) == bit(x) && ch.res(g, cxz) == bit(x) {
                            *f |= 1 << ch.res(g, cyz);
                        }
                        if ch.res(g, cxy) == bit(x) && ch.res(g, cyz) == bit(z) {
                            *s |= 1 << ch.res(g, cxz);
                        }
                    }
                }
                for i in 0..m {
                    for (s, &g) in ch.single(i).iter().enumerate() {
                        for j in 0..m {
                            for (claim, table, c) in [("(i)", &first, cyz), ("(ii)", &second, cxz)] {
                                claims += 1;
                                if table[j] >> ch.res(g, c) & 1 == 0 {
                                    let agents = ch.scope.agents.members();
                                    return Ok(Verdict::violated(Witness {
                                        agents: vec![agents[i], agents[j]],
                                        profile: Some(ch.singleton_profile(i, s as u8)),
                                        worlds: vec![World(x as u8), World(y as u8), World(z as u8)],
                                        note: format!("claim {claim} has no state for agent {}", agents[j]),
                                        ..Witness::default()
                                    }));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(Verdict::Satisfied {
        scope: format!(
            "{claims} existence claims over every agent of {}, all {} states and all ordered triples",
            scope.agents,
            ch.ns()
        ),
    })
}
