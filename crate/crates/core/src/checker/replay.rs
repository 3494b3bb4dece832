//! Re-evaluates a counterexample through the operator itself, without the
//! compiled tables.

use super::partition_fails;
use crate::error::{Error, Result};
use crate::fusion::{canonical_state, FusionOperator};
use crate::logic::{BeliefSet, World};
use crate::preorder::{all_preorders, Ordering3, TotalPreorder};
use crate::society::Profile;
use crate::verdict::{PostulateId, Witness};

fn need<'a, T>(v: &'a Option<T>, what: &str) -> Result<&'a T> {
    v.as_ref().ok_or_else(|| Error::Invalid(format!("witness has no {what}")))
}

fn beliefs(op: &FusionOperator, p: &Profile, e: BeliefSet, state: Option<TotalPreorder>) -> Result<BeliefSet> {
    let state = match state {
        Some(s) => s,
        None => canonical_state(e)?,
    };
    Ok(op.apply(p, &state)?.top())
}

fn single(p: &Profile, i: usize) -> Profile {
    Profile::singleton(p.agents()[i], p.states()[i])
}

fn agent_index(p: &Profile, w: &Witness) -> Result<usize> {
    let a = *w.agents.first().ok_or_else(|| Error::Invalid("witness names no agent".into()))?;
    p.society().position(a).ok_or_else(|| Error::Invalid(format!("agent {a} is not in {}", p.society())))
}

/// Comparison of two worlds as read off the beliefs under the constraint `{a, b}`.
fn compare_by_beliefs(op: &FusionOperator, p: &Profile, a: World, b: World) -> Result<Ordering3> {
    let n = p.world_count();
    let pair = BeliefSet::from_worlds([a, b], n);
    let r = beliefs(op, p, pair, None)?;
    Ok(match (r.contains(a), r.contains(b)) {
        (true, true) => Ordering3::Equal,
        (true, false) => Ordering3::MorePlausible,
        _ => Ordering3::LessPlausible,
    })
}

fn relation(tp: &TotalPreorder, a: World, b: World, strict: bool) -> bool {
    if strict {
        tp.strictly_prefers(a, b)
    } else {
        tp.weakly_prefers(a, b)
    }
}

/// Returns `Ok(true)` when the witness exhibits a violation of `id` when
/// re-evaluated directly through `op`.
pub fn replay(op: &FusionOperator, id: PostulateId, w: &Witness) -> Result<bool> {
    let n = op.world_count();
    match id {
        PostulateId::ESF1 => {
            let (p, e) = (need(&w.profile, "profile")?, *need(&w.constraint, "constraint")?);
            Ok(!beliefs(op, p, e, w.constraint_state)?.is_subset(e))
        }
        PostulateId::ESF2 => {
            let p = need(&w.profile, "profile")?;
            let q = w.other_profile.as_ref().unwrap_or(p);
            let e = *need(&w.constraint, "constraint")?;
            let s1 = w.constraint_state.unwrap_or(canonical_state(e)?);
            let s2 = w.other_state.unwrap_or(s1);
            Ok(p.equivalent(q)
                && s1.top() == s2.top()
                && beliefs(op, p, e, Some(s1))? != beliefs(op, q, e, Some(s2))?)
        }
        PostulateId::ESF3 | PostulateId::ESF4 => {
            let (p, e) = (need(&w.profile, "profile")?, *need(&w.constraint, "constraint")?);
            let [e1, e2] = w.other_constraints[..] else {
                return Err(Error::Invalid("witness needs E' and E''".into()));
            };
            if e1.intersect(e2) != e {
                return Ok(false);
            }
            let lhs = beliefs(op, p, e1, w.other_state)?.intersect(e2);
            let r = beliefs(op, p, e, w.constraint_state)?;
            Ok(if id == PostulateId::ESF3 {
                !lhs.is_subset(r)
            } else {
                !lhs.is_empty() && !r.is_subset(lhs)
            })
        }
        PostulateId::ESF5 => {
            let (p, q) = (need(&w.profile, "profile")?, need(&w.other_profile, "second profile")?);
            if p.len() != 1 || q.len() != 1 || p.states()[0] == q.states()[0] {
                return Ok(false);
            }
            for e in BeliefSet::all_nonempty(n) {
                if beliefs(op, p, e, None)? != beliefs(op, q, e, None)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        PostulateId::ESF6 => {
            let (p, e) = (need(&w.profile, "profile")?, *need(&w.constraint, "constraint")?);
            let t = p.states().iter().fold(BeliefSet::full(n), |acc, s| acc.intersect(s.top()));
            let m = t.intersect(e);
            Ok(!m.is_empty() && beliefs(op, p, e, w.constraint_state)? != m)
        }
        PostulateId::ESF7 | PostulateId::ESF8 | PostulateId::ESF8W => {
            let (p, e) = (need(&w.profile, "profile")?, *need(&w.constraint, "constraint")?);
            let (n1, n2) = need(&w.partition, "partition")?;
            if !n1.is_disjoint(n2) || n1.len() + n2.len() != p.len() {
                return Ok(false);
            }
            let r1 = beliefs(op, &p.restrict(n1)?, e, w.constraint_state)?;
            let r2 = beliefs(op, &p.restrict(n2)?, e, w.constraint_state)?;
            let r = beliefs(op, p, e, w.constraint_state)?;
            Ok(partition_fails(id, r.mask(), r1.mask(), r2.mask()))
        }
        PostulateId::SD => {
            let a = *w.agents.first().ok_or_else(|| Error::Invalid("witness names no agent".into()))?;
            let shape = *need(&w.shape, "shape")?;
            let [x, y, z] = w.worlds[..] else {
                return Err(Error::Invalid("witness needs three worlds".into()));
            };
            for s in all_preorders(n)? {
                let p = Profile::singleton(a, s);
                let code = compare_by_beliefs(op, &p, x, y)?.code() * 9
                    + compare_by_beliefs(op, &p, x, z)?.code() * 3
                    + compare_by_beliefs(op, &p, y, z)?.code();
                if code == shape {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        PostulateId::U => {
            let (p, e) = (need(&w.profile, "profile")?, *need(&w.constraint, "constraint")?);
            if p.states().windows(2).any(|s| s[0] != s[1]) {
                return Ok(false);
            }
            let i = agent_index(p, w)?;
            Ok(beliefs(op, p, e, w.constraint_state)? != beliefs(op, &single(p, i), e, w.constraint_state)?)
        }
        PostulateId::P => {
            let (p, e) = (need(&w.profile, "profile")?, *need(&w.constraint, "constraint")?);
            let e1 = *w.other_constraints.first().ok_or_else(|| Error::Invalid("witness has no E'".into()))?;
            let mut inter = BeliefSet::full(n);
            for i in 0..p.len() {
                let r = beliefs(op, &single(p, i), e, w.constraint_state)?;
                if !r.intersect(e1).is_empty() {
                    return Ok(false);
                }
                inter = inter.intersect(r);
            }
            Ok(!inter.is_empty() && !beliefs(op, p, e, w.constraint_state)?.intersect(e1).is_empty())
        }
        PostulateId::I => {
            let (p, e) = (need(&w.profile, "profile")?, *need(&w.constraint, "constraint")?);
            let q = need(&w.other_profile, "second profile")?;
            if p.society() != q.society() {
                return Ok(false);
            }
            for sub in BeliefSet::all_nonempty(n).into_iter().filter(|s| s.is_subset(e)) {
                for i in 0..p.len() {
                    if beliefs(op, &single(p, i), sub, None)? != beliefs(op, &single(q, i), sub, None)? {
                        return Ok(false);
                    }
                }
            }
            Ok(beliefs(op, p, e, w.constraint_state)? != beliefs(op, q, e, w.constraint_state)?)
        }
        PostulateId::D => replay_parts(w, |part| {
            let (p, e) = (need(&part.profile, "profile")?, *need(&part.constraint, "constraint")?);
            let i = agent_index(p, part)?;
            let r = beliefs(op, p, e, part.constraint_state)?;
            Ok(!r.is_subset(beliefs(op, &single(p, i), e, part.constraint_state)?))
        }),
        PostulateId::P1 => {
            let (p, q) = (need(&w.profile, "profile")?, need(&w.other_profile, "second profile")?);
            Ok(p.len() == 1 && q.len() == 1 && p.states()[0] != q.states()[0] && op.assign(p)? == op.assign(q)?)
        }
        PostulateId::P2 => {
            let p = need(&w.profile, "profile")?;
            let t = p.states().iter().fold(BeliefSet::full(n), |acc, s| acc.intersect(s.top()));
            Ok(!t.is_empty() && op.assign(p)?.top() != t)
        }
        PostulateId::P3 | PostulateId::P4 | PostulateId::P4W => {
            let p = need(&w.profile, "profile")?;
            let (n1, n2) = need(&w.partition, "partition")?;
            let [a, b] = w.worlds[..] else {
                return Err(Error::Invalid("witness needs two worlds".into()));
            };
            if !n1.is_disjoint(n2) || n1.len() + n2.len() != p.len() {
                return Ok(false);
            }
            let (g1, g2, g) = (op.assign(&p.restrict(n1)?)?, op.assign(&p.restrict(n2)?)?, op.assign(p)?);
            Ok(match id {
                PostulateId::P3 => relation(&g1, a, b, false) && relation(&g2, a, b, false) && !relation(&g, a, b, false),
                PostulateId::P4 => {
                    let premise = relation(&g1, a, b, false) && relation(&g2, a, b, true)
                        || relation(&g1, a, b, true) && relation(&g2, a, b, false);
                    premise && !relation(&g, a, b, true)
                }
                _ => relation(&g1, a, b, true) && relation(&g2, a, b, true) && !relation(&g, a, b, true),
            })
        }
        PostulateId::MAX => {
            let p = need(&w.profile, "profile")?;
            Ok(p.len() == 1 && op.assign(p)?.top() != p.states()[0].top())
        }
        PostulateId::SemU => {
            let p = need(&w.profile, "profile")?;
            if p.states().windows(2).any(|s| s[0] != s[1]) {
                return Ok(false);
            }
            let i = agent_index(p, w)?;
            Ok(op.assign(p)? != op.assign(&single(p, i))?)
        }
        PostulateId::SemP => {
            let p = need(&w.profile, "profile")?;
            let [a, b] = w.worlds[..] else {
                return Err(Error::Invalid("witness needs two worlds".into()));
            };
            for i in 0..p.len() {
                if !op.assign(&single(p, i))?.strictly_prefers(a, b) {
                    return Ok(false);
                }
            }
            Ok(!op.assign(p)?.strictly_prefers(a, b))
        }
        PostulateId::SemInd => {
            let (p, q) = (need(&w.profile, "profile")?, need(&w.other_profile, "second profile")?);
            let [a, b] = w.worlds[..] else {
                return Err(Error::Invalid("witness needs two worlds".into()));
            };
            if p.society() != q.society() {
                return Ok(false);
            }
            for i in 0..p.len() {
                if op.assign(&single(p, i))?.compare(a, b) != op.assign(&single(q, i))?.compare(a, b) {
                    return Ok(false);
                }
            }
            Ok(op.assign(p)?.compare(a, b) != op.assign(q)?.compare(a, b))
        }
        PostulateId::SemD => replay_parts(w, |part| {
            let p = need(&part.profile, "profile")?;
            let [a, b] = part.worlds[..] else {
                return Err(Error::Invalid("witness needs two worlds".into()));
            };
            let i = agent_index(p, part)?;
            Ok(op.assign(&single(p, i))?.strictly_prefers(a, b) && !op.assign(p)?.strictly_prefers(a, b))
        }),
    }
}

/// A dictatorship counterexample: every member of the society is overridden somewhere.
fn replay_parts<F>(w: &Witness, part_ok: F) -> Result<bool>
where
    F: Fn(&Witness) -> Result<bool>,
{
    let n = need(&w.society, "society")?;
    for &a in n.members() {
        let part = w
            .parts
            .iter()
            .find(|p| p.agents.first() == Some(&a))
            .ok_or_else(|| Error::Invalid(format!("no counterexample for agent {a}")))?;
        if part.profile.as_ref().map(|p| p.society()) != Some(n) || !part_ok(part)? {
            return Ok(false);
        }
    }
    Ok(true)
}
