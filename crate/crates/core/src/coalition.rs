//! Decisive and locally decisive coalitions.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use crate::checker::{CheckScope, Checker};
use crate::error::{Error, Result};
use crate::fusion::FusionOperator;
use crate::logic::{BeliefSet, World};
use crate::society::{AgentId, Society};
use crate::verdict::{PostulateId, Verdict};

/// A subset of a society; may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Coalition {
    members: Vec<AgentId>,
}

impl Coalition {
    pub fn new<I: IntoIterator<Item = u32>>(ids: I) -> Result<Coalition> {
        let mut members = ids.into_iter().map(AgentId::new).collect::<Result<Vec<_>>>()?;
        members.sort();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateAgent(w[0].0));
        }
        Ok(Coalition { members })
    }

    pub fn empty() -> Coalition {
        Coalition { members: Vec::new() }
    }

    pub fn of(society: &Society) -> Coalition {
        Coalition { members: society.members().to_vec() }
    }

    /// Parses `1,2` or `{1,2}`; `{}` and `∅` are the empty coalition.
    pub fn parse(text: &str) -> Result<Coalition> {
        let t = text.trim().trim_start_matches('{').trim_end_matches('}').trim();
        if t.is_empty() || t == "∅" {
            return Ok(Coalition::empty());
        }
        let ids = t
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| Error::InvalidAgent(x.trim().to_string())))
            .collect::<Result<Vec<_>>>()?;
        Coalition::new(ids)
    }

    pub fn members(&self) -> &[AgentId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: AgentId) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_subset(&self, other: &Coalition) -> bool {
        self.members.iter().all(|a| other.contains(*a))
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.members.is_empty() {
            return f.write_str("∅");
        }
        let ids: Vec<String> = self.members.iter().map(|a| a.0.to_string()).collect();
        write!(f, "{{{}}}", ids.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecisivenessMode {
    LocallyDecisive { e: BeliefSet, e2: BeliefSet },
    DecisiveFor { e: BeliefSet, e2: BeliefSet },
    Decisive,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecisivenessRecord {
    pub coalition: Coalition,
    pub society: Society,
    pub mode: DecisivenessMode,
    pub verdict: Verdict,
    /// Profiles meeting the premises (for the pairwise modes).
    pub qualifying: Option<u64>,
    /// Whether the two-model syntactic form gave the same answer (global mode).
    pub syntactic_agrees: Option<bool>,
}

impl DecisivenessRecord {
    pub fn holds(&self) -> bool {
        self.verdict.is_satisfied()
    }

    /// True when no profile met the premises.
    pub fn is_vacuous(&self) -> bool {
        self.qualifying == Some(0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimalDecisive {
    pub society: Society,
    pub coalitions: Vec<Coalition>,
    /// The member of a decisive singleton, which is then a dictator.
    pub dictator: Option<AgentId>,
}

/// An operator compiled for coalition questions over one society.
pub struct CoalitionAnalyzer<'a> {
    ch: Checker<'a>,
    n: Society,
    decisive: Mutex<HashMap<u32, DecisivenessRecord>>,
}

impl<'a> CoalitionAnalyzer<'a> {
    pub fn new(op: &'a FusionOperator, n: &Society, scope: &CheckScope) -> Result<CoalitionAnalyzer<'a>> {
        let k = n.len();
        let sc = scope.clone().with_agents(n.clone()).with_verify_max(k).with_refute_max(k);
        let ch = Checker::new(op, &sc)?;
        let estimate = (ch.ns() as f64).powi(k as i32) * (ch.nc() as f64 + 8.0);
        if estimate > sc.cost_ceiling {
            return Err(Error::CostCeiling {
                what: format!("coalition analysis over {n}"),
                estimate,
                ceiling: sc.cost_ceiling,
            });
        }
        Ok(CoalitionAnalyzer { ch, n: n.clone(), decisive: Mutex::new(HashMap::new()) })
    }

    pub fn society(&self) -> &Society {
        &self.n
    }

    pub fn checker(&self) -> &Checker<'a> {
        &self.ch
    }

    fn full(&self) -> u32 {
        (1u32 << self.n.len()) - 1
    }

    fn mask_of(&self, d: &Coalition) -> Result<u32> {
        d.members().iter().try_fold(0u32, |acc, a| {
            self.n.position(*a).map(|p| acc | 1 << p).ok_or_else(|| Error::NotSubset(d.to_string()))
        })
    }

    fn coalition_of(&self, mask: u32) -> Coalition {
        Coalition { members: self.ch.members(mask) }
    }

    fn pair_constraint(&self, e: BeliefSet) -> Result<usize> {
        if e.is_empty() {
            return Err(Error::EmptySet);
        }
        if e.world_count() != self.ch.world_count() {
            return Err(Error::UniverseMismatch { left: self.ch.world_count(), right: e.world_count() });
        }
        Ok(self.ch.canon[e.mask() as usize])
    }

    /// Walks the product of per-position allowed states in profile order. Each
    /// allowed state carries a mask; a profile qualifies when the masks along
    /// it intersect. Returns the number of qualifying profiles up to and
    /// including the first one failing `bad`, and that profile's index.
    fn scan<B>(&self, allowed: &[Vec<(u8, u16)>], bad: B) -> (u64, Option<usize>)
    where
        B: Fn(usize) -> bool + Sync,
    {
        if allowed.iter().any(|a| a.is_empty()) {
            return (0, None);
        }
        let ns = self.ch.ns();
        // one chunk per state of the first position; chunks are merged in order
        let chunks: Vec<(u64, Option<usize>)> = allowed[0]
            .par_iter()
            .map(|&(s, m)| {
                let mut count = 0;
                let found = Self::walk(&allowed[1..], ns, s as usize, m, &mut count, &bad);
                (count, found)
            })
            .collect();
        let mut count = 0;
        for (c, found) in chunks {
            count += c;
            if found.is_some() {
                return (count, found);
            }
        }
        (count, None)
    }

    fn walk<B: Fn(usize) -> bool>(
        rest: &[Vec<(u8, u16)>],
        ns: usize,
        idx: usize,
        mask: u16,
        count: &mut u64,
        bad: &B,
    ) -> Option<usize> {
        if mask == 0 {
            return None;
        }
        match rest.split_first() {
            None => {
                *count += 1;
                bad(idx).then_some(idx)
            }
            Some((here, tail)) => {
                here.iter().find_map(|&(s, m)| Self::walk(tail, ns, idx * ns + s as usize, mask & m, count, bad))
            }
        }
    }

    /// Definitions of (locally) decisive for a fixed pair; `local` adds the
    /// requirement that non-members believe exactly `e2`.
    fn pairwise(&self, d: &Coalition, e: BeliefSet, e2: BeliefSet, local: bool) -> Result<DecisivenessRecord> {
        let c = self.pair_constraint(e)?;
        if e2.is_empty() {
            return Err(Error::EmptySet);
        }
        let dm = self.mask_of(d)?;
        let k = self.n.len();
        let e2m = e2.mask();
        let full_set = (1u16 << self.ch.world_count()) - 1;
        let allowed: Vec<Vec<(u8, u16)>> = (0..k)
            .map(|p| {
                (0..self.ch.ns() as u8)
                    .filter_map(|s| {
                        let r = self.ch.res(self.ch.single(p)[s as usize], c);
                        if dm >> p & 1 == 1 {
                            (r & e2m == 0).then_some((s, r))
                        } else {
                            (!local || r == e2m).then_some((s, full_set))
                        }
                    })
                    .collect()
            })
            .collect();
        let imgs = self.ch.images(self.full());
        let (count, found) = self.scan(&allowed, |idx| self.ch.res(imgs[idx], c) & e2m != 0);
        let mode = if local {
            DecisivenessMode::LocallyDecisive { e, e2 }
        } else {
            DecisivenessMode::DecisiveFor { e, e2 }
        };
        let verdict = match found {
            Some(idx) => {
                let mut w = self.ch.witness_at(self.full(), idx, Some(c));
                w.agents = d.members().to_vec();
                w.other_constraints = vec![e2];
                w.note = format!("the premises hold but the group result is consistent with {e2}");
                Verdict::violated(w.observe("r(Φ,E)", self.ch.set(self.ch.res(imgs[idx], c))))
            }
            None if count == 0 => Verdict::Satisfied { scope: format!("vacuously: no {}-profile meets the premises", self.n) },
            None => Verdict::Satisfied { scope: format!("all {count} qualifying {}-profiles", self.n) },
        };
        Ok(DecisivenessRecord { coalition: d.clone(), society: self.n.clone(), mode, verdict, qualifying: Some(count), syntactic_agrees: None })
    }

    pub fn is_locally_decisive(&self, d: &Coalition, e: BeliefSet, e2: BeliefSet) -> Result<DecisivenessRecord> {
        self.pairwise(d, e, e2, true)
    }

    /// Decisiveness for one pair of constraints.
    pub fn is_decisive_for(&self, d: &Coalition, e: BeliefSet, e2: BeliefSet) -> Result<DecisivenessRecord> {
        self.pairwise(d, e, e2, false)
    }

    /// Decisiveness for every pair, via the strict-preference characterization;
    /// the two-model syntactic form is evaluated alongside.
    pub fn is_decisive(&self, d: &Coalition) -> Result<DecisivenessRecord> {
        if d.is_empty() {
            return Err(Error::EmptyCoalition);
        }
        let dm = self.mask_of(d)?;
        if let Some(rec) = self.decisive.lock().expect("cache lock").get(&dm) {
            return Ok(rec.clone());
        }
        let k = self.n.len();
        let imgs = self.ch.images(self.full());
        let members: Vec<usize> = (0..k).filter(|p| dm >> p & 1 == 1).collect();
        let sp = self.ch.space();
        let semantic = self.ch.first_profile(self.full(), |idx, digits| {
            let all = members.iter().fold(u64::MAX, |acc, &p| acc & sp.strict(self.ch.single(p)[digits[p] as usize]));
            let bad = all & !sp.strict(imgs[idx]);
            (bad != 0).then_some(bad)
        });
        let small = self.ch.small_constraints(2);
        let syntactic = self.ch.first_profile(self.full(), |idx, digits| {
            small.iter().find(|&&c| {
                let union = members.iter().fold(0u16, |acc, &p| acc | self.ch.res(self.ch.single(p)[digits[p] as usize], c));
                self.ch.res(imgs[idx], c) & !union != 0
            })
        });
        let verdict = match semantic {
            Some((idx, bad)) => {
                let (x, y) = crate::checker::pair_of_bit(bad);
                let n = self.ch.world_count();
                let mut w = self.ch.witness_at(self.full(), idx, None);
                w.agents = d.members().to_vec();
                w.worlds = vec![x, y];
                w.constraint = Some(BeliefSet::from_worlds([x, y], n));
                w.other_constraints = vec![BeliefSet::singleton(y, n)];
                let vc = self.ch.scope().var_count;
                w.note = format!(
                    "every member has {} ≻ {} but the group does not, so under E = {{{},{}}} the coalition cannot exclude E' = {{{}}}",
                    x.render(vc),
                    y.render(vc),
                    x.render(vc),
                    y.render(vc),
                    y.render(vc)
                );
                Verdict::violated(w)
            }
            None => Verdict::Satisfied { scope: format!("all {}-profiles and world pairs", self.n) },
        };
        let syntactic_agrees = Some(syntactic.is_none() == semantic.is_none());
        let rec = DecisivenessRecord {
            coalition: d.clone(),
            society: self.n.clone(),
            mode: DecisivenessMode::Decisive,
            verdict,
            qualifying: None,
            syntactic_agrees,
        };
        self.decisive.lock().expect("cache lock").insert(dm, rec.clone());
        Ok(rec)
    }

    /// All inclusion-minimal decisive coalitions, smallest first.
    pub fn minimal_decisive(&self) -> Result<MinimalDecisive> {
        let mut found: Vec<u32> = Vec::new();
        for mask in self.ch.societies(1, self.n.len()) {
            if found.iter().any(|f| f & mask == *f) {
                continue;
            }
            if self.is_decisive(&self.coalition_of(mask))?.holds() {
                found.push(mask);
            }
        }
        let coalitions: Vec<Coalition> = found.iter().map(|&m| self.coalition_of(m)).collect();
        let dictator = coalitions.iter().find(|c| c.len() == 1).map(|c| c.members()[0]);
        Ok(MinimalDecisive { society: self.n.clone(), coalitions, dictator })
    }

    /// Instance check of the propagation lemmas and theorem on this society.
    /// Skipped unless the operator satisfies SD, P and I on it.
    pub fn check_propagation(&self) -> Result<Verdict> {
        for id in [PostulateId::SD, PostulateId::P, PostulateId::I] {
            let v = self.ch.check(id)?;
            if !v.is_satisfied() {
                return Ok(Verdict::Skipped {
                    reason: format!(
                        "precondition {id} fails for {} over {}: {}",
                        self.ch.operator().name(),
                        self.n,
                        v.witness().map_or("", |w| w.note.as_str())
                    ),
                });
            }
        }
        let n = self.ch.world_count();
        let vc = self.ch.scope().var_count;
        let set = |ws: &[usize]| BeliefSet::from_worlds(ws.iter().map(|&w| World(w as u8)), n);
        let mut instances = 0usize;
        let mut locally = 0usize;
        let mut decisive_for: HashMap<(u32, u16, u16), DecisivenessRecord> = HashMap::new();
        for mask in 0..=self.full() {
            let d = self.coalition_of(mask);
            for a in 0..n {
                for b in 0..n {
                    if a == b {
                        continue;
                    }
                    instances += 1;
                    let premise = self.is_locally_decisive(&d, set(&[a, b]), set(&[b]))?;
                    if !premise.holds() {
                        continue;
                    }
                    locally += 1;
                    let fail = |what: String, rec: &DecisivenessRecord| {
                        let mut w = rec.verdict.witness().cloned().unwrap_or_default();
                        w.note = format!(
                            "{d} is locally decisive for {{{},{}}} against {{{}}} but {what}",
                            World(a as u8).render(vc),
                            World(b as u8).render(vc),
                            World(b as u8).render(vc)
                        );
                        Verdict::violated(w)
                    };
                    for c in (0..n).filter(|&c| c != a && c != b) {
                        for (e, e2) in [(set(&[a, c]), set(&[c])), (set(&[b, c]), set(&[b]))] {
                            let key = (mask, e.mask(), e2.mask());
                            if !decisive_for.contains_key(&key) {
                                decisive_for.insert(key, self.is_decisive_for(&d, e, e2)?);
                            }
                            let rec = &decisive_for[&key];
                            if !rec.holds() {
                                return Ok(fail(format!("not decisive for {e} against {e2}"), rec));
                            }
                        }
                    }
                    if d.is_empty() {
                        return Ok(fail("the empty coalition cannot be decisive".into(), &premise));
                    }
                    let global = self.is_decisive(&d)?;
                    if !global.holds() {
                        return Ok(fail("not decisive".into(), &global));
                    }
                }
            }
        }
        Ok(Verdict::Satisfied {
            scope: format!(
                "{instances} coalition/pair instances over {} ({locally} locally decisive, all propagated)",
                self.n
            ),
        })
    }
}

pub fn is_locally_decisive(
    op: &FusionOperator,
    n: &Society,
    d: &Coalition,
    e: BeliefSet,
    e2: BeliefSet,
    scope: &CheckScope,
) -> Result<DecisivenessRecord> {
    CoalitionAnalyzer::new(op, n, scope)?.is_locally_decisive(d, e, e2)
}

pub fn is_decisive(op: &FusionOperator, n: &Society, d: &Coalition, scope: &CheckScope) -> Result<DecisivenessRecord> {
    if d.is_empty() {
        return Err(Error::EmptyCoalition);
    }
    CoalitionAnalyzer::new(op, n, scope)?.is_decisive(d)
}

pub fn minimal_decisive(op: &FusionOperator, n: &Society, scope: &CheckScope) -> Result<MinimalDecisive> {
    CoalitionAnalyzer::new(op, n, scope)?.minimal_decisive()
}

pub fn check_propagation(op: &FusionOperator, n: &Society, scope: &CheckScope) -> Result<Verdict> {
    CoalitionAnalyzer::new(op, n, scope)?.check_propagation()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::AssignmentKind;

    fn op(kind: AssignmentKind) -> FusionOperator {
        FusionOperator::builtin(kind, 4)
    }

    fn soc(ids: &[u32]) -> Society {
        Society::new(ids.iter().copied()).unwrap()
    }

    fn set(text: &str) -> BeliefSet {
        BeliefSet::parse_world_list(text, 2).unwrap()
    }

    #[test]
    fn coalition_parsing_and_display() {
        assert_eq!(Coalition::parse("{2,1}").unwrap().to_string(), "{1,2}");
        assert!(Coalition::parse("∅").unwrap().is_empty());
        assert!(Coalition::parse("1,1").is_err());
    }

    #[test]
    fn projective_last_agent_is_locally_decisive() {
        let o = op(AssignmentKind::Projective);
        let r = is_locally_decisive(&o, &soc(&[1, 2]), &Coalition::new([2]).unwrap(), set("{00,01}"), set("{01}"), &CheckScope::default()).unwrap();
        assert!(r.holds());
        assert!(r.qualifying.unwrap() > 0);
    }

    #[test]
    fn equal_or_disjoint_pairs_are_trivially_decisive() {
        let scope = CheckScope::default();
        for kind in AssignmentKind::ALL {
            let o = op(kind);
            let a = CoalitionAnalyzer::new(&o, &soc(&[1, 2]), &scope).unwrap();
            for d in [Coalition::new([1]).unwrap(), Coalition::new([1, 2]).unwrap()] {
                let same = a.is_locally_decisive(&d, set("{00,11}"), set("{00,11}")).unwrap();
                assert!(same.holds() && same.is_vacuous());
            }
            for d in [Coalition::empty(), Coalition::new([2]).unwrap(), Coalition::new([1, 2]).unwrap()] {
                assert!(a.is_locally_decisive(&d, set("{00,11}"), set("{01}")).unwrap().holds());
            }
            // with no members, everyone believing E' is a qualifying profile
            // (never reachable under linproj, whose singleton results are single worlds)
            let empty = a.is_locally_decisive(&Coalition::empty(), set("{00,11}"), set("{00,11}")).unwrap();
            assert_eq!(empty.holds(), kind == AssignmentKind::LinProjective);
        }
    }

    #[test]
    fn empty_coalition_is_rejected() {
        let e = is_decisive(&op(AssignmentKind::Sum), &soc(&[1, 2]), &Coalition::empty(), &CheckScope::default());
        assert!(matches!(e, Err(Error::EmptyCoalition)));
    }

    #[test]
    fn minimal_decisive_coalitions() {
        let scope = CheckScope::default();
        let m = minimal_decisive(&op(AssignmentKind::Projective), &soc(&[1, 2, 3]), &scope).unwrap();
        assert_eq!(m.coalitions, vec![Coalition::new([3]).unwrap()]);
        assert_eq!(m.dictator, Some(AgentId(3)));
        let m = minimal_decisive(&op(AssignmentKind::Sum), &soc(&[1, 2]), &scope).unwrap();
        assert_eq!(m.coalitions, vec![Coalition::new([1, 2]).unwrap()]);
        assert_eq!(m.dictator, None);
        let m = minimal_decisive(&op(AssignmentKind::SigmaPseudoProjective), &soc(&[1, 2]), &scope).unwrap();
        assert_eq!(m.coalitions, vec![Coalition::new([2]).unwrap()]);
    }

    #[test]
    fn sum_singleton_not_decisive_with_replayable_witness() {
        let o = op(AssignmentKind::Sum);
        let r = is_decisive(&o, &soc(&[1, 2]), &Coalition::new([1]).unwrap(), &CheckScope::default()).unwrap();
        assert!(!r.holds());
        assert_eq!(r.syntactic_agrees, Some(true));
        let w = r.verdict.witness().unwrap();
        let (x, y) = (w.worlds[0], w.worlds[1]);
        let p = w.profile.as_ref().unwrap();
        let single = crate::society::Profile::singleton(p.agents()[0], p.states()[0]);
        assert!(o.assign(&single).unwrap().strictly_prefers(x, y));
        assert!(!o.assign(p).unwrap().strictly_prefers(x, y));
    }

    #[test]
    fn propagation_instances() {
        let scope = CheckScope::default();
        assert!(check_propagation(&op(AssignmentKind::Projective), &soc(&[1, 2]), &scope).unwrap().is_satisfied());
        let v = check_propagation(&op(AssignmentKind::Sum), &soc(&[1, 2]), &scope).unwrap();
        assert!(matches!(v, Verdict::Skipped { ref reason } if reason.contains("ESF-I")));
    }
}
