use std::collections::HashMap;

use rayon::prelude::*;

use super::{decode, sub_index, Checker, DictatorReport, NONE};
use crate::logic::World;
use crate::preorder::{render_shape, triple_shape_codes};
use crate::society::two_partition_masks;
use crate::verdict::{PostulateId, Verdict, Witness};

impl Checker<'_> {
    pub(super) fn satisfied(&self) -> Verdict {
        Verdict::Satisfied { scope: self.scope_text(self.scope.refute_max) }
    }

    /// First profile of `soc` (in enumeration order) for which `f` reports something.
    pub(crate) fn first_profile<W, F>(&self, soc: u32, f: F) -> Option<(usize, W)>
    where
        W: Send,
        F: Fn(usize, &[u8; 16]) -> Option<W> + Sync,
    {
        let k = soc.count_ones() as usize;
        let ns = self.ns();
        (0..self.profile_count(k))
            .into_par_iter()
            .find_map_first(|idx| f(idx, &decode(idx, ns, k)).map(|w| (idx, w)))
    }

    pub(crate) fn witness_at(&self, soc: u32, idx: usize, c: Option<usize>) -> Witness {
        let mut w = Witness {
            society: Some(self.society(soc)),
            profile: Some(self.profile(soc, idx)),
            ..Witness::default()
        };
        if let Some(c) = c {
            w.constraint = Some(self.constraints[c].beliefs);
            w.constraint_state = self.constraint_state(c);
        }
        w
    }

    /// Interned result signature of every image over all constraints.
    pub(super) fn signatures(&self) -> Vec<u32> {
        let mut ids: HashMap<Vec<u16>, u32> = HashMap::new();
        (0..self.ns())
            .map(|g| {
                let row: Vec<u16> = (0..self.nc()).map(|c| self.res(g as u8, c)).collect();
                let next = ids.len() as u32;
                *ids.entry(row).or_insert(next)
            })
            .collect()
    }

    pub(super) fn check_esf1(&self) -> Verdict {
        let bad: Vec<Option<usize>> = (0..self.ns())
            .map(|g| (0..self.nc()).find(|&c| self.res(g as u8, c) & !self.constraints[c].beliefs.mask() != 0))
            .collect();
        for soc in self.societies(1, self.scope.refute_max) {
            let imgs = self.images(soc);
            if let Some((idx, c)) = self.first_profile(soc, |idx, _| bad[imgs[idx] as usize]) {
                let r = self.set(self.res(imgs[idx], c));
                let mut w = self.witness_at(soc, idx, Some(c)).observe("r(Φ,E)", r);
                w.note = format!("the result {r} is not contained in the constraint");
                return Verdict::violated(w);
            }
        }
        self.satisfied()
    }

    pub(super) fn check_esf2(&self) -> Verdict {
        // phase A: another state with the same beliefs changes the result
        let alt: Vec<Option<(usize, u8)>> = (0..self.ns())
            .map(|g| {
                let img = *self.space.state(g as u8);
                (0..self.nc()).find_map(|c| {
                    let con = &self.constraints[c];
                    (0..self.ns()).find_map(|s| {
                        let st = self.space.state(s as u8);
                        let differs = st.top() == con.beliefs
                            && *st != con.state
                            && st.lex_unchecked(&img).top().mask() != self.res(g as u8, c);
                        differs.then_some((c, s as u8))
                    })
                })
            })
            .collect();
        let sig = self.signatures();
        for k in 1..=self.scope.refute_max {
            let socs = self.societies(k, k);
            for (i, &soc) in socs.iter().enumerate() {
                let imgs = self.images(soc);
                if let Some((idx, (c, s))) = self.first_profile(soc, |idx, _| alt[imgs[idx] as usize]) {
                    let img = *self.space.state(imgs[idx]);
                    let other = self.space.state(s).lex_unchecked(&img).top();
                    let mut w = self.witness_at(soc, idx, Some(c));
                    w.constraint_state = Some(self.constraints[c].state);
                    w.other_state = Some(*self.space.state(s));
                    w.other_profile = w.profile.clone();
                    w.note = "two constraint states with the same beliefs give different results".into();
                    return Verdict::violated(
                        w.observe("r(Φ,E)", self.set(self.res(imgs[idx], c))).observe("r(Φ,E')", other),
                    );
                }
                for &other in &socs[i + 1..] {
                    let imgs2 = self.images(other);
                    let found = self.first_profile(soc, |idx, _| {
                        (sig[imgs[idx] as usize] != sig[imgs2[idx] as usize]).then_some(())
                    });
                    if let Some((idx, ())) = found {
                        let c = self.distinguishing(imgs[idx], imgs2[idx]).expect("signatures differ");
                        let mut w = self.witness_at(soc, idx, Some(c));
                        w.other_profile = Some(self.profile(other, idx));
                        w.note = "equivalent profiles over different societies give different results".into();
                        return Verdict::violated(
                            w.observe("r(Φ,E)", self.set(self.res(imgs[idx], c)))
                                .observe("r(Φ',E)", self.set(self.res(imgs2[idx], c))),
                        );
                    }
                }
            }
        }
        self.satisfied()
    }

    /// ESF3 (`weak = false`) and ESF4 (`weak = true`).
    pub(super) fn check_esf34(&self, esf4: bool) -> Verdict {
        let n = self.world_count();
        let mut by_mask: Vec<Vec<usize>> = vec![Vec::new(); 1 << n];
        for (c, con) in self.constraints.iter().enumerate() {
            by_mask[con.beliefs.mask() as usize].push(c);
        }
        let bad: Vec<Option<(usize, u16, usize)>> = (0..self.ns())
            .map(|g| {
                let g = g as u8;
                for c1 in 0..self.nc() {
                    let r1 = self.res(g, c1);
                    for e2 in 1u16..(1 << n) {
                        let m = self.constraints[c1].beliefs.mask() & e2;
                        if m == 0 {
                            continue;
                        }
                        let lhs = r1 & e2;
                        for &c in &by_mask[m as usize] {
                            let r = self.res(g, c);
                            let fails = if esf4 { lhs != 0 && r & !lhs != 0 } else { lhs & !r != 0 };
                            if fails {
                                return Some((c1, e2, c));
                            }
                        }
                    }
                }
                None
            })
            .collect();
        for soc in self.societies(1, self.scope.refute_max) {
            let imgs = self.images(soc);
            if let Some((idx, (c1, e2, c))) = self.first_profile(soc, |idx, _| bad[imgs[idx] as usize]) {
                let g = imgs[idx];
                let mut w = self.witness_at(soc, idx, Some(c));
                w.other_constraints = vec![self.constraints[c1].beliefs, self.set(e2)];
                w.other_state = self.constraint_state(c1);
                w.note = if esf4 {
                    "r(Φ,E') ∧ E'' is consistent but r(Φ,E' ∧ E'') is not contained in it".into()
                } else {
                    "r(Φ,E') ∧ E'' is not contained in r(Φ,E' ∧ E'')".into()
                };
                return Verdict::violated(
                    w.observe("r(Φ,E')", self.set(self.res(g, c1))).observe("r(Φ,E)", self.set(self.res(g, c))),
                );
            }
        }
        self.satisfied()
    }

    pub(super) fn check_esf5(&self) -> Verdict {
        let sig = self.signatures();
        let m = self.scope.agents.len();
        for j in 0..m {
            for k in 0..m {
                let (sj, sk) = (self.single(j), self.single(k));
                for s in 0..self.ns() {
                    for s2 in 0..self.ns() {
                        if s != s2 && sig[sj[s] as usize] == sig[sk[s2] as usize] {
                            let agents = self.scope.agents.members();
                            let w = Witness {
                                agents: vec![agents[j], agents[k]],
                                profile: Some(self.singleton_profile(j, s as u8)),
                                other_profile: Some(self.singleton_profile(k, s2 as u8)),
                                note: "different states that no constraint tells apart".into(),
                                ..Witness::default()
                            };
                            return Verdict::violated(w);
                        }
                    }
                }
            }
        }
        Verdict::Satisfied {
            scope: format!(
                "exhaustive over all single agents of {} and all {} states, {} constraints",
                self.scope.agents,
                self.ns(),
                self.nc()
            ),
        }
    }

    pub(super) fn check_esf6(&self) -> Verdict {
        let full = (1u16 << self.world_count()) - 1;
        for soc in self.societies(1, self.scope.refute_max) {
            let imgs = self.images(soc);
            let k = soc.count_ones() as usize;
            let found = self.first_profile(soc, |idx, d| {
                let t = d[..k].iter().fold(full, |acc, &s| acc & self.space.top(s));
                if t == 0 {
                    return None;
                }
                (0..self.nc()).find(|&c| {
                    let m = t & self.constraints[c].beliefs.mask();
                    m != 0 && self.res(imgs[idx], c) != m
                })
            });
            if let Some((idx, c)) = found {
                let d = decode(idx, self.ns(), k);
                let t = d[..k].iter().fold(full, |acc, &s| acc & self.space.top(s));
                let mut w = self.witness_at(soc, idx, Some(c));
                w.note = "the agents' beliefs are jointly consistent with E but the result is not their conjunction".into();
                return Verdict::violated(
                    w.observe("∧B(Φ)", self.set(t)).observe("r(Φ,E)", self.set(self.res(imgs[idx], c))),
                );
            }
        }
        self.satisfied()
    }

    pub(super) fn check_partition(&self, id: PostulateId) -> Verdict {
        let table = self.triple_table(id);
        let ns = self.ns();
        for soc in self.societies(2, self.scope.refute_max) {
            let k = soc.count_ones() as usize;
            let imgs = self.images(soc);
            let parts: Vec<(u32, u32, &[u8], &[u8])> = two_partition_masks(k)
                .into_iter()
                .map(|(a, b)| (a, b, self.images(self.block(soc, a)), self.images(self.block(soc, b))))
                .collect();
            let found = self.first_profile(soc, |idx, d| {
                let g = imgs[idx] as usize;
                parts.iter().enumerate().find_map(|(pi, (a, b, ia, ib))| {
                    let i1 = ia[sub_index(d, k, *a, ns)] as usize;
                    let i2 = ib[sub_index(d, k, *b, ns)] as usize;
                    let c = table[(g * ns + i1) * ns + i2];
                    (c != NONE).then_some((pi, c as usize))
                })
            });
            if let Some((idx, (pi, c))) = found {
                let d = decode(idx, ns, k);
                let (a, b, ia, ib) = parts[pi];
                let (r1, r2) = (self.res(ia[sub_index(&d, k, a, ns)], c), self.res(ib[sub_index(&d, k, b, ns)], c));
                let mut w = self.witness_at(soc, idx, Some(c));
                w.partition = Some((self.society(self.block(soc, a)), self.society(self.block(soc, b))));
                w.note = match id {
                    PostulateId::ESF7 => "r(Φ1,E) ∧ r(Φ2,E) is not contained in r(Φ,E)",
                    PostulateId::ESF8 => "r(Φ1,E) ∧ r(Φ2,E) is consistent but r(Φ,E) is not contained in it",
                    _ => "r(Φ1,E) ∧ r(Φ2,E) is consistent but r(Φ,E) is not contained in r(Φ1,E) ∨ r(Φ2,E)",
                }
                .into();
                return Verdict::violated(
                    w.observe("r(Φ1,E)", self.set(r1))
                        .observe("r(Φ2,E)", self.set(r2))
                        .observe("r(Φ,E)", self.set(self.res(imgs[idx], c))),
                );
            }
        }
        self.satisfied()
    }

    pub(super) fn check_sd(&self) -> Verdict {
        let n = self.world_count();
        let vc = self.scope.var_count;
        let shapes = triple_shape_codes();
        for pos in 0..self.scope.agents.len() {
            let single = self.single(pos);
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        let triple = [World(a as u8), World(b as u8), World(c as u8)];
                        let mut covered = [false; 27];
                        for &g in single {
                            let r = self.space.state(g).restrict(&triple).expect("distinct worlds");
                            covered[r.code as usize] = true;
                        }
                        if let Some(&shape) = shapes.iter().find(|&&s| !covered[s as usize]) {
                            let w = Witness {
                                agents: vec![self.scope.agents.members()[pos]],
                                worlds: triple.to_vec(),
                                shape: Some(shape),
                                note: format!(
                                    "no state of this agent yields the pattern {} on these worlds",
                                    render_shape(&triple, shape, vc)
                                ),
                                ..Witness::default()
                            };
                            return Verdict::violated(w);
                        }
                    }
                }
            }
        }
        Verdict::Satisfied {
            scope: format!("exhaustive over every agent of {}, every triple of worlds and all 13 patterns", self.scope.agents),
        }
    }

    pub(super) fn uniform_index(&self, state: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| acc * self.ns() + state)
    }

    pub(super) fn check_u(&self, max_models: usize) -> Verdict {
        let cs = self.small_constraints(max_models);
        for soc in self.societies(1, self.scope.refute_max) {
            let k = soc.count_ones() as usize;
            let imgs = self.images(soc);
            let pos = self.positions(soc);
            for s in 0..self.ns() {
                let idx = self.uniform_index(s, k);
                let g = imgs[idx];
                for &c in &cs {
                    if let Some(&p) = pos.iter().find(|&&p| self.res(self.single(p)[s], c) != self.res(g, c)) {
                        let mut w = self.witness_at(soc, idx, Some(c));
                        w.agents = vec![self.scope.agents.members()[p]];
                        w.note = "a unanimous profile whose result differs from the shared individual result".into();
                        return Verdict::violated(
                            w.observe("r(E_i,E)", self.set(self.res(self.single(p)[s], c)))
                                .observe("r(Φ,E)", self.set(self.res(g, c))),
                        );
                    }
                }
            }
        }
        self.satisfied()
    }

    pub(super) fn check_p(&self, max_models: usize) -> Verdict {
        let cs = self.small_constraints(max_models);
        let full = (1u16 << self.world_count()) - 1;
        for soc in self.societies(1, self.scope.refute_max) {
            let k = soc.count_ones() as usize;
            let imgs = self.images(soc);
            let pos = self.positions(soc);
            let singles: Vec<&[u8]> = pos.iter().map(|&p| self.single(p)).collect();
            let found = self.first_profile(soc, |idx, d| {
                cs.iter().find_map(|&c| {
                    let (mut inter, mut union) = (full, 0u16);
                    for j in 0..k {
                        let r = self.res(singles[j][d[j] as usize], c);
                        inter &= r;
                        union |= r;
                    }
                    let bad = self.res(imgs[idx], c) & !union;
                    (inter != 0 && bad != 0).then(|| (c, bad & bad.wrapping_neg()))
                })
            });
            if let Some((idx, (c, e1))) = found {
                let d = decode(idx, self.ns(), k);
                let mut w = self.witness_at(soc, idx, Some(c));
                w.other_constraints = vec![self.set(e1)];
                w.note = "every agent believes something consistent together, yet E' is accepted although no agent accepts it".into();
                for j in 0..k {
                    let label = format!("r(E_{},E)", self.scope.agents.members()[pos[j]]);
                    w = w.observe(label, self.set(self.res(singles[j][d[j] as usize], c)));
                }
                return Verdict::violated(w.observe("r(Φ,E)", self.set(self.res(imgs[idx], c))));
            }
        }
        self.satisfied()
    }

    /// Reduced form: only constraints with at most two models are quantified.
    pub(super) fn check_i(&self) -> Verdict {
        let small = self.small_constraints(2);
        let n = self.world_count();
        for soc in self.societies(1, self.scope.refute_max) {
            let k = soc.count_ones() as usize;
            let imgs = self.images(soc);
            let pos = self.positions(soc);
            let singles: Vec<&[u8]> = pos.iter().map(|&p| self.single(p)).collect();
            let found = small.par_iter().find_map_first(|&c| {
                let mut rep = Representatives::new(n * k);
                let ns = self.ns();
                for idx in 0..self.profile_count(k) {
                    let d = decode(idx, ns, k);
                    let key = (0..k).fold(0u64, |acc, j| acc << n | self.res(singles[j][d[j] as usize], c) as u64);
                    let r = self.res(imgs[idx], c);
                    if let Some((first, r0)) = rep.first(key, idx, r) {
                        if r0 != r {
                            return Some((c, first, idx));
                        }
                    }
                }
                None
            });
            if let Some((c, first, idx)) = found {
                let mut w = self.witness_at(soc, first, Some(c));
                w.other_profile = Some(self.profile(soc, idx));
                w.note = "the agents judge every part of E alike in both profiles, yet the results differ".into();
                return Verdict::violated(
                    w.observe("r(Φ,E)", self.set(self.res(imgs[first], c)))
                        .observe("r(Φ',E)", self.set(self.res(imgs[idx], c))),
                );
            }
        }
        Verdict::Satisfied {
            scope: format!("{} (constraints with at most two models)", self.scope_text(self.scope.refute_max)),
        }
    }

    /// Full form: the premise compares individual results on every
    /// consistent strengthening of the constraint.
    pub(super) fn check_i_full(&self) -> Verdict {
        let n = self.world_count();
        for soc in self.societies(1, self.scope.refute_max) {
            let k = soc.count_ones() as usize;
            let imgs = self.images(soc);
            let pos = self.positions(soc);
            let singles: Vec<&[u8]> = pos.iter().map(|&p| self.single(p)).collect();
            let found = (0..self.nc()).into_par_iter().find_map_first(|c| {
                let b = self.constraints[c].beliefs.mask();
                let subs: Vec<usize> =
                    (1u16..1 << n).filter(|m| m & !b == 0).map(|m| self.canon[m as usize]).collect();
                let mut ids: HashMap<Vec<u16>, u64> = HashMap::new();
                let class: Vec<u64> = (0..self.ns())
                    .map(|g| {
                        let row: Vec<u16> = subs.iter().map(|&s| self.res(g as u8, s)).collect();
                        let next = ids.len() as u64;
                        *ids.entry(row).or_insert(next)
                    })
                    .collect();
                let bits = (64 - (ids.len() as u64).leading_zeros()).max(1) as usize;
                let mut rep = Representatives::new(bits * k);
                let ns = self.ns();
                for idx in 0..self.profile_count(k) {
                    let d = decode(idx, ns, k);
                    let key = (0..k).fold(0u64, |acc, j| acc << bits | class[singles[j][d[j] as usize] as usize]);
                    let r = self.res(imgs[idx], c);
                    if let Some((first, r0)) = rep.first(key, idx, r) {
                        if r0 != r {
                            return Some((c, first, idx));
                        }
                    }
                }
                None
            });
            if let Some((c, first, idx)) = found {
                let mut w = self.witness_at(soc, first, Some(c));
                w.other_profile = Some(self.profile(soc, idx));
                w.note = "the agents judge every strengthening of E alike in both profiles, yet the results differ".into();
                return Verdict::violated(
                    w.observe("r(Φ,E)", self.set(self.res(imgs[first], c)))
                        .observe("r(Φ',E)", self.set(self.res(imgs[idx], c))),
                );
            }
        }
        self.satisfied()
    }

    /// Per-society scan for agents whose individual result always contains the group result.
    pub(super) fn check_d(&self, full: bool, max_models: usize) -> DictatorReport {
        let ns = self.ns();
        let cs = self.small_constraints(max_models);
        let fail: Vec<u8> = (0..ns * ns)
            .into_par_iter()
            .map(|x| {
                let (g, s) = ((x / ns) as u8, (x % ns) as u8);
                cs.iter()
                    .find(|&&c| self.res(g, c) & !self.res(s, c) != 0)
                    .map_or(NONE, |&c| c as u8)
            })
            .collect();
        self.dictator_scan(full, |soc, j| {
            let k = soc.count_ones() as usize;
            let imgs = self.images(soc);
            let p = self.positions(soc)[j];
            let single = self.single(p);
            self.first_profile(soc, |idx, d| {
                let c = fail[imgs[idx] as usize * ns + single[d[j] as usize] as usize];
                (c != NONE).then_some(c as usize)
            })
            .map(|(idx, c)| {
                let d = decode(idx, ns, k);
                let mut w = self.witness_at(soc, idx, Some(c));
                w.agents = vec![self.scope.agents.members()[p]];
                w.observe("r(Φ,E)", self.set(self.res(imgs[idx], c)))
                    .observe("r(E_d,E)", self.set(self.res(single[d[j] as usize], c)))
            })
        })
    }

    /// Shared driver for the dictator scans: `eliminate(soc, j)` returns a
    /// counterexample showing the `j`-th member is not a dictator.
    pub(super) fn dictator_scan<F>(&self, full: bool, eliminate: F) -> DictatorReport
    where
        F: Fn(u32, usize) -> Option<Witness>,
    {
        let mut per_society = Vec::new();
        let mut verdict = None;
        for soc in self.societies(1, self.scope.refute_max) {
            let members = self.members(soc);
            let mut survivors = Vec::new();
            let mut parts = Vec::new();
            for (j, &a) in members.iter().enumerate() {
                match eliminate(soc, j) {
                    Some(w) => parts.push(w),
                    None => survivors.push(a),
                }
                if !full && !survivors.is_empty() {
                    break;
                }
            }
            if survivors.is_empty() && verdict.is_none() {
                verdict = Some(Verdict::violated(Witness {
                    society: Some(self.society(soc)),
                    agents: members.clone(),
                    parts,
                    note: "every member has a profile in which the group overrides them".into(),
                    ..Witness::default()
                }));
                if !full {
                    per_society.push((self.society(soc), survivors));
                    break;
                }
            }
            per_society.push((self.society(soc), survivors));
        }
        DictatorReport { per_society, verdict: verdict.unwrap_or_else(|| self.satisfied()) }
    }
}

/// First profile seen for each signature key, dense when the key space is small.
pub(super) enum Representatives<V: Copy> {
    Dense(Vec<Option<(usize, V)>>),
    Sparse(HashMap<u64, (usize, V)>),
}

impl<V: Copy> Representatives<V> {
    pub(super) fn new(key_bits: usize) -> Self {
        if key_bits <= 20 {
            Representatives::Dense(vec![None; 1 << key_bits])
        } else {
            Representatives::Sparse(HashMap::new())
        }
    }

    /// Records `(idx, v)` if `key` is new; otherwise returns the earlier entry.
    pub(super) fn first(&mut self, key: u64, idx: usize, v: V) -> Option<(usize, V)> {
        match self {
            Representatives::Dense(t) => {
                let slot = &mut t[key as usize];
                match slot {
                    Some(e) => Some(*e),
                    None => {
                        *slot = Some((idx, v));
                        None
                    }
                }
            }
            Representatives::Sparse(m) => match m.get(&key) {
                Some(e) => Some(*e),
                None => {
                    m.insert(key, (idx, v));
                    None
                }
            },
        }
    }
}
