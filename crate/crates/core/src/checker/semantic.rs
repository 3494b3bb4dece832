use rayon::prelude::*;

use super::syntactic::Representatives;
use super::{decode, pair_of_bit, sub_index, Checker, DictatorReport};
use crate::logic::World;
use crate::society::two_partition_masks;
use crate::verdict::{PostulateId, Verdict, Witness};

impl Checker<'_> {
    fn pair_text(&self, a: World, b: World) -> (String, String) {
        let vc = self.scope.var_count;
        (a.render(vc), b.render(vc))
    }

    pub(super) fn check_p1(&self) -> Verdict {
        let m = self.scope.agents.len();
        for j in 0..m {
            for k in 0..m {
                let (sj, sk) = (self.single(j), self.single(k));
                for s in 0..self.ns() {
                    for s2 in 0..self.ns() {
                        if s != s2 && sj[s] == sk[s2] {
                            let agents = self.scope.agents.members();
                            return Verdict::violated(Witness {
                                agents: vec![agents[j], agents[k]],
                                profile: Some(self.singleton_profile(j, s as u8)),
                                other_profile: Some(self.singleton_profile(k, s2 as u8)),
                                note: format!("both states are assigned {}", self.space.state(sj[s])),
                                ..Witness::default()
                            });
                        }
                    }
                }
            }
        }
        Verdict::Satisfied {
            scope: format!("exhaustive over all single agents of {} and all {} states", self.scope.agents, self.ns()),
        }
    }

    pub(super) fn check_p2(&self) -> Verdict {
        let full = (1u16 << self.world_count()) - 1;
        for soc in self.societies(1, self.scope.refute_max) {
            let k = soc.count_ones() as usize;
            let imgs = self.images(soc);
            let found = self.first_profile(soc, |idx, d| {
                let t = d[..k].iter().fold(full, |acc, &s| acc & self.space.top(s));
                (t != 0 && self.space.top(imgs[idx]) != t).then_some(t)
            });
            if let Some((idx, t)) = found {
                let mut w = self.witness_at(soc, idx, None);
                w.note = "the most plausible worlds of ⪰_Φ are not the shared beliefs".into();
                return Verdict::violated(
                    w.observe("∧B(Φ)", self.set(t)).observe("max(⪰_Φ)", self.set(self.space.top(imgs[idx]))),
                );
            }
        }
        self.satisfied()
    }

    pub(super) fn check_sem_partition(&self, id: PostulateId) -> Verdict {
        let ns = self.ns();
        let sp = &self.space;
        let fails = |g: u8, a: u8, b: u8| -> u64 {
            match id {
                PostulateId::P3 => sp.weak(a) & sp.weak(b) & !sp.weak(g),
                PostulateId::P4 => {
                    (sp.weak(a) & sp.strict(b) | sp.strict(a) & sp.weak(b)) & !sp.strict(g)
                }
                _ => sp.strict(a) & sp.strict(b) & !sp.strict(g),
            }
        };
        for soc in self.societies(2, self.scope.refute_max) {
            let k = soc.count_ones() as usize;
            let imgs = self.images(soc);
            let parts: Vec<(u32, u32, &[u8], &[u8])> = two_partition_masks(k)
                .into_iter()
                .map(|(a, b)| (a, b, self.images(self.block(soc, a)), self.images(self.block(soc, b))))
                .collect();
            let found = self.first_profile(soc, |idx, d| {
                parts.iter().enumerate().find_map(|(pi, (a, b, ia, ib))| {
                    let bad = fails(imgs[idx], ia[sub_index(d, k, *a, ns)], ib[sub_index(d, k, *b, ns)]);
                    (bad != 0).then_some((pi, bad))
                })
            });
            if let Some((idx, (pi, bad))) = found {
                let (a, b, _, _) = parts[pi];
                let (x, y) = pair_of_bit(bad);
                let (xs, ys) = self.pair_text(x, y);
                let mut w = self.witness_at(soc, idx, None);
                w.partition = Some((self.society(self.block(soc, a)), self.society(self.block(soc, b))));
                w.worlds = vec![x, y];
                w.note = match id {
                    PostulateId::P3 => format!("both parts have {xs} ⪰ {ys} but the whole does not"),
                    PostulateId::P4 => {
                        format!("one part has {xs} ≻ {ys}, the other {xs} ⪰ {ys}, but the whole lacks {xs} ≻ {ys}")
                    }
                    _ => format!("both parts have {xs} ≻ {ys} but the whole does not"),
                };
                return Verdict::violated(w);
            }
        }
        self.satisfied()
    }

    pub(super) fn check_max(&self) -> Verdict {
        for pos in 0..self.scope.agents.len() {
            let single = self.single(pos);
            for s in 0..self.ns() {
                if self.space.top(single[s]) != self.space.top(s as u8) {
                    let mut w = Witness {
                        agents: vec![self.scope.agents.members()[pos]],
                        profile: Some(self.singleton_profile(pos, s as u8)),
                        note: "the assigned preorder moves the agent's beliefs".into(),
                        ..Witness::default()
                    };
                    w = w
                        .observe("B(E)", self.set(self.space.top(s as u8)))
                        .observe("max(⪰_E)", self.set(self.space.top(single[s])));
                    return Verdict::violated(w);
                }
            }
        }
        Verdict::Satisfied {
            scope: format!("exhaustive over all single agents of {} and all {} states", self.scope.agents, self.ns()),
        }
    }

    pub(super) fn check_sem_u(&self) -> Verdict {
        for soc in self.societies(1, self.scope.refute_max) {
            let k = soc.count_ones() as usize;
            let imgs = self.images(soc);
            for s in 0..self.ns() {
                let idx = self.uniform_index(s, k);
                if let Some(p) = self.positions(soc).into_iter().find(|&p| self.single(p)[s] != imgs[idx]) {
                    let mut w = self.witness_at(soc, idx, None);
                    w.agents = vec![self.scope.agents.members()[p]];
                    w.note = format!(
                        "unanimous profile assigned {} while the agent alone is assigned {}",
                        self.space.state(imgs[idx]),
                        self.space.state(self.single(p)[s])
                    );
                    return Verdict::violated(w);
                }
            }
        }
        self.satisfied()
    }

    pub(super) fn check_sem_p(&self) -> Verdict {
        for soc in self.societies(1, self.scope.refute_max) {
            let k = soc.count_ones() as usize;
            let imgs = self.images(soc);
            let singles: Vec<&[u8]> = self.positions(soc).into_iter().map(|p| self.single(p)).collect();
            let found = self.first_profile(soc, |idx, d| {
                let all = (0..k).fold(u64::MAX, |acc, j| acc & self.space.strict(singles[j][d[j] as usize]));
                let bad = all & !self.space.strict(imgs[idx]);
                (bad != 0).then_some(bad)
            });
            if let Some((idx, bad)) = found {
                let (x, y) = pair_of_bit(bad);
                let (xs, ys) = self.pair_text(x, y);
                let mut w = self.witness_at(soc, idx, None);
                w.worlds = vec![x, y];
                w.note = format!("every agent has {xs} ≻ {ys} but the group does not");
                return Verdict::violated(w);
            }
        }
        self.satisfied()
    }

    /// Comparison code of every image on every unordered world pair.
    fn pair_codes(&self) -> (Vec<(World, World)>, Vec<Vec<u8>>) {
        let n = self.world_count();
        let pairs: Vec<(World, World)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (World(a as u8), World(b as u8))))
            .collect();
        let codes = (0..self.ns())
            .map(|g| pairs.iter().map(|&(a, b)| self.space.state(g as u8).compare(a, b).code()).collect())
            .collect();
        (pairs, codes)
    }

    pub(super) fn check_sem_ind(&self) -> Verdict {
        let (pairs, codes) = self.pair_codes();
        for soc in self.societies(1, self.scope.refute_max) {
            let k = soc.count_ones() as usize;
            let imgs = self.images(soc);
            let singles: Vec<&[u8]> = self.positions(soc).into_iter().map(|p| self.single(p)).collect();
            let found = (0..pairs.len()).into_par_iter().find_map_first(|pi| {
                let mut rep = Representatives::new(2 * k);
                let ns = self.ns();
                for idx in 0..self.profile_count(k) {
                    let d = decode(idx, ns, k);
                    let key = (0..k).fold(0u64, |acc, j| acc << 2 | codes[singles[j][d[j] as usize] as usize][pi] as u64);
                    let v = codes[imgs[idx] as usize][pi];
                    if let Some((first, v0)) = rep.first(key, idx, v) {
                        if v0 != v {
                            return Some((pi, first, idx));
                        }
                    }
                }
                None
            });
            if let Some((pi, first, idx)) = found {
                let (a, b) = pairs[pi];
                let (xs, ys) = self.pair_text(a, b);
                let mut w = self.witness_at(soc, first, None);
                w.other_profile = Some(self.profile(soc, idx));
                w.worlds = vec![a, b];
                w.note = format!("the agents compare {xs} and {ys} alike in both profiles but the group does not");
                return Verdict::violated(w);
            }
        }
        self.satisfied()
    }

    pub(super) fn check_sem_d(&self, full: bool) -> DictatorReport {
        self.dictator_scan(full, |soc, j| {
            let imgs = self.images(soc);
            let p = self.positions(soc)[j];
            let single = self.single(p);
            self.first_profile(soc, |idx, d| {
                let bad = self.space.strict(single[d[j] as usize]) & !self.space.strict(imgs[idx]);
                (bad != 0).then_some(bad)
            })
            .map(|(idx, bad)| {
                let (x, y) = pair_of_bit(bad);
                let (xs, ys) = self.pair_text(x, y);
                let mut w = self.witness_at(soc, idx, None);
                w.agents = vec![self.scope.agents.members()[p]];
                w.worlds = vec![x, y];
                w.note = format!("the agent has {xs} ≻ {ys} but the group does not");
                w
            })
        })
    }
}
