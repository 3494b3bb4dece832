//! Exhaustive postulate checking with replayable counterexamples.
//!
//! A [`Checker`] compiles an operator against a scope: every total preorder
//! gets an index, every profile of every society in scope is mapped to the
//! index of its assigned preorder, and the beliefs of applying each constraint
//! to each preorder are tabulated. Checks then run over these tables in the
//! deterministic order societies → profiles → partitions → constraints, so
//! the first witness found is stable across runs and thread counts.

mod cross;
mod meta;
mod prop5;
mod replay;
mod semantic;
mod syntactic;
mod table1;

use std::collections::HashMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion::{canonical_state, FusionOperator};
use crate::logic::{BeliefSet, World};
use crate::preorder::{all_preorders, ordered_bell, TotalPreorder};
use crate::society::{two_partition_masks, AgentId, Profile, Society};
use crate::verdict::{PostulateId, Verdict};

pub use cross::{cross_validate, cross_validate_seeded, CrossValidation, EQUIVALENCES, SAMPLE_SEED};
pub use meta::{check_metatheorems, Conclusion, Implication, Matrix, MetaReport, IMPLICATIONS};
pub use prop5::check_prop5_consequences;
pub use replay::replay;
pub use table1::{expected_table1, run_table1, run_table1_for, CellStatus, Table1, Table1Cell, EXTRA_COLUMNS};

/// Default ceiling on estimated elementary steps per check.
pub const DEFAULT_COST_CEILING: f64 = 1e10;
/// Largest state space the compiled tables support (indices are bytes).
pub const MAX_STATES: usize = 255;
const NONE: u8 = u8::MAX;

/// How the main constraint `E` of each postulate is enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintMode {
    /// One canonical two-level state per consistent belief set.
    BeliefSets,
    /// Every total preorder.
    AllStates,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckScope {
    pub var_count: usize,
    pub agents: Society,
    pub verify_max: usize,
    pub refute_max: usize,
    pub constraint_mode: ConstraintMode,
    pub cost_ceiling: f64,
}

impl Default for CheckScope {
    fn default() -> Self {
        CheckScope {
            var_count: 2,
            agents: Society::new([1, 2, 3, 4]).expect("valid"),
            verify_max: 3,
            refute_max: 4,
            constraint_mode: ConstraintMode::BeliefSets,
            cost_ceiling: DEFAULT_COST_CEILING,
        }
    }
}

impl CheckScope {
    pub fn validate(&self) -> Result<()> {
        if !(2..=crate::logic::MAX_VARS).contains(&self.var_count) {
            return Err(Error::VarCount(self.var_count));
        }
        if self.verify_max < 1 || self.refute_max < self.verify_max {
            return Err(Error::InvalidScope(format!(
                "need refute_max ≥ verify_max ≥ 1, got verify_max = {}, refute_max = {}",
                self.verify_max, self.refute_max
            )));
        }
        if self.refute_max > self.agents.len() {
            return Err(Error::InvalidScope(format!(
                "refute_max = {} exceeds the {} agents of {}",
                self.refute_max,
                self.agents.len(),
                self.agents
            )));
        }
        if self.agents.len() > 12 {
            return Err(Error::InvalidScope("at most 12 agents are supported".into()));
        }
        Ok(())
    }

    pub fn world_count(&self) -> usize {
        1 << self.var_count
    }

    pub fn with_verify_max(mut self, k: usize) -> Self {
        self.verify_max = k;
        self
    }

    pub fn with_refute_max(mut self, k: usize) -> Self {
        self.refute_max = k;
        self
    }

    pub fn with_agents(mut self, agents: Society) -> Self {
        self.agents = agents;
        self
    }

    /// The same scope with the search capped at `verify_max`.
    pub fn verify_only(&self) -> CheckScope {
        let mut s = self.clone();
        s.refute_max = s.verify_max;
        s
    }
}

/// Every total preorder of the universe, indexed.
#[derive(Debug, Clone)]
pub struct StateSpace {
    states: Vec<TotalPreorder>,
    index: HashMap<TotalPreorder, u8>,
    tops: Vec<u16>,
    weak: Vec<u64>,
    strict: Vec<u64>,
}

impl StateSpace {
    pub fn new(world_count: usize) -> Result<StateSpace> {
        let count = ordered_bell(world_count);
        if count > MAX_STATES as u128 {
            return Err(Error::CostCeiling {
                what: format!("compiling the {count} total preorders on {world_count} worlds"),
                estimate: count as f64,
                ceiling: MAX_STATES as f64,
            });
        }
        let states = all_preorders(world_count)?;
        let index = states.iter().enumerate().map(|(i, s)| (*s, i as u8)).collect();
        let tops = states.iter().map(|s| s.top().mask()).collect();
        let (weak, strict) = states.iter().map(|s| s.relation_masks()).unzip();
        Ok(StateSpace { states, index, tops, weak, strict })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[TotalPreorder] {
        &self.states
    }

    pub fn state(&self, i: u8) -> &TotalPreorder {
        &self.states[i as usize]
    }

    pub fn index_of(&self, tp: &TotalPreorder) -> u8 {
        self.index[tp]
    }

    #[inline]
    pub(crate) fn top(&self, i: u8) -> u16 {
        self.tops[i as usize]
    }

    #[inline]
    pub(crate) fn weak(&self, i: u8) -> u64 {
        self.weak[i as usize]
    }

    #[inline]
    pub(crate) fn strict(&self, i: u8) -> u64 {
        self.strict[i as usize]
    }
}

/// A constraint epistemic state together with its beliefs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Constraint {
    pub state: TotalPreorder,
    pub beliefs: BeliefSet,
}

/// An operator compiled against a scope.
pub struct Checker<'a> {
    pub(crate) op: &'a FusionOperator,
    pub(crate) scope: CheckScope,
    pub(crate) space: StateSpace,
    pub(crate) constraints: Vec<Constraint>,
    /// Constraint index of the canonical state for each belief mask.
    pub(crate) canon: Vec<usize>,
    res: Vec<u16>,
    tables: Vec<OnceLock<Vec<u8>>>,
    triple: [OnceLock<Vec<u8>>; 3],
}

impl<'a> Checker<'a> {
    pub fn new(op: &'a FusionOperator, scope: &CheckScope) -> Result<Checker<'a>> {
        scope.validate()?;
        let n = scope.world_count();
        if op.world_count() != n {
            return Err(Error::UniverseMismatch { left: op.world_count(), right: n });
        }
        let space = StateSpace::new(n)?;
        let mut constraints: Vec<Constraint> = match scope.constraint_mode {
            ConstraintMode::BeliefSets => BeliefSet::all_nonempty(n)
                .into_iter()
                .map(|m| Constraint { state: canonical_state(m).expect("nonempty"), beliefs: m })
                .collect(),
            ConstraintMode::AllStates => {
                space.states().iter().map(|s| Constraint { state: *s, beliefs: s.top() }).collect()
            }
        };
        constraints.sort_by_key(|c| (c.beliefs.len(), c.beliefs.mask()));
        let mut canon = vec![usize::MAX; 1 << n];
        for (i, c) in constraints.iter().enumerate() {
            if canonical_state(c.beliefs).ok() == Some(c.state) {
                canon[c.beliefs.mask() as usize] = i;
            }
        }
        let nc = constraints.len();
        let mut res = vec![0u16; space.len() * nc];
        for (g, img) in space.states().iter().enumerate() {
            for (c, con) in constraints.iter().enumerate() {
                res[g * nc + c] = con.state.lex_unchecked(img).top().mask();
            }
        }
        let tables = (0..1usize << scope.agents.len()).map(|_| OnceLock::new()).collect();
        Ok(Checker {
            op,
            scope: scope.clone(),
            space,
            constraints,
            canon,
            res,
            tables,
            triple: [OnceLock::new(), OnceLock::new(), OnceLock::new()],
        })
    }

    pub fn scope(&self) -> &CheckScope {
        &self.scope
    }

    pub fn operator(&self) -> &FusionOperator {
        self.op
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub(crate) fn nc(&self) -> usize {
        self.constraints.len()
    }

    pub(crate) fn ns(&self) -> usize {
        self.space.len()
    }

    pub(crate) fn world_count(&self) -> usize {
        self.scope.world_count()
    }

    /// Beliefs of applying constraint `c` to the preorder with index `img`.
    #[inline]
    pub(crate) fn res(&self, img: u8, c: usize) -> u16 {
        self.res[img as usize * self.constraints.len() + c]
    }

    pub(crate) fn set(&self, mask: u16) -> BeliefSet {
        BeliefSet::from_mask(mask, self.world_count())
    }

    /// Societies in scope (as masks over universe positions), by size then lexicographically.
    pub(crate) fn societies(&self, min: usize, max: usize) -> Vec<u32> {
        let m = self.scope.agents.len();
        let mut out: Vec<u32> = (1u32..(1 << m))
            .filter(|s| (min..=max).contains(&(s.count_ones() as usize)))
            .collect();
        out.sort_by_key(|s| (s.count_ones(), self.members(*s)));
        out
    }

    pub(crate) fn members(&self, soc: u32) -> Vec<AgentId> {
        let u = self.scope.agents.members();
        (0..u.len()).filter(|i| soc >> i & 1 == 1).map(|i| u[i]).collect()
    }

    pub(crate) fn society(&self, soc: u32) -> Society {
        Society::from_agents(self.members(soc)).expect("nonempty")
    }

    /// Universe positions of a society's members, ascending.
    pub(crate) fn positions(&self, soc: u32) -> Vec<usize> {
        (0..self.scope.agents.len()).filter(|i| soc >> i & 1 == 1).collect()
    }

    /// Universe mask of the members of `soc` selected by a positional block mask.
    pub(crate) fn block(&self, soc: u32, block: u32) -> u32 {
        self.positions(soc)
            .iter()
            .enumerate()
            .filter(|(j, _)| block >> j & 1 == 1)
            .fold(0, |acc, (_, p)| acc | 1 << p)
    }

    pub(crate) fn profile_count(&self, k: usize) -> usize {
        self.ns().pow(k as u32)
    }

    /// Image index of every profile of a society, in enumeration order.
    pub(crate) fn images(&self, soc: u32) -> &[u8] {
        self.tables[soc as usize].get_or_init(|| {
            let agents = self.members(soc);
            let k = agents.len();
            let ns = self.ns();
            let total = self.profile_count(k);
            let mut out = vec![0u8; total];
            out.par_chunks_mut(ns).enumerate().for_each(|(chunk, slot)| {
                let mut states = vec![*self.space.state(0); k];
                let prefix = decode(chunk * ns, ns, k);
                for (j, s) in states.iter_mut().enumerate().take(k - 1) {
                    *s = *self.space.state(prefix[j]);
                }
                for (last, out) in slot.iter_mut().enumerate() {
                    states[k - 1] = *self.space.state(last as u8);
                    *out = self.space.index_of(&self.op.assign_states(&agents, &states));
                }
            });
            out
        })
    }

    /// Image index of the singleton profile of the agent at universe position `pos`.
    pub(crate) fn single(&self, pos: usize) -> &[u8] {
        self.images(1 << pos)
    }

    pub(crate) fn profile(&self, soc: u32, idx: usize) -> Profile {
        let k = soc.count_ones() as usize;
        let d = decode(idx, self.ns(), k);
        Profile::new(self.society(soc), d[..k].iter().map(|&i| *self.space.state(i)).collect()).expect("valid")
    }

    pub(crate) fn singleton_profile(&self, pos: usize, state: u8) -> Profile {
        Profile::singleton(self.scope.agents.members()[pos], *self.space.state(state))
    }

    pub(crate) fn constraint_state(&self, c: usize) -> Option<TotalPreorder> {
        match self.scope.constraint_mode {
            ConstraintMode::BeliefSets => None,
            ConstraintMode::AllStates => Some(self.constraints[c].state),
        }
    }

    /// Constraint indices with at most `max_models` models.
    pub(crate) fn small_constraints(&self, max_models: usize) -> Vec<usize> {
        (0..self.nc()).filter(|&c| self.constraints[c].beliefs.len() <= max_models).collect()
    }

    /// First constraint (in order) on which two images give different beliefs.
    pub(crate) fn distinguishing(&self, a: u8, b: u8) -> Option<usize> {
        (0..self.nc()).find(|&c| self.res(a, c) != self.res(b, c))
    }

    /// Table over image triples `(Φ, Φ↾N1, Φ↾N2)` giving the first failing
    /// constraint of a partition postulate, or `NONE`.
    pub(crate) fn triple_table(&self, id: PostulateId) -> &[u8] {
        let slot = match id {
            PostulateId::ESF7 => 0,
            PostulateId::ESF8 => 1,
            PostulateId::ESF8W => 2,
            _ => unreachable!("not a partition postulate"),
        };
        self.triple[slot].get_or_init(|| {
            let ns = self.ns();
            let nc = self.nc();
            let mut out = vec![NONE; ns * ns * ns];
            out.par_chunks_mut(ns * ns).enumerate().for_each(|(g, chunk)| {
                for i1 in 0..ns {
                    for i2 in 0..ns {
                        chunk[i1 * ns + i2] = (0..nc)
                            .find(|&c| {
                                let r = self.res(g as u8, c);
                                let r1 = self.res(i1 as u8, c);
                                let r2 = self.res(i2 as u8, c);
                                partition_fails(id, r, r1, r2)
                            })
                            .map(|c| c as u8)
                            .unwrap_or(NONE);
                    }
                }
            });
            out
        })
    }

    /// Estimated elementary steps for checking `id` at this scope.
    pub fn estimate(&self, id: PostulateId) -> f64 {
        let u = self.scope.agents.len();
        let ns = self.ns() as f64;
        let nc = self.nc() as f64;
        let mut total = ns * ns * nc * 3.0;
        for k in 1..=self.scope.refute_max {
            let socs = binomial(u, k) as f64;
            let profiles = ns.powi(k as i32);
            let parts = two_partition_masks(k).len().max(1) as f64;
            let per = match id {
                PostulateId::ESF1 | PostulateId::ESF6 => nc,
                PostulateId::ESF2 => nc * socs,
                PostulateId::ESF7 | PostulateId::ESF8 | PostulateId::ESF8W => parts * 2.0,
                PostulateId::P3 | PostulateId::P4 | PostulateId::P4W => parts * 3.0,
                PostulateId::P | PostulateId::I => nc * k as f64,
                PostulateId::SemInd => 6.0 * k as f64,
                PostulateId::ESF5 | PostulateId::SD | PostulateId::P1 | PostulateId::MAX => 0.0,
                PostulateId::U | PostulateId::SemU => 0.0,
                _ => k as f64 + 1.0,
            };
            // building the image table costs about one assignment per profile
            total += socs * profiles * (per + 8.0);
        }
        total + (u * u) as f64 * ns * ns * nc
    }

    pub(crate) fn guard(&self, id: PostulateId) -> Result<()> {
        let estimate = self.estimate(id);
        if estimate > self.scope.cost_ceiling {
            return Err(Error::CostCeiling {
                what: format!("checking {id} for {}", self.op.name()),
                estimate,
                ceiling: self.scope.cost_ceiling,
            });
        }
        Ok(())
    }

    pub(crate) fn scope_text(&self, max: usize) -> String {
        let mode = match self.scope.constraint_mode {
            ConstraintMode::BeliefSets => "belief-set constraints",
            ConstraintMode::AllStates => "all constraint states",
        };
        format!(
            "exhaustive over societies of size ≤ {max} drawn from {}, all {} states per agent, {} {mode}",
            self.scope.agents,
            self.ns(),
            self.nc()
        )
    }

    /// Runs the check for one postulate or property.
    pub fn check(&self, id: PostulateId) -> Result<Verdict> {
        self.guard(id)?;
        Ok(match id {
            PostulateId::ESF1 => self.check_esf1(),
            PostulateId::ESF2 => self.check_esf2(),
            PostulateId::ESF3 => self.check_esf34(false),
            PostulateId::ESF4 => self.check_esf34(true),
            PostulateId::ESF5 => self.check_esf5(),
            PostulateId::ESF6 => self.check_esf6(),
            PostulateId::ESF7 | PostulateId::ESF8 | PostulateId::ESF8W => self.check_partition(id),
            PostulateId::SD => self.check_sd(),
            PostulateId::U => self.check_u(self.world_count()),
            PostulateId::P => self.check_p(self.world_count()),
            PostulateId::I => self.check_i(),
            PostulateId::D => self.check_d(false, self.world_count()).verdict,
            PostulateId::P1 => self.check_p1(),
            PostulateId::P2 => self.check_p2(),
            PostulateId::P3 | PostulateId::P4 | PostulateId::P4W => self.check_sem_partition(id),
            PostulateId::MAX => self.check_max(),
            PostulateId::SemU => self.check_sem_u(),
            PostulateId::SemP => self.check_sem_p(),
            PostulateId::SemInd => self.check_sem_ind(),
            PostulateId::SemD => self.check_sem_d(false).verdict,
        })
    }

    /// The postulate checked with constraints restricted to at most two
    /// models, next to the full form. Only U, P, I and D have such a reduction.
    pub fn check_reduction(&self, id: PostulateId) -> Result<(Verdict, Verdict)> {
        self.guard(id)?;
        Ok(match id {
            PostulateId::U => (self.check_u(self.world_count()), self.check_u(2)),
            PostulateId::P => (self.check_p(self.world_count()), self.check_p(2)),
            PostulateId::D => (self.check_d(false, self.world_count()).verdict, self.check_d(false, 2).verdict),
            PostulateId::I => (self.check_i_full(), self.check_i()),
            other => return Err(Error::Invalid(format!("{other} has no two-model reduction"))),
        })
    }

    /// Property (d) per society: the agents whose strict preferences always
    /// survive in the group preorder.
    pub fn check_dictator(&self) -> Result<DictatorReport> {
        self.guard(PostulateId::SemD)?;
        Ok(self.check_sem_d(true))
    }

    /// Compares the compiled tables with direct operator calls on `samples`
    /// seeded random instances.
    pub fn spot_check_tables(&self, samples: usize, seed: u64) -> Result<usize> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let socs = self.societies(1, self.scope.refute_max);
        for _ in 0..samples {
            let soc = socs[rng.gen_range(0..socs.len())];
            let k = soc.count_ones() as usize;
            let idx = rng.gen_range(0..self.profile_count(k));
            let c = rng.gen_range(0..self.nc());
            let p = self.profile(soc, idx);
            let direct = self.op.apply(&p, &self.constraints[c].state)?.top();
            let table = self.set(self.res(self.images(soc)[idx], c));
            if direct != table {
                return Err(Error::Invalid(format!(
                    "compiled table disagrees with the operator on {p} under {}",
                    self.constraints[c].beliefs
                )));
            }
        }
        Ok(samples)
    }
}

/// Result of the per-society dictator scan.
#[derive(Debug, Clone, Serialize)]
pub struct DictatorReport {
    pub per_society: Vec<(Society, Vec<AgentId>)>,
    pub verdict: Verdict,
}

impl DictatorReport {
    /// The unique dictator of a society, if exactly one agent qualifies.
    pub fn dictator_of(&self, n: &Society) -> Option<AgentId> {
        self.per_society.iter().find(|(s, _)| s == n).and_then(|(_, d)| (d.len() == 1).then(|| d[0]))
    }
}

pub(crate) fn partition_fails(id: PostulateId, r: u16, r1: u16, r2: u16) -> bool {
    let both = r1 & r2;
    match id {
        PostulateId::ESF7 => both & !r != 0,
        PostulateId::ESF8 => both != 0 && r & !both != 0,
        PostulateId::ESF8W => both != 0 && r & !(r1 | r2) != 0,
        _ => unreachable!(),
    }
}

/// Digits of a profile index in base `ns`, first agent first.
#[inline]
pub(crate) fn decode(mut idx: usize, ns: usize, k: usize) -> [u8; 16] {
    let mut d = [0u8; 16];
    for i in (0..k).rev() {
        d[i] = (idx % ns) as u8;
        idx /= ns;
    }
    d
}

/// Index of the sub-profile selected by a positional block mask.
#[inline]
pub(crate) fn sub_index(d: &[u8; 16], k: usize, block: u32, ns: usize) -> usize {
    let mut idx = 0usize;
    for (i, &digit) in d.iter().enumerate().take(k) {
        if block >> i & 1 == 1 {
            idx = idx * ns + digit as usize;
        }
    }
    idx
}

/// Ordered pair `(a, b)` encoded by the lowest set bit of a relation mask.
pub(crate) fn pair_of_bit(mask: u64) -> (World, World) {
    let bit = mask.trailing_zeros() as u8;
    (World(bit / 8), World(bit % 8))
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Convenience wrapper: compile and run a single check.
pub fn check(op: &FusionOperator, id: PostulateId, scope: &CheckScope) -> Result<Verdict> {
    Checker::new(op, scope)?.check(id)
}

/// Convenience wrapper for the per-society property-(d) scan.
pub fn check_dictator(op: &FusionOperator, scope: &CheckScope) -> Result<DictatorReport> {
    Checker::new(op, scope)?.check_dictator()
}
