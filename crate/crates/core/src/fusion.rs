//! Assignments, fusion operators and assignment recovery.
//!
//! Every operator applies a constraint state `⪰` to a profile `Φ` as
//! `lex(⪰, ⪰_Φ)`, where `⪰_Φ` is produced by the operator's assignment.
//!
//! Aggregation-based assignments feed the aggregation function the
//! implausibility rank of each world (the number of levels strictly above it)
//! and prefer smaller aggregate values.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::logic::{BeliefSet, World};
use crate::preorder::TotalPreorder;
use crate::society::{AgentId, Profile};
use crate::verdict::{Verdict, Witness};

/// A symmetric aggregation function over tuples of nonnegative integers.
pub trait Aggregation: Send + Sync {
    fn name(&self) -> &str;
    fn eval(&self, xs: &[u32]) -> f64;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AggregationFunction {
    Sum,
    Max,
}

impl Aggregation for AggregationFunction {
    fn name(&self) -> &str {
        match self {
            AggregationFunction::Sum => "sum",
            AggregationFunction::Max => "max",
        }
    }

    fn eval(&self, xs: &[u32]) -> f64 {
        match self {
            AggregationFunction::Sum => xs.iter().map(|&x| x as f64).sum(),
            AggregationFunction::Max => xs.iter().copied().max().unwrap_or(0) as f64,
        }
    }
}

/// Aggregation from a closure, handy for experiments and negative tests.
pub struct FnAggregation<F: Fn(&[u32]) -> f64 + Send + Sync> {
    pub name: String,
    pub f: F,
}

impl<F: Fn(&[u32]) -> f64 + Send + Sync> Aggregation for FnAggregation<F> {
    fn name(&self) -> &str {
        &self.name
    }

    fn eval(&self, xs: &[u32]) -> f64 {
        (self.f)(xs)
    }
}

/// Number of levels strictly above `w`.
#[inline]
pub fn implausibility_rank(tp: &TotalPreorder, w: World) -> u32 {
    (tp.height() - 1 - tp.level(w) as usize) as u32
}

/// The group preorder induced by an aggregation function: smaller aggregate
/// implausibility is more plausible.
pub fn aggregate_preorder(f: &dyn Aggregation, states: &[TotalPreorder]) -> TotalPreorder {
    let n = states[0].world_count();
    let values: Vec<f64> = (0..n as u8)
        .map(|w| {
            let ranks: Vec<u32> = states.iter().map(|s| implausibility_rank(s, World(w))).collect();
            f.eval(&ranks)
        })
        .collect();
    let mut distinct = values.clone();
    distinct.sort_by(|a, b| b.total_cmp(a));
    distinct.dedup_by(|a, b| a.total_cmp(b).is_eq());
    let keys: Vec<u32> = values
        .iter()
        .map(|v| distinct.iter().position(|d| d.total_cmp(v).is_eq()).expect("present") as u32)
        .collect();
    TotalPreorder::from_keys(&keys)
}

/// Integer fast path shared by the sum and max assignments.
fn aggregate_builtin(max: bool, states: &[TotalPreorder]) -> TotalPreorder {
    let n = states[0].world_count();
    let mut acc = [0u32; crate::logic::MAX_WORLDS];
    for s in states {
        let top = s.height() as u32 - 1;
        for (a, &l) in acc.iter_mut().zip(s.levels()) {
            let r = top - l as u32;
            *a = if max { (*a).max(r) } else { *a + r };
        }
    }
    let mut keys = [0u32; crate::logic::MAX_WORLDS];
    for w in 0..n {
        keys[w] = u32::MAX - acc[w];
    }
    TotalPreorder::from_keys(&keys[..n])
}

/// Maps a profile, given as its ascending agents and their states, to a total preorder.
pub trait AssignmentRule: Send + Sync {
    fn assign_states(&self, agents: &[AgentId], states: &[TotalPreorder]) -> TotalPreorder;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AssignmentKind {
    Sum,
    Max,
    Projective,
    LinProjective,
    QuasiLinProjective,
    SigmaPseudoProjective,
}

impl AssignmentKind {
    pub const ALL: [AssignmentKind; 6] = [
        AssignmentKind::Sum,
        AssignmentKind::Max,
        AssignmentKind::Projective,
        AssignmentKind::LinProjective,
        AssignmentKind::QuasiLinProjective,
        AssignmentKind::SigmaPseudoProjective,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AssignmentKind::Sum => "sum",
            AssignmentKind::Max => "max",
            AssignmentKind::Projective => "proj",
            AssignmentKind::LinProjective => "linproj",
            AssignmentKind::QuasiLinProjective => "qlinproj",
            AssignmentKind::SigmaPseudoProjective => "sigmapproj",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            AssignmentKind::Sum => "∇^Σ",
            AssignmentKind::Max => "∇^max",
            AssignmentKind::Projective => "∇^π",
            AssignmentKind::LinProjective => "∇^{π≥}",
            AssignmentKind::QuasiLinProjective => "∇^{Qπ≥}",
            AssignmentKind::SigmaPseudoProjective => "∇^{Σ-Pπ}",
        }
    }

    pub fn parse(name: &str) -> Result<AssignmentKind> {
        AssignmentKind::ALL
            .into_iter()
            .find(|k| k.name() == name.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::UnknownOperator(name.to_string()))
    }
}

/// One of the six built-in assignments, with the fixed linear order used by
/// the linearized variants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub kind: AssignmentKind,
    pub tiebreak: TotalPreorder,
}

impl Assignment {
    pub fn new(kind: AssignmentKind, world_count: usize) -> Assignment {
        Assignment { kind, tiebreak: fixed_linear_order(world_count) }
    }

    pub fn with_tiebreak(kind: AssignmentKind, tiebreak: TotalPreorder) -> Result<Assignment> {
        if !tiebreak.is_linear() {
            return Err(Error::NotLinear(tiebreak.to_string()));
        }
        Ok(Assignment { kind, tiebreak })
    }

    /// Structure preserving on singleton profiles.
    pub fn preserves_structure(&self) -> bool {
        self.kind != AssignmentKind::LinProjective
    }
}

impl AssignmentRule for Assignment {
    fn assign_states(&self, _agents: &[AgentId], states: &[TotalPreorder]) -> TotalPreorder {
        let last = states.last().expect("profiles are nonempty");
        match self.kind {
            AssignmentKind::Sum => aggregate_builtin(false, states),
            AssignmentKind::Max => aggregate_builtin(true, states),
            AssignmentKind::Projective => *last,
            AssignmentKind::LinProjective => last.lex_unchecked(&self.tiebreak),
            AssignmentKind::QuasiLinProjective => {
                if states.len() == 1 {
                    *last
                } else {
                    last.lex_unchecked(&self.tiebreak)
                }
            }
            AssignmentKind::SigmaPseudoProjective => last.lex_unchecked(&aggregate_builtin(false, states)),
        }
    }
}

/// Assignment induced by an arbitrary aggregation function.
pub struct AggregationAssignment {
    pub f: Arc<dyn Aggregation>,
}

impl AssignmentRule for AggregationAssignment {
    fn assign_states(&self, _agents: &[AgentId], states: &[TotalPreorder]) -> TotalPreorder {
        aggregate_preorder(self.f.as_ref(), states)
    }
}

impl<F> AssignmentRule for F
where
    F: Fn(&[AgentId], &[TotalPreorder]) -> TotalPreorder + Send + Sync,
{
    fn assign_states(&self, agents: &[AgentId], states: &[TotalPreorder]) -> TotalPreorder {
        self(agents, states)
    }
}

/// The default fixed linear order: descending world index (`11 > 10 > 01 > 00`).
pub fn fixed_linear_order(world_count: usize) -> TotalPreorder {
    TotalPreorder::linear_descending(world_count)
}

/// The canonical constraint state for a belief set: `M` above its complement,
/// or a single level when `M` is everything.
pub fn canonical_state(m: BeliefSet) -> Result<TotalPreorder> {
    if m.is_empty() {
        return Err(Error::EmptySet);
    }
    if m.is_full() {
        return Ok(TotalPreorder::flat(m.world_count()));
    }
    TotalPreorder::from_levels(&[m, m.complement()])
}

/// A fusion operator `∇(Φ, ⪰) = lex(⪰, ⪰_Φ)`.
#[derive(Clone)]
pub struct FusionOperator {
    name: String,
    kind: Option<AssignmentKind>,
    world_count: usize,
    rule: Arc<dyn AssignmentRule>,
}

impl fmt::Debug for FusionOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FusionOperator({})", self.name)
    }
}

impl FusionOperator {
    pub fn builtin(kind: AssignmentKind, world_count: usize) -> FusionOperator {
        FusionOperator::from_assignment(Assignment::new(kind, world_count))
    }

    pub fn from_assignment(a: Assignment) -> FusionOperator {
        FusionOperator {
            name: a.kind.name().to_string(),
            kind: Some(a.kind),
            world_count: a.tiebreak.world_count(),
            rule: Arc::new(a),
        }
    }

    /// Looks up an operator by its command-line name.
    pub fn by_name(name: &str, world_count: usize, tiebreak: Option<TotalPreorder>) -> Result<FusionOperator> {
        let kind = AssignmentKind::parse(name)?;
        let a = match tiebreak {
            Some(t) => {
                if t.world_count() != world_count {
                    return Err(Error::UniverseMismatch { left: world_count, right: t.world_count() });
                }
                Assignment::with_tiebreak(kind, t)?
            }
            None => Assignment::new(kind, world_count),
        };
        Ok(FusionOperator::from_assignment(a))
    }

    pub fn custom(name: impl Into<String>, world_count: usize, rule: impl AssignmentRule + 'static) -> FusionOperator {
        FusionOperator { name: name.into(), kind: None, world_count, rule: Arc::new(rule) }
    }

    /// The six built-in operators in table order.
    pub fn all(world_count: usize) -> Vec<FusionOperator> {
        AssignmentKind::ALL.iter().map(|&k| FusionOperator::builtin(k, world_count)).collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> Option<AssignmentKind> {
        self.kind
    }

    pub fn symbol(&self) -> String {
        self.kind.map(|k| k.symbol().to_string()).unwrap_or_else(|| self.name.clone())
    }

    pub fn world_count(&self) -> usize {
        self.world_count
    }

    /// `⪰_Φ`.
    pub fn assign(&self, p: &Profile) -> Result<TotalPreorder> {
        self.check(p.world_count())?;
        Ok(self.rule.assign_states(p.agents(), p.states()))
    }

    /// Assignment on raw positional data; no universe checks.
    #[inline]
    pub fn assign_states(&self, agents: &[AgentId], states: &[TotalPreorder]) -> TotalPreorder {
        self.rule.assign_states(agents, states)
    }

    /// `∇(Φ, ⪰) = lex(⪰, ⪰_Φ)`.
    pub fn apply(&self, p: &Profile, constraint: &TotalPreorder) -> Result<TotalPreorder> {
        self.check(constraint.world_count())?;
        constraint.lex(&self.assign(p)?)
    }

    /// Beliefs of `∇(Φ, E)` for any `E` with the given beliefs.
    pub fn result_beliefs(&self, p: &Profile, constraint: BeliefSet) -> Result<BeliefSet> {
        self.check(constraint.world_count())?;
        self.assign(p)?.max_over(constraint)
    }

    /// Beliefs of the application with the canonical constraint state, computed
    /// through [`FusionOperator::apply`].
    pub fn apply_beliefs(&self, p: &Profile, constraint: BeliefSet) -> Result<BeliefSet> {
        Ok(self.apply(p, &canonical_state(constraint)?)?.top())
    }

    fn check(&self, n: usize) -> Result<()> {
        if n != self.world_count {
            return Err(Error::UniverseMismatch { left: self.world_count, right: n });
        }
        Ok(())
    }
}

/// Rebuilds `⪰_Φ` from a belief-level black box: `w ⪰ w'` iff `w` is among
/// the beliefs obtained under a constraint whose models are `{w, w'}`.
pub fn recover_assignment<B>(blackbox: B, p: &Profile) -> Result<TotalPreorder>
where
    B: Fn(&Profile, BeliefSet) -> BeliefSet,
{
    let n = p.world_count();
    let vc = crate::logic::var_count_for(n);
    let name = |i: usize| World(i as u8).render(vc);
    let mut rel = vec![vec![true; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let pair = BeliefSet::from_worlds([World(a as u8), World(b as u8)], n);
            let r = blackbox(p, pair);
            rel[a][b] = r.contains(World(a as u8));
            rel[b][a] = r.contains(World(b as u8));
            if !rel[a][b] && !rel[b][a] {
                return Err(Error::NotTotal(name(a), name(b)));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if rel[a][b] && rel[b][c] && !rel[a][c] {
                    return Err(Error::NotTransitive(name(a), name(b), name(c)));
                }
            }
        }
    }
    let scores: Vec<usize> = (0..n).map(|a| rel[a].iter().filter(|x| **x).count()).collect();
    Ok(TotalPreorder::from_scores(&scores))
}

/// Checks the representation identity `B(∇(Φ,E)) = max(B(E), ⪰)` for every
/// consistent constraint.
pub fn check_b_rep<B>(blackbox: B, p: &Profile, tp: &TotalPreorder) -> Result<()>
where
    B: Fn(&Profile, BeliefSet) -> BeliefSet,
{
    for m in BeliefSet::all_nonempty(p.world_count()) {
        if blackbox(p, m) != tp.max_over(m)? {
            return Err(Error::RecoveryMismatch(m.to_string()));
        }
    }
    Ok(())
}

/// The four aggregation axioms, each checked over all tuples of length at
/// most 4 with entries at most 6.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub monotony: Verdict,
    pub minimality: Verdict,
    pub identity: Verdict,
    pub symmetry: Verdict,
}

impl AxiomReport {
    pub fn entries(&self) -> [(&'static str, &Verdict); 4] {
        [
            ("Monotony", &self.monotony),
            ("Minimality", &self.minimality),
            ("Identity", &self.identity),
            ("Symmetry", &self.symmetry),
        ]
    }

    /// Satisfied iff all four axioms hold; otherwise the witnesses of every
    /// violated axiom.
    pub fn overall(&self) -> Verdict {
        let parts: Vec<Witness> = self
            .entries()
            .iter()
            .filter_map(|(_, v)| v.witness().cloned())
            .collect();
        if parts.is_empty() {
            Verdict::Satisfied { scope: AXIOM_SCOPE.into() }
        } else {
            let names: Vec<&str> =
                self.entries().iter().filter(|(_, v)| v.is_violated()).map(|(n, _)| *n).collect();
            Verdict::violated(Witness { parts, ..Witness::noted(format!("violated: {}", names.join(", "))) })
        }
    }
}

const AXIOM_SCOPE: &str = "all tuples of length 1..=4 with entries 0..=6";
const AXIOM_MAX_LEN: usize = 4;
const AXIOM_MAX_ENTRY: u32 = 6;

fn tuples(len: usize) -> Vec<Vec<u32>> {
    let base = AXIOM_MAX_ENTRY + 1;
    (0..base.pow(len as u32))
        .map(|mut i| {
            let mut t = vec![0; len];
            for slot in t.iter_mut().rev() {
                *slot = i % base;
                i /= base;
            }
            t
        })
        .collect()
}

fn permutations(t: &[u32]) -> Vec<Vec<u32>> {
    if t.len() <= 1 {
        return vec![t.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..t.len() {
        let mut rest = t.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

pub fn aggregation_axioms(f: &dyn Aggregation) -> AxiomReport {
    let ok = || Verdict::Satisfied { scope: AXIOM_SCOPE.into() };
    let bad = |note: String, ts: Vec<Vec<u32>>| Verdict::violated(Witness { tuples: ts, ..Witness::noted(note) });
    let all: Vec<Vec<u32>> = (1..=AXIOM_MAX_LEN).flat_map(tuples).collect();

    let mut monotony = ok();
    'mono: for t in &all {
        for i in 0..t.len() {
            for y in 0..t[i] {
                let mut u = t.clone();
                u[i] = y;
                if f.eval(t) < f.eval(&u) {
                    monotony = bad(
                        format!("F{t:?} = {} < F{u:?} = {}", f.eval(t), f.eval(&u)),
                        vec![t.clone(), u],
                    );
                    break 'mono;
                }
            }
        }
    }

    let mut minimality = ok();
    for t in &all {
        let zero = t.iter().all(|&x| x == 0);
        if (f.eval(t) == 0.0) != zero {
            minimality = bad(format!("F{t:?} = {}", f.eval(t)), vec![t.clone()]);
            break;
        }
    }

    let mut identity = ok();
    for x in 0..=AXIOM_MAX_ENTRY {
        if f.eval(&[x]) != x as f64 {
            identity = bad(format!("F({x}) = {}", f.eval(&[x])), vec![vec![x]]);
            break;
        }
    }

    let mut symmetry = ok();
    'sym: for t in &all {
        for p in permutations(t) {
            if f.eval(t) != f.eval(&p) {
                symmetry = bad(format!("F{t:?} = {} but F{p:?} = {}", f.eval(t), f.eval(&p)), vec![t.clone(), p]);
                break 'sym;
            }
        }
    }

    AxiomReport { monotony, minimality, identity, symmetry }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preorder::all_preorders;
    use crate::society::{enumerate_profiles, Society};

    fn tp(s: &str) -> TotalPreorder {
        TotalPreorder::parse(s, 2).unwrap()
    }

    fn set(s: &str) -> BeliefSet {
        BeliefSet::parse_world_list(s, 2).unwrap()
    }

    fn pair(a: &str, b: &str) -> Profile {
        Profile::new(Society::new([1, 2]).unwrap(), vec![tp(a), tp(b)]).unwrap()
    }

    /// Literal rank-sum oracle: `w ⪰ w'` iff the summed canonical ranks compare `≥`.
    fn sum_oracle(p: &Profile, a: World, b: World) -> bool {
        let f = |w: World| p.states().iter().map(|s| s.level(w) as i64 - s.height() as i64).sum::<i64>();
        f(a) >= f(b)
    }

    #[test]
    fn sum_matches_rank_oracle_on_pairs() {
        let op = FusionOperator::builtin(AssignmentKind::Sum, 4);
        let states = all_preorders(4).unwrap();
        for p in enumerate_profiles(&Society::new([1, 2]).unwrap(), &states).unwrap() {
            let g = op.assign(&p).unwrap();
            for a in g.worlds() {
                for b in g.worlds() {
                    assert_eq!(g.weakly_prefers(a, b), sum_oracle(&p, a, b));
                }
            }
        }
    }

    #[test]
    fn anne_and_bob() {
        // w1..w4 mapped to 11, 10, 01, 00
        let anne = "11 > 10 > 01 > 00";
        let bob = "00 > 01 10 11";
        let op = FusionOperator::builtin(AssignmentKind::Sum, 4);
        assert_eq!(op.assign(&pair(anne, bob)).unwrap().top(), set("{11}"));
    }

    #[test]
    fn result_beliefs_examples() {
        let sum = FusionOperator::builtin(AssignmentKind::Sum, 4);
        let p = pair("11 > 10 > 01 > 00", "00 01 10 11");
        assert_eq!(sum.result_beliefs(&p, set("{00,11}")).unwrap(), set("{11}"));
        assert_eq!(sum.result_beliefs(&p, BeliefSet::full(4)).unwrap(), sum.assign(&p).unwrap().top());
        assert_eq!(sum.result_beliefs(&p, set("{01}")).unwrap(), set("{01}"));
        assert!(sum.result_beliefs(&p, BeliefSet::empty(4)).is_err());
    }

    #[test]
    fn linearized_singleton_of_flat_is_the_tiebreak() {
        let op = FusionOperator::builtin(AssignmentKind::LinProjective, 4);
        let p = Profile::singleton(AgentId(1), TotalPreorder::flat(4));
        assert_eq!(op.assign(&p).unwrap(), fixed_linear_order(4));
        assert_eq!(fixed_linear_order(4).to_string(), "11 > 10 > 01 > 00");
        assert!(FusionOperator::by_name("linproj", 4, Some(tp("00 01 > 10 11"))).is_err());
        let custom = FusionOperator::by_name("linproj", 4, Some(tp("00 > 01 > 10 > 11"))).unwrap();
        assert_eq!(custom.assign(&p).unwrap().top(), set("{00}"));
    }

    #[test]
    fn structure_preservation() {
        for kind in [
            AssignmentKind::Sum,
            AssignmentKind::Max,
            AssignmentKind::Projective,
            AssignmentKind::QuasiLinProjective,
            AssignmentKind::SigmaPseudoProjective,
        ] {
            let op = FusionOperator::builtin(kind, 4);
            for s in all_preorders(4).unwrap() {
                assert_eq!(op.assign(&Profile::singleton(AgentId(3), s)).unwrap(), s, "{kind:?}");
            }
        }
        let lin = FusionOperator::builtin(AssignmentKind::LinProjective, 4);
        assert!(all_preorders(4)
            .unwrap()
            .iter()
            .all(|s| lin.assign(&Profile::singleton(AgentId(1), *s)).unwrap().is_linear()));
    }

    #[test]
    fn apply_paths_agree() {
        let states = all_preorders(4).unwrap();
        let sets = BeliefSet::all_nonempty(4);
        for op in FusionOperator::all(4) {
            for k in 1..=2u32 {
                let soc = Society::new(1..=k).unwrap();
                for p in enumerate_profiles(&soc, &states).unwrap().step_by(if k == 2 { 3 } else { 1 }) {
                    for &m in &sets {
                        let c = canonical_state(m).unwrap();
                        let via_apply = op.apply(&p, &c).unwrap();
                        assert_eq!(via_apply.top(), op.result_beliefs(&p, m).unwrap());
                    }
                    let lin = op.apply(&p, &fixed_linear_order(4)).unwrap();
                    assert!(lin.is_linear());
                }
            }
        }
    }

    #[test]
    fn projective_flat_constraint_gives_agent_beliefs() {
        let op = FusionOperator::builtin(AssignmentKind::Projective, 4);
        for s in all_preorders(4).unwrap() {
            let p = Profile::singleton(AgentId(1), s);
            assert_eq!(op.apply(&p, &TotalPreorder::flat(4)).unwrap().top(), s.top());
        }
    }

    #[test]
    fn recovery_roundtrip() {
        let states = all_preorders(4).unwrap();
        for op in FusionOperator::all(4) {
            let bb = |p: &Profile, m: BeliefSet| op.apply_beliefs(p, m).unwrap();
            for p in enumerate_profiles(&Society::new([2]).unwrap(), &states).unwrap() {
                let r = recover_assignment(bb, &p).unwrap();
                assert_eq!(r, op.assign(&p).unwrap());
                check_b_rep(bb, &p, &r).unwrap();
            }
        }
    }

    #[test]
    fn recovery_rejects_constant_black_box() {
        let p = Profile::singleton(AgentId(1), TotalPreorder::flat(4));
        let constant = |_: &Profile, _: BeliefSet| set("{00}");
        assert!(matches!(recover_assignment(constant, &p), Err(Error::NotTotal(..))));
        // picks the lower index on pairs that include 00 and both worlds elsewhere
        let cyclic = |_: &Profile, m: BeliefSet| {
            let ws: Vec<World> = m.worlds().collect();
            match (ws[0].0, ws[1].0) {
                (0, 1) => set("{00}"),
                (1, 2) => set("{01}"),
                (0, 2) => set("{10}"),
                _ => m,
            }
        };
        assert!(matches!(recover_assignment(cyclic, &p), Err(Error::NotTransitive(..))));
    }

    #[test]
    fn aggregation_axioms_verdicts() {
        assert!(aggregation_axioms(&AggregationFunction::Sum).overall().is_satisfied());
        assert!(aggregation_axioms(&AggregationFunction::Max).overall().is_satisfied());
        let first = FnAggregation { name: "first".into(), f: |xs: &[u32]| xs[0] as f64 };
        let r = aggregation_axioms(&first);
        assert!(r.symmetry.is_violated());
        assert!(!r.symmetry.witness().unwrap().tuples.is_empty());
        assert!(r.overall().is_violated());
    }

    #[test]
    fn generic_aggregation_matches_builtins() {
        let states = all_preorders(4).unwrap();
        for (kind, f) in [(AssignmentKind::Sum, AggregationFunction::Sum), (AssignmentKind::Max, AggregationFunction::Max)] {
            let op = FusionOperator::builtin(kind, 4);
            let generic = FusionOperator::custom("generic", 4, AggregationAssignment { f: Arc::new(f) });
            for p in enumerate_profiles(&Society::new([1, 2]).unwrap(), &states).unwrap().step_by(7) {
                assert_eq!(op.assign(&p).unwrap(), generic.assign(&p).unwrap());
            }
        }
    }
}
