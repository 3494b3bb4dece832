use esfusion::checker::{
    check_prop5_consequences, cross_validate, replay, CheckScope, Checker, DEFAULT_COST_CEILING,
};
use esfusion::preorder::all_preorders;
use esfusion::{BeliefSet, Error, FusionOperator, PostulateId, Profile, Society, TotalPreorder, Verdict};
use proptest::prelude::*;

fn op(name: &str) -> FusionOperator {
    FusionOperator::by_name(name, 4, None).unwrap()
}

fn scope(agents: &[u32], verify: usize, refute: usize) -> CheckScope {
    CheckScope::default()
        .with_agents(Society::new(agents.iter().copied()).unwrap())
        .with_verify_max(verify)
        .with_refute_max(refute)
}

/// Every profile over `{1}`, `{2}` and `{1,2}`.
fn small_profiles(states: &[TotalPreorder]) -> Vec<Profile> {
    let mut out = Vec::new();
    for id in [1, 2] {
        for s in states {
            out.push(Profile::new(Society::new([id]).unwrap(), vec![*s]).unwrap());
        }
    }
    for a in states {
        for b in states {
            out.push(Profile::new(Society::new([1, 2]).unwrap(), vec![*a, *b]).unwrap());
        }
    }
    out
}

/// The postulate statements evaluated directly through the operator.
fn naive(op: &FusionOperator, id: PostulateId) -> bool {
    let states = all_preorders(4).unwrap();
    let sets = BeliefSet::all_nonempty(4);
    let r = |p: &Profile, m: BeliefSet| op.apply_beliefs(p, m).unwrap();
    let single = |s: TotalPreorder| Profile::new(Society::new([1]).unwrap(), vec![s]).unwrap();
    match id {
        PostulateId::ESF1 => small_profiles(&states).iter().all(|p| sets.iter().all(|&m| r(p, m).is_subset(m))),
        PostulateId::ESF5 => states.iter().enumerate().all(|(i, &s)| {
            states[i + 1..].iter().all(|&t| sets.iter().any(|&m| r(&single(s), m) != r(&single(t), m)))
        }),
        PostulateId::ESF6 => small_profiles(&states).iter().all(|p| {
            sets.iter().all(|&m| {
                let agree = p.states().iter().fold(m, |acc, s| acc.intersect(s.top()));
                agree.is_empty() || r(p, m) == agree
            })
        }),
        PostulateId::ESF7 | PostulateId::ESF8 | PostulateId::ESF8W => states.iter().all(|&a| {
            states.iter().all(|&b| {
                let p = Profile::new(Society::new([1, 2]).unwrap(), vec![a, b]).unwrap();
                let p1 = Profile::new(Society::new([1]).unwrap(), vec![a]).unwrap();
                let p2 = Profile::new(Society::new([2]).unwrap(), vec![b]).unwrap();
                sets.iter().all(|&m| {
                    let (whole, x, y) = (r(&p, m), r(&p1, m), r(&p2, m));
                    let both = x.intersect(y);
                    match id {
                        PostulateId::ESF7 => both.is_subset(whole),
                        PostulateId::ESF8 => both.is_empty() || whole.is_subset(both),
                        _ => both.is_empty() || whole.is_subset(x.union(y)),
                    }
                })
            })
        }),
        _ => unreachable!(),
    }
}

#[test]
fn checker_agrees_with_naive_oracle_on_two_agents() {
    let sc = scope(&[1, 2], 2, 2);
    for o in FusionOperator::all(4) {
        let ch = Checker::new(&o, &sc).unwrap();
        for id in [PostulateId::ESF1, PostulateId::ESF5, PostulateId::ESF6, PostulateId::ESF7, PostulateId::ESF8, PostulateId::ESF8W] {
            let v = ch.check(id).unwrap();
            assert_eq!(v.is_satisfied(), naive(&o, id), "{} {id}", o.name());
            if let Some(w) = v.witness() {
                assert!(replay(&o, id, w).unwrap(), "{} {id} witness", o.name());
            }
        }
    }
}

#[test]
fn spec_examples_for_single_checks() {
    let sc = CheckScope::default().with_refute_max(3);
    assert!(Checker::new(&op("sum"), &sc).unwrap().check(PostulateId::ESF8).unwrap().is_satisfied());
    let v = Checker::new(&op("max"), &sc).unwrap().check(PostulateId::ESF8).unwrap();
    assert!(replay(&op("max"), PostulateId::ESF8, v.witness().unwrap()).unwrap());
    let v = Checker::new(&op("proj"), &sc).unwrap().check(PostulateId::ESF6).unwrap();
    let w = v.witness().expect("proj violates ESF6");
    // smallest societies are searched first, so a two-agent witness comes up
    assert_eq!(w.society.as_ref().unwrap().len(), 2);
    assert!(replay(&op("proj"), PostulateId::ESF6, w).unwrap());
    let three = Profile::parse_file_format("1: 00 > 01 10 11\n2: 00 > 01 10 11\n3: 00 01 > 10 11\n", 2).unwrap();
    let full = BeliefSet::full(4);
    assert_eq!(op("proj").apply_beliefs(&three, full).unwrap(), BeliefSet::parse_world_list("{00,01}", 2).unwrap());
    assert!(Checker::new(&op("linproj"), &sc).unwrap().check(PostulateId::SD).unwrap().is_violated());
}

#[test]
fn dictators() {
    let sc = scope(&[1, 2, 3], 2, 2);
    let r = Checker::new(&op("proj"), &sc).unwrap().check_dictator().unwrap();
    assert_eq!(r.dictator_of(&Society::new([1, 3]).unwrap()).map(|a| a.0), Some(3));
    assert!(r.verdict.is_satisfied());
    let r = Checker::new(&op("sum"), &sc).unwrap().check_dictator().unwrap();
    for n in [vec![1, 2], vec![1, 3], vec![2, 3]] {
        assert_eq!(r.dictator_of(&Society::new(n).unwrap()), None);
    }
    assert!(r.verdict.is_violated());
    let r = Checker::new(&op("sigmapproj"), &sc).unwrap().check_dictator().unwrap();
    assert_eq!(r.dictator_of(&Society::new([1, 2]).unwrap()).map(|a| a.0), Some(2));
}

#[test]
fn cross_validation_examples() {
    let sc = CheckScope::default().with_refute_max(3);
    let cv = cross_validate(&op("max"), (PostulateId::ESF8, PostulateId::P4), &sc, 50).unwrap();
    assert!(cv.agree() && cv.syntactic_verdict.is_violated() && cv.semantic_verdict.is_violated());
    let cv = cross_validate(&op("proj"), (PostulateId::P, PostulateId::SemP), &sc, 50).unwrap();
    assert!(cv.agree() && cv.syntactic_verdict.is_satisfied());
    let cv = cross_validate(&op("qlinproj"), (PostulateId::U, PostulateId::SemU), &sc, 50).unwrap();
    assert!(cv.agree() && cv.semantic_verdict.is_violated());
    assert!(cross_validate(&op("sum"), (PostulateId::ESF5, PostulateId::P2), &sc, 0).is_err());
}

#[test]
fn prop5_consequences() {
    let sc = scope(&[1, 2], 1, 1);
    assert!(check_prop5_consequences(&op("sum"), &sc).unwrap().is_satisfied());
    assert!(check_prop5_consequences(&op("proj"), &sc).unwrap().is_satisfied());
    assert!(matches!(check_prop5_consequences(&op("linproj"), &sc).unwrap(), Verdict::Skipped { .. }));
}

#[test]
fn deterministic_across_thread_counts() {
    let sc = scope(&[1, 2, 3], 3, 3);
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| {
            let o = op("sum");
            let ch = Checker::new(&o, &sc).unwrap();
            [PostulateId::I, PostulateId::D, PostulateId::ESF6].map(|id| ch.check(id).unwrap())
        })
    };
    assert_eq!(run(1), run(3));
}

#[test]
fn refusals() {
    let mut sc = CheckScope::default();
    sc.cost_ceiling = 1e3;
    assert!(matches!(Checker::new(&op("sum"), &sc).unwrap().check(PostulateId::ESF7), Err(Error::CostCeiling { .. })));
    assert_eq!(CheckScope::default().cost_ceiling, DEFAULT_COST_CEILING);
    let mut sc = CheckScope::default();
    sc.var_count = 3;
    assert!(Checker::new(&FusionOperator::by_name("sum", 8, None).unwrap(), &sc).is_err());
    assert!(CheckScope::default().with_verify_max(4).with_refute_max(3).validate().is_err());
}

#[test]
fn two_model_reductions_agree_with_full_forms() {
    let sc = scope(&[1, 2], 2, 2);
    for o in FusionOperator::all(4) {
        let ch = Checker::new(&o, &sc).unwrap();
        for id in [PostulateId::U, PostulateId::P, PostulateId::I, PostulateId::D] {
            let (full, reduced) = ch.check_reduction(id).unwrap();
            assert_eq!(full.is_satisfied(), reduced.is_satisfied(), "{} {id}", o.name());
        }
    }
}

const CHEAP: [PostulateId; 8] = [
    PostulateId::ESF1,
    PostulateId::ESF5,
    PostulateId::ESF6,
    PostulateId::ESF7,
    PostulateId::ESF8W,
    PostulateId::U,
    PostulateId::P,
    PostulateId::D,
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn violations_persist_in_larger_scopes(o in 0usize..6, id in 0usize..CHEAP.len(), extra in 0usize..2) {
        let o = &FusionOperator::all(4)[o];
        let id = CHEAP[id];
        let small = scope(&[1, 2], 2, 2);
        let large = scope(&[1, 2, 3], 2, 2 + extra);
        let a = Checker::new(o, &small).unwrap().check(id).unwrap();
        let b = Checker::new(o, &large).unwrap().check(id).unwrap();
        if a.is_violated() {
            prop_assert!(b.is_violated());
        }
        if let Some(w) = b.witness() {
            prop_assert!(replay(o, id, w).unwrap());
        }
    }
}
