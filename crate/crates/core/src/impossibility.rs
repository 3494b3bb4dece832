//! Standard domain is unreachable when epistemic states are formulas.
//!
//! With two variables there are 15 consistent formulas up to equivalence. A
//! basic operator on such states maps each formula to a total preorder, and
//! maximality forces the preorder's top level to be the formula's models.
//! This module scans every such assignment and also recomputes the counting
//! argument over preorder types.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::logic::{BeliefSet, World};
use crate::preorder::{all_preorders, render_shape, triple_shape_codes, TotalPreorder};

const WORLDS: usize = 4;
const VARS: usize = 2;
/// Assignments in the formula space: `3^6 · 13^4`.
pub const ASSIGNMENT_COUNT: u64 = 20_820_969;
/// Choice vectors for the two-model formulas; each slab covers all one-model choices.
pub const SLABS: u64 = 729;
pub const SLAB_SIZE: u64 = 28_561;

/// Pattern of a preorder on three worlds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TripleShape {
    /// All three tied.
    S1,
    /// Two tied above the third.
    S2,
    /// One above the other two, which are tied.
    S3,
    /// A strict chain.
    S4,
}

impl TripleShape {
    /// Classifies a restriction code (pairwise digits for `(0,1)`, `(0,2)`, `(1,2)`).
    pub fn of_code(code: u8) -> TripleShape {
        let digits = [code / 9, code / 3 % 3, code % 3];
        match digits.iter().filter(|&&d| d == 0).count() {
            3 => TripleShape::S1,
            1 => {
                // the tied pair sits either above or below the third world
                let tied = digits.iter().position(|&d| d == 0).expect("one tie");
                let (above, below) = match tied {
                    0 => (digits[1] == 1, digits[1] == 2),
                    1 => (digits[0] == 1, digits[0] == 2),
                    _ => (digits[0] == 2, digits[0] == 1),
                };
                debug_assert!(above != below);
                if above {
                    TripleShape::S2
                } else {
                    TripleShape::S3
                }
            }
            _ => TripleShape::S4,
        }
    }
}

/// Type of a four-world preorder by its level sizes from the top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ShapeType {
    /// All four tied.
    Flat,
    /// Three on top, one below.
    Top3,
    /// Two on top, two tied below.
    D1,
    /// Two on top, then a chain of two.
    D2,
    /// A strict chain.
    T1,
    /// One, one, then two tied.
    T2,
    /// One, two tied, one.
    T3,
    /// One above three tied.
    T4,
}

impl ShapeType {
    pub const TWO_MODEL: [ShapeType; 2] = [ShapeType::D1, ShapeType::D2];
    pub const ONE_MODEL: [ShapeType; 4] = [ShapeType::T1, ShapeType::T2, ShapeType::T3, ShapeType::T4];

    pub fn of(tp: &TotalPreorder) -> Result<ShapeType> {
        if tp.world_count() != WORLDS {
            return Err(Error::UniverseMismatch { left: WORLDS, right: tp.world_count() });
        }
        let sizes: Vec<usize> = tp.level_sets().iter().map(|s| s.len()).collect();
        Ok(match sizes[..] {
            [4] => ShapeType::Flat,
            [3, 1] => ShapeType::Top3,
            [2, 2] => ShapeType::D1,
            [2, 1, 1] => ShapeType::D2,
            [1, 1, 1, 1] => ShapeType::T1,
            [1, 1, 2] => ShapeType::T2,
            [1, 2, 1] => ShapeType::T3,
            [1, 3] => ShapeType::T4,
            _ => unreachable!("every composition of 4 is listed"),
        })
    }

    pub fn top_size(self) -> usize {
        match self {
            ShapeType::Flat => 4,
            ShapeType::Top3 => 3,
            ShapeType::D1 | ShapeType::D2 => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for ShapeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Slot layout for (triple, shape) patterns: `triple * 13 + shape slot`.
struct Patterns {
    triples: Vec<[World; 3]>,
    codes: Vec<u8>,
    slot_of_code: [u8; 27],
    s3: u64,
    s4: u64,
    all: u64,
}

impl Patterns {
    fn new() -> Patterns {
        let triples: Vec<[World; 3]> = (0..WORLDS)
            .flat_map(|a| (a + 1..WORLDS).flat_map(move |b| (b + 1..WORLDS).map(move |c| [a, b, c])))
            .map(|t| t.map(|w| World(w as u8)))
            .collect();
        let codes = triple_shape_codes();
        let mut slot_of_code = [u8::MAX; 27];
        for (i, &c) in codes.iter().enumerate() {
            slot_of_code[c as usize] = i as u8;
        }
        let (mut s3, mut s4) = (0u64, 0u64);
        for t in 0..triples.len() {
            for (i, &c) in codes.iter().enumerate() {
                let bit = 1u64 << (t * codes.len() + i);
                match TripleShape::of_code(c) {
                    TripleShape::S3 => s3 |= bit,
                    TripleShape::S4 => s4 |= bit,
                    _ => {}
                }
            }
        }
        let all = (1u64 << (triples.len() * codes.len())) - 1;
        Patterns { triples, codes, slot_of_code, s3, s4, all }
    }

    fn mask(&self, tp: &TotalPreorder) -> u64 {
        self.triples.iter().enumerate().fold(0u64, |acc, (t, triple)| {
            let code = tp.restrict(triple).expect("distinct worlds").code;
            acc | 1u64 << (t * self.codes.len() + self.slot_of_code[code as usize] as usize)
        })
    }
}

/// The image of every consistent formula, in the order of [`BeliefSet::all_nonempty`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaSpaceAssignment {
    pub images: Vec<TotalPreorder>,
}

impl FormulaSpaceAssignment {
    pub fn formulas() -> Vec<BeliefSet> {
        BeliefSet::all_nonempty(WORLDS)
    }

    pub fn image(&self, formula: BeliefSet) -> Option<&TotalPreorder> {
        Self::formulas().iter().position(|f| *f == formula).map(|i| &self.images[i])
    }

    /// Maximality: every image's top level is the formula's models.
    pub fn satisfies_maximality(&self) -> bool {
        Self::formulas().iter().zip(&self.images).all(|(f, tp)| tp.top() == *f)
    }

    /// Number of one-model formulas mapped to each of T1..T4.
    pub fn one_model_distribution(&self) -> [u8; 4] {
        let mut n = [0u8; 4];
        for (f, tp) in Self::formulas().iter().zip(&self.images) {
            if f.len() == 1 {
                let t = ShapeType::of(tp).expect("four worlds");
                n[ShapeType::ONE_MODEL.iter().position(|&x| x == t).expect("one model")] += 1;
            }
        }
        n
    }

    /// Number of two-model formulas mapped to D1 and D2.
    pub fn two_model_distribution(&self) -> [u8; 2] {
        let mut m = [0u8; 2];
        for (f, tp) in Self::formulas().iter().zip(&self.images) {
            if f.len() == 2 {
                let t = ShapeType::of(tp).expect("four worlds");
                m[ShapeType::TWO_MODEL.iter().position(|&x| x == t).expect("two models")] += 1;
            }
        }
        m
    }
}

/// The admissible images of each formula, in enumeration order.
fn options() -> Vec<Vec<TotalPreorder>> {
    let all = all_preorders(WORLDS).expect("four worlds");
    FormulaSpaceAssignment::formulas()
        .iter()
        .map(|f| all.iter().filter(|tp| tp.top() == *f).copied().collect())
        .collect()
}

/// Deterministic, restartable stream over all assignments. The two-model
/// choices vary slowest (one slab per choice vector), then the one-model choices.
pub struct AssignmentStream {
    options: Vec<Vec<TotalPreorder>>,
    two: Vec<usize>,
    one: Vec<usize>,
    fixed: Vec<usize>,
    next: u64,
}

impl AssignmentStream {
    pub fn starting_at(mut self, index: u64) -> Self {
        self.next = index;
        self
    }

    pub fn total(&self) -> u64 {
        ASSIGNMENT_COUNT
    }

    pub fn assignment_at(&self, index: u64) -> FormulaSpaceAssignment {
        let (mut slab, mut inner) = (index / SLAB_SIZE, index % SLAB_SIZE);
        let mut choice = vec![0usize; self.options.len()];
        for &f in self.two.iter().rev() {
            choice[f] = (slab % 3) as usize;
            slab /= 3;
        }
        for &f in self.one.iter().rev() {
            choice[f] = (inner % 13) as usize;
            inner /= 13;
        }
        for &f in &self.fixed {
            choice[f] = 0;
        }
        FormulaSpaceAssignment { images: choice.iter().enumerate().map(|(f, &c)| self.options[f][c]).collect() }
    }
}

impl Iterator for AssignmentStream {
    type Item = FormulaSpaceAssignment;

    fn next(&mut self) -> Option<FormulaSpaceAssignment> {
        if self.next >= ASSIGNMENT_COUNT {
            return None;
        }
        let a = self.assignment_at(self.next);
        self.next += 1;
        Some(a)
    }
}

/// All `3^6 · 13^4` maximality-respecting assignments; only two variables are supported.
pub fn enumerate_assignments(var_count: usize) -> Result<AssignmentStream> {
    if var_count != VARS {
        return Err(Error::VarCount(var_count));
    }
    let options = options();
    let formulas = FormulaSpaceAssignment::formulas();
    let by_size = |k: usize| (0..formulas.len()).filter(|&i| formulas[i].len() == k).collect::<Vec<_>>();
    let fixed = [by_size(3), by_size(4)].concat();
    Ok(AssignmentStream { two: by_size(2), one: by_size(1), fixed, options, next: 0 })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MissingShape {
    pub worlds: [World; 3],
    pub code: u8,
    pub shape: TripleShape,
    pub rendered: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub covers: bool,
    pub missing: Vec<MissingShape>,
}

/// Shape form of standard domain: every pattern on every triple is the
/// restriction of some image. Computed directly from the restrictions.
pub fn covers_sd(a: &FormulaSpaceAssignment) -> CoverageReport {
    let p = Patterns::new();
    let mut missing = Vec::new();
    for triple in &p.triples {
        let seen: Vec<u8> = a.images.iter().map(|tp| tp.restrict(triple).expect("distinct").code).collect();
        for &code in &p.codes {
            if !seen.contains(&code) {
                missing.push(MissingShape {
                    worlds: *triple,
                    code,
                    shape: TripleShape::of_code(code),
                    rendered: render_shape(triple, code, VARS),
                });
            }
        }
    }
    CoverageReport { covers: missing.is_empty(), missing }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TypeCoverage {
    pub shape_type: ShapeType,
    pub s4_patterns: u32,
    pub s3_patterns: u32,
    /// Whether every labeling of the type gives the same counts.
    pub labeling_invariant: bool,
    pub labelings: usize,
}

/// S4 and S3 patterns covered by one preorder of the given type, maximized
/// over its labelings (and flagged if labelings disagree).
pub fn shape_coverage_counts(t: ShapeType) -> TypeCoverage {
    let p = Patterns::new();
    let mut counts = Vec::new();
    for tp in all_preorders(WORLDS).expect("four worlds") {
        if ShapeType::of(&tp).ok() == Some(t) {
            let m = p.mask(&tp);
            counts.push(((m & p.s4).count_ones(), (m & p.s3).count_ones()));
        }
    }
    let s4 = counts.iter().map(|c| c.0).max().unwrap_or(0);
    let s3 = counts.iter().map(|c| c.1).max().unwrap_or(0);
    TypeCoverage {
        shape_type: t,
        s4_patterns: s4,
        s3_patterns: s3,
        labeling_invariant: counts.iter().all(|&c| c == (s4, s3)),
        labelings: counts.len(),
    }
}

/// Pattern totals by independent formulas: `C(4,3)·3!` and `C(4,2)·2`.
pub fn pattern_totals() -> (u32, u32) {
    let p = Patterns::new();
    (p.s4.count_ones(), p.s3.count_ones())
}

/// A one-model / two-model type distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Distribution {
    pub n: [u8; 4],
    pub m: [u8; 2],
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [n1, n2, n3, n4] = self.n;
        let [m1, m2] = self.m;
        write!(f, "{{({n1},{n2},{n3},{n4}), ({m1},{m2})}}")
    }
}

impl Distribution {
    fn key(&self) -> usize {
        let n = self.n.iter().fold(0usize, |acc, &x| acc * 5 + x as usize);
        n * 7 + self.m[0] as usize
    }

    fn all() -> Vec<Distribution> {
        let mut out = Vec::new();
        for n1 in 0..=4u8 {
            for n2 in 0..=4 - n1 {
                for n3 in 0..=4 - n1 - n2 {
                    for m1 in 0..=6u8 {
                        out.push(Distribution { n: [n1, n2, n3, 4 - n1 - n2 - n3], m: [m1, 6 - m1] });
                    }
                }
            }
        }
        out
    }

    /// Upper bounds from the per-type counts, ignoring overlaps: `(S4, S3)`.
    pub fn capacity(&self) -> (u32, u32) {
        let mut s4 = 0;
        let mut s3 = 0;
        for (i, &t) in ShapeType::ONE_MODEL.iter().enumerate() {
            let c = shape_coverage_counts(t);
            s4 += c.s4_patterns * self.n[i] as u32;
            s3 += c.s3_patterns * self.n[i] as u32;
        }
        for (i, &t) in ShapeType::TWO_MODEL.iter().enumerate() {
            let c = shape_coverage_counts(t);
            s4 += c.s4_patterns * self.m[i] as u32;
            s3 += c.s3_patterns * self.m[i] as u32;
        }
        (s4, s3)
    }
}

/// Per-distribution tallies from the exhaustive scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExactRow {
    pub distribution: Distribution,
    pub assignments: u64,
    /// Assignments whose images cover all 24 S4 patterns.
    pub covering_s4: u64,
    /// Most S3 patterns covered by one of those.
    pub max_s3: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub scanned: u64,
    pub satisfying: u64,
    pub first_satisfying: Option<u64>,
    pub exact: Vec<ExactRow>,
    pub millis: u128,
}

#[derive(Clone, Copy, Default)]
struct Tally {
    count: u64,
    covering: u64,
    max_s3: u32,
}

/// Checks the shape form of standard domain on every assignment, slab by slab.
pub fn scan_exhaustive() -> ScanReport {
    let start = Instant::now();
    let p = Patterns::new();
    let stream = enumerate_assignments(VARS).expect("two variables");
    let masks: Vec<Vec<(u64, ShapeType)>> = stream
        .options
        .iter()
        .map(|opts| opts.iter().map(|tp| (p.mask(tp), ShapeType::of(tp).expect("four worlds"))).collect())
        .collect();
    let base = stream.fixed.iter().fold(0u64, |acc, &f| acc | masks[f][0].0);
    // every combination of the one-model choices, in stream order
    let inner: Vec<(u64, [u8; 4])> = (0..SLAB_SIZE)
        .map(|mut i| {
            let (mut mask, mut n) = (0u64, [0u8; 4]);
            for &f in stream.one.iter().rev() {
                let (m, t) = masks[f][(i % 13) as usize];
                mask |= m;
                n[ShapeType::ONE_MODEL.iter().position(|&x| x == t).expect("one model")] += 1;
                i /= 13;
            }
            (mask, n)
        })
        .collect();
    let keys = 5usize.pow(4) * 7;
    let (tallies, satisfying, first) = (0..SLABS)
        .into_par_iter()
        .map(|slab| {
            let (mut mask, mut m, mut s) = (base, [0u8; 2], slab);
            for &f in stream.two.iter().rev() {
                let (mk, t) = masks[f][(s % 3) as usize];
                mask |= mk;
                m[ShapeType::TWO_MODEL.iter().position(|&x| x == t).expect("two models")] += 1;
                s /= 3;
            }
            let mut tallies = vec![Tally::default(); keys];
            let mut sat = 0u64;
            let mut first = None;
            for (j, &(im, n)) in inner.iter().enumerate() {
                let cov = mask | im;
                let t = &mut tallies[Distribution { n, m }.key()];
                t.count += 1;
                if cov & p.s4 == p.s4 {
                    t.covering += 1;
                    t.max_s3 = t.max_s3.max((cov & p.s3).count_ones());
                }
                if cov == p.all {
                    sat += 1;
                    first.get_or_insert(slab * SLAB_SIZE + j as u64);
                }
            }
            (tallies, sat, first)
        })
        .reduce(
            || (vec![Tally::default(); keys], 0, None),
            |(mut a, sa, fa), (b, sb, fb)| {
                for (x, y) in a.iter_mut().zip(b) {
                    x.count += y.count;
                    x.covering += y.covering;
                    x.max_s3 = x.max_s3.max(y.max_s3);
                }
                let first = match (fa, fb) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (x, y) => x.or(y),
                };
                (a, sa + sb, first)
            },
        );
    let exact = Distribution::all()
        .into_iter()
        .filter_map(|d| {
            let t = tallies[d.key()];
            (t.count > 0).then_some(ExactRow { distribution: d, assignments: t.count, covering_s4: t.covering, max_s3: t.max_s3 })
        })
        .collect::<Vec<_>>();
    ScanReport {
        scanned: exact.iter().map(|r| r.assignments).sum(),
        satisfying,
        first_satisfying: first,
        exact,
        millis: start.elapsed().as_millis(),
    }
}

/// The eight rows of the reference distribution table with their S3 maxima.
pub const TABLE3: [(Distribution, u32); 8] = [
    (Distribution { n: [4, 0, 0, 0], m: [0, 6] }, 0),
    (Distribution { n: [4, 0, 0, 0], m: [1, 5] }, 2),
    (Distribution { n: [4, 0, 0, 0], m: [2, 4] }, 4),
    (Distribution { n: [3, 1, 0, 0], m: [0, 6] }, 2),
    (Distribution { n: [3, 1, 0, 0], m: [1, 5] }, 4),
    (Distribution { n: [3, 0, 1, 0], m: [0, 6] }, 1),
    (Distribution { n: [3, 0, 1, 0], m: [1, 5] }, 3),
    (Distribution { n: [3, 0, 0, 1], m: [0, 6] }, 3),
];

#[derive(Debug, Clone, Serialize)]
pub struct CapacityRow {
    pub distribution: Distribution,
    pub s4_capacity: u32,
    pub s3_capacity: u32,
    pub in_table: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CountingReport {
    pub type_counts: Vec<TypeCoverage>,
    pub pattern_totals: (u32, u32),
    /// Distributions whose capacity reaches all 24 S4 patterns.
    pub capacity_rows: Vec<CapacityRow>,
    /// Every reference row appears among the capacity rows with the same S3 maximum.
    pub table_reproduced: bool,
    /// Capacity rows missing from the reference table.
    pub extra_rows: Vec<Distribution>,
    /// Distributions for which some concrete assignment covers all 24 S4 patterns.
    pub exact_rows: Vec<ExactRow>,
    /// Every S3 maximum, bound or exact, is below 12.
    pub all_below_12: bool,
    pub scan: ScanReport,
}

impl CountingReport {
    pub fn concludes_impossible(&self) -> bool {
        self.all_below_12 && self.scan.satisfying == 0
    }
}

/// Recomputes the distribution table from per-type counts and compares it
/// with both the reference rows and the exact per-distribution tallies.
pub fn verify_counting_argument() -> CountingReport {
    let mut kinds = ShapeType::ONE_MODEL.to_vec();
    kinds.extend(ShapeType::TWO_MODEL);
    let type_counts: Vec<TypeCoverage> = kinds.into_iter().map(shape_coverage_counts).collect();
    let capacity_rows: Vec<CapacityRow> = Distribution::all()
        .into_iter()
        .filter_map(|d| {
            let (s4, s3) = d.capacity();
            (s4 >= 24).then(|| CapacityRow {
                distribution: d,
                s4_capacity: s4,
                s3_capacity: s3,
                in_table: TABLE3.iter().any(|(t, _)| *t == d),
            })
        })
        .collect();
    let table_reproduced = TABLE3.iter().all(|(d, s3)| {
        capacity_rows.iter().any(|r| r.distribution == *d && r.s3_capacity == *s3)
    });
    let extra_rows = capacity_rows.iter().filter(|r| !r.in_table).map(|r| r.distribution).collect();
    let scan = scan_exhaustive();
    let exact_rows: Vec<ExactRow> = scan.exact.iter().filter(|r| r.covering_s4 > 0).copied().collect();
    let all_below_12 =
        capacity_rows.iter().all(|r| r.s3_capacity < 12) && exact_rows.iter().all(|r| r.max_s3 < 12);
    CountingReport {
        type_counts,
        pattern_totals: pattern_totals(),
        capacity_rows,
        table_reproduced,
        extra_rows,
        exact_rows,
        all_below_12,
        scan,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: u32, k: u32) -> u32 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn shape_classes_partition_the_thirteen_codes() {
        let mut by = std::collections::BTreeMap::new();
        for c in triple_shape_codes() {
            *by.entry(TripleShape::of_code(c)).or_insert(0) += 1;
        }
        assert_eq!(by[&TripleShape::S1], 1);
        assert_eq!(by[&TripleShape::S2], 3);
        assert_eq!(by[&TripleShape::S3], 3);
        assert_eq!(by[&TripleShape::S4], 6);
    }

    #[test]
    fn s2_and_s3_by_example() {
        let tp = TotalPreorder::parse("00 01 > 10 > 11", 2).unwrap();
        let t = [World(0), World(1), World(2)];
        assert_eq!(TripleShape::of_code(tp.restrict(&t).unwrap().code), TripleShape::S2);
        let tp = TotalPreorder::parse("10 > 00 01 > 11", 2).unwrap();
        assert_eq!(TripleShape::of_code(tp.restrict(&t).unwrap().code), TripleShape::S3);
    }

    #[test]
    fn pattern_totals_match_independent_formulas() {
        assert_eq!(pattern_totals(), (binomial(4, 3) * 6, binomial(4, 2) * 2));
    }

    #[test]
    fn option_counts_follow_ordered_bell_numbers() {
        let opts = options();
        for (f, o) in FormulaSpaceAssignment::formulas().iter().zip(&opts) {
            let expected = crate::preorder::ordered_bell(4 - f.len()).max(1) as usize;
            assert_eq!(o.len(), expected, "{f}");
        }
        let total: u64 = opts.iter().map(|o| o.len() as u64).product();
        assert_eq!(total, ASSIGNMENT_COUNT);
        assert_eq!(ASSIGNMENT_COUNT, 3u64.pow(6) * 13u64.pow(4));
    }

    #[test]
    fn first_assignment_is_two_level_and_misses_every_chain() {
        let s = enumerate_assignments(2).unwrap();
        let first = s.assignment_at(0);
        assert!(first.images.iter().all(|tp| tp.height() <= 2));
        assert!(first.satisfies_maximality());
        let r = covers_sd(&first);
        assert!(!r.covers);
        assert_eq!(r.missing.iter().filter(|m| m.shape == TripleShape::S4).count(), 24);
        assert!(r.missing.iter().all(|m| matches!(m.shape, TripleShape::S3 | TripleShape::S4)));
    }

    #[test]
    fn stream_is_restartable() {
        let s = enumerate_assignments(2).unwrap();
        let tail: Vec<_> = enumerate_assignments(2).unwrap().starting_at(ASSIGNMENT_COUNT - 3).collect();
        assert_eq!(tail.len(), 3);
        assert_eq!(tail[0], s.assignment_at(ASSIGNMENT_COUNT - 3));
        let head: Vec<_> = enumerate_assignments(2).unwrap().take(30).collect();
        assert_ne!(head[0], head[1]);
        assert!(head.iter().all(|a| a.satisfies_maximality()));
        assert!(enumerate_assignments(3).is_err());
    }

    #[test]
    fn per_type_counts() {
        let expect = [
            (ShapeType::T1, 4, 0),
            (ShapeType::T2, 2, 2),
            (ShapeType::T3, 2, 1),
            (ShapeType::T4, 0, 3),
            (ShapeType::D2, 2, 0),
            (ShapeType::D1, 0, 2),
        ];
        for (t, s4, s3) in expect {
            let c = shape_coverage_counts(t);
            assert_eq!((c.s4_patterns, c.s3_patterns), (s4, s3), "{t}");
            assert!(c.labeling_invariant, "{t}");
        }
    }

    #[test]
    fn capacity_screen_contains_reference_rows() {
        for (d, s3) in TABLE3 {
            let (s4cap, s3cap) = d.capacity();
            assert!(s4cap >= 24, "{d}");
            assert_eq!(s3cap, s3, "{d}");
        }
    }

    #[test]
    fn scan_and_counting_agree() {
        let r = verify_counting_argument();
        assert_eq!(r.scan.scanned, ASSIGNMENT_COUNT);
        assert_eq!(r.scan.satisfying, 0);
        assert!(r.table_reproduced);
        assert_eq!(r.capacity_rows.len(), 11);
        assert!(r.extra_rows.iter().all(|d| d.n[0] == 2 && d.m == [0, 6]));
        let exact: Vec<(Distribution, u32)> = r.exact_rows.iter().map(|e| (e.distribution, e.max_s3)).collect();
        let d = |n: [u8; 4], m: [u8; 2]| Distribution { n, m };
        assert_eq!(
            exact,
            vec![
                (d([3, 0, 0, 1], [0, 6]), 3),
                (d([3, 0, 1, 0], [0, 6]), 1),
                (d([3, 1, 0, 0], [0, 6]), 2),
                (d([4, 0, 0, 0], [0, 6]), 0),
                (d([4, 0, 0, 0], [1, 5]), 2),
            ]
        );
        assert!(r.concludes_impossible());
    }
}
