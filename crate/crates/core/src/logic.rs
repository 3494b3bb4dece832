//! Finite propositional semantics: variable sets, worlds, belief sets and a
//! small formula language that is normalized to belief sets on parse.
//!
//! Worlds are rendered as binary strings where character `i` is the truth
//! value of variable `i`, so with variables `p, q` the world `"10"` makes `p`
//! true and `q` false. Its index is the string read as a binary number.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported number of propositional variables (16 worlds).
pub const MAX_VARS: usize = 4;
/// Largest supported world universe.
pub const MAX_WORLDS: usize = 1 << MAX_VARS;

/// An ordered set of propositional variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.len() < 2 || names.len() > MAX_VARS {
            return Err(Error::VarCount(names.len()));
        }
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if !is_identifier(n) || n == "T" || n == "F" {
                return Err(Error::InvalidVariable(n.to_string()));
            }
            if out.iter().any(|m| m == n) {
                return Err(Error::InvalidVariable(format!("duplicate variable `{n}`")));
            }
            out.push(n.to_string());
        }
        Ok(VarSet { names: out })
    }

    /// `count` variables named `p, q, r, s`.
    pub fn with_count(count: usize) -> Result<Self> {
        const DEFAULT: [&str; MAX_VARS] = ["p", "q", "r", "s"];
        if !(2..=MAX_VARS).contains(&count) {
            return Err(Error::VarCount(count));
        }
        VarSet::new(&DEFAULT[..count])
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn count(&self) -> usize {
        self.names.len()
    }

    pub fn world_count(&self) -> usize {
        1 << self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn worlds(&self) -> impl Iterator<Item = World> {
        (0..self.world_count() as u8).map(World)
    }

    pub fn full(&self) -> BeliefSet {
        BeliefSet::full(self.world_count())
    }

    /// Worlds where variable `var` is true.
    pub fn models_of_var(&self, var: usize) -> BeliefSet {
        let n = self.count();
        let mut s = BeliefSet::empty(self.world_count());
        for w in self.worlds() {
            if w.holds(var, n) {
                s = s.with(w);
            }
        }
        s
    }
}

impl Default for VarSet {
    fn default() -> Self {
        VarSet::with_count(2).expect("two variables are always valid")
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A propositional valuation, identified by its index in `[0, 2^count)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct World(pub u8);

impl World {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Truth value of variable `var` when there are `var_count` variables.
    /// Variable 0 is the most significant bit.
    pub fn holds(self, var: usize, var_count: usize) -> bool {
        (self.0 >> (var_count - 1 - var)) & 1 == 1
    }

    pub fn render(self, var_count: usize) -> String {
        (0..var_count)
            .map(|i| if self.holds(i, var_count) { '1' } else { '0' })
            .collect()
    }

    pub fn parse(text: &str, var_count: usize) -> Result<World> {
        if text.len() != var_count || !text.chars().all(|c| c == '0' || c == '1') {
            return Err(Error::InvalidWorld(text.to_string()));
        }
        let idx = u8::from_str_radix(text, 2).map_err(|_| Error::InvalidWorld(text.to_string()))?;
        Ok(World(idx))
    }
}

/// Number of variables for a universe of `world_count` worlds.
pub fn var_count_for(world_count: usize) -> usize {
    world_count.trailing_zeros() as usize
}

/// A set of worlds standing for a formula up to logical equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BeliefSet {
    mask: u16,
    worlds: u8,
}

impl BeliefSet {
    pub fn empty(world_count: usize) -> Self {
        debug_assert!(world_count <= MAX_WORLDS);
        BeliefSet { mask: 0, worlds: world_count as u8 }
    }

    pub fn full(world_count: usize) -> Self {
        BeliefSet { mask: full_mask(world_count), worlds: world_count as u8 }
    }

    pub fn from_mask(mask: u16, world_count: usize) -> Self {
        BeliefSet { mask: mask & full_mask(world_count), worlds: world_count as u8 }
    }

    pub fn from_worlds<I: IntoIterator<Item = World>>(worlds: I, world_count: usize) -> Self {
        let mut s = BeliefSet::empty(world_count);
        for w in worlds {
            s = s.with(w);
        }
        s
    }

    pub fn singleton(w: World, world_count: usize) -> Self {
        BeliefSet::empty(world_count).with(w)
    }

    pub fn with(self, w: World) -> Self {
        debug_assert!(w.index() < self.worlds as usize);
        BeliefSet { mask: self.mask | (1 << w.0), ..self }
    }

    pub fn mask(self) -> u16 {
        self.mask
    }

    pub fn world_count(self) -> usize {
        self.worlds as usize
    }

    pub fn contains(self, w: World) -> bool {
        self.mask >> w.0 & 1 == 1
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    /// A belief set is consistent iff it has a model.
    pub fn is_consistent(self) -> bool {
        self.mask != 0
    }

    pub fn is_full(self) -> bool {
        self.mask == full_mask(self.worlds as usize)
    }

    pub fn is_subset(self, other: BeliefSet) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn intersect(self, other: BeliefSet) -> BeliefSet {
        BeliefSet { mask: self.mask & other.mask, ..self }
    }

    pub fn union(self, other: BeliefSet) -> BeliefSet {
        BeliefSet { mask: self.mask | other.mask, ..self }
    }

    pub fn complement(self) -> BeliefSet {
        BeliefSet { mask: !self.mask & full_mask(self.worlds as usize), ..self }
    }

    pub fn worlds(self) -> impl Iterator<Item = World> {
        let mask = self.mask;
        (0..self.worlds).filter(move |i| mask >> i & 1 == 1).map(World)
    }

    /// Every nonempty belief set, ascending by model count then by mask.
    pub fn all_nonempty(world_count: usize) -> Vec<BeliefSet> {
        let mut v: Vec<BeliefSet> =
            (1..=full_mask(world_count)).map(|m| BeliefSet::from_mask(m, world_count)).collect();
        v.sort_by_key(|s| (s.len(), s.mask));
        v
    }

    /// Parses `{w1,w2,...}`, `⊤` or `⊥`.
    pub fn parse_world_list(text: &str, var_count: usize) -> Result<BeliefSet> {
        let n = 1usize << var_count;
        let t = text.trim();
        match t {
            "⊤" => return Ok(BeliefSet::full(n)),
            "⊥" => return Ok(BeliefSet::empty(n)),
            _ => {}
        }
        let inner = t
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::InvalidWorld(t.to_string()))?;
        let mut s = BeliefSet::empty(n);
        for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            s = s.with(World::parse(part, var_count)?);
        }
        Ok(s)
    }
}

#[inline]
pub(crate) fn full_mask(world_count: usize) -> u16 {
    if world_count >= 16 {
        u16::MAX
    } else {
        (1u16 << world_count) - 1
    }
}

/// Canonical rendering: `⊥`, `⊤`, or the world list in ascending index order.
pub fn format_belief_set(s: BeliefSet) -> String {
    s.to_string()
}

impl fmt::Display for BeliefSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("⊥");
        }
        if self.is_full() {
            return f.write_str("⊤");
        }
        let vc = var_count_for(self.world_count());
        let parts: Vec<String> = self.worlds().map(|w| w.render(vc)).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for BeliefSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Pairwise relations between two belief sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BeliefAlgebra {
    pub entails: bool,
    pub equivalent: bool,
    pub conjunction: BeliefSet,
    pub disjunction: BeliefSet,
    pub consistent_with: bool,
}

pub fn belief_algebra(a: BeliefSet, b: BeliefSet) -> Result<BeliefAlgebra> {
    if a.world_count() != b.world_count() {
        return Err(Error::UniverseMismatch { left: a.world_count(), right: b.world_count() });
    }
    Ok(BeliefAlgebra {
        entails: a.is_subset(b),
        equivalent: a == b,
        conjunction: a.intersect(b),
        disjunction: a.union(b),
        consistent_with: a.intersect(b).is_consistent(),
    })
}

/// Conjunction over an index set; the empty conjunction is `⊤`.
pub fn conjunction_all<I: IntoIterator<Item = BeliefSet>>(sets: I, world_count: usize) -> BeliefSet {
    sets.into_iter().fold(BeliefSet::full(world_count), BeliefSet::intersect)
}

// ---------------------------------------------------------------------------
// Formula parser
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'!' | b'~' => {
                out.push((i, Tok::Not));
                i += 1;
            }
            b'&' => {
                out.push((i, Tok::And));
                i += 1;
            }
            b'|' => {
                out.push((i, Tok::Or));
                i += 1;
            }
            b'(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                out.push((i, Tok::Implies));
                i += 2;
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                out.push((i, Tok::Iff));
                i += 3;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
            }
            _ => {
                return Err(Error::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{}`", text[i..].chars().next().unwrap_or('?')),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a VarSet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    // iff is the loosest binder and associates to the left
    fn iff(&mut self) -> Result<BeliefSet> {
        let mut lhs = self.implies()?;
        while self.peek() == Some(&Tok::Iff) {
            self.pos += 1;
            let rhs = self.implies()?;
            lhs = lhs.intersect(rhs).union(lhs.complement().intersect(rhs.complement()));
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<BeliefSet> {
        let lhs = self.or()?;
        if self.peek() == Some(&Tok::Implies) {
            self.pos += 1;
            let rhs = self.implies()?;
            return Ok(lhs.complement().union(rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<BeliefSet> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            lhs = lhs.union(self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<BeliefSet> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            lhs = lhs.intersect(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<BeliefSet> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(self.unary()?.complement())
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.iff()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(Error::Syntax { pos: self.offset(), msg: "expected `)`".into() });
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let n = self.vars.world_count();
                match name.as_str() {
                    "T" => Ok(BeliefSet::full(n)),
                    "F" => Ok(BeliefSet::empty(n)),
                    _ => match self.vars.index_of(&name) {
                        Some(i) => Ok(self.vars.models_of_var(i)),
                        None => Err(Error::UnknownVariable { name, pos: at }),
                    },
                }
            }
            Some(t) => Err(Error::Syntax { pos: at, msg: format!("unexpected token {t:?}") }),
            None => Err(Error::Syntax { pos: at, msg: "unexpected end of input".into() }),
        }
    }
}

/// Parses a formula and returns its set of models.
pub fn parse_formula(text: &str, vars: &VarSet) -> Result<BeliefSet> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), vars };
    let s = p.iff()?;
    if p.pos != p.toks.len() {
        return Err(Error::Syntax { pos: p.offset(), msg: "trailing input".into() });
    }
    Ok(s)
}

/// Accepts either a world list (`{00,11}`, `⊤`, `⊥`) or a formula.
pub fn parse_belief_set(text: &str, vars: &VarSet) -> Result<BeliefSet> {
    let t = text.trim();
    if t.starts_with('{') || t == "⊤" || t == "⊥" {
        BeliefSet::parse_world_list(t, vars.count())
    } else {
        parse_formula(t, vars)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pq() -> VarSet {
        VarSet::default()
    }

    fn set(ws: &[&str]) -> BeliefSet {
        BeliefSet::from_worlds(ws.iter().map(|w| World::parse(w, 2).unwrap()), 4)
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_formula("p", &pq()).unwrap(), set(&["10", "11"]));
        assert_eq!(parse_formula("T", &pq()).unwrap(), BeliefSet::full(4));
        assert_eq!(parse_formula("p & !p", &pq()).unwrap(), BeliefSet::empty(4));
        assert_eq!(parse_formula("(p | q) & !(p & q)", &pq()).unwrap(), set(&["01", "10"]));
    }

    #[test]
    fn precedence_and_associativity() {
        let v = pq();
        // `!p & q | p` is `((!p) & q) | p`
        assert_eq!(parse_formula("!p & q | p", &v).unwrap(), parse_formula("q | p", &v).unwrap());
        // right-associative implication: F -> F -> F = F -> (F -> F) = T
        assert!(parse_formula("F -> F -> F", &v).unwrap().is_full());
        // `p -> q <-> !p | q` is `(p -> q) <-> (!p | q)`, a tautology
        assert!(parse_formula("p -> q <-> !p | q", &v).unwrap().is_full());
    }

    #[test]
    fn parse_errors() {
        match parse_formula("p & (q", &pq()) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        match parse_formula("p & r", &pq()) {
            Err(Error::UnknownVariable { name, pos }) => {
                assert_eq!(name, "r");
                assert_eq!(pos, 4);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_formula("p $ q", &pq()), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_formula("", &pq()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_formula("p q", &pq()), Err(Error::Syntax { .. })));
    }

    #[test]
    fn algebra_examples() {
        let a = set(&["00"]);
        let b = set(&["00", "01"]);
        let r = belief_algebra(a, b).unwrap();
        assert!(r.entails);
        assert!(!r.equivalent);
        assert_eq!(r.conjunction, a);
        assert_eq!(r.disjunction, b);
        assert!(!belief_algebra(set(&["00"]), set(&["11"])).unwrap().consistent_with);
        assert!(conjunction_all([], 4).is_full());
        assert!(belief_algebra(BeliefSet::full(4), BeliefSet::full(8)).is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(format_belief_set(BeliefSet::empty(4)), "⊥");
        assert_eq!(format_belief_set(BeliefSet::full(4)), "⊤");
        assert_eq!(format_belief_set(set(&["11", "00"])), "{00,11}");
        assert_eq!(World(2).render(2), "10");
        assert_eq!(World::parse("10", 2).unwrap(), World(2));
        assert!(World::parse("102", 3).is_err());
    }

    #[test]
    fn world_list_roundtrip_exhaustive() {
        for m in 0..16u16 {
            let s = BeliefSet::from_mask(m, 4);
            assert_eq!(BeliefSet::parse_world_list(&s.to_string(), 2).unwrap(), s);
        }
    }

    #[test]
    fn algebra_laws_exhaustive() {
        let all: Vec<_> = (0..16u16).map(|m| BeliefSet::from_mask(m, 4)).collect();
        for &a in &all {
            assert_eq!(a.intersect(a), a);
            assert_eq!(a.union(a), a);
            for &b in &all {
                assert_eq!(a.intersect(b), b.intersect(a));
                assert_eq!(a.union(b), b.union(a));
                for &c in &all {
                    assert_eq!(a.intersect(b).intersect(c), a.intersect(b.intersect(c)));
                    assert_eq!(a.union(b).union(c), a.union(b.union(c)));
                }
            }
        }
    }

    #[test]
    fn var_set_bounds() {
        assert!(VarSet::with_count(1).is_err());
        assert!(VarSet::with_count(5).is_err());
        assert_eq!(VarSet::with_count(4).unwrap().world_count(), 16);
        assert!(VarSet::new(&["p", "p"]).is_err());
        assert!(VarSet::new(&["p", "T"]).is_err());
    }

    #[test]
    fn all_nonempty_order() {
        let v = BeliefSet::all_nonempty(4);
        assert_eq!(v.len(), 15);
        assert_eq!(v[0].len(), 1);
        assert!(v[14].is_full());
        assert!(v.windows(2).all(|w| (w[0].len(), w[0].mask()) < (w[1].len(), w[1].mask())));
    }
}
