//! Agents, societies and profiles.
//!
//! A profile maps each member of a society to a total preorder. Members are
//! kept in ascending order, so a profile reads as the tuple
//! `(E_{i1}, ..., E_{in})` and `d_N = max(N)` is its last position.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::preorder::TotalPreorder;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AgentId(pub u32);

impl AgentId {
    pub fn new(id: u32) -> Result<AgentId> {
        if id == 0 {
            return Err(Error::InvalidAgent("0".into()));
        }
        Ok(AgentId(id))
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A nonempty, sorted, duplicate-free set of agents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Society {
    members: Vec<AgentId>,
}

impl Society {
    pub fn new<I: IntoIterator<Item = u32>>(ids: I) -> Result<Society> {
        let mut members = Vec::new();
        for id in ids {
            members.push(AgentId::new(id)?);
        }
        Society::from_agents(members)
    }

    pub fn from_agents(mut members: Vec<AgentId>) -> Result<Society> {
        if members.is_empty() {
            return Err(Error::EmptySociety);
        }
        members.sort_unstable();
        if let Some(p) = members.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::DuplicateAgent(p[0].0));
        }
        Ok(Society { members })
    }

    /// Parses `1,2,3`.
    pub fn parse(text: &str) -> Result<Society> {
        let mut ids = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let id: u32 = part.parse().map_err(|_| Error::InvalidAgent(part.to_string()))?;
            ids.push(id);
        }
        Society::new(ids)
    }

    pub fn members(&self) -> &[AgentId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `d_N = max(N)`.
    pub fn max_agent(&self) -> AgentId {
        *self.members.last().expect("societies are nonempty")
    }

    pub fn contains(&self, a: AgentId) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn position(&self, a: AgentId) -> Option<usize> {
        self.members.binary_search(&a).ok()
    }

    pub fn is_subset(&self, other: &Society) -> bool {
        self.members.iter().all(|a| other.contains(*a))
    }

    pub fn is_disjoint(&self, other: &Society) -> bool {
        self.members.iter().all(|a| !other.contains(*a))
    }

    /// Members selected by a bitmask over positions.
    pub fn select(&self, mask: u32) -> Option<Society> {
        let m: Vec<AgentId> =
            self.members.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, a)| *a).collect();
        if m.is_empty() {
            None
        } else {
            Some(Society { members: m })
        }
    }

    /// Every nonempty sub-society of size at most `max_size`, by size then lexicographically.
    pub fn subsocieties(&self, max_size: usize) -> Vec<Society> {
        let n = self.len();
        let mut out: Vec<Society> = (1u32..(1 << n))
            .filter(|m| (m.count_ones() as usize) <= max_size)
            .filter_map(|m| self.select(m))
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
        out
    }
}

impl fmt::Display for Society {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.members.iter().map(|a| a.to_string()).collect();
        write!(f, "{{{}}}", ids.join(","))
    }
}

impl Serialize for Society {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.members.iter().map(|a| a.0))
    }
}

/// Every unordered pair of disjoint nonempty blocks covering `n`. The first
/// member always lands in the first block.
pub fn two_partitions(n: &Society) -> Result<Vec<(Society, Society)>> {
    if n.len() < 2 {
        return Err(Error::SingletonSociety);
    }
    Ok(two_partition_masks(n.len())
        .into_iter()
        .map(|(a, b)| (n.select(a).expect("nonempty"), n.select(b).expect("nonempty")))
        .collect())
}

/// Position bitmasks of the blocks produced by [`two_partitions`] for a society of size `k`.
pub fn two_partition_masks(k: usize) -> Vec<(u32, u32)> {
    if k < 2 {
        return Vec::new();
    }
    let all = (1u32 << k) - 1;
    let others = k - 1;
    (0u32..(1 << others) - 1)
        .map(|sub| {
            let first = 1 | (sub << 1);
            (first, all & !first)
        })
        .collect()
}

/// An assignment of one epistemic state to each member of a society.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    society: Society,
    states: Vec<TotalPreorder>,
}

impl Profile {
    pub fn new(society: Society, states: Vec<TotalPreorder>) -> Result<Profile> {
        if society.len() != states.len() {
            return Err(Error::Invalid(format!(
                "society {society} has {} members but {} states were given",
                society.len(),
                states.len()
            )));
        }
        let n = states[0].world_count();
        if let Some(s) = states.iter().find(|s| s.world_count() != n) {
            return Err(Error::UniverseMismatch { left: n, right: s.world_count() });
        }
        Ok(Profile { society, states })
    }

    pub fn singleton(agent: AgentId, state: TotalPreorder) -> Profile {
        Profile { society: Society { members: vec![agent] }, states: vec![state] }
    }

    pub fn society(&self) -> &Society {
        &self.society
    }

    pub fn agents(&self) -> &[AgentId] {
        self.society.members()
    }

    pub fn states(&self) -> &[TotalPreorder] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn world_count(&self) -> usize {
        self.states[0].world_count()
    }

    pub fn state_of(&self, a: AgentId) -> Option<&TotalPreorder> {
        self.society.position(a).map(|i| &self.states[i])
    }

    pub fn entries(&self) -> impl Iterator<Item = (AgentId, &TotalPreorder)> {
        self.society.members().iter().copied().zip(self.states.iter())
    }

    /// The joint `Φ ⊔ Ψ` of profiles over disjoint societies.
    pub fn join(&self, other: &Profile) -> Result<Profile> {
        if let Some(a) = self.agents().iter().find(|a| other.society.contains(**a)) {
            return Err(Error::OverlappingSocieties(a.0));
        }
        if self.world_count() != other.world_count() {
            return Err(Error::UniverseMismatch { left: self.world_count(), right: other.world_count() });
        }
        let mut pairs: Vec<(AgentId, TotalPreorder)> =
            self.entries().chain(other.entries()).map(|(a, s)| (a, *s)).collect();
        pairs.sort_by_key(|(a, _)| *a);
        Ok(Profile {
            society: Society { members: pairs.iter().map(|(a, _)| *a).collect() },
            states: pairs.into_iter().map(|(_, s)| s).collect(),
        })
    }

    /// The restriction `Φ↾M`.
    pub fn restrict(&self, m: &Society) -> Result<Profile> {
        if !m.is_subset(&self.society) {
            return Err(Error::NotSubset(m.to_string()));
        }
        let states = m.members().iter().map(|a| *self.state_of(*a).expect("subset")).collect();
        Ok(Profile { society: m.clone(), states })
    }

    /// Positional equivalence: same length and identical states position by
    /// position; agent labels may differ, permutations are not allowed.
    pub fn equivalent(&self, other: &Profile) -> bool {
        self.states == other.states
    }

    /// Same states relabelled onto another society of equal size.
    pub fn relabel(&self, society: &Society) -> Result<Profile> {
        Profile::new(society.clone(), self.states.clone())
    }

    /// One line per agent: `agent_id: <preorder literal>`.
    pub fn to_file_format(&self) -> String {
        let mut out = String::new();
        for (a, s) in self.entries() {
            out.push_str(&format!("{a}: {s}\n"));
        }
        out
    }

    /// Parses the profile file format. Blank lines and `#` comments are ignored.
    pub fn parse_file_format(text: &str, var_count: usize) -> Result<Profile> {
        let mut pairs: Vec<(AgentId, TotalPreorder)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (id, lit) = line.split_once(':').ok_or_else(|| Error::ProfileFormat {
                line: i + 1,
                msg: "expected `agent_id: <preorder>`".into(),
            })?;
            let id: u32 = id
                .trim()
                .parse()
                .map_err(|_| Error::ProfileFormat { line: i + 1, msg: format!("bad agent id `{}`", id.trim()) })?;
            let agent = AgentId::new(id).map_err(|e| Error::ProfileFormat { line: i + 1, msg: e.to_string() })?;
            let tp = TotalPreorder::parse(lit.trim(), var_count)
                .map_err(|e| Error::ProfileFormat { line: i + 1, msg: e.to_string() })?;
            if pairs.iter().any(|(a, _)| *a == agent) {
                return Err(Error::ProfileFormat { line: i + 1, msg: format!("agent {id} listed twice") });
            }
            pairs.push((agent, tp));
        }
        if pairs.is_empty() {
            return Err(Error::ProfileFormat { line: 0, msg: "no agents".into() });
        }
        pairs.sort_by_key(|(a, _)| *a);
        let society = Society::from_agents(pairs.iter().map(|(a, _)| *a).collect())?;
        Profile::new(society, pairs.into_iter().map(|(_, s)| s).collect())
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.states.iter().map(|s| s.to_string()).collect();
        write!(f, "({}) over {}", parts.join("; "), self.society)
    }
}

impl Serialize for Profile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_file_format())
    }
}

/// Mixed-radix stream over all `|states|^|n|` profiles; the first agent is the
/// most significant digit.
#[derive(Debug, Clone)]
pub struct ProfileStream<'a> {
    society: Society,
    states: &'a [TotalPreorder],
    next: u64,
    total: u64,
}

pub fn enumerate_profiles<'a>(n: &Society, states: &'a [TotalPreorder]) -> Result<ProfileStream<'a>> {
    if states.is_empty() {
        return Err(Error::Invalid("no states to enumerate profiles over".into()));
    }
    let total = (states.len() as u64).checked_pow(n.len() as u32).ok_or_else(|| Error::CostCeiling {
        what: "profile enumeration".into(),
        estimate: (states.len() as f64).powi(n.len() as i32),
        ceiling: u64::MAX as f64,
    })?;
    Ok(ProfileStream { society: n.clone(), states, next: 0, total })
}

impl<'a> ProfileStream<'a> {
    /// Restarts the stream at the given index.
    pub fn starting_at(mut self, offset: u64) -> Self {
        self.next = offset.min(self.total);
        self
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// The profile at an absolute index.
    pub fn profile_at(&self, index: u64) -> Profile {
        let digits = profile_digits(index, self.states.len(), self.society.len());
        Profile { society: self.society.clone(), states: digits.iter().map(|&d| self.states[d]).collect() }
    }
}

/// Digits of a profile index, most significant (first agent) first.
pub fn profile_digits(mut index: u64, radix: usize, len: usize) -> Vec<usize> {
    let mut digits = vec![0; len];
    for i in (0..len).rev() {
        digits[i] = (index % radix as u64) as usize;
        index /= radix as u64;
    }
    digits
}

impl Iterator for ProfileStream<'_> {
    type Item = Profile;

    fn next(&mut self) -> Option<Profile> {
        if self.next >= self.total {
            return None;
        }
        let p = self.profile_at(self.next);
        self.next += 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preorder::all_preorders;

    fn tp(s: &str) -> TotalPreorder {
        TotalPreorder::parse(s, 2).unwrap()
    }

    fn soc(ids: &[u32]) -> Society {
        Society::new(ids.iter().copied()).unwrap()
    }

    #[test]
    fn society_invariants() {
        assert!(Society::new([]).is_err());
        assert!(Society::new([1, 1]).is_err());
        assert!(Society::new([0]).is_err());
        let s = Society::new([3, 1]).unwrap();
        assert_eq!(s.members(), &[AgentId(1), AgentId(3)]);
        assert_eq!(s.max_agent(), AgentId(3));
        assert_eq!(Society::parse("2, 4,1").unwrap(), soc(&[1, 2, 4]));
        assert_eq!(soc(&[1, 2, 3, 4]).subsocieties(4).len(), 15);
        assert_eq!(soc(&[1, 2, 3, 4]).subsocieties(2)[4], soc(&[1, 2]));
    }

    #[test]
    fn join_and_restrict() {
        let a = Profile::singleton(AgentId(1), tp("11 > 00 01 10"));
        let b = Profile::singleton(AgentId(2), tp("00 > 01 10 11"));
        let j = a.join(&b).unwrap();
        assert_eq!(j.society(), &soc(&[1, 2]));
        assert_eq!(j.restrict(a.society()).unwrap(), a);
        assert_eq!(b.join(&a).unwrap(), j);
        assert!(a.join(&a).is_err());
        assert!(j.restrict(&soc(&[3])).is_err());
        assert_eq!(j.restrict(j.society()).unwrap(), j);
    }

    #[test]
    fn equivalence_is_positional() {
        let t1 = tp("11 > 00 01 10");
        let t2 = tp("00 > 01 10 11");
        let p = Profile::new(soc(&[1, 2]), vec![t1, t2]).unwrap();
        let q = Profile::new(soc(&[3, 7]), vec![t1, t2]).unwrap();
        let r = Profile::new(soc(&[1, 2]), vec![t2, t1]).unwrap();
        assert!(p.equivalent(&q));
        assert!(!p.equivalent(&r));
        assert!(p.equivalent(&p));
    }

    /// Independent oracle for two-block partitions: assign each member a block
    /// label and keep labelings with both blocks used, up to swapping labels.
    fn partition_oracle(n: usize) -> usize {
        let mut seen = std::collections::HashSet::new();
        for lab in 0u32..(1 << n) {
            let a = lab;
            let b = !lab & ((1 << n) - 1);
            if a == 0 || b == 0 {
                continue;
            }
            seen.insert(a.min(b));
        }
        seen.len()
    }

    #[test]
    fn two_partition_counts() {
        assert!(two_partitions(&soc(&[1])).is_err());
        for (k, expected) in [(2, 1), (3, 3), (4, 7)] {
            let n = soc(&(1..=k).collect::<Vec<_>>());
            let parts = two_partitions(&n).unwrap();
            assert_eq!(parts.len(), expected);
            assert_eq!(parts.len(), partition_oracle(k as usize));
            assert_eq!(parts.len(), (1 << (k - 1)) - 1);
            let mut keys = std::collections::HashSet::new();
            for (a, b) in &parts {
                assert!(a.is_disjoint(b));
                assert_eq!(a.len() + b.len(), n.len());
                let key = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
                assert!(keys.insert(key));
            }
        }
    }

    #[test]
    fn reassembly_identity_exhaustive() {
        let states = all_preorders(4).unwrap();
        for k in 2..=3u32 {
            let n = soc(&(1..=k).collect::<Vec<_>>());
            let parts = two_partitions(&n).unwrap();
            for p in enumerate_profiles(&n, &states).unwrap().step_by(if k == 3 { 7 } else { 1 }) {
                for (a, b) in &parts {
                    let back = p.restrict(a).unwrap().join(&p.restrict(b).unwrap()).unwrap();
                    assert_eq!(back, p);
                }
            }
        }
    }

    #[test]
    fn profile_counts_and_offsets() {
        let states = all_preorders(4).unwrap();
        assert_eq!(enumerate_profiles(&soc(&[1]), &states).unwrap().count(), 75);
        assert_eq!(enumerate_profiles(&soc(&[1, 2]), &states).unwrap().count(), 5625);
        assert_eq!(enumerate_profiles(&soc(&[1, 2, 3]), &states).unwrap().total(), 421_875);
        let all: Vec<_> = enumerate_profiles(&soc(&[1, 2]), &states).unwrap().collect();
        let tail: Vec<_> = enumerate_profiles(&soc(&[1, 2]), &states).unwrap().starting_at(5000).collect();
        assert_eq!(tail, all[5000..]);
        assert_eq!(all[1].states(), &[states[0], states[1]]);
    }

    #[test]
    fn file_format_roundtrip() {
        let text = "2: 11 > 00 01 10\n# comment\n1: 00 > 01 > 10 11\n";
        let p = Profile::parse_file_format(text, 2).unwrap();
        assert_eq!(p.society(), &soc(&[1, 2]));
        assert_eq!(Profile::parse_file_format(&p.to_file_format(), 2).unwrap(), p);
        assert!(Profile::parse_file_format("1 11 > 00 01 10", 2).is_err());
        assert!(Profile::parse_file_format("1: 11 > 00", 2).is_err());
        assert!(Profile::parse_file_format("1: 11 > 00 01 10\n1: 00 01 10 11", 2).is_err());
    }
}
