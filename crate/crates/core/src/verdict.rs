//! Check outcomes and replayable counterexamples.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::logic::{BeliefSet, World};
use crate::preorder::TotalPreorder;
use crate::society::{AgentId, Profile, Society};

/// Every checkable postulate or assignment property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PostulateId {
    ESF1,
    ESF2,
    ESF3,
    ESF4,
    ESF5,
    ESF6,
    ESF7,
    ESF8,
    ESF8W,
    SD,
    U,
    P,
    I,
    D,
    P1,
    P2,
    P3,
    P4,
    P4W,
    MAX,
    SemU,
    SemP,
    SemInd,
    SemD,
}

impl PostulateId {
    pub const ALL: [PostulateId; 24] = [
        PostulateId::ESF1,
        PostulateId::ESF2,
        PostulateId::ESF3,
        PostulateId::ESF4,
        PostulateId::ESF5,
        PostulateId::ESF6,
        PostulateId::ESF7,
        PostulateId::ESF8,
        PostulateId::ESF8W,
        PostulateId::SD,
        PostulateId::U,
        PostulateId::P,
        PostulateId::I,
        PostulateId::D,
        PostulateId::P1,
        PostulateId::P2,
        PostulateId::P3,
        PostulateId::P4,
        PostulateId::P4W,
        PostulateId::MAX,
        PostulateId::SemU,
        PostulateId::SemP,
        PostulateId::SemInd,
        PostulateId::SemD,
    ];

    /// The ten columns of the operator property table.
    pub const TABLE: [PostulateId; 10] = [
        PostulateId::ESF5,
        PostulateId::ESF6,
        PostulateId::ESF7,
        PostulateId::ESF8,
        PostulateId::ESF8W,
        PostulateId::SD,
        PostulateId::U,
        PostulateId::P,
        PostulateId::I,
        PostulateId::D,
    ];

    pub fn is_semantic(self) -> bool {
        matches!(
            self,
            PostulateId::P1
                | PostulateId::P2
                | PostulateId::P3
                | PostulateId::P4
                | PostulateId::P4W
                | PostulateId::MAX
                | PostulateId::SemU
                | PostulateId::SemP
                | PostulateId::SemInd
                | PostulateId::SemD
        )
    }

    pub fn label(self) -> &'static str {
        match self {
            PostulateId::ESF1 => "ESF1",
            PostulateId::ESF2 => "ESF2",
            PostulateId::ESF3 => "ESF3",
            PostulateId::ESF4 => "ESF4",
            PostulateId::ESF5 => "ESF5",
            PostulateId::ESF6 => "ESF6",
            PostulateId::ESF7 => "ESF7",
            PostulateId::ESF8 => "ESF8",
            PostulateId::ESF8W => "ESF8W",
            PostulateId::SD => "ESF-SD",
            PostulateId::U => "ESF-U",
            PostulateId::P => "ESF-P",
            PostulateId::I => "ESF-I",
            PostulateId::D => "ESF-D",
            PostulateId::P1 => "P1",
            PostulateId::P2 => "P2",
            PostulateId::P3 => "P3",
            PostulateId::P4 => "P4",
            PostulateId::P4W => "P4W",
            PostulateId::MAX => "MAX",
            PostulateId::SemU => "SEM_U",
            PostulateId::SemP => "SEM_P",
            PostulateId::SemInd => "SEM_IND",
            PostulateId::SemD => "SEM_D",
        }
    }

    /// Short column header used in tables.
    pub fn short(self) -> &'static str {
        match self {
            PostulateId::SD => "SD",
            PostulateId::U => "U",
            PostulateId::P => "P",
            PostulateId::I => "I",
            PostulateId::D => "D",
            other => other.label(),
        }
    }
}

impl fmt::Display for PostulateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for PostulateId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let key = s.trim().to_ascii_uppercase().replace('-', "_");
        let key = key.strip_prefix("SEM_").map(|k| format!("SEM_{k}")).unwrap_or(key);
        let id = match key.as_str() {
            "ESF1" => PostulateId::ESF1,
            "ESF2" => PostulateId::ESF2,
            "ESF3" => PostulateId::ESF3,
            "ESF4" => PostulateId::ESF4,
            "ESF5" => PostulateId::ESF5,
            "ESF6" => PostulateId::ESF6,
            "ESF7" => PostulateId::ESF7,
            "ESF8" => PostulateId::ESF8,
            "ESF8W" => PostulateId::ESF8W,
            "SD" | "ESF_SD" => PostulateId::SD,
            "U" | "ESF_U" => PostulateId::U,
            "P" | "ESF_P" => PostulateId::P,
            "I" | "ESF_I" => PostulateId::I,
            "D" | "ESF_D" => PostulateId::D,
            "P1" | "SEM_P1" => PostulateId::P1,
            "P2" | "SEM_P2" => PostulateId::P2,
            "P3" | "SEM_P3" => PostulateId::P3,
            "P4" | "SEM_P4" => PostulateId::P4,
            "P4W" | "SEM_P4W" => PostulateId::P4W,
            "MAX" | "SEM_MAX" => PostulateId::MAX,
            "SEM_U" => PostulateId::SemU,
            "SEM_P" => PostulateId::SemP,
            "SEM_IND" | "SEM_I" => PostulateId::SemInd,
            "SEM_D" => PostulateId::SemD,
            _ => return Err(Error::UnknownPostulate(s.to_string())),
        };
        Ok(id)
    }
}

/// A replayable counterexample. Only the fields relevant to the violated
/// statement are filled in.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub society: Option<Society>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<Profile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub other_profile: Option<Profile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<(Society, Society)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub agents: Vec<AgentId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constraint: Option<BeliefSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constraint_state: Option<TotalPreorder>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub other_state: Option<TotalPreorder>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub other_constraints: Vec<BeliefSet>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub worlds: Vec<World>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<u8>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tuples: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub observed: Vec<(String, BeliefSet)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<Witness>,
    pub note: String,
}

impl Witness {
    pub fn noted(note: impl Into<String>) -> Witness {
        Witness { note: note.into(), ..Witness::default() }
    }

    pub fn observe(mut self, label: impl Into<String>, set: BeliefSet) -> Witness {
        self.observed.push((label.into(), set));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Satisfied { scope: String },
    Violated { witness: Box<Witness> },
    Skipped { reason: String },
}

impl Verdict {
    pub fn violated(w: Witness) -> Verdict {
        Verdict::Violated { witness: Box::new(w) }
    }

    pub fn is_satisfied(&self) -> bool {
        matches!(self, Verdict::Satisfied { .. })
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, Verdict::Violated { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Violated { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn status_str(&self) -> &'static str {
        match self {
            Verdict::Satisfied { .. } => "satisfied",
            Verdict::Violated { .. } => "violated",
            Verdict::Skipped { .. } => "skipped",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_parse_in_all_spellings() {
        for id in PostulateId::ALL {
            assert_eq!(id.label().parse::<PostulateId>().unwrap(), id);
        }
        assert_eq!("ESF-D".parse::<PostulateId>().unwrap(), PostulateId::D);
        assert_eq!("SEM_P4W".parse::<PostulateId>().unwrap(), PostulateId::P4W);
        assert_eq!("sem_ind".parse::<PostulateId>().unwrap(), PostulateId::SemInd);
        assert!("ESF9".parse::<PostulateId>().is_err());
    }
}
