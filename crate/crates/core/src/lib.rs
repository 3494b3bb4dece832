//! Belief merging over total-preorder epistemic states.
//!
//! The crate provides propositional semantics over a handful of variables,
//! total preorders with lexicographic combination, profiles over finite
//! societies, six concrete fusion operators, an exhaustive postulate checker
//! with replayable counterexamples, coalition analysis, and a brute-force
//! impossibility scan for formula-valued epistemic states.

pub mod checker;
pub mod cli;
pub mod coalition;
pub mod error;
pub mod fusion;
pub mod impossibility;
pub mod logic;
pub mod preorder;
pub mod report;
pub mod society;
pub mod verdict;

pub use checker::{CheckScope, Checker, ConstraintMode};
pub use error::{Error, Result};
pub use fusion::{AssignmentKind, FusionOperator};
pub use logic::{BeliefSet, VarSet, World};
pub use preorder::{Ordering3, TotalPreorder};
pub use society::{AgentId, Profile, Society};
pub use verdict::{PostulateId, Verdict, Witness};
