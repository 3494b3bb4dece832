use std::time::Instant;

use serde::Serialize;

use super::{replay, CheckScope, Checker, Matrix};
use crate::error::Result;
use crate::fusion::{AssignmentKind, FusionOperator};
use crate::verdict::{PostulateId, Verdict};

/// Columns computed beside the ten table columns so the implication checks
/// have every premise they need.
pub const EXTRA_COLUMNS: [PostulateId; 8] = [
    PostulateId::ESF1,
    PostulateId::ESF2,
    PostulateId::ESF3,
    PostulateId::ESF4,
    PostulateId::P2,
    PostulateId::P3,
    PostulateId::P4,
    PostulateId::MAX,
];

/// Expected ✓ (`true`) / ✗ (`false`) per built-in operator over
/// [`PostulateId::TABLE`].
pub fn expected_table1(kind: AssignmentKind) -> [bool; 10] {
    const Y: bool = true;
    const N: bool = false;
    match kind {
        AssignmentKind::Sum => [Y, Y, Y, Y, Y, Y, Y, Y, N, N],
        AssignmentKind::Max => [Y, Y, Y, N, Y, Y, Y, Y, N, N],
        AssignmentKind::Projective => [Y, N, Y, N, Y, Y, Y, Y, Y, Y],
        AssignmentKind::LinProjective => [N, N, Y, Y, Y, N, Y, Y, Y, Y],
        AssignmentKind::QuasiLinProjective => [Y, N, N, N, Y, Y, N, Y, Y, Y],
        AssignmentKind::SigmaPseudoProjective => [Y, Y, N, N, N, Y, Y, Y, N, Y],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    /// Agrees with the expected entry.
    Match,
    /// Disagrees with the expected entry.
    Mismatch,
    /// Expected ✗ but no counterexample exists within the searched scope.
    UnresolvedAtScope,
    /// Not one of the expected table entries.
    Extra,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table1Cell {
    pub operator: String,
    pub postulate: PostulateId,
    pub verdict: Verdict,
    pub expected: Option<bool>,
    pub status: CellStatus,
    /// Whether a violation's witness re-checked through the operator.
    pub replayed: Option<bool>,
    pub millis: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table1 {
    pub scope: CheckScope,
    pub operators: Vec<String>,
    pub columns: Vec<PostulateId>,
    pub cells: Vec<Table1Cell>,
    pub millis: u128,
}

impl Table1 {
    pub fn cell(&self, op: &str, id: PostulateId) -> Option<&Table1Cell> {
        self.cells.iter().find(|c| c.operator == op && c.postulate == id)
    }

    /// Cells whose outcome differs from the expectation, or whose witness did not replay.
    pub fn defects(&self) -> Vec<String> {
        let mut out = Vec::new();
        for c in &self.cells {
            match c.status {
                CellStatus::Mismatch => out.push(format!(
                    "{} {}: expected {}, got {}",
                    c.operator,
                    c.postulate,
                    if c.expected == Some(true) { "✓" } else { "✗" },
                    c.verdict.status_str()
                )),
                CellStatus::UnresolvedAtScope => out.push(format!(
                    "{} {}: expected ✗ but no counterexample within the searched scope",
                    c.operator, c.postulate
                )),
                _ => {}
            }
            if c.replayed == Some(false) {
                out.push(format!("{} {}: witness does not replay", c.operator, c.postulate));
            }
        }
        out
    }

    pub fn matches_expected(&self) -> bool {
        self.defects().is_empty()
    }

    pub fn matrix(&self) -> Matrix {
        let mut m = Matrix::new();
        for c in &self.cells {
            m.record(&c.operator, c.postulate, &c.verdict);
        }
        m
    }
}

/// Runs the six built-in operators against the ten table columns plus
/// [`EXTRA_COLUMNS`].
pub fn run_table1(scope: &CheckScope) -> Result<Table1> {
    run_table1_for(&FusionOperator::all(scope.world_count()), scope, true)
}

/// Same as [`run_table1`] for arbitrary operators. Expectations apply only to built-ins.
pub fn run_table1_for(ops: &[FusionOperator], scope: &CheckScope, extras: bool) -> Result<Table1> {
    let start = Instant::now();
    let mut columns = PostulateId::TABLE.to_vec();
    if extras {
        columns.extend(EXTRA_COLUMNS);
    }
    let mut cells = Vec::new();
    for op in ops {
        let checker = Checker::new(op, scope)?;
        for &id in &columns {
            let t = Instant::now();
            let verdict = checker.check(id)?;
            let expected = op.kind().and_then(|k| {
                PostulateId::TABLE.iter().position(|&c| c == id).map(|i| expected_table1(k)[i])
            });
            let status = match (expected, &verdict) {
                (None, _) => CellStatus::Extra,
                (Some(true), Verdict::Satisfied { .. }) | (Some(false), Verdict::Violated { .. }) => CellStatus::Match,
                (Some(false), Verdict::Satisfied { .. }) => CellStatus::UnresolvedAtScope,
                _ => CellStatus::Mismatch,
            };
            let replayed = match verdict.witness() {
                Some(w) => Some(replay(op, id, w)?),
                None => None,
            };
            cells.push(Table1Cell {
                operator: op.name().to_string(),
                postulate: id,
                verdict,
                expected,
                status,
                replayed,
                millis: t.elapsed().as_millis(),
            });
        }
    }
    Ok(Table1 {
        scope: scope.clone(),
        operators: ops.iter().map(|o| o.name().to_string()).collect(),
        columns,
        cells,
        millis: start.elapsed().as_millis(),
    })
}
