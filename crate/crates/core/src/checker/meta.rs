use std::collections::BTreeMap;

use serde::Serialize;

use crate::verdict::{PostulateId, Verdict, Witness};

/// Satisfied/violated outcomes per operator row, as used by the implication checks.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Matrix {
    pub rows: Vec<(String, BTreeMap<PostulateId, bool>)>,
}

impl Matrix {
    pub fn new() -> Matrix {
        Matrix::default()
    }

    pub fn set(&mut self, op: &str, id: PostulateId, holds: bool) {
        match self.rows.iter_mut().find(|(name, _)| name == op) {
            Some((_, row)) => {
                row.insert(id, holds);
            }
            None => self.rows.push((op.to_string(), BTreeMap::from([(id, holds)]))),
        }
    }

    pub fn get(&self, op: &str, id: PostulateId) -> Option<bool> {
        self.rows.iter().find(|(name, _)| name == op).and_then(|(_, row)| row.get(&id).copied())
    }

    /// Records a verdict; skipped verdicts leave the cell empty.
    pub fn record(&mut self, op: &str, id: PostulateId, v: &Verdict) {
        match v {
            Verdict::Satisfied { .. } => self.set(op, id, true),
            Verdict::Violated { .. } => self.set(op, id, false),
            Verdict::Skipped { .. } => {}
        }
    }
}

/// One implication between columns: all of `premises` imply `conclusion`.
#[derive(Debug, Clone, Copy)]
pub struct Implication {
    pub name: &'static str,
    pub premises: &'static [PostulateId],
    pub conclusion: Conclusion,
}

#[derive(Debug, Clone, Copy)]
pub enum Conclusion {
    Holds(PostulateId),
    Equivalent(PostulateId, PostulateId),
}

use PostulateId as Id;

pub const IMPLICATIONS: [Implication; 8] = [
    Implication { name: "ESF2 ∧ ESF7 ∧ ESF8 ⟹ ESF-U", premises: &[Id::ESF2, Id::ESF7, Id::ESF8], conclusion: Conclusion::Holds(Id::U) },
    Implication { name: "ESF7 ∧ ESF8W ⟹ ESF-P", premises: &[Id::ESF7, Id::ESF8W], conclusion: Conclusion::Holds(Id::P) },
    Implication { name: "ESF-U ∧ ESF-I ⟹ ESF-P", premises: &[Id::U, Id::I], conclusion: Conclusion::Holds(Id::P) },
    Implication { name: "ESF-D ⟹ ESF-P", premises: &[Id::D], conclusion: Conclusion::Holds(Id::P) },
    Implication { name: "ESF-SD ∧ ESF-P ∧ ESF-I ⟹ ESF-D", premises: &[Id::SD, Id::P, Id::I], conclusion: Conclusion::Holds(Id::D) },
    Implication {
        name: "ESF-SD ∧ ESF7 ∧ ESF8W ∧ ESF-I ⟹ ESF-D",
        premises: &[Id::SD, Id::ESF7, Id::ESF8W, Id::I],
        conclusion: Conclusion::Holds(Id::D),
    },
    Implication { name: "ESF-SD ∧ ESF-U ∧ ESF-I ⟹ ESF-D", premises: &[Id::SD, Id::U, Id::I], conclusion: Conclusion::Holds(Id::D) },
    Implication { name: "P3 ∧ P4 ⟹ (P2 ⟺ MAX)", premises: &[Id::P3, Id::P4], conclusion: Conclusion::Equivalent(Id::P2, Id::MAX) },
];

#[derive(Debug, Clone, Serialize)]
pub struct MetaReport {
    /// `(operator, implication, outcome)` for every evaluated pair.
    pub checked: Vec<(String, String, String)>,
    pub defects: Vec<String>,
}

impl MetaReport {
    pub fn passed(&self) -> bool {
        self.defects.is_empty()
    }

    pub fn verdict(&self) -> Verdict {
        if self.passed() {
            Verdict::Satisfied { scope: format!("{} implication instances checked", self.checked.len()) }
        } else {
            Verdict::violated(Witness::noted(self.defects.join("; ")))
        }
    }
}

/// Checks every implication on every row; a missing column is a defect.
pub fn check_metatheorems(matrix: &Matrix) -> MetaReport {
    let mut checked = Vec::new();
    let mut defects = Vec::new();
    for (op, _) in &matrix.rows {
        for imp in IMPLICATIONS {
            let mut needed: Vec<Id> = imp.premises.to_vec();
            match imp.conclusion {
                Conclusion::Holds(c) => needed.push(c),
                Conclusion::Equivalent(a, b) => needed.extend([a, b]),
            }
            let missing: Vec<String> =
                needed.iter().filter(|&&id| matrix.get(op, id).is_none()).map(|id| id.to_string()).collect();
            if !missing.is_empty() {
                defects.push(format!("{op}: cannot evaluate {} (missing {})", imp.name, missing.join(", ")));
                continue;
            }
            let premises = imp.premises.iter().all(|&id| matrix.get(op, id) == Some(true));
            let outcome = if !premises {
                "vacuous"
            } else {
                let ok = match imp.conclusion {
                    Conclusion::Holds(c) => matrix.get(op, c) == Some(true),
                    Conclusion::Equivalent(a, b) => matrix.get(op, a) == matrix.get(op, b),
                };
                if !ok {
                    let cells: Vec<String> = needed
                        .iter()
                        .map(|&id| format!("{id}={}", if matrix.get(op, id) == Some(true) { "✓" } else { "✗" }))
                        .collect();
                    defects.push(format!("{op}: {} fails ({})", imp.name, cells.join(", ")));
                    "violated"
                } else {
                    "holds"
                }
            };
            checked.push((op.clone(), imp.name.to_string(), outcome.to_string()));
        }
    }
    MetaReport { checked, defects }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(m: &mut Matrix, op: &str, cells: &[(Id, bool)]) {
        for &(id, v) in cells {
            m.set(op, id, v);
        }
    }

    fn complete(m: &mut Matrix, op: &str) {
        for id in [Id::ESF2, Id::ESF7, Id::ESF8, Id::ESF8W, Id::SD, Id::U, Id::P, Id::I, Id::D, Id::P2, Id::P3, Id::P4, Id::MAX] {
            if m.get(op, id).is_none() {
                m.set(op, id, true);
            }
        }
    }

    #[test]
    fn consistent_row_passes() {
        let mut m = Matrix::new();
        complete(&mut m, "proj");
        assert!(check_metatheorems(&m).passed());
    }

    #[test]
    fn flipped_dictatorship_is_reported() {
        let mut m = Matrix::new();
        row(&mut m, "proj", &[(Id::D, false)]);
        complete(&mut m, "proj");
        let r = check_metatheorems(&m);
        assert!(!r.passed());
        assert!(r.defects.iter().any(|d| d.contains("ESF-SD ∧ ESF-P ∧ ESF-I ⟹ ESF-D")));
    }

    #[test]
    fn missing_column_is_a_defect() {
        let mut m = Matrix::new();
        m.set("sum", Id::D, true);
        let r = check_metatheorems(&m);
        assert!(r.defects.iter().any(|d| d.contains("missing")));
    }

    #[test]
    fn maximality_equivalence_needs_both_sides() {
        let mut m = Matrix::new();
        row(&mut m, "x", &[(Id::P2, true), (Id::MAX, false)]);
        complete(&mut m, "x");
        assert!(check_metatheorems(&m).defects.iter().any(|d| d.contains("MAX")));
        let mut m = Matrix::new();
        row(&mut m, "y", &[(Id::P2, true), (Id::MAX, false), (Id::P4, false)]);
        complete(&mut m, "y");
        assert!(check_metatheorems(&m).passed());
    }
}
