//! Human, CSV and structured renderings of check results.
//!
//! Structured reports have the shape `{config, results[], defects[], timing}`.
//! Everything outside `timing` is a function of the configuration alone, so two
//! runs with the same configuration produce identical [`Report::comparable_json`].

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::checker::{CellStatus, CheckScope, MetaReport, Table1};
use crate::error::{Error, Result};
use crate::impossibility::CountingReport;
use crate::logic::var_count_for;
use crate::verdict::{PostulateId, Verdict, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Table,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s.trim().to_ascii_lowercase().as_str() {
            "table" | "text" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            "json" | "structured" => Ok(Format::Json),
            other => Err(Error::Invalid(format!("unknown format `{other}` (table, csv, json)"))),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Timing {
    pub total_ms: u128,
    pub steps: BTreeMap<String, u128>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub config: Value,
    pub results: Vec<Value>,
    pub defects: Vec<String>,
    pub timing: Timing,
}

impl Report {
    pub fn new(config: impl Serialize) -> Report {
        Report {
            config: serde_json::to_value(config).unwrap_or(Value::Null),
            results: Vec::new(),
            defects: Vec::new(),
            timing: Timing::default(),
        }
    }

    pub fn push(&mut self, result: impl Serialize) {
        self.results.push(serde_json::to_value(result).unwrap_or(Value::Null));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report without its timing block.
    pub fn comparable_json(&self) -> String {
        let v = json!({ "config": self.config, "results": self.results, "defects": self.defects });
        serde_json::to_string_pretty(&v).expect("report serializes")
    }
}

fn glyph(v: &Verdict) -> &'static str {
    match v {
        Verdict::Satisfied { .. } => "✓",
        Verdict::Violated { .. } => "✗",
        Verdict::Skipped { .. } => "-",
    }
}

/// One line describing the scope behind ✓ and ✗ cells.
pub fn scope_footnote(scope: &CheckScope) -> String {
    format!(
        "✓: no counterexample over {} variables, societies drawn from {} of every size up to {}, {}; \
         ✗: witness found and replayed through the operator",
        scope.var_count,
        scope.agents,
        scope.refute_max,
        match scope.constraint_mode {
            crate::checker::ConstraintMode::BeliefSets => "one canonical constraint state per belief set",
            crate::checker::ConstraintMode::AllStates => "every constraint state",
        }
    )
}

/// The operator/postulate matrix with footnotes. Unexpected cells are marked
/// `!`, expected violations not found within scope `†`.
pub fn render_table1(t: &Table1) -> String {
    let mut s = String::new();
    let width = t.operators.iter().map(|o| o.len()).max().unwrap_or(8).max(8);
    let blocks: [(&str, Vec<PostulateId>); 2] = [
        ("", t.columns.iter().copied().filter(|c| PostulateId::TABLE.contains(c)).collect()),
        ("additional columns", t.columns.iter().copied().filter(|c| !PostulateId::TABLE.contains(c)).collect()),
    ];
    for (title, cols) in blocks.iter().filter(|(_, c)| !c.is_empty()) {
        if !title.is_empty() {
            let _ = writeln!(s, "\n{title}");
        }
        let _ = write!(s, "{:width$}", "");
        for c in cols {
            let _ = write!(s, " {:>6}", c.short());
        }
        s.push('\n');
        for op in &t.operators {
            let _ = write!(s, "{op:width$}");
            for &c in cols {
                let cell = t.cell(op, c).expect("every cell is computed");
                let mark = match cell.status {
                    CellStatus::Mismatch => "!",
                    CellStatus::UnresolvedAtScope => "†",
                    _ => "",
                };
                let _ = write!(s, " {:>6}", format!("{}{mark}", glyph(&cell.verdict)));
            }
            s.push('\n');
        }
    }
    let _ = writeln!(s, "\n{}", scope_footnote(&t.scope));
    if t.cells.iter().any(|c| c.status == CellStatus::UnresolvedAtScope) {
        let _ = writeln!(s, "†: expected ✗ but no counterexample exists within this scope; raise --refute-max");
    }
    let defects = t.defects();
    if defects.is_empty() {
        let _ = writeln!(s, "all {} table cells match the expected matrix", t.operators.len() * 10);
    } else {
        let _ = writeln!(s, "{} defect(s):", defects.len());
        for d in defects {
            let _ = writeln!(s, "  {d}");
        }
    }
    s
}

/// `operator,postulate,expected,observed,status,replayed`, one row per table cell.
pub fn table1_csv(t: &Table1) -> String {
    let mut s = String::from("operator,postulate,expected,observed,status,replayed\n");
    for c in t.cells.iter().filter(|c| PostulateId::TABLE.contains(&c.postulate)) {
        let expected = match c.expected {
            Some(true) => "satisfied",
            Some(false) => "violated",
            None => "",
        };
        let status = serde_json::to_value(c.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        let replayed = c.replayed.map_or(String::new(), |r| r.to_string());
        let _ = writeln!(s, "{},{},{expected},{},{status},{replayed}", c.operator, c.postulate, c.verdict.status_str());
    }
    s
}

/// Cell records without timings, plus per-cell timings for the timing block.
pub fn table1_report(t: &Table1, meta: &MetaReport, config: impl Serialize) -> Report {
    let mut r = Report::new(config);
    for c in &t.cells {
        r.push(json!({
            "operator": c.operator,
            "postulate": c.postulate,
            "verdict": c.verdict,
            "expected": c.expected,
            "status": c.status,
            "replayed": c.replayed,
        }));
        r.timing.steps.insert(format!("{}/{}", c.operator, c.postulate), c.millis);
    }
    r.push(json!({ "implications": meta.checked }));
    r.defects = t.defects();
    r.defects.extend(meta.defects.iter().cloned());
    r.timing.total_ms = t.millis;
    r
}

/// A witness as indented lines, omitting empty fields.
pub fn render_witness(w: &Witness, world_count: usize) -> String {
    let vc = var_count_for(world_count);
    let mut s = String::new();
    if !w.note.is_empty() {
        let _ = writeln!(s, "  {}", w.note);
    }
    if let Some(n) = &w.society {
        let _ = writeln!(s, "  society {n}");
    }
    if let Some((a, b)) = &w.partition {
        let _ = writeln!(s, "  partition {a} | {b}");
    }
    if !w.agents.is_empty() {
        let ids: Vec<String> = w.agents.iter().map(|a| a.to_string()).collect();
        let _ = writeln!(s, "  agents {}", ids.join(","));
    }
    for (label, p) in [("profile", &w.profile), ("other profile", &w.other_profile)] {
        if let Some(p) = p {
            let _ = writeln!(s, "  {label}:");
            for line in p.to_file_format().lines() {
                let _ = writeln!(s, "    {line}");
            }
        }
    }
    if let Some(c) = w.constraint {
        let _ = writeln!(s, "  constraint beliefs {c}");
    }
    if let Some(c) = &w.constraint_state {
        let _ = writeln!(s, "  constraint state {c}");
    }
    if let Some(c) = &w.other_state {
        let _ = writeln!(s, "  other state {c}");
    }
    if !w.other_constraints.is_empty() {
        let cs: Vec<String> = w.other_constraints.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(s, "  other constraints {}", cs.join(" "));
    }
    if !w.worlds.is_empty() {
        let ws: Vec<String> = w.worlds.iter().map(|x| x.render(vc)).collect();
        let _ = writeln!(s, "  worlds {}", ws.join(" "));
    }
    if let (Some(code), false) = (w.shape, w.worlds.is_empty()) {
        let _ = writeln!(s, "  shape {}", crate::preorder::render_shape(&w.worlds, code, vc));
    }
    for t in &w.tuples {
        let _ = writeln!(s, "  tuple {t:?}");
    }
    for (label, set) in &w.observed {
        let _ = writeln!(s, "  {label} = {set}");
    }
    for (i, part) in w.parts.iter().enumerate() {
        let _ = writeln!(s, "  part {}:", i + 1);
        for line in render_witness(part, world_count).lines() {
            let _ = writeln!(s, "  {line}");
        }
    }
    s
}

pub fn render_verdict(op: &str, id: PostulateId, v: &Verdict, world_count: usize) -> String {
    match v {
        Verdict::Satisfied { scope } => format!("{op} {id}: ✓ satisfied ({scope})\n"),
        Verdict::Skipped { reason } => format!("{op} {id}: skipped ({reason})\n"),
        Verdict::Violated { witness } => {
            format!("{op} {id}: ✗ violated\n{}", render_witness(witness, world_count))
        }
    }
}

pub fn render_counting(r: &CountingReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "pattern totals: {} S4, {} S3", r.pattern_totals.0, r.pattern_totals.1);
    let _ = writeln!(s, "\ncoverage per preorder type (S4, S3):");
    for t in &r.type_counts {
        let inv = if t.labeling_invariant { "" } else { "  (varies with labeling; maximum shown)" };
        let _ = writeln!(s, "  {:<3} ({}, {}) over {} labelings{inv}", t.shape_type, t.s4_patterns, t.s3_patterns, t.labelings);
    }
    let _ = writeln!(s, "\ndistributions whose capacity covers the 24 S4 patterns:");
    let _ = writeln!(s, "  {:<24} {:>4} {:>7}  {}", "distribution", "S4", "max S3", "reference");
    for row in &r.capacity_rows {
        let _ = writeln!(
            s,
            "  {:<24} {:>4} {:>7}  {}",
            row.distribution.to_string(),
            row.s4_capacity,
            row.s3_capacity,
            if row.in_table { "yes" } else { "no" }
        );
    }
    let _ = writeln!(
        s,
        "reference rows reproduced with their maxima: {}",
        if r.table_reproduced { "yes" } else { "no" }
    );
    if !r.extra_rows.is_empty() {
        let extra: Vec<String> = r.extra_rows.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(s, "rows admitted by the capacity bound but absent from the reference table: {}", extra.join(" "));
    }
    let _ = writeln!(s, "\ndistributions realized by some assignment covering all 24 S4 patterns:");
    let _ = writeln!(s, "  {:<24} {:>11} {:>9} {:>7}", "distribution", "assignments", "covering", "max S3");
    for e in &r.exact_rows {
        let _ = writeln!(
            s,
            "  {:<24} {:>11} {:>9} {:>7}",
            e.distribution.to_string(),
            e.assignments,
            e.covering_s4,
            e.max_s3
        );
    }
    let _ = writeln!(s, "\nevery S3 maximum below 12: {}", if r.all_below_12 { "yes" } else { "no" });
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_parse() {
        assert_eq!("structured".parse::<Format>().unwrap(), Format::Json);
        assert_eq!("CSV".parse::<Format>().unwrap(), Format::Csv);
        assert!("xml".parse::<Format>().is_err());
    }

    #[test]
    fn comparable_json_drops_timing() {
        let mut a = Report::new(json!({"k": 1}));
        a.push(json!({"x": 2}));
        let mut b = a.clone();
        a.timing.total_ms = 5;
        b.timing.total_ms = 900;
        assert_eq!(a.comparable_json(), b.comparable_json());
        assert_ne!(a.to_json(), b.to_json());
    }
}
