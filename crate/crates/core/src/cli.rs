//! Command-line front end.
//!
//! Exit codes: [`EXIT_OK`] when the run confirms what was asked (table matches,
//! postulate satisfied, scan finds nothing), [`EXIT_FAIL`] when it does not,
//! [`EXIT_ERROR`] for usage errors and refusals.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::checker::{
    self, check_metatheorems, cross_validate_seeded, run_table1_for, CheckScope, Checker, ConstraintMode,
    DEFAULT_COST_CEILING, EQUIVALENCES, SAMPLE_SEED,
};
use crate::coalition::{Coalition, CoalitionAnalyzer};
use crate::error::{Error, Result};
use crate::fusion::{check_b_rep, recover_assignment, FusionOperator};
use crate::impossibility::{self, covers_sd, enumerate_assignments, ASSIGNMENT_COUNT};
use crate::logic::{BeliefSet, VarSet};
use crate::preorder::{enumerate_all, ordered_bell, triple_shape_codes};
use crate::report::{self, Format, Report};
use crate::society::{enumerate_profiles, two_partitions, Profile, Society};
use crate::verdict::PostulateId;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "esfusion", version, about = "Belief merging workbench: operators, postulate checks, coalitions, impossibility scans")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Global {
    /// Number of propositional variables.
    #[arg(long, global = true, default_value_t = 2)]
    pub vars: usize,
    /// Agents available to societies, e.g. `1,2,3,4`.
    #[arg(long, global = true, default_value = "1,2,3,4")]
    pub agents: String,
    /// Largest society size for exhaustive verification (default 3).
    #[arg(long, global = true)]
    pub verify_max: Option<usize>,
    /// Largest society size searched for counterexamples (default 4).
    #[arg(long, global = true)]
    pub refute_max: Option<usize>,
    /// Constraint states: `belief-sets` (one per belief set) or `all-states`.
    #[arg(long, global = true, default_value = "belief-sets")]
    pub constraints: String,
    /// Refuse checks whose estimated work exceeds this many evaluations.
    #[arg(long, global = true, default_value_t = DEFAULT_COST_CEILING)]
    pub cost_ceiling: f64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for sampled cross-validation; exhaustive verdicts never depend on it.
    #[arg(long, global = true, default_value_t = SAMPLE_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Table,
    Csv,
    #[value(alias = "structured")]
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Table => Format::Table,
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Command {
    /// Operator/postulate matrix, judged against the expected table.
    Table1 {
        /// Comma-separated operator names (default: all six).
        #[arg(long)]
        ops: Option<String>,
    },
    /// A single postulate for a single operator.
    Check {
        #[arg(long)]
        op: String,
        #[arg(long)]
        postulate: String,
        /// Write the counterexample as JSON here when violated.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Also run the syntactic/semantic equivalence check involving this postulate.
        #[arg(long)]
        cross: bool,
        /// Sampled table spot checks for --cross.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Decisive coalitions, propagation and dictators for one society.
    Coalitions {
        #[arg(long)]
        op: String,
        #[arg(long)]
        society: String,
        /// Constraint beliefs for a pairwise question, e.g. `{00,01}`.
        #[arg(long, requires = "e2")]
        e: Option<String>,
        /// Rejected alternative for a pairwise question, e.g. `{01}`.
        #[arg(long, requires = "e")]
        e2: Option<String>,
        /// Coalition to test, e.g. `1,3` (default: every coalition).
        #[arg(long)]
        coalition: Option<String>,
        /// Use decisiveness for (E, E') instead of local decisiveness.
        #[arg(long)]
        global_pair: bool,
    },
    /// Impossibility checks for formula-valued epistemic states.
    Impossibility {
        #[arg(value_enum)]
        target: ImpossibilityTarget,
        /// Only the exhaustive scan.
        #[arg(long, conflicts_with = "counting")]
        exhaustive: bool,
        /// Only the counting argument.
        #[arg(long)]
        counting: bool,
    },
    /// Counts (and optionally lists) enumerated objects.
    Enumerate {
        #[arg(value_enum)]
        what: EnumTarget,
        #[arg(long, default_value_t = 4)]
        worlds: usize,
        /// Society for `profiles` and `partitions`.
        #[arg(long, default_value = "1,2")]
        society: String,
        #[arg(long)]
        count_only: bool,
        /// Maximum number of items listed.
        #[arg(long, default_value_t = 100)]
        limit: u64,
    },
    /// Rebuilds an operator's group preorder from belief-level answers on a profile.
    Recover {
        #[arg(long)]
        op: String,
        /// Profile file, one `agent: preorder` line per agent.
        #[arg(long)]
        profile: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ImpossibilityTarget {
    Formulas,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EnumTarget {
    Preorders,
    Profiles,
    Partitions,
    Assignments,
    Shapes,
}

/// What a command produced before formatting.
struct Outcome {
    code: i32,
    text: String,
    csv: Option<String>,
    report: Report,
}

impl Global {
    pub fn scope(&self) -> Result<CheckScope> {
        let agents = Society::parse(&self.agents)?;
        let k = agents.len();
        let verify = self.verify_max.unwrap_or(3.min(k));
        let refute = self.refute_max.unwrap_or(4.min(k).max(verify));
        let mode = match self.constraints.as_str() {
            "belief-sets" => ConstraintMode::BeliefSets,
            "all-states" => ConstraintMode::AllStates,
            other => return Err(Error::InvalidScope(format!("unknown constraint mode `{other}`"))),
        };
        let scope = CheckScope {
            var_count: self.vars,
            agents,
            verify_max: verify,
            refute_max: refute,
            constraint_mode: mode,
            cost_ceiling: self.cost_ceiling,
        };
        scope.validate()?;
        Ok(scope)
    }

    fn world_count(&self) -> usize {
        1 << self.vars
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// the report to `out` or the `--out` file. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let body = match Format::from(cli.global.format) {
                Format::Table => o.text,
                Format::Json => o.report.to_json() + "\n",
                Format::Csv => match o.csv {
                    Some(c) => c,
                    None => {
                        let _ = writeln!(err, "error: csv output is available for table1 and enumerate only");
                        return EXIT_ERROR;
                    }
                },
            };
            let written = match &cli.global.out {
                Some(path) => fs::write(path, body.as_bytes()),
                None => out.write_all(body.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return EXIT_ERROR;
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Invalid(e.to_string()))?;
    pool.install(|| {
        let g = &cli.global;
        let config = json!({ "global": g, "command": cli.command });
        match &cli.command {
            Command::Table1 { ops } => cmd_table1(g, ops.as_deref(), config),
            Command::Check { op, postulate, witness, cross, samples } => {
                cmd_check(g, op, postulate, witness.as_ref(), *cross, *samples, config)
            }
            Command::Coalitions { op, society, e, e2, coalition, global_pair } => cmd_coalitions(
                g,
                op,
                society,
                e.as_deref().zip(e2.as_deref()),
                coalition.as_deref(),
                *global_pair,
                config,
            ),
            Command::Impossibility { target: ImpossibilityTarget::Formulas, exhaustive, counting } => {
                cmd_impossibility(g, !*counting, !*exhaustive, config)
            }
            Command::Enumerate { what, worlds, society, count_only, limit } => {
                cmd_enumerate(*what, *worlds, society, *count_only, *limit, config)
            }
            Command::Recover { op, profile } => cmd_recover(g, op, profile, config),
        }
    })
}

fn operators(g: &Global, names: Option<&str>) -> Result<Vec<FusionOperator>> {
    match names {
        None => Ok(FusionOperator::all(g.world_count())),
        Some(list) => list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|n| FusionOperator::by_name(n, g.world_count(), None))
            .collect(),
    }
}

pub fn cmd_table1_report(g: &Global, ops: Option<&str>) -> Result<(checker::Table1, checker::MetaReport)> {
    let scope = g.scope()?;
    let ops = operators(g, ops)?;
    let t = run_table1_for(&ops, &scope, true)?;
    let meta = check_metatheorems(&t.matrix());
    Ok((t, meta))
}

fn cmd_table1(g: &Global, ops: Option<&str>, config: serde_json::Value) -> Result<Outcome> {
    let (t, meta) = cmd_table1_report(g, ops)?;
    let mut text = report::render_table1(&t);
    if meta.passed() {
        text.push_str(&format!("implications: {} instances, no defects\n", meta.checked.len()));
    } else {
        text.push_str("implication defects:\n");
        for d in &meta.defects {
            text.push_str(&format!("  {d}\n"));
        }
    }
    let report = report::table1_report(&t, &meta, config);
    let code = if report.defects.is_empty() { EXIT_OK } else { EXIT_FAIL };
    Ok(Outcome { code, text, csv: Some(report::table1_csv(&t)), report })
}

fn cmd_check(
    g: &Global,
    op: &str,
    postulate: &str,
    witness: Option<&PathBuf>,
    cross: bool,
    samples: usize,
    config: serde_json::Value,
) -> Result<Outcome> {
    let start = Instant::now();
    let scope = g.scope()?;
    let op = FusionOperator::by_name(op, g.world_count(), None)?;
    let id: PostulateId = postulate.parse()?;
    let verdict = Checker::new(&op, &scope)?.check(id)?;
    let mut text = report::render_verdict(op.name(), id, &verdict, g.world_count());
    let mut report = Report::new(config);
    report.push(json!({ "operator": op.name(), "postulate": id, "verdict": verdict }));
    if let (Some(path), Some(w)) = (witness, verdict.witness()) {
        fs::write(path, serde_json::to_string_pretty(w)?)?;
        text.push_str(&format!("witness written to {}\n", path.display()));
    }
    if let Some(w) = verdict.witness() {
        if !checker::replay(&op, id, w)? {
            report.defects.push(format!("{} {id}: witness does not replay", op.name()));
        }
    }
    if cross {
        let pair = EQUIVALENCES
            .into_iter()
            .find(|(a, b)| *a == id || *b == id)
            .ok_or_else(|| Error::Invalid(format!("{id} has no semantic counterpart")))?;
        let cv = cross_validate_seeded(&op, pair, &scope, samples, g.seed)?;
        text.push_str(&format!(
            "cross-check {} ⟺ {}: {}\n",
            pair.0,
            pair.1,
            if cv.agree() { "agree".to_string() } else { cv.defects.join("; ") }
        ));
        report.defects.extend(cv.defects.iter().cloned());
        report.push(&cv);
    }
    report.timing.total_ms = start.elapsed().as_millis();
    let code = if !report.defects.is_empty() {
        EXIT_ERROR
    } else if verdict.is_satisfied() {
        EXIT_OK
    } else {
        EXIT_FAIL
    };
    Ok(Outcome { code, text, csv: None, report })
}

fn cmd_coalitions(
    g: &Global,
    op: &str,
    society: &str,
    pair: Option<(&str, &str)>,
    coalition: Option<&str>,
    global_pair: bool,
    config: serde_json::Value,
) -> Result<Outcome> {
    let start = Instant::now();
    let scope = g.scope()?;
    let op = FusionOperator::by_name(op, g.world_count(), None)?;
    let n = Society::parse(society)?;
    if !n.is_subset(&scope.agents) {
        return Err(Error::NotSubset(format!("{n} is not drawn from {}", scope.agents)));
    }
    let an = CoalitionAnalyzer::new(&op, &n, &scope)?;
    let mut report = Report::new(config);
    let mut text = String::new();
    let mut code = EXIT_OK;
    if let Some((e, e2)) = pair {
        let (e, e2) = (BeliefSet::parse_world_list(e, g.vars)?, BeliefSet::parse_world_list(e2, g.vars)?);
        let candidates = match coalition {
            Some(c) => vec![Coalition::parse(c)?],
            None => (0..1u32 << n.len())
                .map(|m| {
                    let ids = n.members().iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, a)| a.0);
                    Coalition::new(ids)
                })
                .collect::<Result<Vec<_>>>()?,
        };
        let what = if global_pair { "decisive for" } else { "locally decisive for" };
        for d in candidates {
            let rec = if global_pair { an.is_decisive_for(&d, e, e2)? } else { an.is_locally_decisive(&d, e, e2)? };
            let vac = if rec.is_vacuous() { " (vacuously)" } else { "" };
            text.push_str(&format!("{d} {} {what} {e} against {e2}{vac}\n", if rec.holds() { "is" } else { "is not" }));
            if let Some(w) = rec.verdict.witness() {
                text.push_str(&report::render_witness(w, g.world_count()));
            }
            report.push(&rec);
        }
    } else {
        let md = an.minimal_decisive()?;
        let list: Vec<String> = md.coalitions.iter().map(|c| c.to_string()).collect();
        text.push_str(&format!("{} over {n}: minimal decisive coalitions [{}]\n", op.name(), list.join(", ")));
        match md.dictator {
            Some(d) => text.push_str(&format!("decisive singleton: agent {d} is a dictator\n")),
            None => text.push_str("no decisive singleton\n"),
        }
        let dict = an.checker().check_dictator()?;
        let dictators = dict.per_society.iter().find(|(s, _)| *s == n).map(|(_, d)| d.clone()).unwrap_or_default();
        let ids: Vec<String> = dictators.iter().map(|a| a.to_string()).collect();
        text.push_str(&format!("agents whose strict preferences always survive: [{}]\n", ids.join(", ")));
        if let Some(d) = md.dictator {
            if !dictators.contains(&d) {
                report.defects.push(format!("decisive singleton {d} is not reported as a dictator"));
            }
        }
        let prop = an.check_propagation()?;
        text.push_str(&report::render_verdict(op.name(), PostulateId::D, &prop, g.world_count()).replacen(
            &format!("{} {}", op.name(), PostulateId::D),
            "propagation",
            1,
        ));
        if prop.is_violated() {
            code = EXIT_FAIL;
        }
        report.push(json!({ "minimal_decisive": md, "dictators": dictators, "propagation": prop }));
    }
    if !report.defects.is_empty() {
        code = EXIT_FAIL;
    }
    report.timing.total_ms = start.elapsed().as_millis();
    Ok(Outcome { code, text, csv: None, report })
}

fn cmd_impossibility(g: &Global, exhaustive: bool, counting: bool, config: serde_json::Value) -> Result<Outcome> {
    if g.vars != 2 {
        return Err(Error::VarCount(g.vars));
    }
    let start = Instant::now();
    let mut report = Report::new(config);
    let mut text = String::new();
    let mut ok = true;
    let first = covers_sd(&enumerate_assignments(2)?.assignment_at(0));
    if exhaustive && !counting {
        let scan = impossibility::scan_exhaustive();
        ok &= scan.satisfying == 0 && scan.scanned == ASSIGNMENT_COUNT;
        text.push_str(&scan_text(&scan, &first));
        report.timing.steps.insert("scan".into(), scan.millis);
        report.push(json!({ "scanned": scan.scanned, "satisfying": scan.satisfying, "first_satisfying": scan.first_satisfying }));
    } else {
        let r = impossibility::verify_counting_argument();
        if exhaustive {
            text.push_str(&scan_text(&r.scan, &first));
            text.push('\n');
            ok &= r.scan.satisfying == 0;
        }
        text.push_str(&report::render_counting(&r));
        ok &= r.table_reproduced && r.all_below_12;
        let varying: Vec<String> =
            r.type_counts.iter().filter(|t| !t.labeling_invariant).map(|t| t.shape_type.to_string()).collect();
        if !varying.is_empty() {
            report.defects.push(format!("coverage counts depend on labeling for {}", varying.join(", ")));
        }
        if !r.extra_rows.is_empty() {
            let extra: Vec<String> = r.extra_rows.iter().map(|d| d.to_string()).collect();
            report.push(json!({ "note": format!("capacity bound admits {} rows beyond the reference table: {}", extra.len(), extra.join(" ")) }));
        }
        report.timing.steps.insert("scan".into(), r.scan.millis);
        let mut v = serde_json::to_value(&r)?;
        if let Some(scan) = v.get_mut("scan").and_then(|s| s.as_object_mut()) {
            scan.remove("millis");
        }
        report.push(v);
    }
    report.timing.total_ms = start.elapsed().as_millis();
    let code = if ok { EXIT_OK } else { EXIT_FAIL };
    if !ok {
        report.defects.push("impossibility not confirmed".into());
    }
    Ok(Outcome { code, text, csv: None, report })
}

fn scan_text(scan: &impossibility::ScanReport, first: &impossibility::CoverageReport) -> String {
    let mut s = format!(
        "scanned {} assignments in {} slabs: {} satisfy standard domain\n",
        scan.scanned,
        impossibility::SLABS,
        scan.satisfying
    );
    if let Some(i) = scan.first_satisfying {
        s.push_str(&format!("first satisfying assignment: #{i}\n"));
    }
    s.push_str(&format!(
        "first assignment (all two-level) misses {} patterns, e.g. {}\n",
        first.missing.len(),
        first.missing.first().map_or(String::new(), |m| m.rendered.clone())
    ));
    s
}

fn cmd_enumerate(
    what: EnumTarget,
    worlds: usize,
    society: &str,
    count_only: bool,
    limit: u64,
    config: serde_json::Value,
) -> Result<Outcome> {
    let vc = crate::logic::var_count_for(worlds);
    let mut items: Vec<String> = Vec::new();
    let count: u64 = match what {
        EnumTarget::Preorders => {
            let stream = enumerate_all(worlds)?;
            if !count_only {
                let lit = |tp: &crate::preorder::TotalPreorder| {
                    if 1usize << vc == worlds { tp.to_string() } else { format!("{:?}", tp.levels()) }
                };
                items = stream.take(limit as usize).map(|tp| lit(&tp)).collect();
            }
            ordered_bell(worlds) as u64
        }
        EnumTarget::Profiles => {
            let n = Society::parse(society)?;
            let states = crate::preorder::all_preorders(worlds)?;
            let stream = enumerate_profiles(&n, &states)?;
            let total = stream.total();
            if !count_only {
                items = (0..total.min(limit)).map(|i| stream.profile_at(i).to_string()).collect();
            }
            total
        }
        EnumTarget::Partitions => {
            let parts = two_partitions(&Society::parse(society)?)?;
            if !count_only {
                items = parts.iter().take(limit as usize).map(|(a, b)| format!("{a} | {b}")).collect();
            }
            parts.len() as u64
        }
        EnumTarget::Assignments => {
            if worlds != 4 {
                return Err(Error::Invalid("formula-space assignments exist for 4 worlds only".into()));
            }
            if !count_only {
                items = enumerate_assignments(2)?
                    .take(limit as usize)
                    .map(|a| a.images.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" | "))
                    .collect();
            }
            ASSIGNMENT_COUNT
        }
        EnumTarget::Shapes => {
            let codes = triple_shape_codes();
            if !count_only {
                items = codes.iter().map(|&c| format!("{c:>2} {:?}", impossibility::TripleShape::of_code(c))).collect();
            }
            codes.len() as u64
        }
    };
    let name = serde_json::to_value(what)?.as_str().unwrap_or_default().to_string();
    let mut text = format!("{count}\n");
    for it in &items {
        text.push_str(it);
        text.push('\n');
    }
    let mut csv = format!("what,count\n{name},{count}\n");
    if !items.is_empty() {
        csv = format!("index,item\n{}", items.iter().enumerate().map(|(i, s)| format!("{i},\"{s}\"\n")).collect::<String>());
    }
    let mut report = Report::new(config);
    report.push(json!({ "what": name, "count": count, "items": items }));
    Ok(Outcome { code: EXIT_OK, text, csv: Some(csv), report })
}

fn cmd_recover(g: &Global, op: &str, path: &PathBuf, config: serde_json::Value) -> Result<Outcome> {
    let op = FusionOperator::by_name(op, g.world_count(), None)?;
    VarSet::with_count(g.vars)?;
    let p = Profile::parse_file_format(&fs::read_to_string(path)?, g.vars)?;
    let blackbox = |p: &Profile, m: BeliefSet| op.apply_beliefs(p, m).expect("profile matches the operator");
    let recovered = recover_assignment(blackbox, &p)?;
    let rep = check_b_rep(blackbox, &p, &recovered);
    let defining = op.assign(&p)?;
    let mut text = format!("recovered   {recovered}\ndefining    {defining}\n");
    text.push_str(match &rep {
        Ok(()) => "representation identity holds for every constraint\n",
        Err(_) => "representation identity fails\n",
    });
    let mut report = Report::new(config);
    if let Err(e) = &rep {
        report.defects.push(e.to_string());
    }
    if recovered != defining {
        report.defects.push("recovered preorder differs from the defining assignment".into());
    }
    report.push(json!({ "recovered": recovered, "defining": defining }));
    let code = if report.defects.is_empty() { EXIT_OK } else { EXIT_FAIL };
    Ok(Outcome { code, text, csv: None, report })
}
