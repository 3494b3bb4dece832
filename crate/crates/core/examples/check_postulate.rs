//! Check one postulate and replay the counterexample it returns.
//!
//! Usage: `cargo run --release --example check_postulate -- sum ESF-I`

use esfusion::checker::replay;
use esfusion::report::render_verdict;
use esfusion::{CheckScope, Checker, FusionOperator, PostulateId};

fn main() -> esfusion::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let op = FusionOperator::by_name(args.first().map_or("sum", String::as_str), 4, None)?;
    let id: PostulateId = args.get(1).map_or("ESF-I", String::as_str).parse()?;

    let scope = CheckScope::default().with_refute_max(3);
    let checker = Checker::new(&op, &scope)?;
    println!("estimated work: {:.2e} evaluations", checker.estimate(id));
    let verdict = checker.check(id)?;
    print!("{}", render_verdict(op.name(), id, &verdict, 4));
    if let Some(w) = verdict.witness() {
        println!("replays through the operator: {}", replay(&op, id, w)?);
    }
    Ok(())
}
