//! No basic operator on formula-valued states meets the shape form of
//! standard domain: exhaustive scan plus the counting argument.

use esfusion::impossibility::{covers_sd, enumerate_assignments, verify_counting_argument};
use esfusion::report::render_counting;

fn main() -> esfusion::Result<()> {
    let first = enumerate_assignments(2)?.assignment_at(0);
    let cov = covers_sd(&first);
    println!("first assignment misses {} of 52 patterns, e.g. {}", cov.missing.len(), cov.missing[0].rendered);

    let r = verify_counting_argument();
    println!(
        "scanned {} assignments in {} ms, {} satisfying\n",
        r.scan.scanned, r.scan.millis, r.scan.satisfying
    );
    print!("{}", render_counting(&r));
    Ok(())
}
