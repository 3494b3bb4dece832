//! The full operator/postulate matrix at the default scope.
//!
//! Takes a minute or two in release mode.

use esfusion::checker::{check_metatheorems, run_table1};
use esfusion::report::render_table1;
use esfusion::CheckScope;

fn main() -> esfusion::Result<()> {
    let t = run_table1(&CheckScope::default())?;
    print!("{}", render_table1(&t));
    let meta = check_metatheorems(&t.matrix());
    println!("implications: {} instances, {} defects", meta.checked.len(), meta.defects.len());
    println!("took {:.1}s", t.millis as f64 / 1000.0);
    Ok(())
}
