//! Rebuild a group preorder from belief-level answers only.

use esfusion::fusion::{check_b_rep, recover_assignment};
use esfusion::{BeliefSet, FusionOperator, Profile};

fn main() -> esfusion::Result<()> {
    let p = Profile::parse_file_format("1: 01 > 11 > 00 10\n2: 10 > 00 > 11 > 01\n", 2)?;
    for op in FusionOperator::all(4) {
        let blackbox = |p: &Profile, m: BeliefSet| op.apply_beliefs(p, m).expect("two-variable profile");
        let got = recover_assignment(blackbox, &p)?;
        check_b_rep(blackbox, &p, &got)?;
        let want = op.assign(&p)?;
        println!("{:<10} {:<22} {}", op.name(), got.to_string(), if got == want { "matches" } else { "DIFFERS" });
    }
    Ok(())
}
