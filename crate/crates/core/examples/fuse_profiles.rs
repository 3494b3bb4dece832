//! Merge a small profile with each built-in operator.

use esfusion::{BeliefSet, FusionOperator, Profile, Society, TotalPreorder};

fn main() -> esfusion::Result<()> {
    let profile = Profile::parse_file_format(
        "1: 11 > 10 > 01 00\n\
         2: 00 > 01 > 10 > 11\n\
         3: 10 > 11 00 > 01\n",
        2,
    )?;
    assert_eq!(profile.society(), &Society::new([1, 2, 3])?);
    let constraint = TotalPreorder::flat(4);
    let restricted = BeliefSet::parse_world_list("{00,01,10}", 2)?;

    println!("{profile}");
    for op in FusionOperator::all(4) {
        let group = op.assign(&profile)?;
        println!(
            "{:<10} group {:<24} beliefs {:<12} under {restricted}: {}",
            op.name(),
            group.to_string(),
            op.apply(&profile, &constraint)?.top().to_string(),
            op.apply_beliefs(&profile, restricted)?
        );
    }
    Ok(())
}
