//! Decisive coalitions and dictators for the projective operators.

use esfusion::coalition::{Coalition, CoalitionAnalyzer};
use esfusion::{BeliefSet, CheckScope, FusionOperator, Society};

fn main() -> esfusion::Result<()> {
    let scope = CheckScope::default();
    let n = Society::new([1, 2, 3])?;
    for name in ["proj", "qlinproj", "sum"] {
        let op = FusionOperator::by_name(name, 4, None)?;
        let an = CoalitionAnalyzer::new(&op, &n, &scope)?;
        let md = an.minimal_decisive()?;
        let list: Vec<String> = md.coalitions.iter().map(|c| c.to_string()).collect();
        println!("{name:<9} minimal decisive [{}], dictator {:?}", list.join(", "), md.dictator.map(|a| a.0));
        println!("          propagation: {}", an.check_propagation()?.status_str());
    }

    let op = FusionOperator::by_name("proj", 4, None)?;
    let an = CoalitionAnalyzer::new(&op, &n, &scope)?;
    let e = BeliefSet::parse_world_list("{00,01}", 2)?;
    let e2 = BeliefSet::parse_world_list("{01}", 2)?;
    for d in ["1", "3", "1,2"] {
        let rec = an.is_locally_decisive(&Coalition::parse(d)?, e, e2)?;
        println!("{{{d}}} locally decisive for {e} against {e2}: {} ({:?} qualifying)", rec.holds(), rec.qualifying);
    }
    Ok(())
}
