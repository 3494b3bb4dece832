//! Parse formulas over two variables and inspect their models.

use esfusion::logic::{belief_algebra, parse_formula};
use esfusion::VarSet;

fn main() -> esfusion::Result<()> {
    let vars = VarSet::new(&["p", "q"])?;
    for text in ["p", "p & !q", "p -> q", "(p | q) & !(p & q)", "p & !p"] {
        let models = parse_formula(text, &vars)?;
        println!("{text:<20} {models}  consistent: {}", models.is_consistent());
    }

    let a = parse_formula("p | q", &vars)?;
    let b = parse_formula("!p", &vars)?;
    let alg = belief_algebra(a, b)?;
    println!(
        "\n{a} and {b}: entails {}, conjunction {}, disjunction {}, consistent {}",
        alg.entails, alg.conjunction, alg.disjunction, alg.consistent_with
    );
    Ok(())
}
