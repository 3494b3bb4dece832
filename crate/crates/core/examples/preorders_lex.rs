//! Total preorders as epistemic states, and the lexicographic combination.

use esfusion::preorder::{all_preorders, ordered_bell, render_shape};
use esfusion::{BeliefSet, TotalPreorder, World};

fn main() -> esfusion::Result<()> {
    for n in 1..=4 {
        println!("{n} worlds: {} preorders (Fubini {})", all_preorders(n)?.len(), ordered_bell(n));
    }

    let e = TotalPreorder::parse("00 01 > 10 11", 2)?;
    let x = TotalPreorder::parse("11 > 01 > 00 10", 2)?;
    // e decides, x breaks its ties
    let lex = e.lex(&x)?;
    println!("\n{e}  lex  {x}\n  = {lex}");
    println!("beliefs of the combination: {}", lex.top());

    let c = BeliefSet::from_worlds([World(0), World(2)], 4);
    println!("most plausible of {c} under x: {}", x.max_over(c)?);

    let r = x.restrict(&[World(0), World(1), World(3)])?;
    println!("pattern on 00,01,11: {}", render_shape(&r.worlds, r.code, 2));
    Ok(())
}
