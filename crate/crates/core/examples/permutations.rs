//! Permutations in cycle notation and groups given by generators.
//!
//! `cargo run --example permutations`

use hallpi::{Group, Permutation};

fn main() -> hallpi::Result<()> {
    let a = Permutation::from_cycles("(1 2)", 3)?;
    let b = Permutation::from_cycles("(2 3)", 3)?;
    // composition acts left to right: first a, then b
    println!("(1 2) then (2 3) = {}", a.compose(&b)?);
    println!("(2 3) conjugated by (1 2) = {}", b.conjugate_by(&a));

    let x = Permutation::from_cycles("(1 2)(3 4 5)", 5)?;
    println!("{x} has order {}", x.order());

    let a5 = Group::new(5, vec![Permutation::from_cycles("(1 2 3)", 5)?, Permutation::from_cycles("(3 4 5)", 5)?])?;
    println!("<(1 2 3), (3 4 5)> has order {}", a5.order());
    println!("  base {:?}", a5.base().iter().map(|b| b + 1).collect::<Vec<_>>());
    let orbits: Vec<usize> = a5.fundamental_orbits().iter().map(|o| o.len()).collect();
    println!("  fundamental orbit lengths {orbits:?}");
    for text in ["(1 2 3 4 5)", "(1 2)"] {
        let p = Permutation::from_cycles(text, 5)?;
        println!("  contains {text}: {}", a5.contains(&p)?);
    }
    Ok(())
}
