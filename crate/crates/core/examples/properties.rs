//! Deciding E_π, C_π and D_π, with the witnesses behind each answer.
//!
//! `cargo run --release --example properties`

use std::sync::Arc;

use hallpi::{classify_properties, parse_group_spec, Limits, PrimeSet};

fn main() -> hallpi::Result<()> {
    let cases = [
        ("Sym(4)", "2,3"),
        ("Alt(5)", "2,3"),
        ("Alt(5)", "3,5"),
        ("PSL(2,11)", "2,3"),
        ("GL(3,2)", "2,3"),
        ("GL(5,2)", "2,3"),
        ("Semidirect(GL(5,2),TransposeInverse)", "2,3"),
    ];
    println!("{:<40} {:<8} {:>3} {:>3} {:>14}  k", "group", "pi", "E", "C", "D");
    for (spec, pi) in cases {
        let g = Arc::new(parse_group_spec(spec)?.build()?);
        let r = classify_properties(&g, &PrimeSet::parse(pi)?, &Limits::default());
        let k = r.k_pi.map_or("?".into(), |k| k.to_string());
        println!("{spec:<40} {:<8} {:>3} {:>3} {:>14}  {k}", r.pi.to_string(), r.e_holds, r.c_holds, r.d_holds);
        if let Some(u) = &r.uncovered {
            println!("    maximal pi-subgroup of order {} is not Hall", u.order());
        }
        if let Some(c) = &r.non_conjugacy {
            println!("    two classes told apart by {c:?}");
        }
        if r.is_conditional() {
            println!("    conditional on {}", r.assumptions.join("; "));
        }
    }
    Ok(())
}
