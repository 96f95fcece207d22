//! Normalizers, centralizers, Sylow subgroups, conjugacy with transporters,
//! normal subgroups and quotients.
//!
//! `cargo run --example subgroups`

use std::sync::Arc;

use hallpi::subgroup::{centralizer, conjugacy, normal_subgroups, normalizer, quotient, sylow, Conjugacy};
use hallpi::{parse_group_spec, Group, Limits, Permutation};

fn main() -> hallpi::Result<()> {
    let limits = Limits::default();
    let s4 = Arc::new(parse_group_spec("Sym(4)")?.build()?);
    let c3 = Group::new(4, vec![Permutation::from_cycles("(1 2 3)", 4)?])?;
    println!("|N(<(1 2 3)>)| = {}", normalizer(&s4, &c3, &limits)?.order());
    println!("|C(<(1 2 3)>)| = {}", centralizer(&s4, &c3, &limits)?.order());

    let p2 = sylow(&s4, 2, &limits)?;
    let x = Permutation::from_cycles("(1 4 2)", 4)?;
    let q2 = p2.conjugated_by(&x);
    match conjugacy(&s4, &p2, &q2, &limits)? {
        Conjugacy::Conjugate(t) => println!("Sylow 2-subgroups conjugate by {} (verified: {})", t.element, t.verify()),
        Conjugacy::NotConjugate(c) => println!("not conjugate: {c:?}"),
    }

    let orders: Vec<String> = normal_subgroups(&s4, &limits)?.iter().map(|n| n.order().to_string()).collect();
    println!("normal subgroup orders {}", orders.join(", "));
    let v4 = normal_subgroups(&s4, &limits)?.into_iter().find(|n| n.order_u64() == Some(4)).expect("V4");
    let (q, _) = quotient(&s4, &v4, &limits)?;
    println!("Sym(4)/V4 has order {} on {} points", q.order(), q.degree());
    Ok(())
}
