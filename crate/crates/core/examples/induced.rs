//! Hall subgroups of a normal subgroup that come from the whole group, and
//! class products over direct factors.
//!
//! `cargo run --release --example induced`

use std::sync::Arc;

use hallpi::constructors::direct_product;
use hallpi::hall::{class_product, induced_classes};
use hallpi::{hall_classes, parse_group_spec, HallMode, Limits, PrimeSet, Subgroup};

fn main() -> hallpi::Result<()> {
    let limits = Limits::default();
    let pi = PrimeSet::parse("2,3")?;

    // GL(5,2) inside its transpose-inverse extension: of the three flag
    // classes only the one fixed by the automorphism is induced
    let hat = Arc::new(parse_group_spec("Semidirect(GL(5,2),TransposeInverse)")?.build()?);
    let normal = hat.catalog().and_then(|c| c.designated_normal()).expect("designated normal subgroup");
    let a = Subgroup::new(hat.clone(), (*normal).clone())?;
    let ind = induced_classes(&hat, &a, &pi, &limits)?;
    println!("k_pi(A) = {}, k_pi^G(A) = {}", ind.k_pi_a(), ind.k_pi_g());
    for c in &ind.classes {
        println!("  induced class {}", c.representative.tag().unwrap_or("?"));
    }

    // GL(3,2) x GL(3,2): every Hall class is a product of factor classes
    let gl = parse_group_spec("GL(3,2)")?.build()?;
    let d = direct_product(&gl, &gl);
    let whole = Arc::new(d.group.clone());
    let (l, r) = (Arc::new(d.left.clone()), Arc::new(d.right.clone()));
    let cl = hall_classes(&l, &pi, HallMode::Exhaustive, &limits)?;
    let cr = hall_classes(&r, &pi, HallMode::Exhaustive, &limits)?;
    for x in &cl {
        for y in &cr {
            let c = class_product(&[(l.clone(), x.clone()), (r.clone(), y.clone())], &whole, &limits)?;
            println!("  product class of order {} with {} conjugates", c.order(), c.class_size);
        }
    }
    let all = hall_classes(&whole, &pi, HallMode::Exhaustive, &limits)?;
    println!("GL(3,2) x GL(3,2) has {} Hall classes in all", all.len());
    Ok(())
}
