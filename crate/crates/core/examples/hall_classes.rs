//! Conjugacy classes of Hall π-subgroups, found exhaustively for small
//! groups and from the flag-stabilizer catalog for GL(5,2).
//!
//! `cargo run --release --example hall_classes`

use std::sync::Arc;

use hallpi::{hall_classes, parse_group_spec, HallMode, Limits, PrimeSet};

fn show(spec: &str, pi: &str, mode: HallMode) -> hallpi::Result<()> {
    let g = Arc::new(parse_group_spec(spec)?.build()?);
    let pi = PrimeSet::parse(pi)?;
    let classes = hall_classes(&g, &pi, mode, &Limits::default())?;
    println!("{spec}, pi = {pi}: {} class(es)", classes.len());
    for c in &classes {
        println!(
            "  order {:>6}  {:>4} conjugates  {}  orbit signature {:?}  {}",
            c.order(),
            c.class_size,
            c.provenance,
            c.orbit_signature,
            c.representative.tag().unwrap_or("")
        );
        for a in &c.assumptions {
            println!("    assumes {a}");
        }
    }
    Ok(())
}

fn main() -> hallpi::Result<()> {
    show("Alt(5)", "2,3", HallMode::Exhaustive)?;
    show("Alt(5)", "3,5", HallMode::Exhaustive)?;
    show("GL(3,2)", "2,3", HallMode::Exhaustive)?;
    show("Semidirect(GL(3,2),TransposeInverse)", "2,3", HallMode::Exhaustive)?;
    show("GL(5,2)", "2,3", HallMode::CatalogCertified)?;
    show("Semidirect(GL(5,2),TransposeInverse)", "2,3", HallMode::Auto)?;
    Ok(())
}
