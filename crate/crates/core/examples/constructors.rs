//! Building groups from the spec language: named families, matrix groups,
//! products, the transpose-inverse extension and flag stabilizers.
//!
//! `cargo run --release --example constructors`

use std::sync::Arc;

use hallpi::constructors::{catalog, flag_stabilizer};
use hallpi::parse_group_spec;

fn main() -> hallpi::Result<()> {
    for text in [
        "Sym(5)",
        "Dihedral(6)",
        "SL(2,3)",
        "PSL(2,8)",
        "GL(3,2)",
        "Direct(Sym(3),Cyclic(2))",
        "Wreath(Sym(3),2)",
        "Semidirect(GL(3,2),TransposeInverse)",
        "Semidirect(GL(5,2),TransposeInverse)",
    ] {
        let g = parse_group_spec(text)?.build()?;
        println!("{text:<40} degree {:>3}  order {}", g.degree(), g.order());
    }

    let gl52 = Arc::new(parse_group_spec("GL(5,2)")?.build()?);
    for dims in [[2, 1, 2], [1, 2, 2], [2, 2, 1]] {
        let h = flag_stabilizer(&gl52, &dims)?;
        println!("stabilizer of a flag with steps {dims:?}: order {}", h.order());
    }

    let m11 = catalog::m11_path();
    if m11.exists() {
        let g = parse_group_spec(&format!("FromFile({})", m11.display()))?.build()?;
        println!("M11 from its generator file: order {}", g.order());
    }
    Ok(())
}
