//! Fixed lists of groups used by the verification sweeps.

use std::path::PathBuf;

use super::{GroupSpec, MatrixFamily};

fn psl(n: usize, q: u64) -> GroupSpec {
    GroupSpec::matrix(MatrixFamily::PSL, n, q)
}

fn direct(a: GroupSpec, b: GroupSpec) -> GroupSpec {
    GroupSpec::direct(a, b)
}

/// Generator file for M11 shipped with the crate.
pub fn m11_path() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data/m11.txt"))
}

/// Simple groups of order at most 10^4, in increasing order.
pub fn simple_groups() -> Vec<GroupSpec> {
    use GroupSpec::*;
    let mut out = vec![
        Alt(5),
        psl(2, 7),
        Alt(6),
        psl(2, 8),
        psl(2, 11),
        psl(2, 13),
        psl(2, 17),
        Alt(7),
        psl(2, 19),
        psl(2, 16),
        psl(3, 3),
        psl(2, 23),
    ];
    let m11 = m11_path();
    if m11.exists() {
        out.push(FromFile(m11));
    }
    out.push(psl(2, 27));
    out
}

/// Every group used by the sweeps, paired with its order, restricted to
/// orders up to `max_order`. Listed in increasing order, ties by spec text.
pub fn sweep_groups(max_order: u64) -> Vec<(GroupSpec, u64)> {
    use GroupSpec::*;
    let gl = |n, q| GroupSpec::matrix(MatrixFamily::GL, n, q);
    let sl = |n, q| GroupSpec::matrix(MatrixFamily::SL, n, q);
    let pgl = |n, q| GroupSpec::matrix(MatrixFamily::PGL, n, q);
    let mut specs = vec![
        Cyclic(2),
        Cyclic(3),
        Cyclic(4),
        Cyclic(6),
        Cyclic(12),
        Dihedral(3),
        Dihedral(4),
        Dihedral(5),
        Dihedral(6),
        Dihedral(10),
        Dihedral(12),
        Sym(3),
        Sym(4),
        Sym(5),
        Sym(6),
        Alt(4),
        Alt(5),
        Alt(6),
        gl(2, 3),
        sl(2, 3),
        sl(2, 5),
        gl(3, 2),
        gl(2, 4),
        pgl(2, 5),
        pgl(2, 7),
        pgl(2, 9),
        psl(2, 7),
        psl(2, 8),
        psl(2, 11),
        psl(2, 13),
        GroupSpec::transpose_inverse(gl(3, 2)),
        GroupSpec::transpose_inverse(gl(2, 3)),
        direct(Sym(3), Cyclic(2)),
        direct(Sym(3), Cyclic(3)),
        direct(Sym(3), Sym(3)),
        direct(Alt(4), Cyclic(2)),
        direct(Alt(4), Cyclic(3)),
        direct(Sym(4), Cyclic(2)),
        direct(Sym(3), Alt(4)),
        direct(Alt(4), Alt(4)),
        direct(Sym(4), Sym(3)),
        direct(Alt(5), Cyclic(2)),
        direct(Alt(5), Cyclic(3)),
        direct(Alt(5), Sym(3)),
        direct(Dihedral(5), Cyclic(3)),
        direct(Dihedral(5), Sym(3)),
        direct(gl(3, 2), Cyclic(2)),
        direct(Sym(4), Sym(4)),
        direct(Alt(5), Alt(4)),
        direct(Sym(5), Cyclic(2)),
        GroupSpec::wreath(Cyclic(2), 2),
        GroupSpec::wreath(Cyclic(3), 2),
        GroupSpec::wreath(Sym(3), 2),
        GroupSpec::wreath(Cyclic(2), 3),
        GroupSpec::wreath(Cyclic(3), 3),
        GroupSpec::wreath(Sym(3), 3),
        GroupSpec::wreath(Alt(4), 2),
        GroupSpec::wreath(Dihedral(5), 2),
        GroupSpec::wreath(Sym(4), 2),
        GroupSpec::wreath(Dihedral(4), 2),
        GroupSpec::wreath(Cyclic(5), 2),
    ];
    let mut out: Vec<(GroupSpec, u64)> = specs
        .drain(..)
        .filter_map(|s| {
            let order = s.build().ok()?.order_u64()?;
            (order <= max_order).then_some((s, order))
        })
        .collect();
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.to_string().cmp(&b.0.to_string())));
    out
}
