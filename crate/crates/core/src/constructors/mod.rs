//! Concrete groups as permutation groups: named families, classical matrix
//! groups over small fields, direct and wreath products, semidirect products
//! by automorphisms, and flag stabilizers.

pub mod catalog;
pub mod field;
pub mod matrix;
mod spec;

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::hom::Homomorphism;
use crate::limits::Limits;
use crate::perm::Permutation;
use crate::subgroup::Subgroup;

use field::Field;
use matrix::{Matrix, VectorDomain};

pub use spec::parse_group_spec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatrixFamily {
    GL,
    SL,
    PSL,
    PGL,
}

impl MatrixFamily {
    pub fn name(self) -> &'static str {
        match self {
            MatrixFamily::GL => "GL",
            MatrixFamily::SL => "SL",
            MatrixFamily::PSL => "PSL",
            MatrixFamily::PGL => "PGL",
        }
    }

    pub fn is_projective(self) -> bool {
        matches!(self, MatrixFamily::PSL | MatrixFamily::PGL)
    }

    fn is_special(self) -> bool {
        matches!(self, MatrixFamily::SL | MatrixFamily::PSL)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AutomorphismTag {
    TransposeInverse,
}

/// A group description in the spec mini-language.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupSpec {
    Sym(usize),
    Alt(usize),
    Cyclic(usize),
    Dihedral(usize),
    Matrix { family: MatrixFamily, n: usize, q: u64 },
    Direct(Box<GroupSpec>, Box<GroupSpec>),
    Semidirect(Box<GroupSpec>, AutomorphismTag),
    /// `A wr C_m` in its imprimitive action on `m` copies of `A`'s domain.
    Wreath(Box<GroupSpec>, usize),
    FromFile(PathBuf),
}

impl GroupSpec {
    pub fn gl(n: usize, q: u64) -> GroupSpec {
        GroupSpec::Matrix {
            family: MatrixFamily::GL,
            n,
            q,
        }
    }

    pub fn matrix(family: MatrixFamily, n: usize, q: u64) -> GroupSpec {
        GroupSpec::Matrix { family, n, q }
    }

    pub fn direct(a: GroupSpec, b: GroupSpec) -> GroupSpec {
        GroupSpec::Direct(Box::new(a), Box::new(b))
    }

    pub fn wreath(a: GroupSpec, m: usize) -> GroupSpec {
        GroupSpec::Wreath(Box::new(a), m)
    }

    pub fn transpose_inverse(g: GroupSpec) -> GroupSpec {
        GroupSpec::Semidirect(Box::new(g), AutomorphismTag::TransposeInverse)
    }

    pub fn depth(&self) -> usize {
        match self {
            GroupSpec::Direct(a, b) => 1 + a.depth().max(b.depth()),
            GroupSpec::Semidirect(a, _) | GroupSpec::Wreath(a, _) => 1 + a.depth(),
            _ => 1,
        }
    }

    pub fn build(&self) -> Result<Group> {
        build(self, &Limits::default())
    }

    pub fn build_with(&self, limits: &Limits) -> Result<Group> {
        build(self, limits)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Sym(n) => write!(f, "Sym({n})"),
            GroupSpec::Alt(n) => write!(f, "Alt({n})"),
            GroupSpec::Cyclic(n) => write!(f, "Cyclic({n})"),
            GroupSpec::Dihedral(n) => write!(f, "Dihedral({n})"),
            GroupSpec::Matrix { family, n, q } => write!(f, "{}({n},{q})", family.name()),
            GroupSpec::Direct(a, b) => write!(f, "Direct({a},{b})"),
            GroupSpec::Semidirect(a, AutomorphismTag::TransposeInverse) => {
                write!(f, "Semidirect({a},TransposeInverse)")
            }
            GroupSpec::Wreath(a, m) => write!(f, "Wreath({a},{m})"),
            GroupSpec::FromFile(p) => write!(f, "FromFile({})", p.display()),
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_group_spec(s)
    }
}

/// Construction data remembered by catalog groups.
#[derive(Clone, Debug)]
pub enum CatalogEntry {
    Matrix {
        family: MatrixFamily,
        n: usize,
        q: u64,
    },
    /// `G ⋊ ⟨ι⟩` on vectors ⊔ covectors. `normal` is the embedded `G`,
    /// `linear` the same `G` on vectors alone.
    TransposeInverse {
        family: MatrixFamily,
        n: usize,
        q: u64,
        normal: Arc<Group>,
        linear: Arc<Group>,
        iota: Permutation,
    },
    /// The normal subgroup of a transpose-inverse extension: the matrix
    /// group acting on vectors ⊔ covectors.
    DoubledLinear {
        family: MatrixFamily,
        n: usize,
        q: u64,
    },
    /// Internal direct product of the listed (embedded) factors.
    Direct { factors: Vec<Arc<Group>> },
    /// `A wr C_m`: the embedded copies of `A` and their product.
    Wreath { factors: Vec<Arc<Group>>, base: Arc<Group> },
}

impl CatalogEntry {
    /// Designated proper normal subgroup, if the construction has one.
    pub fn designated_normal(&self) -> Option<Arc<Group>> {
        match self {
            CatalogEntry::TransposeInverse { normal, .. } => Some(normal.clone()),
            CatalogEntry::Wreath { base, .. } => Some(base.clone()),
            _ => None,
        }
    }
}

fn check_degree(degree: usize, limits: &Limits) -> Result<()> {
    if degree > limits.degree_cap {
        return Err(Error::cap("permutation degree", limits.degree_cap as u64, degree));
    }
    Ok(())
}

fn cycle_on(points: impl IntoIterator<Item = usize>, degree: usize) -> Permutation {
    let pts: Vec<usize> = points.into_iter().collect();
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (i, &x) in pts.iter().enumerate() {
        images[x] = pts[(i + 1) % pts.len()] as u32;
    }
    Permutation::from_images_unchecked(images)
}

/// `Sym`, `Alt`, `Cyclic` or `Dihedral` in the natural action.
pub fn make_named(spec: &GroupSpec, limits: &Limits) -> Result<Group> {
    let (n, min) = match *spec {
        GroupSpec::Sym(n) | GroupSpec::Alt(n) | GroupSpec::Cyclic(n) => (n, 1),
        GroupSpec::Dihedral(n) => (n, 3),
        _ => return Err(Error::Precondition(format!("{spec} is not a named family"))),
    };
    if n < min {
        return Err(Error::range("n", format!("{spec} needs n >= {min}")));
    }
    if n > limits.named_degree_cap {
        return Err(Error::cap("n", limits.named_degree_cap as u64, n));
    }
    let gens = match spec {
        GroupSpec::Sym(_) if n >= 2 => vec![cycle_on([0, 1], n), cycle_on(0..n, n)],
        GroupSpec::Alt(_) if n >= 3 => (2..n).map(|k| cycle_on([0, 1, k], n)).collect(),
        GroupSpec::Cyclic(_) if n >= 2 => vec![cycle_on(0..n, n)],
        GroupSpec::Dihedral(_) => {
            let reflection: Vec<u32> = (0..n).map(|x| ((n - x) % n) as u32).collect();
            vec![cycle_on(0..n, n), Permutation::from_images_unchecked(reflection)]
        }
        _ => Vec::new(),
    };
    Group::new(n, gens)
}

/// Order of GL(n,q).
pub fn gl_order(n: usize, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let qn = num_traits::pow(q.clone(), n);
    (0..n).fold(BigUint::one(), |acc, i| acc * (&qn - num_traits::pow(q.clone(), i)))
}

/// Order from the classical formulas, independent of any group computation.
pub fn classical_order(family: MatrixFamily, n: usize, q: u64) -> BigUint {
    let gl = gl_order(n, q);
    let qm1 = BigUint::from(q - 1);
    let d = BigUint::from(num_integer::gcd(n as u64, q - 1));
    match family {
        MatrixFamily::GL => gl,
        MatrixFamily::SL | MatrixFamily::PGL => gl / qm1,
        MatrixFamily::PSL => gl / qm1 / d,
    }
}

fn matrix_setup(family: MatrixFamily, n: usize, q: u64, limits: &Limits) -> Result<(Field, VectorDomain)> {
    if n == 0 {
        return Err(Error::range("n", "matrix dimension must be at least 1"));
    }
    let f = Field::new(q)?;
    let size = (q as f64).powi(n as i32);
    let degree = if family.is_projective() {
        (size - 1.0) / (q as f64 - 1.0)
    } else {
        size - 1.0
    };
    if degree > limits.degree_cap as f64 {
        return Err(Error::cap("permutation degree", limits.degree_cap as u64, degree as u64));
    }
    let dom = VectorDomain::new(n, &f, family.is_projective());
    Ok((f, dom))
}

fn family_generators(family: MatrixFamily, n: usize, f: &Field) -> Vec<Matrix> {
    if family.is_special() {
        matrix::sl_generators(n, f)
    } else {
        matrix::gl_generators(n, f)
    }
}

/// GL/SL on nonzero vectors, PSL/PGL on projective points.
pub fn make_matrix_group(family: MatrixFamily, n: usize, q: u64, limits: &Limits) -> Result<Group> {
    let (f, dom) = matrix_setup(family, n, q, limits)?;
    let gens = family_generators(family, n, &f)
        .iter()
        .map(|m| dom.permutation(m, &f))
        .collect();
    let g = Group::new(dom.len(), gens)?;
    debug_assert_eq!(g.order(), &classical_order(family, n, q));
    Ok(g.with_catalog(CatalogEntry::Matrix { family, n, q }))
}

/// A direct product on the disjoint union of the two domains.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub group: Group,
    /// The two factors, embedded.
    pub left: Group,
    pub right: Group,
    offset: usize,
}

impl DirectProduct {
    pub fn embed_left(&self, x: &Permutation) -> Permutation {
        x.shifted(0, self.group.degree())
    }

    pub fn embed_right(&self, x: &Permutation) -> Permutation {
        x.shifted(self.offset, self.group.degree())
    }
}

fn factors_of(g: &Group) -> Vec<Arc<Group>> {
    match g.catalog() {
        Some(CatalogEntry::Direct { factors }) => factors.clone(),
        _ => vec![Arc::new(g.clone())],
    }
}

fn shifted_group(g: &Group, offset: usize, total: usize) -> Group {
    let gens = g.generators().iter().map(|x| x.shifted(offset, total)).collect();
    Group::new(total, gens).expect("same degree")
}

pub fn direct_product(a: &Group, b: &Group) -> DirectProduct {
    let (m, n) = (a.degree(), b.degree());
    let total = m + n;
    let left = shifted_group(a, 0, total);
    let right = shifted_group(b, m, total);
    let gens = left.generators().iter().chain(right.generators()).cloned().collect();
    let mut factors: Vec<Arc<Group>> = factors_of(a)
        .iter()
        .map(|f| Arc::new(shifted_group(f, 0, total)))
        .collect();
    factors.extend(factors_of(b).iter().map(|f| Arc::new(shifted_group(f, m, total))));
    let group = Group::new(total, gens)
        .expect("same degree")
        .with_catalog(CatalogEntry::Direct { factors });
    DirectProduct {
        group,
        left,
        right,
        offset: m,
    }
}

/// `A wr C_m` on `m` blocks of `A`'s domain; the top generator moves block
/// `i` to block `i+1`.
pub fn wreath_cyclic(a: &Group, m: usize, limits: &Limits) -> Result<Group> {
    if m == 0 {
        return Err(Error::range("m", "wreath product needs at least one copy"));
    }
    let d = a.degree();
    let total = d * m;
    check_degree(total, limits)?;
    let factors: Vec<Arc<Group>> = (0..m).map(|i| Arc::new(shifted_group(a, i * d, total))).collect();
    let base_gens: Vec<Permutation> = factors.iter().flat_map(|f| f.generators().to_vec()).collect();
    let base = Arc::new(Group::new(total, base_gens)?);
    let shift: Vec<u32> = (0..total).map(|x| ((x + d) % total) as u32).collect();
    let mut gens = a.generators().iter().map(|x| x.shifted(0, total)).collect::<Vec<_>>();
    if m > 1 {
        gens.push(Permutation::from_images_unchecked(shift));
    }
    Ok(Group::new(total, gens)?.with_catalog(CatalogEntry::Wreath { factors, base }))
}

#[derive(Clone, Debug)]
enum AutomorphismKind {
    Generic,
    TransposeInverse { family: MatrixFamily, n: usize, q: u64 },
}

/// An automorphism of a permutation group, given by generator images.
#[derive(Clone, Debug)]
pub struct Automorphism {
    source: Arc<Group>,
    order: usize,
    images: Vec<Permutation>,
    map: Homomorphism,
    kind: AutomorphismKind,
}

/// Random checks of `a(xy) = a(x)a(y)` performed when an automorphism is built.
pub const AUTOMORPHISM_SAMPLES: usize = 100;

impl Automorphism {
    /// Verifies that the images define an automorphism of `source` whose
    /// `order`-th power is the identity.
    pub fn from_images(source: &Group, images: Vec<Permutation>, order: usize) -> Result<Automorphism> {
        Self::build(Arc::new(source.clone()), images, order, AutomorphismKind::Generic)
    }

    fn build(source: Arc<Group>, images: Vec<Permutation>, order: usize, kind: AutomorphismKind) -> Result<Automorphism> {
        if order == 0 {
            return Err(Error::Automorphism("order must be positive".into()));
        }
        for im in &images {
            if im.degree() != source.degree() || !source.contains_unchecked(im) {
                return Err(Error::Automorphism("generator image outside the group".into()));
            }
        }
        let map = Homomorphism::new(&source, images.clone(), source.degree())
            .map_err(|_| Error::Automorphism("generator images do not define a homomorphism".into()))?;
        if map.image_group()?.order() != source.order() {
            return Err(Error::Automorphism("map is not bijective".into()));
        }
        let a = Automorphism {
            source,
            order,
            images,
            map,
            kind,
        };
        for g in a.source.generators() {
            if &a.power(g, order) != g {
                return Err(Error::Automorphism(format!("order {order} power is not the identity")));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..AUTOMORPHISM_SAMPLES {
            let x = a.source.random_element(&mut rng);
            let y = a.source.random_element(&mut rng);
            let lhs = a.apply(&x.then(&y));
            if lhs != a.apply(&x).then(&a.apply(&y)) || !a.source.contains_unchecked(&lhs) {
                return Err(Error::Automorphism("products not preserved".into()));
            }
        }
        Ok(a)
    }

    pub fn source(&self) -> &Arc<Group> {
        &self.source
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn apply(&self, x: &Permutation) -> Permutation {
        self.map.apply(x)
    }

    /// `a^k(x)`.
    pub fn power(&self, x: &Permutation, k: usize) -> Permutation {
        (0..k).fold(x.clone(), |acc, _| self.apply(&acc))
    }

    /// The image of a subgroup of the source.
    pub fn apply_group(&self, h: &Group) -> Group {
        let gens = h.generators().iter().map(|x| self.apply(x)).collect();
        Group::new(h.degree(), gens).expect("same degree")
    }
}

/// `ι: g ↦ (gᵗ)⁻¹` on `GL(n,q)` (or `SL(n,q)`) acting on nonzero vectors.
pub fn transpose_inverse_automorphism(n: usize, q: u64) -> Result<Automorphism> {
    transpose_inverse_on(MatrixFamily::GL, n, q, &Limits::default())
}

fn transpose_inverse_on(family: MatrixFamily, n: usize, q: u64, limits: &Limits) -> Result<Automorphism> {
    if family.is_projective() && q != 2 {
        return Err(Error::Precondition(format!(
            "TransposeInverse needs the vector action; {}({n},{q}) is projective",
            family.name()
        )));
    }
    let linear_family = if family.is_special() { MatrixFamily::SL } else { MatrixFamily::GL };
    let (f, dom) = matrix_setup(linear_family, n, q, limits)?;
    let mats = family_generators(linear_family, n, &f);
    let gens = mats.iter().map(|m| dom.permutation(m, &f)).collect();
    let source = Arc::new(Group::new(dom.len(), gens)?.with_catalog(CatalogEntry::Matrix { family, n, q }));
    let images = mats
        .iter()
        .map(|m| dom.permutation(&matrix::transpose_inverse(m, &f), &f))
        .collect();
    Automorphism::build(source, images, 2, AutomorphismKind::TransposeInverse { family, n, q })
}

/// `G ⋊ ⟨a⟩` with its designated normal copy of `G`.
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub group: Group,
    pub normal: Arc<Group>,
    /// The adjoined element; conjugation by it implements the automorphism.
    pub complement: Permutation,
    blocks: usize,
    kind: SemidirectKind,
}

#[derive(Clone, Debug)]
enum SemidirectKind {
    Copies(Automorphism),
    Doubled { f: Field, dom: VectorDomain },
}

impl Semidirect {
    /// The image of an element of `G` in the normal copy.
    pub fn embed(&self, x: &Permutation) -> Permutation {
        match &self.kind {
            SemidirectKind::Copies(a) => {
                let mut images: Vec<u32> = Vec::with_capacity(self.group.degree());
                let d = x.degree();
                let mut y = x.clone();
                for i in 0..self.blocks {
                    images.extend(y.images().iter().map(|&p| p + (i * d) as u32));
                    y = a.apply(&y);
                }
                Permutation::from_images_unchecked(images)
            }
            SemidirectKind::Doubled { f, dom } => {
                let m = matrix_of(x, dom, f);
                doubled(&m, dom, f)
            }
        }
    }
}

/// Recovers the matrix of a linear permutation from the images of the unit
/// vectors.
fn matrix_of(x: &Permutation, dom: &VectorDomain, f: &Field) -> Matrix {
    let n = dom.n;
    let mut m = Matrix::identity(n);
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        let row = dom.point(x.image(dom.index(&e, f)) as usize);
        for j in 0..n {
            m.set(i, j, row[j]);
        }
    }
    m
}

fn doubled(m: &Matrix, dom: &VectorDomain, f: &Field) -> Permutation {
    let a = dom.permutation(m, f);
    let b = dom.permutation(&matrix::transpose_inverse(m, f), f);
    crate::hom::juxtapose(&a, &b)
}

/// Realizes `G ⋊ ⟨a⟩`. Transpose-inverse uses vectors ⊔ covectors; any
/// other automorphism uses `a.order()` copies of `G`'s domain, `g` acting as
/// `a^i(g)` on copy `i` and the adjoined element cycling the copies.
pub fn semidirect_by_automorphism(g: &Group, a: &Automorphism, limits: &Limits) -> Result<Semidirect> {
    if !a.source.same_group(g) || a.source.degree() != g.degree() {
        return Err(Error::Automorphism("automorphism of a different group".into()));
    }
    if let AutomorphismKind::TransposeInverse { family, n, q } = a.kind {
        let linear_family = if family.is_special() { MatrixFamily::SL } else { MatrixFamily::GL };
        let (f, dom) = matrix_setup(linear_family, n, q, limits)?;
        let m = dom.len();
        check_degree(2 * m, limits)?;
        let mats = family_generators(linear_family, n, &f);
        let ngens: Vec<Permutation> = mats.iter().map(|x| doubled(x, &dom, &f)).collect();
        let normal = Arc::new(Group::new(2 * m, ngens.clone())?.with_catalog(CatalogEntry::DoubledLinear { family, n, q }));
        let iota = Permutation::from_images_unchecked((0..2 * m).map(|x| ((x + m) % (2 * m)) as u32).collect());
        let mut gens = ngens;
        gens.push(iota.clone());
        let linear = a.source.clone();
        let group = Group::new(2 * m, gens)?.with_catalog(CatalogEntry::TransposeInverse {
            family,
            n,
            q,
            normal: normal.clone(),
            linear,
            iota: iota.clone(),
        });
        return Ok(Semidirect {
            group,
            normal,
            complement: iota,
            blocks: 2,
            kind: SemidirectKind::Doubled { f, dom },
        });
    }
    let k = a.order;
    let d = g.degree();
    check_degree(k * d, limits)?;
    let mut sd = Semidirect {
        group: Group::trivial(k * d),
        normal: Arc::new(Group::trivial(k * d)),
        complement: Permutation::identity(k * d),
        blocks: k,
        kind: SemidirectKind::Copies(a.clone()),
    };
    let ngens: Vec<Permutation> = g.generators().iter().map(|x| sd.embed(x)).collect();
    // block i -> block i-1, so conjugation shifts a^(i+1) onto block i
    let shift = Permutation::from_images_unchecked((0..k * d).map(|x| ((x + (k - 1) * d) % (k * d)) as u32).collect());
    let normal = Arc::new(Group::new(k * d, ngens.clone())?);
    let mut gens = ngens;
    if k > 1 {
        gens.push(shift.clone());
    }
    sd.group = Group::new(k * d, gens)?;
    sd.normal = normal;
    sd.complement = shift;
    Ok(sd)
}

/// Parses a generator file: a `degree N` line, then one permutation in cycle
/// notation per non-empty line; lines starting with `#` are comments.
pub fn parse_generator_file(text: &str) -> Result<Group> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    let mut offset = 0;
    for line in text.lines() {
        let start = offset;
        offset += line.len() + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        match degree {
            None => {
                let rest = t
                    .strip_prefix("degree")
                    .ok_or_else(|| Error::parse(start, "expected `degree N` as the first line"))?;
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(start, format!("bad degree `{}`", rest.trim())))?;
                if n == 0 {
                    return Err(Error::range("degree", "must be at least 1"));
                }
                degree = Some(n);
            }
            Some(n) => gens.push(Permutation::from_cycles(t, n).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::parse(start + pos, msg),
                other => other,
            })?),
        }
    }
    let n = degree.ok_or_else(|| Error::parse(0, "missing `degree N` line"))?;
    Group::new(n, gens)
}

pub fn load_generator_file(path: &Path) -> Result<Group> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        msg: e.to_string(),
    })?;
    parse_generator_file(&text)
}

/// Builds the group described by `spec`.
pub fn build(spec: &GroupSpec, limits: &Limits) -> Result<Group> {
    if spec.depth() > spec::MAX_DEPTH {
        return Err(Error::range("nesting depth", format!("{} > {}", spec.depth(), spec::MAX_DEPTH)));
    }
    match spec {
        GroupSpec::Sym(_) | GroupSpec::Alt(_) | GroupSpec::Cyclic(_) | GroupSpec::Dihedral(_) => make_named(spec, limits),
        GroupSpec::Matrix { family, n, q } => make_matrix_group(*family, *n, *q, limits),
        GroupSpec::Direct(a, b) => {
            let dp = direct_product(&build(a, limits)?, &build(b, limits)?);
            check_degree(dp.group.degree(), limits)?;
            Ok(dp.group)
        }
        GroupSpec::Wreath(a, m) => wreath_cyclic(&build(a, limits)?, *m, limits),
        GroupSpec::Semidirect(inner, AutomorphismTag::TransposeInverse) => match **inner {
            GroupSpec::Matrix { family, n, q } => {
                let a = transpose_inverse_on(family, n, q, limits)?;
                let source = a.source.clone();
                Ok(semidirect_by_automorphism(&source, &a, limits)?.group)
            }
            _ => Err(Error::Precondition(format!("TransposeInverse needs a matrix group, got {inner}"))),
        },
        GroupSpec::FromFile(path) => load_generator_file(path),
    }
}

/// Stabilizer of the standard flag `0 < V_1 < … < V_s = V` with
/// `dim V_i/V_{i-1} = dims[i]`, as block upper triangular matrices.
/// Works in matrix groups containing SL on vectors (GL(n,q), or any family
/// when q = 2) and in their transpose-inverse extensions, where the result
/// lies in the designated normal subgroup.
pub fn flag_stabilizer(g: &Arc<Group>, dims: &[usize]) -> Result<Subgroup> {
    let (family, n, q, extended) = match g.catalog() {
        Some(CatalogEntry::Matrix { family, n, q }) => (*family, *n, *q, false),
        Some(CatalogEntry::TransposeInverse { family, n, q, .. }) | Some(CatalogEntry::DoubledLinear { family, n, q }) => {
            (*family, *n, *q, true)
        }
        _ => return Err(Error::Precondition("flag stabilizers need a matrix group".into())),
    };
    if dims.iter().sum::<usize>() != n || dims.contains(&0) {
        return Err(Error::Precondition(format!("flag dimensions {dims:?} do not partition {n}")));
    }
    let full = family == MatrixFamily::GL || q == 2;
    if !full || (family.is_projective() && q != 2) {
        return Err(Error::Precondition(format!(
            "flag stabilizers are built in GL(n,q); got {}({n},{q})",
            family.name()
        )));
    }
    let f = Field::new(q)?;
    let dom = VectorDomain::new(n, &f, false);
    let mats = matrix::flag_generators(dims, &f);
    let gens: Vec<Permutation> = if extended {
        mats.iter().map(|m| doubled(m, &dom, &f)).collect()
    } else {
        mats.iter().map(|m| dom.permutation(m, &f)).collect()
    };
    let h = Group::new(g.degree(), gens)?;
    let tag = format!(
        "flag({})",
        dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
    );
    Ok(Subgroup::new(g.clone(), h)?.with_tag(tag))
}

/// Maps an element of the linear group on vectors to its image on
/// vectors ⊔ covectors inside a transpose-inverse extension `g` (or its
/// normal subgroup).
pub fn embed_linear(g: &Group, x: &Permutation) -> Result<Permutation> {
    let (n, q) = match g.catalog() {
        Some(CatalogEntry::TransposeInverse { n, q, .. }) | Some(CatalogEntry::DoubledLinear { n, q, .. }) => (*n, *q),
        _ => return Err(Error::Precondition("not a transpose-inverse extension".into())),
    };
    let f = Field::new(q)?;
    let dom = VectorDomain::new(n, &f, false);
    if x.degree() != dom.len() {
        return Err(Error::DegreeMismatch { expected: dom.len(), found: x.degree() });
    }
    Ok(doubled(&matrix_of(x, &dom, &f), &dom, &f))
}

/// Order of a flag stabilizer from the block formula.
pub fn flag_order(dims: &[usize], q: u64) -> BigUint {
    let mut order = BigUint::one();
    let mut before = 0;
    for &d in dims {
        order *= gl_order(d, q);
        order *= num_traits::pow(BigUint::from(q), before * d);
        before += d;
    }
    order
}

/// All compositions of `n` (ordered sequences of positive parts), in
/// lexicographic order.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for rest in compositions(n - first) {
            let mut c = vec![first];
            c.extend(rest);
            out.push(c);
        }
    }
    out
}
