//! π-arithmetic, Hall subgroups and the properties E_π, C_π, D_π.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::constructors::{self, CatalogEntry, MatrixFamily};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::limits::Limits;
use crate::perm::Permutation;
use crate::pisub::{self, Root};
use crate::subgroup::{
    self, conjugacy, is_normalized_by, orbit_signature, Conjugacy, NonConjugacyCertificate, Subgroup, Transporter,
};
use crate::table::SubTable;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime divisors of `n` by trial division, ascending.
pub fn prime_divisors(n: &BigUint) -> Vec<u64> {
    let mut m = n.clone();
    let mut out = Vec::new();
    let mut p = 2u64;
    while !m.is_one() && !m.is_zero() {
        let bp = BigUint::from(p);
        if &bp * &bp > m {
            out.push(m.to_u64().expect("prime factor fits in u64"));
            break;
        }
        if (&m % &bp).is_zero() {
            out.push(p);
            while (&m % &bp).is_zero() {
                m /= &bp;
            }
        }
        p += 1;
    }
    out
}

/// A finite set of primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeSet {
    primes: Vec<u64>,
}

impl PrimeSet {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<PrimeSet> {
        let mut v: Vec<u64> = primes.into_iter().collect();
        if let Some(&bad) = v.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::range("prime", format!("{bad} is not prime")));
        }
        v.sort_unstable();
        v.dedup();
        Ok(PrimeSet { primes: v })
    }

    /// Like [`PrimeSet::new`] for arguments known to be prime.
    pub(crate) fn from_primes(primes: impl IntoIterator<Item = u64>) -> PrimeSet {
        PrimeSet::new(primes).expect("primes")
    }

    pub fn empty() -> PrimeSet {
        PrimeSet::default()
    }

    /// The prime divisors of `n`.
    pub fn of(n: &BigUint) -> PrimeSet {
        PrimeSet {
            primes: prime_divisors(n),
        }
    }

    /// Parses a comma separated list such as `2,3`; an empty string is ∅.
    pub fn parse(text: &str) -> Result<PrimeSet> {
        let mut primes = Vec::new();
        let mut pos = 0;
        for part in text.split(',') {
            let t = part.trim();
            if !t.is_empty() || text.contains(',') {
                let p: u64 = t
                    .parse()
                    .map_err(|_| Error::parse(pos, format!("`{t}` is not a positive integer")))?;
                if !is_prime(p) {
                    return Err(Error::range("prime", format!("{p} is not prime")));
                }
                primes.push(p);
            }
            pos += part.len() + 1;
        }
        PrimeSet::new(primes)
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    pub fn intersection(&self, other: &PrimeSet) -> PrimeSet {
        PrimeSet {
            primes: self.primes.iter().copied().filter(|&p| other.contains(p)).collect(),
        }
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        self.primes.iter().all(|&p| other.contains(p))
    }

    /// Is every prime divisor of `n` in the set?
    pub fn is_pi_number(&self, n: u64) -> bool {
        self.part_u64(n) == n
    }

    pub fn is_pi_number_big(&self, n: &BigUint) -> bool {
        &self.part(n) == n
    }

    /// Is no prime divisor of `n` in the set?
    pub fn is_pi_prime_number(&self, n: &BigUint) -> bool {
        self.part(n).is_one()
    }

    /// The largest divisor of `n` that is a π-number.
    pub fn part(&self, n: &BigUint) -> BigUint {
        let mut m = n.clone();
        let mut out = BigUint::one();
        if m.is_zero() {
            return out;
        }
        for &p in &self.primes {
            let bp = BigUint::from(p);
            while (&m % &bp).is_zero() {
                m /= &bp;
                out *= &bp;
            }
        }
        out
    }

    pub fn part_u64(&self, mut n: u64) -> u64 {
        let mut out = 1;
        if n == 0 {
            return 1;
        }
        for &p in &self.primes {
            while n % p == 0 {
                n /= p;
                out *= p;
            }
        }
        out
    }

    /// All subsets, ordered by size and then lexicographically.
    pub fn subsets(&self) -> Vec<PrimeSet> {
        let k = self.primes.len();
        let mut out: Vec<PrimeSet> = (0u32..1 << k)
            .map(|mask| PrimeSet {
                primes: (0..k).filter(|i| mask >> i & 1 == 1).map(|i| self.primes[i]).collect(),
            })
            .collect();
        out.sort_by(|a, b| a.primes.len().cmp(&b.primes.len()).then_with(|| a.primes.cmp(&b.primes)));
        out
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl std::str::FromStr for PrimeSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PrimeSet::parse(s)
    }
}

/// `n_π`.
pub fn pi_part(n: &BigUint, pi: &PrimeSet) -> BigUint {
    pi.part(n)
}

/// `|H| = |G|_π`, which for `H ≤ G` is the same as `|H|` a π-number and
/// `|G:H|` a π′-number.
pub fn is_hall(g: &Group, h: &Group, pi: &PrimeSet) -> bool {
    h.order() == &pi.part(g.order())
}

/// How a class of subgroups was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    /// Found by exhaustive search; complete without further assumptions.
    Exhaustive,
    /// Built from a registered candidate family whose completeness rests on
    /// a cited classification.
    CatalogCertified,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Exhaustive => "exhaustive",
            Provenance::CatalogCertified => "catalog-certified",
        })
    }
}

/// One conjugacy class of subgroups of `representative.parent()`.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: Subgroup,
    /// `|parent : N_parent(representative)|`.
    pub class_size: BigUint,
    pub provenance: Provenance,
    /// Orbit lengths of the representative inside each orbit of the parent;
    /// a conjugacy invariant that separates many classes.
    pub orbit_signature: Vec<Vec<usize>>,
    pub assumptions: Vec<String>,
}

impl SubgroupClass {
    fn new(rep: Subgroup, class_size: BigUint, provenance: Provenance, assumptions: Vec<String>) -> SubgroupClass {
        let orbit_signature = orbit_signature(rep.parent(), &rep);
        SubgroupClass {
            representative: rep,
            class_size,
            provenance,
            orbit_signature,
            assumptions,
        }
    }

    pub fn order(&self) -> &BigUint {
        self.representative.order()
    }
}

/// Assumption carried by every class derived from the parabolic
/// description of Hall subgroups in `GL(n,2)`.
pub const PARABOLIC_ASSUMPTION: &str =
    "RevHallp-Thm1.2: Hall pi-subgroups of GL(n,2) with 2 in pi are stabilizers of flags";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HallMode {
    Exhaustive,
    CatalogCertified,
    /// Exhaustive when the order allows it, else the catalog when registered.
    Auto,
}

impl std::str::FromStr for HallMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exhaustive" => Ok(HallMode::Exhaustive),
            "catalog" | "catalogcertified" | "catalog-certified" => Ok(HallMode::CatalogCertified),
            "auto" => Ok(HallMode::Auto),
            _ => Err(Error::parse(0, format!("unknown mode `{s}`"))),
        }
    }
}

fn table_class(g: &Arc<Group>, table: &crate::table::ElementTable, rep: &SubTable) -> SubgroupClass {
    let size = pisub::class_size(table, rep);
    let h = subgroup::table_group(table, rep, g.degree());
    SubgroupClass::new(
        Subgroup::new_unchecked(g.clone(), h),
        BigUint::from(size),
        Provenance::Exhaustive,
        Vec::new(),
    )
}

fn class_of_whole(g: &Arc<Group>) -> SubgroupClass {
    SubgroupClass::new(Subgroup::whole(g), BigUint::one(), Provenance::Exhaustive, Vec::new())
}

fn class_of_trivial(g: &Arc<Group>) -> SubgroupClass {
    SubgroupClass::new(Subgroup::trivial(g), BigUint::one(), Provenance::Exhaustive, Vec::new())
}

/// Classes of maximal π-subgroups of `g`, by exhaustive search.
pub fn max_pi_subgroups(g: &Arc<Group>, pi: &PrimeSet, limits: &Limits) -> Result<Vec<SubgroupClass>> {
    let primes = PrimeSet::of(g.order());
    let eff = pi.intersection(&primes);
    if eff.is_empty() {
        return Ok(vec![class_of_trivial(g)]);
    }
    if primes.is_subset(pi) {
        return Ok(vec![class_of_whole(g)]);
    }
    let table = g.table(limits.exhaustive_order)?;
    let classes = pisub::pi_classes(&table, &eff, Root::Trivial, pisub::CLASS_BUDGET)?;
    Ok(classes
        .iter()
        .filter(|c| c.maximal)
        .map(|c| table_class(g, &table, &c.rep))
        .collect())
}

fn hall_exhaustive(g: &Arc<Group>, pi: &PrimeSet, limits: &Limits) -> Result<Vec<SubgroupClass>> {
    let primes = PrimeSet::of(g.order());
    let eff = pi.intersection(&primes);
    if eff.is_empty() {
        return Ok(vec![class_of_trivial(g)]);
    }
    if primes.is_subset(pi) {
        return Ok(vec![class_of_whole(g)]);
    }
    if eff.primes().len() == 1 {
        let p = eff.primes()[0];
        let s = subgroup::sylow(g, p, limits)?;
        let n = subgroup::normalizer(g, &s, limits)?;
        let size = g.order() / n.order();
        return Ok(vec![SubgroupClass::new(s, size, Provenance::Exhaustive, Vec::new())]);
    }
    let table = g.table(limits.exhaustive_order)?;
    let n = table.len() as u64;
    let target = eff.part_u64(n) as usize;
    // root at the Sylow subgroup with the largest p-part: every Hall subgroup
    // contains a conjugate of it
    let p = *eff
        .primes()
        .iter()
        .max_by_key(|&&p| (PrimeSet::from_primes([p]).part_u64(n), std::cmp::Reverse(p)))
        .unwrap();
    let classes = pisub::pi_classes(&table, &eff, Root::Sylow(p), pisub::CLASS_BUDGET)?;
    Ok(classes
        .iter()
        .filter(|c| c.rep.order() == target)
        .map(|c| table_class(g, &table, &c.rep))
        .collect())
}

/// The group `GL(n,2)` as catalogued, possibly doubled.
fn parabolic_family(g: &Group) -> Option<(usize, bool)> {
    match g.catalog()? {
        CatalogEntry::Matrix { n, q: 2, .. } => Some((*n, false)),
        CatalogEntry::DoubledLinear { n, q: 2, .. } => Some((*n, true)),
        _ => None,
    }
}

fn catalog_registered(g: &Group, pi: &PrimeSet) -> bool {
    match g.catalog() {
        Some(CatalogEntry::Matrix { q: 2, .. }) | Some(CatalogEntry::DoubledLinear { q: 2, .. }) => pi.contains(2),
        Some(CatalogEntry::TransposeInverse { q: 2, .. }) => pi.contains(2),
        _ => false,
    }
}

fn hall_parabolic(g: &Arc<Group>, n: usize, pi: &PrimeSet, limits: &Limits) -> Result<Vec<SubgroupClass>> {
    let target = pi.part(g.order());
    let mut out: Vec<SubgroupClass> = Vec::new();
    for dims in constructors::compositions(n) {
        if constructors::flag_order(&dims, 2) != target {
            continue;
        }
        let h = constructors::flag_stabilizer(g, &dims)?;
        debug_assert!(is_hall(g, &h, pi));
        let mut duplicate = false;
        for c in &out {
            if let Conjugacy::Conjugate(_) = conjugacy(g, &h, &c.representative, limits)? {
                duplicate = true;
                break;
            }
        }
        if duplicate {
            continue;
        }
        let size = g.order() / subgroup::normalizer(g, &h, limits)?.order();
        out.push(SubgroupClass::new(
            h,
            size,
            Provenance::CatalogCertified,
            vec![PARABOLIC_ASSUMPTION.to_string()],
        ));
    }
    Ok(out)
}

/// Hall subgroups of `G ⋊ ⟨ι⟩`: a Hall subgroup meets `G` in a Hall
/// subgroup `P` of `G` and has twice its order, so it is generated by `P`
/// and an element `ι·t` normalizing `P`. Such an element exists exactly when
/// ι maps the `G`-class of `P` to itself.
fn hall_transpose_inverse(g: &Arc<Group>, pi: &PrimeSet, limits: &Limits) -> Result<Vec<SubgroupClass>> {
    let Some(CatalogEntry::TransposeInverse {
        n,
        linear,
        normal,
        iota,
        ..
    }) = g.catalog()
    else {
        return Err(Error::UnknownCatalog("transpose-inverse extension".into()));
    };
    let target = pi.part(g.order());
    let normal_classes = hall_parabolic(normal, *n, pi, limits)?;
    let m = linear.degree();
    let mut out: Vec<SubgroupClass> = Vec::new();
    for c in &normal_classes {
        let p = &c.representative;
        if &(p.order() * 2u32) != &target {
            // the index of G is a π′-number: Hall subgroups of G are Hall in the extension
            if p.order() == &target {
                let rep = Subgroup::new_unchecked(g.clone(), (**p.group()).clone()).with_tag(p.tag().unwrap_or(""));
                let size = g.order() / subgroup::normalizer(g, &rep, limits)?.order();
                out.push(SubgroupClass::new(rep, size, Provenance::CatalogCertified, c.assumptions.clone()));
            }
            continue;
        }
        let on_vectors = |h: &Group| -> Group {
            let gens = h.generators().iter().map(|x| x.restrict(0, m)).collect();
            Group::new(m, gens).expect("same degree")
        };
        let lp = on_vectors(p);
        let lp_iota = on_vectors(&p.conjugated_by(iota));
        let Conjugacy::Conjugate(t) = conjugacy(linear, &lp_iota, &lp, limits)? else {
            continue;
        };
        let t_emb = constructors::embed_linear(g, &t.element)?;
        let x = iota.then(&t_emb);
        let mut gens = p.generators().to_vec();
        gens.push(x);
        let hat = Group::new(g.degree(), gens)?;
        if hat.order() != &target {
            continue;
        }
        let mut duplicate = false;
        for o in &out {
            if let Conjugacy::Conjugate(_) = conjugacy(g, &hat, &o.representative, limits)? {
                duplicate = true;
            }
        }
        if duplicate {
            continue;
        }
        let tag = format!("N({})", p.tag().unwrap_or("P"));
        let rep = Subgroup::new_unchecked(g.clone(), hat).with_tag(tag);
        let size = g.order() / subgroup::normalizer(g, &rep, limits)?.order();
        out.push(SubgroupClass::new(rep, size, Provenance::CatalogCertified, c.assumptions.clone()));
    }
    Ok(out)
}

fn hall_catalog(g: &Arc<Group>, pi: &PrimeSet, limits: &Limits) -> Result<Vec<SubgroupClass>> {
    if !catalog_registered(g, pi) {
        return Err(Error::UnknownCatalog(format!(
            "group of order {} with pi = {pi}",
            g.order()
        )));
    }
    if let Some((n, _)) = parabolic_family(g) {
        return hall_parabolic(g, n, pi, limits);
    }
    hall_transpose_inverse(g, pi, limits)
}

/// Conjugacy classes of π-Hall subgroups of `g`.
pub fn hall_classes(g: &Arc<Group>, pi: &PrimeSet, mode: HallMode, limits: &Limits) -> Result<Vec<SubgroupClass>> {
    match mode {
        HallMode::Exhaustive => hall_exhaustive(g, pi, limits),
        HallMode::CatalogCertified => hall_catalog(g, pi, limits),
        HallMode::Auto => {
            let eff = pi.intersection(&PrimeSet::of(g.order()));
            let small = g.order_u64().is_some_and(|o| o <= limits.exhaustive_order);
            if small || eff.primes().len() <= 1 || PrimeSet::of(g.order()).is_subset(pi) {
                hall_exhaustive(g, pi, limits)
            } else {
                hall_catalog(g, pi, limits)
            }
        }
    }
}

/// Three-valued answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tri {
    Yes,
    No,
    Indeterminate,
}

impl Tri {
    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Indeterminate => "indeterminate",
        })
    }
}

/// E_π / C_π / D_π for one group.
#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub pi: PrimeSet,
    /// `π ∩ π(G)`.
    pub effective_pi: PrimeSet,
    pub e_holds: Tri,
    pub c_holds: Tri,
    pub d_holds: Tri,
    /// Number of Hall classes, when known.
    pub k_pi: Option<usize>,
    pub classes: Vec<SubgroupClass>,
    /// For C: a re-verified transporter between the representative and a
    /// seeded random conjugate. For ¬C: none, see `non_conjugacy`.
    pub transporters: Vec<Transporter>,
    /// Why the first two classes are distinct, when `k ≥ 2`.
    pub non_conjugacy: Option<NonConjugacyCertificate>,
    /// A maximal π-subgroup that is not Hall (witness for ¬D).
    pub uncovered: Option<Subgroup>,
    /// How D was decided.
    pub d_reason: &'static str,
    pub assumptions: Vec<String>,
}

impl PropertyReport {
    /// Conclusions rest on cited results.
    pub fn is_conditional(&self) -> bool {
        !self.assumptions.is_empty()
    }
}

/// Options for [`classify_properties_with`].
#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub mode: HallMode,
    /// Decide D through a π-separable normal series when one exists.
    pub separable_shortcut: bool,
    /// Decide D at all (it needs every maximal π-subgroup class).
    pub decide_d: bool,
    pub seed: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            mode: HallMode::Auto,
            separable_shortcut: true,
            decide_d: true,
            seed: 0,
        }
    }
}

pub fn classify_properties(g: &Arc<Group>, pi: &PrimeSet, limits: &Limits) -> PropertyReport {
    classify_properties_with(g, pi, limits, &ClassifyOptions::default())
}

/// Does `g` have a normal series whose factors are π- or π′-groups?
/// Exact for groups with an element table: every chief factor of a
/// π-separable group is a π- or π′-group.
pub fn is_pi_separable(g: &Arc<Group>, pi: &PrimeSet, limits: &Limits) -> Result<bool> {
    let table = g.table(limits.exhaustive_order)?;
    let normals = subgroup::normal_subtables(&table);
    let ok = |a: usize, b: usize| {
        let idx = (b / a) as u64;
        pi.is_pi_number(idx) || pi.part_u64(idx) == 1
    };
    let mut reach = vec![false; normals.len()];
    reach[0] = true;
    for j in 1..normals.len() {
        reach[j] = (0..j).any(|i| {
            reach[i] && normals[i].order() < normals[j].order() && normals[i].is_subset(&normals[j]) && ok(normals[i].order(), normals[j].order())
        });
    }
    Ok(*reach.last().unwrap())
}

pub fn classify_properties_with(g: &Arc<Group>, pi: &PrimeSet, limits: &Limits, opts: &ClassifyOptions) -> PropertyReport {
    let primes = PrimeSet::of(g.order());
    let eff = pi.intersection(&primes);
    let mut report = PropertyReport {
        pi: pi.clone(),
        effective_pi: eff.clone(),
        e_holds: Tri::Indeterminate,
        c_holds: Tri::Indeterminate,
        d_holds: Tri::Indeterminate,
        k_pi: None,
        classes: Vec::new(),
        transporters: Vec::new(),
        non_conjugacy: None,
        uncovered: None,
        d_reason: "undecided",
        assumptions: Vec::new(),
    };
    let classes = match hall_classes(g, pi, opts.mode, limits) {
        Ok(c) => c,
        Err(_) => return report,
    };
    let k = classes.len();
    report.k_pi = Some(k);
    report.e_holds = Tri::from_bool(k >= 1);
    report.c_holds = Tri::from_bool(k == 1);
    for c in &classes {
        for a in &c.assumptions {
            if !report.assumptions.contains(a) {
                report.assumptions.push(a.clone());
            }
        }
    }
    if k == 1 {
        let rep = &classes[0].representative;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let x = g.random_element(&mut rng);
        let conj = rep.conjugated_by(&x);
        match subgroup::are_conjugate(g, rep, &conj, limits) {
            Ok(Some(t)) if t.verify() => report.transporters.push(t),
            Ok(_) => report.c_holds = Tri::Indeterminate,
            Err(_) => {}
        }
    } else if k >= 2 {
        report.non_conjugacy = subgroup::conjugacy(g, &classes[0].representative, &classes[1].representative, limits)
            .ok()
            .and_then(|c| match c {
                Conjugacy::NotConjugate(cert) => Some(cert),
                Conjugacy::Conjugate(_) => None,
            });
    }
    report.classes = classes;
    if report.c_holds != Tri::Yes {
        report.d_holds = if report.c_holds == Tri::No { Tri::No } else { Tri::Indeterminate };
        report.d_reason = "not C";
        return report;
    }
    if eff.primes().len() <= 1 || primes.is_subset(pi) {
        report.d_holds = Tri::Yes;
        report.d_reason = "sylow";
        return report;
    }
    if !opts.decide_d {
        return report;
    }
    if opts.separable_shortcut && is_pi_separable(g, &eff, limits).unwrap_or(false) {
        report.d_holds = Tri::Yes;
        report.d_reason = "pi-separable";
        return report;
    }
    match max_pi_subgroups(g, &eff, limits) {
        Ok(maximal) => {
            let target = eff.part(g.order());
            let bad = maximal.iter().find(|c| c.order() != &target);
            report.d_holds = Tri::from_bool(bad.is_none());
            report.uncovered = bad.map(|c| c.representative.clone());
            report.d_reason = "maximal pi-subgroups";
        }
        Err(_) => report.d_reason = "maximal pi-subgroups beyond limits",
    }
    report
}

/// Classes of `G`-induced Hall subgroups of `A` and their count `k_π^G(A)`.
#[derive(Clone, Debug)]
pub struct InducedClasses {
    /// One class of `A` per distinct `A`-class of `H ∩ A`, in the order of
    /// the Hall classes of `A` they belong to.
    pub classes: Vec<SubgroupClass>,
    /// Index into `all_classes_of_a` for each induced class.
    pub indices: Vec<usize>,
    pub all_classes_of_a: Vec<SubgroupClass>,
    /// Hall classes of `G` used.
    pub classes_of_g: Vec<SubgroupClass>,
}

impl InducedClasses {
    pub fn k_pi_g(&self) -> usize {
        self.classes.len()
    }

    pub fn k_pi_a(&self) -> usize {
        self.all_classes_of_a.len()
    }
}

/// Which Hall class of `A` (given by `classes`) contains `u`.
pub fn locate_class(a: &Arc<Group>, u: &Group, classes: &[SubgroupClass], limits: &Limits) -> Result<usize> {
    for (i, c) in classes.iter().enumerate() {
        if let Conjugacy::Conjugate(_) = conjugacy(a, u, &c.representative, limits)? {
            return Ok(i);
        }
    }
    Err(Error::Precondition("subgroup lies in none of the listed classes".into()))
}

/// `k_π^G(A)` for `A ⊴ G`: the `A`-classes of `H ∩ A` over Hall `H` of `G`.
pub fn induced_classes(g: &Arc<Group>, a: &Subgroup, pi: &PrimeSet, limits: &Limits) -> Result<InducedClasses> {
    if !a.parent().same_group(g) && !g.contains_group(a) {
        return Err(Error::NotInParent);
    }
    if !is_normalized_by(a, g.generators()) {
        return Err(Error::NotNormal);
    }
    let g_classes = hall_classes(g, pi, HallMode::Auto, limits)?;
    induced_from(a.group(), g_classes, pi, limits)
}

/// Same as [`induced_classes`] for a subnormal `A`, given the Hall classes
/// of the big group. Subnormality is the caller's responsibility.
pub fn induced_from(a: &Arc<Group>, g_classes: Vec<SubgroupClass>, pi: &PrimeSet, limits: &Limits) -> Result<InducedClasses> {
    let a_classes = hall_classes(a, pi, HallMode::Auto, limits)?;
    let mut indices: Vec<usize> = Vec::new();
    for c in &g_classes {
        let u = subgroup::intersection(&c.representative, a, limits)?;
        if !is_hall(a, &u, pi) {
            return Err(Error::Precondition("H ∩ A is not a Hall subgroup of A".into()));
        }
        let i = locate_class(a, &u, &a_classes, limits)?;
        if !indices.contains(&i) {
            indices.push(i);
        }
    }
    indices.sort_unstable();
    let classes = indices.iter().map(|&i| a_classes[i].clone()).collect();
    let out = InducedClasses {
        classes,
        indices,
        all_classes_of_a: a_classes,
        classes_of_g: g_classes,
    };
    debug_assert!(out.k_pi_g() <= out.k_pi_a());
    Ok(out)
}

/// The `A`-class generated by one class from each direct factor `A_i` of `A`.
pub fn class_product(factors: &[(Arc<Group>, SubgroupClass)], a: &Arc<Group>, limits: &Limits) -> Result<SubgroupClass> {
    let mut order = BigUint::one();
    let mut gens: Vec<Permutation> = Vec::new();
    for (i, (ai, _)) in factors.iter().enumerate() {
        order *= ai.order();
        for (aj, _) in &factors[i + 1..] {
            let commute = ai
                .generators()
                .iter()
                .all(|x| aj.generators().iter().all(|y| x.then(y) == y.then(x)));
            if !commute {
                return Err(Error::Precondition("factors do not commute".into()));
            }
        }
        gens.extend(ai.generators().iter().cloned());
    }
    let joined = Group::new(a.degree(), gens)?;
    if &order != a.order() || !joined.same_group(a) {
        return Err(Error::Precondition("A is not the direct product of the factors".into()));
    }
    let mut rep_gens = Vec::new();
    let mut rep_order = BigUint::one();
    let mut provenance = Provenance::Exhaustive;
    let mut assumptions = Vec::new();
    for (ai, k) in factors {
        if !ai.contains_group(&k.representative) {
            return Err(Error::NotInParent);
        }
        rep_gens.extend(k.representative.generators().iter().cloned());
        rep_order *= k.representative.order();
        if k.provenance == Provenance::CatalogCertified {
            provenance = Provenance::CatalogCertified;
        }
        assumptions.extend(k.assumptions.iter().cloned());
    }
    let rep = subgroup::generated(a, &rep_gens)?;
    debug_assert_eq!(rep.order(), &rep_order);
    let size = a.order() / subgroup::normalizer(a, &rep, limits)?.order();
    assumptions.sort();
    assumptions.dedup();
    Ok(SubgroupClass::new(rep, size, provenance, assumptions))
}

/// Is the `A`-class of `cls` mapped to itself by every element of `h`?
/// `A` is `cls.representative.parent()`.
pub fn is_class_invariant(h: &Group, cls: &SubgroupClass, limits: &Limits) -> Result<bool> {
    let a = cls.representative.parent();
    if !is_normalized_by(a, h.generators()) {
        return Err(Error::Precondition("H does not normalize A".into()));
    }
    let rep = &cls.representative;
    for x in h.generators() {
        let image = rep.conjugated_by(x);
        if let Conjugacy::NotConjugate(_) = conjugacy(a, &image, rep, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `⟨H, A⟩`, which is `HA` when `A` is normal.
pub fn product_group(h: &Group, a: &Group) -> Result<Group> {
    let gens: Vec<Permutation> = h.generators().iter().chain(a.generators()).cloned().collect();
    Group::new(h.degree(), gens)
}

/// `|A : N_A(H)|` versus `|HA : N_{HA}(H)|`: every conjugate of `H` in `HA`
/// is an `A`-conjugate exactly when these agree.
pub fn a_conjugacy_indices(ha: &Arc<Group>, a: &Arc<Group>, h: &Group, limits: &Limits) -> Result<(BigUint, BigUint)> {
    let in_a = subgroup::normalizer(a, h, limits)?;
    let in_ha = subgroup::normalizer(ha, h, limits)?;
    Ok((a.order() / in_a.order(), ha.order() / in_ha.order()))
}

/// Matrix family of a catalogued linear group, used by reports.
pub fn catalog_family(g: &Group) -> Option<(MatrixFamily, usize, u64)> {
    match g.catalog()? {
        CatalogEntry::Matrix { family, n, q } => Some((*family, *n, *q)),
        CatalogEntry::DoubledLinear { family, n, q } => Some((*family, *n, *q)),
        CatalogEntry::TransposeInverse { family, n, q, .. } => Some((*family, *n, *q)),
        _ => None,
    }
}

/// `gcd`-free check that `k'` is a π-number for every `k' ≤ k`.
pub fn all_below_are_pi_numbers(k: usize, pi: &PrimeSet) -> bool {
    (1..=k as u64).all(|j| pi.is_pi_number(j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{parse_group_spec, GroupSpec};

    fn group(spec: &str) -> Arc<Group> {
        Arc::new(parse_group_spec(spec).unwrap().build().unwrap())
    }

    fn ps(p: &[u64]) -> PrimeSet {
        PrimeSet::new(p.iter().copied()).unwrap()
    }

    #[test]
    fn prime_sets() {
        assert_eq!(ps(&[3, 2, 3]).primes(), &[2, 3]);
        assert!(PrimeSet::new([4]).is_err());
        assert_eq!(PrimeSet::parse("2, 3").unwrap(), ps(&[2, 3]));
        assert_eq!(PrimeSet::parse("").unwrap(), PrimeSet::empty());
        assert!(PrimeSet::parse("2,x").is_err());
        assert!(PrimeSet::parse("2,9").is_err());
        assert!(PrimeSet::parse("2,").is_err());
        assert_eq!(ps(&[2, 3]).to_string(), "{2,3}");
        assert_eq!(ps(&[2, 3, 5]).subsets().len(), 8);
        assert_eq!(prime_divisors(&BigUint::from(9_999_360u32)), vec![2, 3, 5, 7, 31]);
        assert_eq!(prime_divisors(&BigUint::from(1u32)), Vec::<u64>::new());
    }

    #[test]
    fn pi_parts() {
        assert_eq!(pi_part(&BigUint::from(168u32), &ps(&[2, 3])), BigUint::from(24u32));
        assert_eq!(pi_part(&BigUint::from(168u32), &PrimeSet::empty()), BigUint::one());
        assert_eq!(pi_part(&BigUint::from(9_999_360u32), &ps(&[2, 3])), BigUint::from(9216u32));
    }

    #[test]
    fn hall_classes_small() {
        let limits = Limits::default();
        let gl3 = group("GL(3,2)");
        let c = hall_classes(&gl3, &ps(&[2, 3]), HallMode::Exhaustive, &limits).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|k| k.order() == &BigUint::from(24u32) && k.class_size == BigUint::from(7u32)));
        let cat = hall_classes(&gl3, &ps(&[2, 3]), HallMode::CatalogCertified, &limits).unwrap();
        assert_eq!(cat.len(), 2);
        assert!(cat.iter().all(|k| !k.assumptions.is_empty()));
        let hat = group("Semidirect(GL(3,2),TransposeInverse)");
        assert_eq!(hat.order_u64(), Some(336));
        assert!(hall_classes(&hat, &ps(&[2, 3]), HallMode::Exhaustive, &limits).unwrap().is_empty());
        assert!(hall_classes(&hat, &ps(&[2, 3]), HallMode::CatalogCertified, &limits).unwrap().is_empty());
        let a5 = group("Alt(5)");
        let c = hall_classes(&a5, &ps(&[2, 3]), HallMode::Exhaustive, &limits).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].order(), &BigUint::from(12u32));
        assert!(hall_classes(&a5, &ps(&[3, 5]), HallMode::Exhaustive, &limits).unwrap().is_empty());
        assert!(matches!(
            hall_classes(&a5, &ps(&[2, 3]), HallMode::CatalogCertified, &limits),
            Err(Error::UnknownCatalog(_))
        ));
    }

    #[test]
    fn properties() {
        let limits = Limits::default();
        let a5 = group("Alt(5)");
        let r = classify_properties(&a5, &ps(&[2, 3]), &limits);
        assert_eq!((r.e_holds, r.c_holds, r.d_holds), (Tri::Yes, Tri::Yes, Tri::No));
        assert_eq!(r.uncovered.as_ref().unwrap().order_u64(), Some(6));
        assert!(r.transporters[0].verify());
        let r = classify_properties(&a5, &ps(&[2, 3, 5, 7]), &limits);
        assert_eq!((r.e_holds, r.c_holds, r.d_holds, r.k_pi), (Tri::Yes, Tri::Yes, Tri::Yes, Some(1)));
        let s4 = group("Sym(4)");
        let r = classify_properties(&s4, &ps(&[2, 3]), &limits);
        assert_eq!(r.d_holds, Tri::Yes);
        let r = classify_properties(&s4, &ps(&[2, 5]), &limits);
        assert_eq!(r.d_holds, Tri::Yes);
        let gl3 = group("GL(3,2)");
        let r = classify_properties(&gl3, &ps(&[2, 3]), &limits);
        assert_eq!((r.e_holds, r.c_holds, r.d_holds, r.k_pi), (Tri::Yes, Tri::No, Tri::No, Some(2)));
        assert!(r.non_conjugacy.is_some());
    }

    #[test]
    fn separability() {
        let limits = Limits::default();
        assert!(is_pi_separable(&group("Sym(4)"), &ps(&[2]), &limits).unwrap());
        assert!(!is_pi_separable(&group("Alt(5)"), &ps(&[2]), &limits).unwrap());
        assert!(is_pi_separable(&group("Alt(5)"), &ps(&[2, 3, 5]), &limits).unwrap());
        assert!(is_pi_separable(&group("Direct(Alt(5),Cyclic(7))"), &ps(&[7]), &limits).unwrap());
    }

    #[test]
    fn induced_and_invariance() {
        let limits = Limits::default();
        let s4 = group("Sym(4)");
        let a4 = Subgroup::new(s4.clone(), parse_group_spec("Alt(4)").unwrap().build().unwrap()).unwrap();
        let ind = induced_classes(&s4, &a4, &ps(&[2]), &limits).unwrap();
        assert_eq!(ind.k_pi_g(), 1);
        assert_eq!(ind.classes[0].order(), &BigUint::from(4u32));
        assert!(is_class_invariant(&s4, &ind.classes[0], &limits).unwrap());
        let whole = Subgroup::whole(&s4);
        let ind = induced_classes(&s4, &whole, &ps(&[2, 3]), &limits).unwrap();
        assert_eq!(ind.k_pi_g(), ind.k_pi_a());
        let c3 = Subgroup::new(s4.clone(), Group::new(4, vec![Permutation::from_cycles("(1 2 3)", 4).unwrap()]).unwrap()).unwrap();
        assert!(matches!(induced_classes(&s4, &c3, &ps(&[2]), &limits), Err(Error::NotNormal)));
    }

    #[test]
    fn products_of_classes() {
        let limits = Limits::default();
        let g = Arc::new(GroupSpec::direct(GroupSpec::Sym(3), GroupSpec::Sym(3)).build().unwrap());
        let Some(CatalogEntry::Direct { factors }) = g.catalog() else { panic!() };
        let pi = ps(&[2]);
        let mut chosen = Vec::new();
        for f in factors {
            let c = hall_classes(f, &pi, HallMode::Exhaustive, &limits).unwrap();
            chosen.push((f.clone(), c[0].clone()));
        }
        let prod = class_product(&chosen, &g, &limits).unwrap();
        assert_eq!(prod.order(), &BigUint::from(4u32));
        assert_eq!(prod.class_size, BigUint::from(9u32));
        let single = class_product(&chosen[..1], &chosen[0].0, &limits).unwrap();
        assert_eq!(single.order(), chosen[0].1.order());
        assert!(class_product(&chosen[..1], &g, &limits).is_err());
    }
}
