//! The `hallpi` command line: argument parsing, dispatch, report rendering
//! and the on-disk result cache.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::constructors::{parse_group_spec, GroupSpec};
use crate::error::Error;
use crate::group::Group;
use crate::hall::{
    classify_properties_with, hall_classes, induced_classes, ClassifyOptions, HallMode, PrimeSet, SubgroupClass, Tri,
};
use crate::limits::Limits;
use crate::subgroup::Subgroup;
use crate::verify::{escape, run_suite, sweep, Suite, SuiteOptions};

/// Hall π-subgroups of finite permutation groups: counting, properties and
/// verification suites.
#[derive(Parser, Debug)]
#[command(name = "hallpi", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Group spec, e.g. "GL(3,2)" or "Semidirect(GL(5,2),TransposeInverse)".
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Comma-separated primes, e.g. "2,3".
    #[arg(long, global = true)]
    pub pi: Option<String>,
    /// How Hall subgroups are found.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest group order taken from the catalog by suites and sweeps.
    #[arg(long, global = true, default_value_t = 2000)]
    pub max_order: u64,
    /// Node cap for a single backtrack search.
    #[arg(long, global = true)]
    pub node_cap: Option<u64>,
    /// Worker threads for suites and sweeps (0: one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Order, degree, base and generators of a group.
    Info,
    /// Conjugacy classes of Hall π-subgroups.
    Hall,
    /// Whether the group lies in E_π, C_π and D_π.
    Property,
    /// Classes of Hall subgroups of a normal subgroup induced by the group.
    Induced {
        /// Normal subgroup, as a spec of the same degree, or any spec naming
        /// the designated normal subgroup of the group's construction.
        #[arg(long)]
        normal: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
    },
    /// Classify every catalog group up to --max-order for every π.
    Sweep,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Exhaustive,
    Catalog,
    Auto,
}

impl From<ModeArg> for HallMode {
    fn from(m: ModeArg) -> HallMode {
        match m {
            ModeArg::Exhaustive => HallMode::Exhaustive,
            ModeArg::Catalog => HallMode::CatalogCertified,
            ModeArg::Auto => HallMode::Auto,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteArg {
    Example1,
    Example2,
    Theorem1,
    Theorem2,
    Lemmas,
    Conjecture,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Example1 => Suite::Example1,
            SuiteArg::Example2 => Suite::Example2,
            SuiteArg::Theorem1 => Suite::Theorem1,
            SuiteArg::Theorem2 => Suite::Theorem2,
            SuiteArg::Lemmas => Suite::Lemmas,
            SuiteArg::Conjecture => Suite::Conjecture,
        }
    }
}

/// Output of one command and its exit code.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, code: 0 }
    }
}

/// Exit code for a library error: 3 when a cap or budget left the answer
/// undecided, 2 for bad input.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } | Error::BudgetExhausted { .. } | Error::UnknownCatalog(_) => 3,
        _ => 2,
    }
}

/// Parses `argv` (program name first), runs the command, writes the report
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            error_code(&e)
        }
    }
}

/// Runs with the process arguments on stdout and stderr.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_command(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn limits(opts: &GlobalOpts) -> Limits {
    let l = Limits::default();
    match opts.node_cap {
        Some(c) => l.with_node_cap(c),
        None => l,
    }
}

fn missing(flag: &str) -> Error {
    Error::Precondition(format!("--{flag} is required for this command"))
}

fn execute(cli: &Cli) -> crate::Result<Outcome> {
    let opts = &cli.opts;
    let spec = opts.group.as_deref().map(parse_group_spec).transpose()?;
    let pi = opts.pi.as_deref().map(PrimeSet::parse).transpose()?;
    let cache = Cache::new(opts);
    let key = cache_key(cli, spec.as_ref(), pi.as_ref());
    if let Some(hit) = cache.as_ref().and_then(|c| c.load(&key)) {
        return Ok(hit);
    }
    let limits = limits(opts);
    let outcome = match &cli.command {
        Command::Info => {
            let g = build(&spec, &limits)?;
            info(&g, spec.as_ref().expect("built"), opts.format)
        }
        Command::Hall => {
            let g = build(&spec, &limits)?;
            let pi = pi.ok_or_else(|| missing("pi"))?;
            hall(&g, spec.as_ref().expect("built"), &pi, opts, &limits)?
        }
        Command::Property => {
            let g = build(&spec, &limits)?;
            let pi = pi.ok_or_else(|| missing("pi"))?;
            property(&g, spec.as_ref().expect("built"), &pi, opts, &limits)
        }
        Command::Induced { normal } => {
            let g = build(&spec, &limits)?;
            let pi = pi.ok_or_else(|| missing("pi"))?;
            induced(&g, spec.as_ref().expect("built"), normal, &pi, opts, &limits)?
        }
        Command::Verify { suite } => {
            let report = run_suite((*suite).into(), &suite_options(opts), &limits);
            render_report(&report, opts.format)
        }
        Command::Sweep => render_report(&sweep(&suite_options(opts), &limits), opts.format),
    };
    if let Some(c) = &cache {
        c.store(&key, &outcome);
    }
    Ok(outcome)
}

fn build(spec: &Option<GroupSpec>, limits: &Limits) -> crate::Result<Arc<Group>> {
    match spec {
        Some(s) => Ok(Arc::new(s.build_with(limits)?)),
        None => Err(missing("group")),
    }
}

fn suite_options(opts: &GlobalOpts) -> SuiteOptions {
    SuiteOptions {
        max_order: opts.max_order,
        seed: opts.seed,
        jobs: opts.jobs,
        ..SuiteOptions::default()
    }
}

fn render_report(report: &crate::verify::Report, format: Format) -> Outcome {
    Outcome {
        text: match format {
            Format::Machine => report.to_machine(),
            Format::Text => report.to_text(),
        },
        code: report.exit_code(),
    }
}

fn gens_text(g: &Group) -> String {
    g.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

fn signature_text(sig: &[Vec<usize>]) -> String {
    let parts: Vec<String> = sig
        .iter()
        .map(|s| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        .collect();
    format!("[{}]", parts.join("|"))
}

fn info(g: &Group, spec: &GroupSpec, format: Format) -> Outcome {
    let orbits: Vec<usize> = g.orbits().iter().map(|o| o.len()).collect();
    let base: Vec<String> = g.base().iter().map(|b| (b + 1).to_string()).collect();
    let primes: Vec<String> = PrimeSet::of(g.order()).primes().iter().map(|p| p.to_string()).collect();
    let normal = g
        .catalog()
        .and_then(|c| c.designated_normal())
        .map(|n| n.order().to_string());
    let text = match format {
        Format::Machine => format!(
            "command=info group={} degree={} order={} primes={} base={} orbits={} designated_normal_order={} generators={}\n",
            escape(&spec.to_string()),
            g.degree(),
            g.order(),
            escape(&primes.join(",")),
            escape(&base.join(",")),
            escape(&orbits.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(",")),
            escape(normal.as_deref().unwrap_or("none")),
            escape(&gens_text(g)),
        ),
        Format::Text => {
            let mut s = format!("{spec}\n");
            let _ = writeln!(s, "  degree     {}", g.degree());
            let _ = writeln!(s, "  order      {}", g.order());
            let _ = writeln!(s, "  primes     {}", primes.join(", "));
            let _ = writeln!(s, "  base       {}", base.join(" "));
            let _ = writeln!(s, "  orbits     {orbits:?}");
            if let Some(n) = normal {
                let _ = writeln!(s, "  designated normal subgroup of order {n}");
            }
            let _ = writeln!(s, "  generators {}", gens_text(g));
            s
        }
    };
    Outcome::ok(text)
}

fn class_lines(s: &mut String, classes: &[SubgroupClass], format: Format, prefix: &str) {
    for (i, c) in classes.iter().enumerate() {
        match format {
            Format::Machine => {
                let _ = writeln!(
                    s,
                    "{prefix}class={i} order={} class_size={} provenance={} orbit_signature={} assumptions={} generators={}",
                    c.order(),
                    c.class_size,
                    c.provenance,
                    escape(&signature_text(&c.orbit_signature)),
                    escape(&assumptions_text(&c.assumptions)),
                    escape(&gens_text(&c.representative)),
                );
            }
            Format::Text => {
                let _ = writeln!(
                    s,
                    "  {prefix}class {i}: order {}, {} conjugates, {}, orbit signature {}",
                    c.order(),
                    c.class_size,
                    c.provenance,
                    signature_text(&c.orbit_signature)
                );
                let _ = writeln!(s, "    generators {}", gens_text(&c.representative));
                for a in &c.assumptions {
                    let _ = writeln!(s, "    assumes {a}");
                }
            }
        }
    }
}

fn assumptions_text(a: &[String]) -> String {
    if a.is_empty() {
        "none".to_string()
    } else {
        a.join(";")
    }
}

fn hall(g: &Arc<Group>, spec: &GroupSpec, pi: &PrimeSet, opts: &GlobalOpts, limits: &Limits) -> crate::Result<Outcome> {
    let classes = hall_classes(g, pi, opts.mode.into(), limits)?;
    let mut s = String::new();
    match opts.format {
        Format::Machine => {
            let _ = writeln!(
                s,
                "command=hall group={} pi={} mode={:?} order={} k={}",
                escape(&spec.to_string()),
                pi,
                opts.mode,
                g.order(),
                classes.len()
            );
        }
        Format::Text => {
            let _ = writeln!(s, "{spec}  order {}  pi = {pi}", g.order());
            let _ = writeln!(s, "  {} class(es) of Hall pi-subgroups", classes.len());
        }
    }
    class_lines(&mut s, &classes, opts.format, "");
    Ok(Outcome::ok(s))
}

fn property(g: &Arc<Group>, spec: &GroupSpec, pi: &PrimeSet, opts: &GlobalOpts, limits: &Limits) -> Outcome {
    let o = ClassifyOptions {
        mode: opts.mode.into(),
        seed: opts.seed,
        ..ClassifyOptions::default()
    };
    let r = classify_properties_with(g, pi, limits, &o);
    let k = r.k_pi.map_or("?".to_string(), |k| k.to_string());
    let mut s = String::new();
    match opts.format {
        Format::Machine => {
            let _ = writeln!(
                s,
                "command=property group={} pi={} effective_pi={} E={} C={} D={} k={k} d_reason={} conditional={} assumptions={}",
                escape(&spec.to_string()),
                r.pi,
                r.effective_pi,
                r.e_holds,
                r.c_holds,
                r.d_holds,
                escape(r.d_reason),
                r.is_conditional(),
                escape(&assumptions_text(&r.assumptions)),
            );
        }
        Format::Text => {
            let _ = writeln!(s, "{spec}  order {}  pi = {}", g.order(), r.pi);
            let _ = writeln!(s, "  E_pi  {}", r.e_holds);
            let _ = writeln!(s, "  C_pi  {}", r.c_holds);
            let _ = writeln!(s, "  D_pi  {}  ({})", r.d_holds, r.d_reason);
            let _ = writeln!(s, "  k_pi  {k}");
            if let Some(c) = &r.non_conjugacy {
                let _ = writeln!(s, "  classes 0 and 1 differ: {c:?}");
            }
            if let Some(u) = &r.uncovered {
                let _ = writeln!(s, "  maximal pi-subgroup of order {} is not Hall", u.order());
            }
            if r.is_conditional() {
                let _ = writeln!(s, "  conditional on: {}", r.assumptions.join("; "));
            }
        }
    }
    let undecided = [r.e_holds, r.c_holds, r.d_holds].iter().all(|t| *t == Tri::Indeterminate);
    Outcome {
        text: s,
        code: if undecided { 3 } else { 0 },
    }
}

/// The normal subgroup named by `--normal`: the built spec itself when it
/// has the group's degree, otherwise the construction's designated normal
/// subgroup of the same order.
fn normal_subgroup(g: &Arc<Group>, normal: &str, limits: &Limits) -> crate::Result<Subgroup> {
    let a = parse_group_spec(normal)?.build_with(limits)?;
    if a.degree() == g.degree() {
        let s = Subgroup::new(g.clone(), a)?;
        if !s.is_normal() {
            return Err(Error::NotNormal);
        }
        return Ok(s);
    }
    match g.catalog().and_then(|c| c.designated_normal()) {
        Some(n) if n.order() == a.order() => Ok(Subgroup::new(g.clone(), (*n).clone())?),
        _ => Err(Error::DegreeMismatch {
            expected: g.degree(),
            found: a.degree(),
        }),
    }
}

fn induced(
    g: &Arc<Group>,
    spec: &GroupSpec,
    normal: &str,
    pi: &PrimeSet,
    opts: &GlobalOpts,
    limits: &Limits,
) -> crate::Result<Outcome> {
    let a = normal_subgroup(g, normal, limits)?;
    let ind = induced_classes(g, &a, pi, limits)?;
    let mut s = String::new();
    match opts.format {
        Format::Machine => {
            let _ = writeln!(
                s,
                "command=induced group={} normal={} pi={} k_G={} k_G_A={} k_A={} indices={}",
                escape(&spec.to_string()),
                escape(normal),
                pi,
                ind.classes_of_g.len(),
                ind.k_pi_g(),
                ind.k_pi_a(),
                escape(&format!("{:?}", ind.indices)),
            );
        }
        Format::Text => {
            let _ = writeln!(s, "{spec}  A = {normal} (order {})  pi = {pi}", a.order());
            let _ = writeln!(s, "  k_pi(G)   {}", ind.classes_of_g.len());
            let _ = writeln!(s, "  k_pi^G(A) {}", ind.k_pi_g());
            let _ = writeln!(s, "  k_pi(A)   {}", ind.k_pi_a());
        }
    }
    class_lines(&mut s, &ind.classes, opts.format, "induced_");
    Ok(Outcome::ok(s))
}

fn cache_key(cli: &Cli, spec: Option<&GroupSpec>, pi: Option<&PrimeSet>) -> String {
    let o = &cli.opts;
    let mut h = Sha256::new();
    let parts = [
        format!("{:?}", cli.command),
        spec.map(|s| s.to_string()).unwrap_or_default(),
        pi.map(|p| p.to_string()).unwrap_or_default(),
        format!("{:?}", o.mode),
        o.seed.to_string(),
        format!("{:?}", o.format),
        o.max_order.to_string(),
        format!("{:?}", o.node_cap),
        env!("CARGO_PKG_VERSION").to_string(),
    ];
    for p in parts {
        h.update(p.as_bytes());
        h.update([0u8]);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Machine-format outputs stored by key. Text output carries timings and is
/// never cached.
struct Cache {
    dir: PathBuf,
}

impl Cache {
    fn new(opts: &GlobalOpts) -> Option<Cache> {
        if opts.no_cache || opts.format != Format::Machine {
            return None;
        }
        let dir = std::env::var_os("HALLPI_CACHE_DIR")
            .map(PathBuf::from)
            .unwrap_or_else(|| std::env::temp_dir().join("hallpi-cache"));
        Some(Cache { dir })
    }

    fn load(&self, key: &str) -> Option<Outcome> {
        let raw = std::fs::read_to_string(self.dir.join(key)).ok()?;
        let (head, text) = raw.split_once('\n')?;
        let code = head.strip_prefix("exit=")?.parse().ok()?;
        Some(Outcome {
            text: text.to_string(),
            code,
        })
    }

    fn store(&self, key: &str, o: &Outcome) {
        if std::fs::create_dir_all(&self.dir).is_err() {
            return;
        }
        let tmp = self.dir.join(format!("{key}.tmp{}", std::process::id()));
        if std::fs::write(&tmp, format!("exit={}\n{}", o.code, o.text)).is_ok() {
            let _ = std::fs::rename(&tmp, self.dir.join(key));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("hallpi").chain(args.iter().copied());
        let code = run_command(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(&["hall", "--grup", "X"]).0, 2);
        assert_eq!(run(&["hall", "--group", "Sym(-1)", "--pi", "2"]).0, 2);
        assert_eq!(run(&["hall", "--group", "Sym(4)", "--pi", "4"]).0, 2);
        assert_eq!(run(&["hall", "--group", "Sym(4)"]).0, 2);
        assert_eq!(run(&["frobnicate"]).0, 2);
    }

    #[test]
    fn help_lists_every_flag() {
        let (code, out, _) = run(&["--help"]);
        assert_eq!(code, 0);
        for flag in [
            "--group", "--pi", "--mode", "--format", "--seed", "--max-order", "--node-cap", "--jobs", "--no-cache",
        ] {
            assert!(out.contains(flag), "{flag} missing from help");
        }
        for cmd in ["info", "hall", "property", "induced", "verify", "sweep"] {
            assert!(out.contains(cmd));
        }
    }

    #[test]
    fn hall_and_property() {
        let (code, out, _) = run(&["hall", "--group", "GL(3,2)", "--pi", "2,3", "--format", "machine", "--no-cache"]);
        assert_eq!(code, 0);
        assert!(out.lines().next().unwrap().ends_with("k=2"));
        assert_eq!(out.lines().filter(|l| l.contains("order=24")).count(), 2);
        let (code, out, _) = run(&["property", "--group", "Sym(4)", "--pi", "2,3", "--no-cache"]);
        assert_eq!(code, 0);
        assert!(out.contains("C_pi  yes"));
    }

    #[test]
    fn induced_uses_the_designated_normal_subgroup() {
        let args = [
            "induced",
            "--group",
            "Semidirect(GL(3,2),TransposeInverse)",
            "--normal",
            "GL(3,2)",
            "--pi",
            "2,3",
            "--format",
            "machine",
            "--no-cache",
        ];
        let (code, out, err) = run(&args);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains("k_G=0") && out.contains("k_A=2"), "{out}");
    }
}
