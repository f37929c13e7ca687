//! Command-line front end. [`run`] takes the argument vector and returns the
//! exit status together with everything that would go to stdout and stderr,
//! so the binary is a thin wrapper and the whole surface is testable in-process.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::kgb::{
    ascent_consistency_check, fixtures, load_kgb_file, minimal_w_uniqueness_check, save_kgb, twisted_involutions,
    KgbError, KgbGraph,
};
use crate::kgp::KgpQuotient;
use crate::orbit_poset::{from_parabolic, from_weyl, OrbitGraph};
use crate::parabolic::enumerate_cosets;
use crate::root_datum::{parse_root_datum, CartanSpec, Isogeny, ParabolicSubset, RootDatum};
use crate::weyl::{WeylGroup, Word};

#[derive(Debug, Parser)]
#[command(name = "bruhat", about = "Bruhat order on orbit sets of the flag variety")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct DatumArgs {
    /// Built-in Cartan type such as A2, B2, G2 or A1xA1.
    #[arg(long = "type")]
    ty: Option<String>,
    /// Use the adjoint isogeny instead of the simply connected one.
    #[arg(long)]
    adjoint: bool,
    /// `flip` applies the diagram involution, `id` keeps the identity.
    #[arg(long)]
    twist: Option<String>,
    /// Read the root datum from a `rootdatum v1` file.
    #[arg(long)]
    datum: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the Weyl group, or its twisted involutions.
    Enumerate {
        #[command(flatten)]
        datum: DatumArgs,
        /// Only the twisted involutions
        #[arg(long)]
        twisted: bool,
    },
    /// Compare two elements (words) or two KGB nodes (ids).
    Order {
        #[command(flatten)]
        datum: DatumArgs,
        /// Compare nodes of this kgbgraph file instead of Weyl group elements
        #[arg(long)]
        kgb: Option<PathBuf>,
        /// Comma-separated 1-based word, or a node id with --kgb
        u: String,
        /// Second operand, same syntax as U
        v: String,
    },
    /// Print the canonical reduced word of a product of simple reflections.
    Reduce {
        #[command(flatten)]
        datum: DatumArgs,
        /// Comma-separated 1-based simple reflections, empty or `e` for the identity
        word: String,
    },
    /// List the cosets of a parabolic subgroup.
    Cosets {
        #[command(flatten)]
        datum: DatumArgs,
        /// Comma-separated 1-based simple roots generating the Levi factor
        #[arg(long, default_value = "")]
        parabolic: String,
    },
    /// List the I-equivalence classes of a KGB graph.
    Classes {
        /// A kgbgraph file
        #[arg(long)]
        kgb: PathBuf,
        /// Comma-separated 1-based simple roots generating the Levi factor
        #[arg(long, default_value = "")]
        parabolic: String,
    },
    /// Cover relations between the I-equivalence classes.
    KgpOrder {
        /// A kgbgraph file
        #[arg(long)]
        kgb: PathBuf,
        /// Comma-separated 1-based simple roots generating the Levi factor
        #[arg(long, default_value = "")]
        parabolic: String,
    },
    /// Check a rootdatum, orbitgraph or kgbgraph file.
    Validate {
        /// File to check; the format is read from its header line
        file: PathBuf,
    },
    /// Emit the Hasse diagram in DOT syntax.
    Hasse {
        #[command(flatten)]
        datum: DatumArgs,
        /// Draw the poset of cosets for this Levi subset (needs --type or --datum)
        #[arg(long)]
        parabolic: Option<String>,
        /// Draw the orbit poset of a kgbgraph file
        #[arg(long)]
        kgb: Option<PathBuf>,
        /// Draw an orbitgraph file
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Write the built-in KGB fixtures.
    Fixtures {
        /// Output directory
        #[arg(long, default_value = "fixtures")]
        out: PathBuf,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one invocation. `args` excludes the program name.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("bruhat")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(CliError::Usage(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("usage error: {msg}\n") },
        Err(CliError::Domain(msg)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

fn dispatch(cmd: Command) -> Result<String, CliError> {
    match cmd {
        Command::Enumerate { datum, twisted } => enumerate(&datum, twisted),
        Command::Order { datum, kgb, u, v } => order(&datum, kgb.as_deref(), &u, &v),
        Command::Reduce { datum, word } => {
            let group = WeylGroup::new(datum.resolve()?);
            let w = parse_word(&group, &word)?;
            Ok(format!("{}\n", group.format(&w)))
        }
        Command::Cosets { datum, parabolic } => cosets(&datum, &parabolic),
        Command::Classes { kgb, parabolic } => classes(&kgb, &parabolic),
        Command::KgpOrder { kgb, parabolic } => kgp_order(&kgb, &parabolic),
        Command::Validate { file } => validate(&file),
        Command::Hasse { datum, parabolic, kgb, graph } => hasse(&datum, parabolic.as_deref(), kgb.as_deref(), graph.as_deref()),
        Command::Fixtures { out } => write_fixtures(&out),
    }
}

impl DatumArgs {
    fn resolve(&self) -> Result<RootDatum, CliError> {
        let base = match (&self.ty, &self.datum) {
            (Some(_), Some(_)) => return Err(usage("give either --type or --datum, not both")),
            (None, None) => return Err(usage("a root datum is required (--type or --datum)")),
            (Some(t), None) => {
                let cartan = CartanSpec::from_type(t).map_err(|e| usage(format!("--type {t}: {e}")))?;
                let isogeny = if self.adjoint { Isogeny::Adjoint } else { Isogeny::SimplyConnected };
                RootDatum::new(cartan, isogeny, None).map_err(|e| usage(e.to_string()))?
            }
            (None, Some(path)) => {
                if self.adjoint {
                    return Err(usage("--adjoint only applies to --type"));
                }
                parse_root_datum(&read(path)?).map_err(|e| CliError::Domain(format!("ParseError: {e}")))?
            }
        };
        match self.twist.as_deref() {
            None | Some("id") => Ok(base),
            Some("flip") => {
                let flip = base.diagram_flip().ok_or_else(|| usage("this type has no diagram involution"))?;
                base.with_twist(flip).map_err(|e| usage(e.to_string()))
            }
            Some(other) => Err(usage(format!("unknown twist `{other}` (expected id or flip)"))),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn parse_word(group: &WeylGroup, s: &str) -> Result<crate::weyl::WeylElt, CliError> {
    let word = Word::parse(s).map_err(|e| usage(e.to_string()))?;
    group.from_word(&word).map_err(|e| usage(format!("`{s}`: {e}")))
}

fn parse_subset(s: &str, rank: usize) -> Result<ParabolicSubset, CliError> {
    ParabolicSubset::parse(s.trim_matches(|c| c == '{' || c == '}'), rank).map_err(|e| usage(format!("--parabolic: {e}")))
}

fn load_kgb(path: &Path) -> Result<KgbGraph, CliError> {
    if !path.exists() {
        return Err(usage(format!("no such file: {}", path.display())));
    }
    load_kgb_file(path).map_err(kgb_error)
}

fn kgb_error(e: KgbError) -> CliError {
    match e {
        KgbError::AxiomViolation(vs) => CliError::Domain(violation_line(vs[0].axiom(), &vs[0], vs.len())),
        KgbError::Io { .. } => usage(e.to_string()),
        KgbError::Parse { .. } | KgbError::RootDatum(_) | KgbError::Weyl(_) => {
            CliError::Domain(format!("ParseError: {e}"))
        }
        other => CliError::Domain(other.to_string()),
    }
}

fn violation_line(axiom: &str, first: &dyn std::fmt::Display, count: usize) -> String {
    let first = first.to_string();
    let first = first.strip_prefix(&format!("{axiom}: ")).unwrap_or(&first).to_string();
    format!("{axiom}: {first} ({count} violation{})", if count == 1 { "" } else { "s" })
}

fn comparison(leq: bool, geq: bool) -> &'static str {
    match (leq, geq) {
        (true, true) => "equal",
        (true, false) => "leq",
        (false, true) => "geq",
        (false, false) => "incomparable",
    }
}

fn enumerate(datum: &DatumArgs, twisted: bool) -> Result<String, CliError> {
    let d = datum.resolve()?;
    let group = WeylGroup::new(d.clone());
    let elements = if twisted { twisted_involutions(&d) } else { group.enumerate() };
    let mut out = String::new();
    for w in &elements {
        let _ = writeln!(out, "{} len={}", group.format(w), group.length(w));
    }
    Ok(out)
}

fn order(datum: &DatumArgs, kgb: Option<&Path>, u: &str, v: &str) -> Result<String, CliError> {
    if let Some(path) = kgb {
        if datum.ty.is_some() || datum.datum.is_some() {
            return Err(usage("--kgb takes node ids and no root datum"));
        }
        let g = load_kgb(path)?;
        let node = |s: &str| -> Result<usize, CliError> {
            let k: usize = s.parse().map_err(|_| usage(format!("bad node id `{s}`")))?;
            if k >= g.node_count() {
                return Err(usage(format!("node {k} out of range")));
            }
            Ok(k)
        };
        let (a, b) = (node(u)?, node(v)?);
        let p = g.orbit_graph();
        return Ok(format!("{}\n", comparison(p.poset_leq(a, b), p.poset_leq(b, a))));
    }
    let group = WeylGroup::new(datum.resolve()?);
    let (a, b) = (parse_word(&group, u)?, parse_word(&group, v)?);
    let leq = group.bruhat_leq(&a, &b).map_err(|e| CliError::Domain(e.to_string()))?;
    let geq = group.bruhat_leq(&b, &a).map_err(|e| CliError::Domain(e.to_string()))?;
    Ok(format!("{}\n", comparison(leq, geq)))
}

fn cosets(datum: &DatumArgs, parabolic: &str) -> Result<String, CliError> {
    let d = datum.resolve()?;
    let subset = parse_subset(parabolic, d.rank())?;
    let group = WeylGroup::new(d);
    let mut out = String::new();
    for c in enumerate_cosets(&group, &subset) {
        let _ = writeln!(
            out,
            "min={} max={} plen={}",
            group.format(&c.min_rep),
            group.format(&c.max_rep),
            c.p_length(&group)
        );
    }
    Ok(out)
}

fn join(ids: &[usize]) -> String {
    ids.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn classes(kgb: &Path, parabolic: &str) -> Result<String, CliError> {
    let g = load_kgb(kgb)?;
    let subset = parse_subset(parabolic, g.rank())?;
    let q = KgpQuotient::new(&g, &subset);
    let mut out = String::new();
    for (k, c) in q.classes.iter().enumerate() {
        let _ = writeln!(out, "class {}: top={} members={}", k, c.top, join(&c.members));
    }
    Ok(out)
}

fn kgp_order(kgb: &Path, parabolic: &str) -> Result<String, CliError> {
    let g = load_kgb(kgb)?;
    let subset = parse_subset(parabolic, g.rank())?;
    let q = KgpQuotient::new(&g, &subset);
    let mut out = String::new();
    for (a, b) in q.hasse(&g) {
        let _ = writeln!(out, "{a} -> {b}");
    }
    Ok(out)
}

fn orbit_checks(p: &OrbitGraph) -> Result<(), CliError> {
    let vs = p.validate();
    if let Some(first) = vs.first() {
        return Err(CliError::Domain(violation_line(first.axiom(), first, vs.len())));
    }
    let z = p.property_z_check();
    if let Some(first) = z.first() {
        return Err(CliError::Domain(violation_line("PropertyZ", first, z.len())));
    }
    Ok(())
}

fn validate(file: &Path) -> Result<String, CliError> {
    let text = read(file)?;
    let header = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).find(|l| !l.is_empty()).unwrap_or("");
    let nodes = match header {
        "kgbgraph v1" => {
            let g = load_kgb(file)?;
            orbit_checks(g.orbit_graph())?;
            let asc = ascent_consistency_check(&g);
            if let Some(first) = asc.first() {
                return Err(CliError::Domain(violation_line("AscentConsistency", first, asc.len())));
            }
            let mw = minimal_w_uniqueness_check(&g);
            if let Some(first) = mw.first() {
                return Err(CliError::Domain(violation_line("MinimalWUniqueness", first, mw.len())));
            }
            g.node_count()
        }
        "orbitgraph v1" => {
            let p = OrbitGraph::from_text(&text).map_err(|e| CliError::Domain(format!("ParseError: {e}")))?;
            orbit_checks(&p)?;
            p.node_count()
        }
        "rootdatum v1" => {
            let d = parse_root_datum(&text).map_err(|e| CliError::Domain(format!("ParseError: {e}")))?;
            let p = from_weyl(&d);
            orbit_checks(&p)?;
            p.node_count()
        }
        _ => return Err(CliError::Domain(format!("ParseError: unrecognised header `{header}`"))),
    };
    Ok(format!("ok: {nodes} nodes, 0 violations\n"))
}

fn hasse(datum: &DatumArgs, parabolic: Option<&str>, kgb: Option<&Path>, graph: Option<&Path>) -> Result<String, CliError> {
    let has_datum = datum.ty.is_some() || datum.datum.is_some();
    let sources = usize::from(has_datum) + usize::from(kgb.is_some()) + usize::from(graph.is_some());
    if sources != 1 {
        return Err(usage("give exactly one of --type/--datum, --kgb, --graph"));
    }
    if parabolic.is_some() && !has_datum {
        return Err(usage("--parabolic applies to --type/--datum"));
    }
    let p = if let Some(path) = kgb {
        load_kgb(path)?.to_orbit_poset()
    } else if let Some(path) = graph {
        let p = OrbitGraph::from_text(&read(path)?).map_err(|e| CliError::Domain(format!("ParseError: {e}")))?;
        orbit_checks(&p)?;
        p
    } else {
        let d = datum.resolve()?;
        match parabolic {
            Some(s) => from_parabolic(&d, &parse_subset(s, d.rank())?),
            None => from_weyl(&d),
        }
    };
    Ok(p.to_dot())
}

fn write_fixtures(out: &Path) -> Result<String, CliError> {
    std::fs::create_dir_all(out).map_err(|e| usage(format!("cannot create {}: {e}", out.display())))?;
    let mut listing = String::new();
    for (name, g) in fixtures() {
        let path = out.join(format!("{name}.kgb"));
        std::fs::write(&path, save_kgb(&g)).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
        let _ = writeln!(listing, "{} {} nodes", path.display(), g.node_count());
    }
    Ok(listing)
}
