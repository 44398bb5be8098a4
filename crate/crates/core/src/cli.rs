//! The `mhs-relations` command line tool.
//!
//! Payload goes to `out`, diagnostics to `err` as a single `error[kind]: message`
//! line. Exit status is 0 on success, 2 when the enumeration limit is hit and 1 for
//! every other failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::closed_forms::{cy_table, scan_weight3, CyTableEntry};
use crate::diamond::{enumerate_admissible, HodgeDiamond, HodgeVector, DEFAULT_LIMIT};
use crate::error::Error;
use crate::geometry::{hodge_vector, Family, FamilySpec};
use crate::relations::{
    analyze, build_circ_graph, build_graph, build_weak_graph, check_maximal_saturated, suspension_check, Analysis,
    RelationEngine, RelationGraph,
};

#[derive(Parser, Debug)]
#[command(name = "mhs-relations", version, about = "Polarized relations between Hodge diamonds")]
struct Cli {
    /// Maximum number of diamonds any single enumeration may produce.
    #[arg(long, global = true, default_value_t = DEFAULT_LIMIT)]
    limit: usize,

    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Full,
    Weak,
    WeakCirc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Hypersurface,
    DoubleCover,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the admissible diamonds for a Hodge vector.
    Enumerate {
        #[arg(long)]
        hodge: HodgeVector,
    },
    /// Decide whether the diamond in FROM degenerates to the one in TO.
    Relate {
        #[arg(long)]
        hodge: HodgeVector,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
    },
    /// Build R(h), R_k(h) or R°_k(h).
    Graph {
        #[arg(long)]
        hodge: HodgeVector,
        #[arg(long, value_enum, default_value_t = KindArg::Full)]
        kind: KindArg,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Order-theoretic analysis of a relation graph, built or read from JSON.
    Analyze {
        #[arg(long, required_unless_present = "graph", conflicts_with = "graph")]
        hodge: Option<HodgeVector>,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = KindArg::Full)]
        kind: KindArg,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Maximality and saturation of R°_0(h), directly and from the bounds.
    Saturation {
        #[arg(long)]
        hodge: HodgeVector,
    },
    /// Compare R°_{k-1}(inner) with R°_k((h0, inner, h0)).
    Suspension {
        #[arg(long)]
        inner: HodgeVector,
        #[arg(long)]
        h0: u64,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Check the weight 3 inequality system against the engine.
    #[command(name = "scan-weight3")]
    ScanWeight3 {
        #[arg(long)]
        max_h0: u64,
        #[arg(long)]
        max_h1: u64,
    },
    /// Hodge numbers of a hypersurface or double cover family.
    HodgeNumbers {
        #[arg(value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
    /// The I/II/III/IV relation table for h = (1, h1, h1, 1).
    CyTable {
        #[arg(long)]
        h1: u64,
    },
}

/// Failure carried to the exit status.
struct Failure {
    kind: &'static str,
    message: String,
    limit: bool,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::Dimension { .. } => "dimension",
            Error::EnumerationLimit { .. } => "limit",
            Error::ShiftOutOfRange { .. } => "range",
            Error::Input(_) => "input",
            Error::Domain(_) => "domain",
            Error::Overflow(_) => "overflow",
        };
        Failure { kind, message: e.to_string(), limit: e.is_limit() }
    }
}

fn input(message: impl Into<String>) -> Failure {
    Failure { kind: "input", message: message.into(), limit: false }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Runs the tool on `args` (program name first) and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            let _ = writeln!(err, "error[usage]: {line}");
            return 1;
        }
    };
    match execute(&cli) {
        Ok(payload) => {
            let _ = out.write_all(payload.as_bytes());
            0
        }
        Err(f) => {
            let message = f.message.replace('\n', " ");
            let _ = writeln!(err, "error[{}]: {message}", f.kind);
            if f.limit {
                2
            } else {
                1
            }
        }
    }
}

fn execute(cli: &Cli) -> CliResult<String> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(input("--threads must be at least 1"));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| input(format!("thread pool: {e}")))?;
    let engine = RelationEngine::new(cli.limit);
    pool.install(|| dispatch(cli, &engine))
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable payload");
    s.push('\n');
    s
}

fn no_dot(command: &str) -> Failure {
    input(format!("--format dot is not available for {command}"))
}

fn read_diamond(path: &Path, h: &HodgeVector) -> CliResult<HodgeDiamond> {
    let text = std::fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
    let d: HodgeDiamond =
        serde_json::from_str(&text).map_err(|e| input(format!("malformed diamond JSON in {}: {e}", path.display())))?;
    if d.hodge_vector() != h {
        return Err(input(format!("diamond in {} has h = {}, expected {h}", path.display(), d.hodge_vector())));
    }
    Ok(d)
}

fn build(engine: &RelationEngine, h: &HodgeVector, kind: KindArg, k: usize) -> CliResult<RelationGraph> {
    Ok(match kind {
        KindArg::Full => build_graph(engine, h)?,
        KindArg::Weak => build_weak_graph(engine, h, k)?,
        KindArg::WeakCirc => build_circ_graph(engine, h, k)?,
    })
}

fn analysis_text(a: &Analysis) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "vertices: {}\nedges: {}", a.vertices, a.edges);
    for (name, value) in [
        ("reflexive", a.reflexive),
        ("transitive", a.transitive),
        ("antisymmetric", a.antisymmetric),
        ("poset", a.poset),
        ("linear", a.linear),
    ] {
        let _ = writeln!(s, "{name}: {value}");
    }
    let c = &a.counterexamples;
    if let Some([i, j, l]) = c.transitivity {
        let _ = writeln!(s, "transitivity fails: {i} -> {j} -> {l}");
    }
    if let Some([i, j]) = c.antisymmetry {
        let _ = writeln!(s, "antisymmetry fails: {i} <-> {j}");
    }
    if let Some([i, j]) = c.incomparable {
        let _ = writeln!(s, "incomparable: {i}, {j}");
    }
    s
}

fn dispatch(cli: &Cli, engine: &RelationEngine) -> CliResult<String> {
    let format = cli.format;
    match &cli.command {
        Command::Enumerate { hodge } => {
            let diamonds = enumerate_admissible(hodge, cli.limit)?;
            match format {
                Format::Json => Ok(json_line(&json!({ "h": hodge, "count": diamonds.len(), "diamonds": diamonds }))),
                Format::Text => {
                    let mut s = format!("{} admissible diamonds for h={hodge}\n", diamonds.len());
                    for (i, d) in diamonds.iter().enumerate() {
                        let _ = write!(s, "\n#{i}\n{d}");
                    }
                    Ok(s)
                }
                Format::Dot => Err(no_dot("enumerate")),
            }
        }
        Command::Relate { hodge, from, to } => {
            let (d1, d0) = (read_diamond(from, hodge)?, read_diamond(to, hodge)?);
            let witness = engine.degeneration(&d1, &d0)?;
            match format {
                Format::Json => Ok(json_line(&json!({ "related": witness.is_some(), "witness": witness }))),
                Format::Text => {
                    let Some(w) = witness else { return Ok("not related\n".into()) };
                    let mut s = String::from("related\n");
                    for part in &w.parts {
                        let _ = write!(s, "\nweight {} part {}:\n{}", part.weight, part.primitive, part.diamond);
                    }
                    Ok(s)
                }
                Format::Dot => Err(no_dot("relate")),
            }
        }
        Command::Graph { hodge, kind, k } => {
            let g = build(engine, hodge, *kind, *k)?;
            Ok(match format {
                Format::Json => json_line(&g.to_json()),
                Format::Dot => g.to_dot(),
                Format::Text => g.to_text(),
            })
        }
        Command::Analyze { hodge, graph, kind, k } => {
            let g = match (hodge, graph) {
                (Some(h), None) => build(engine, h, *kind, *k)?,
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
                    let value = serde_json::from_str(&text)
                        .map_err(|e| input(format!("malformed graph JSON in {}: {e}", path.display())))?;
                    RelationGraph::from_json(value)?
                }
                _ => return Err(input("exactly one of --hodge and --graph is required")),
            };
            let a = analyze(&g);
            match format {
                Format::Json => Ok(json_line(&a)),
                Format::Text => Ok(analysis_text(&a)),
                Format::Dot => Err(no_dot("analyze")),
            }
        }
        Command::Saturation { hodge } => {
            let report = check_maximal_saturated(engine, hodge)?;
            match format {
                Format::Json => Ok(json_line(&report)),
                Format::Text => {
                    let mut s = format!(
                        "h={}\nmaximal: {} (bound: {})\nsaturated: {} (bound: {})\n",
                        report.h,
                        report.maximal_direct,
                        report.maximal_bound,
                        report.saturated_direct,
                        report.saturated_bound
                    );
                    for p in &report.missing_profiles {
                        let _ = writeln!(s, "missing profile {p:?}");
                    }
                    for (a, b) in &report.missing_arrows {
                        let _ = writeln!(s, "missing arrow {a:?} -> {b:?}");
                    }
                    Ok(s)
                }
                Format::Dot => Err(no_dot("saturation")),
            }
        }
        Command::Suspension { inner, h0, k } => {
            let same = suspension_check(engine, inner, *h0, *k)?;
            let h = HodgeVector::suspend(inner, *h0);
            match format {
                Format::Json => Ok(json_line(&json!({ "inner": inner, "h": h, "k": k, "isomorphic": same }))),
                Format::Text => Ok(format!("R°_{}({inner}) {} R°_{k}({h})\n", k - 1, if same { "==" } else { "!=" })),
                Format::Dot => Err(no_dot("suspension")),
            }
        }
        Command::ScanWeight3 { max_h0, max_h1 } => {
            let report = scan_weight3(engine, *max_h0, *max_h1)?;
            match format {
                Format::Json => Ok(json_line(&report)),
                Format::Text => {
                    let mut s = format!(
                        "h0 <= {max_h0}, h1 <= {max_h1}: {} hodge vectors, {} related pairs\n\
                         necessity: {} ({} violations)\nweak sufficiency: {} ({} violations)\n\
                         full sufficiency counterexamples: {}\n",
                        report.hodge_vectors,
                        report.related_pairs,
                        report.necessity,
                        report.necessity_violations.len(),
                        report.weak_sufficiency,
                        report.weak_sufficiency_violations.len(),
                        report.counterexamples.len()
                    );
                    let _ = writeln!(s, "violations per row: {:?}", report.row_violations);
                    Ok(s)
                }
                Format::Dot => Err(no_dot("scan-weight3")),
            }
        }
        Command::HodgeNumbers { family, n, d } => {
            let family = match family {
                FamilyArg::Hypersurface => Family::Hypersurface,
                FamilyArg::DoubleCover => Family::DoubleCover,
            };
            let h = hodge_vector(&FamilySpec::new(family, *n, *d)?)?;
            match format {
                Format::Json => Ok(json_line(&json!({ "h": h }))),
                Format::Text => Ok(format!("{h}\n")),
                Format::Dot => Err(no_dot("hodge-numbers")),
            }
        }
        Command::CyTable { h1 } => {
            let entries = cy_table(engine, *h1)?;
            let mismatches: Vec<&CyTableEntry> = entries.iter().filter(|e| e.table != e.engine).collect();
            match format {
                Format::Json => Ok(json_line(&json!({ "h1": h1, "entries": entries, "mismatches": mismatches }))),
                Format::Text => {
                    let mut s = format!("h = (1,{h1},{h1},1)\n");
                    for e in &entries {
                        let mark = if e.table == e.engine { "" } else { "  (engine disagrees)" };
                        let _ =
                            writeln!(s, "{:>6} -> {:<6} {}{mark}", e.from, e.to, if e.table { "yes" } else { "no" });
                    }
                    Ok(s)
                }
                Format::Dot => Err(no_dot("cy-table")),
            }
        }
    }
}
