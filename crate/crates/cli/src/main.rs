use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use saw_core::bounds::{auto_bounds, bridge_bounds, degree_bound, zd_dimension, LowerBoundSequence, Provenance};
use saw_core::certificate::{certify_ratio, verify, RatioCertificate, Status};
use saw_core::engine::{
    build_cycle_family, count_saws, event_profile, EngineConfig, EventQuery, Strategy,
};
use saw_core::export::{counts_csv, events_csv};
use saw_core::graph::{catalog, parse_graph_spec, GraphHandle, VertexKey, CATALOG_NAMES};
use saw_core::quotient::{build_quotient, QuotientGraph, SubgroupAction};
use saw_core::Error;

const GRAPH_HELP: &str = "Catalog name (zd:2, zd(3), ladder, square-octagon, tree:4, \
tree-with-end:3) or path to a graph-spec file.

Graph-spec files are TOML. A periodic lattice:

  kind = \"lattice\"
  dimension = 1
  cells = 2
  # i j offset... parallel_count: cell i at x joins cell j at x + offset
  edges = [[0, 0, 1, 1], [1, 1, 1, 1], [0, 1, 0, 1]]

A Cayley graph of a finitely presented group, with a terminating rewriting
system; words are space-separated generator names:

  kind = \"cayley\"
  generators = [\"a\", \"A\", \"b\", \"B\"]
  inverses = [\"A\", \"a\", \"B\", \"b\"]
  relators = [\"a b A B\"]
  rules = [[\"b a\", \"a b\"], [\"b A\", \"A b\"], [\"B a\", \"a B\"], [\"B A\", \"A B\"]]";

#[derive(Parser)]
#[command(name = "saw", version, about = "Exact self-avoiding walk counts, quotient graphs and ratio certificates")]
struct Cli {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true, env = "SAW_WORKERS")]
    workers: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the result here (atomically) instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Leave out the timestamp so identical runs give identical bytes.
    #[arg(long, global = true)]
    deterministic: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct GraphArg {
    #[arg(long, long_help = GRAPH_HELP)]
    graph: String,
}

#[derive(Args)]
struct ActionArg {
    /// Sublattice basis as semicolon-separated integer rows, e.g. "2 0; 0 2".
    #[arg(long, conflicts_with = "action")]
    sublattice: Option<String>,

    /// Named action: child-swap or child-swap-shift:k.
    #[arg(long)]
    action: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Report {
    Summary,
    Type,
    Matrix,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundKind {
    Auto,
    Bridge,
    Degree,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Auto,
    Enumerate,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog graphs, or describe one with --graph.
    Catalog {
        #[arg(long)]
        graph: Option<String>,
    },
    /// Count n-step self-avoiding walks from a vertex.
    Count {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        n: usize,
        /// Start vertex (cell@x,y,... or w:i.j); defaults to the origin.
        #[arg(long)]
        start: Option<String>,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
    },
    /// Build the quotient by a subgroup action and report it.
    Quotient {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        action: ActionArg,
        #[arg(long, value_enum, default_value_t = Report::Summary)]
        report: Report,
    },
    /// Classify the quotient as type 1, 2 or 3.
    Type {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        action: ActionArg,
    },
    /// Count directed SAWs on the quotient by number of pattern events.
    Events {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        action: ActionArg,
        #[arg(long)]
        n: usize,
        /// Event threshold; defaults to the cycle length.
        #[arg(long)]
        k: Option<usize>,
        /// Window half-width; omit for the unwindowed event.
        #[arg(long)]
        m: Option<usize>,
        /// Largest number of occurrences tabulated.
        #[arg(long, default_value_t = 0)]
        r_max: usize,
    },
    /// Lower bounds b_1..b_n on the connective constant.
    Bounds {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = BoundKind::Auto)]
        kind: BoundKind,
        /// Use b_n = MU for a known connective constant (decimal or p/q).
        #[arg(long)]
        mu_exact: Option<String>,
    },
    /// Search for a certified bound on the ratio of connective constants.
    Ratio {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        action: ActionArg,
        /// Largest walk length used by the search.
        #[arg(long, default_value_t = 20)]
        budget: usize,
        #[arg(long, value_enum, default_value_t = BoundKind::Auto)]
        bounds: BoundKind,
        /// Use b_n = MU for a known connective constant (decimal or p/q).
        #[arg(long)]
        mu_exact: Option<String>,
    },
    /// Replay a ratio certificate from its stored counts.
    Verify {
        certificate: PathBuf,
    },
    /// Add a chord and its translates to a graph.
    Augment {
        #[command(flatten)]
        graph: GraphArg,
        /// Two vertices, e.g. "0@0 1@1".
        #[arg(long)]
        chord: String,
        /// Also count SAWs on the augmented graph up to this length.
        #[arg(long)]
        n: Option<usize>,
        /// Certificate for μ(G) < μ(G+chord); not implemented.
        #[arg(long)]
        certify: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn computation(message: impl Into<String>) -> Self {
        Failure {
            code: 4,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidVertex { .. }
            | Error::Catalog(_)
            | Error::InvalidSpec(_)
            | Error::Loop(_)
            | Error::InvalidAction(_)
            | Error::InvalidLabel { .. }
            | Error::Parameter(_)
            | Error::Parse(_) => 2,
            _ => 4,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(String, u8), Failure>;

fn load_graph(arg: &GraphArg) -> Result<GraphHandle, Failure> {
    let path = Path::new(&arg.graph);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        let id = path.file_stem().map_or(arg.graph.clone(), |s| s.to_string_lossy().into_owned());
        return Ok(parse_graph_spec(&text)?.build(id)?);
    }
    Ok(catalog(&arg.graph)?)
}

fn load_action(arg: &ActionArg) -> Result<SubgroupAction, Failure> {
    match (&arg.sublattice, &arg.action) {
        (Some(rows), None) => Ok(SubgroupAction::sublattice(&SubgroupAction::parse_rows(rows)?)?),
        (None, Some(name)) => Ok(SubgroupAction::catalog(name)?),
        _ => Err(Failure::usage("give exactly one of --sublattice and --action")),
    }
}

fn load_quotient(g: &GraphArg, a: &ActionArg) -> Result<(GraphHandle, QuotientGraph), Failure> {
    let g = load_graph(g)?;
    let q = build_quotient(&g, &load_action(a)?)?;
    Ok((g, q))
}

fn parse_mu(text: &str) -> Result<f64, Failure> {
    let bad = || Failure::usage(format!("--mu-exact expects a positive decimal or p/q, got {text:?}"));
    let value = match text.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            p / q
        }
        None => text.trim().parse().map_err(|_| bad())?,
    };
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(bad())
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::computation(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn no_csv(what: &str) -> Failure {
    Failure::usage(format!("{what} has no CSV form; use --format json"))
}

fn lower_bounds(
    g: &GraphHandle,
    n: usize,
    kind: BoundKind,
    mu_exact: Option<&str>,
    config: &EngineConfig,
) -> Result<LowerBoundSequence, Failure> {
    if let Some(mu) = mu_exact {
        return Ok(LowerBoundSequence::constant(g.id(), parse_mu(mu)?, n, Provenance::Constant));
    }
    match (kind, zd_dimension(g)) {
        (BoundKind::Auto, _) => Ok(auto_bounds(g, n, config)?),
        (BoundKind::Bridge, Some(d)) => Ok(bridge_bounds(d, n, config)?),
        (BoundKind::Bridge, None) => Err(Failure::usage(format!(
            "bridge bounds are only available for zd graphs, not {}",
            g.id()
        ))),
        (BoundKind::Degree, _) => {
            let b = degree_bound(g)?;
            Ok(LowerBoundSequence::constant(g.id(), b, n, Provenance::Degree))
        }
    }
}

fn parse_chord(text: &str) -> Result<(VertexKey, VertexKey), Failure> {
    let parts: Vec<&str> = text
        .split(|c: char| c.is_whitespace() || c == ';')
        .filter(|s| !s.is_empty() && *s != "--")
        .collect();
    let [u, w] = parts[..] else {
        return Err(Failure::usage(format!("--chord expects two vertices, got {text:?}")));
    };
    let key = |s: &str| s.parse::<VertexKey>().map_err(Failure::from);
    Ok((key(u)?, key(w)?))
}

#[derive(Serialize)]
struct GraphInfo {
    id: String,
    source: &'static str,
    degree: u32,
    simple: bool,
    forest: bool,
    origin: String,
    origin_neighbors: Vec<(String, u32)>,
}

fn graph_info(g: &GraphHandle) -> Result<GraphInfo, Failure> {
    Ok(GraphInfo {
        id: g.id().to_string(),
        source: g.source(),
        degree: g.degree(),
        simple: g.is_simple(),
        forest: g.is_forest(),
        origin: g.origin().to_string(),
        origin_neighbors: g
            .neighbors(&g.origin())?
            .into_iter()
            .map(|nb| (nb.target.to_string(), nb.multiplicity))
            .collect(),
    })
}

fn run(cli: &Cli) -> Outcome {
    let mut config = match cli.workers {
        Some(0) => return Err(Failure::usage("--workers must be at least 1")),
        Some(w) => EngineConfig::with_workers(w),
        None => EngineConfig::default(),
    };
    let csv = cli.format == Format::Csv;
    match &cli.command {
        Command::Catalog { graph } => match graph {
            None if csv => Ok((CATALOG_NAMES.iter().map(|n| format!("{n}\n")).collect(), 0)),
            None => Ok((json(&CATALOG_NAMES)?, 0)),
            Some(_) if csv => Err(no_csv("a graph description")),
            Some(name) => Ok((json(&graph_info(&load_graph(&GraphArg { graph: name.clone() })?)?)?, 0)),
        },
        Command::Count {
            graph,
            n,
            start,
            strategy,
        } => {
            let g = load_graph(graph)?;
            let v0 = match start {
                Some(s) => s.parse::<VertexKey>()?,
                None => g.origin(),
            };
            config.strategy = match strategy {
                StrategyArg::Auto => Strategy::Auto,
                StrategyArg::Enumerate => Strategy::Enumerate,
            };
            let counts = count_saws(&g, &v0, *n, &config)?;
            if counts.truncated {
                eprintln!("warning: vertex budget reached; counts stop at n = {}", counts.max_n());
            }
            Ok((if csv { counts_csv(&counts) } else { json(&counts)? }, 0))
        }
        Command::Quotient {
            graph,
            action,
            report,
        } => {
            let (_, q) = load_quotient(graph, action)?;
            let summary = q.summary()?;
            if csv {
                if !matches!(report, Report::Matrix) {
                    return Err(no_csv("this report"));
                }
                let mut out = String::from("from,to,multiplicity\n");
                for (i, row) in summary.matrix.iter().enumerate() {
                    for (j, &m) in row.iter().enumerate() {
                        if m > 0 {
                            let _ = writeln!(out, "{},{},{m}", summary.orbits[i], summary.orbits[j]);
                        }
                    }
                    if summary.loops[i] > 0 {
                        let _ = writeln!(out, "{0},{0},{1}", summary.orbits[i], summary.loops[i]);
                    }
                }
                return Ok((out, 0));
            }
            let text = match report {
                Report::Summary => json(&summary)?,
                Report::Type => json(&summary.type_report)?,
                Report::Matrix => json(&serde_json::json!({
                    "orbits": summary.orbits,
                    "matrix": summary.matrix,
                    "loops": summary.loops,
                    "truncated": summary.truncated,
                }))?,
            };
            Ok((text, 0))
        }
        Command::Type { graph, action } => {
            if csv {
                return Err(no_csv("a type report"));
            }
            let (_, q) = load_quotient(graph, action)?;
            Ok((json(&q.classify_type()?)?, 0))
        }
        Command::Events {
            graph,
            action,
            n,
            k,
            m,
            r_max,
        } => {
            let (_, q) = load_quotient(graph, action)?;
            let report = q.classify_type()?;
            let family = build_cycle_family(&q, &report, *n)?;
            let query = EventQuery {
                k: k.unwrap_or(report.length),
                m: *m,
                r_max: *r_max,
            };
            let profile = event_profile(&q, &family, query, *n, &config)?;
            Ok((if csv { events_csv(&profile) } else { json(&profile)? }, 0))
        }
        Command::Bounds {
            graph,
            n,
            kind,
            mu_exact,
        } => {
            let g = load_graph(graph)?;
            let seq = lower_bounds(&g, *n, *kind, mu_exact.as_deref(), &config)?;
            if csv {
                let mut out = String::from("n,b_n,provenance\n");
                for e in &seq.entries {
                    let p = serde_json::to_value(e.provenance).map_err(|e| Failure::computation(e.to_string()))?;
                    let _ = writeln!(out, "{},{},{}", e.n, e.value, p.as_str().unwrap_or(""));
                }
                return Ok((out, 0));
            }
            Ok((json(&seq)?, 0))
        }
        Command::Ratio {
            graph,
            action,
            budget,
            bounds,
            mu_exact,
        } => {
            if csv {
                return Err(no_csv("a certificate"));
            }
            let (g, q) = load_quotient(graph, action)?;
            let b = lower_bounds(&g, *budget, *bounds, mu_exact.as_deref(), &config)?;
            let report = q.classify_type()?;
            let family = build_cycle_family(&q, &report, *budget)?;
            let mut cert = certify_ratio(&g, &q, &family, &b, *budget, &config)?;
            if !cli.deterministic {
                cert.generated_at = SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs());
            }
            let code = if cert.status == Status::Certified { 0 } else { 3 };
            if let Some(reason) = &cert.reason {
                eprintln!("inconclusive: {reason}");
            }
            Ok((json(&cert)?, code))
        }
        Command::Verify { certificate } => {
            if csv {
                return Err(no_csv("a verification report"));
            }
            let text = std::fs::read_to_string(certificate)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", certificate.display())))?;
            let cert: RatioCertificate = serde_json::from_str(&text)
                .map_err(|e| Failure::usage(format!("not a ratio certificate: {e}")))?;
            let report = verify(&cert);
            for p in &report.problems {
                eprintln!("{p}");
            }
            let code = if report.ok {
                0
            } else if report.problems.iter().all(|p| p.starts_with("status is")) {
                3
            } else {
                4
            };
            Ok((json(&report)?, code))
        }
        Command::Augment {
            graph,
            chord,
            n,
            certify,
        } => {
            if *certify {
                return Err(Failure::computation(
                    "augmentation certificates are not implemented",
                ));
            }
            let g = load_graph(graph)?;
            let (u, w) = parse_chord(chord)?;
            let h = g.augment((&u, &w))?;
            match n {
                Some(n) => {
                    let counts = count_saws(&h, &h.origin(), *n, &config)?;
                    Ok((if csv { counts_csv(&counts) } else { json(&counts)? }, 0))
                }
                None if csv => Err(no_csv("a graph description")),
                None => Ok((json(&graph_info(&h)?)?, 0)),
            }
        }
    }
}

fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(&cli) {
        Ok(v) => v,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(f.code);
        }
    };
    let written = match &cli.output {
        Some(path) => write_atomic(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(4);
    }
    ExitCode::from(code)
}
