//! Command-line front end. `run` takes argv and output streams so it can be
//! driven from tests; the `mpfiber` binary is a thin wrapper around it.
//!
//! Exit codes: 0 success, 1 validation or data failure, 2 usage error.

use std::collections::BTreeSet;
use std::io::Write;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cache::QueryCache;
use crate::dgvf::{build_consistent_dgvf, check_acyclic, check_consistent, check_matching, GradientVectorField};
use crate::error::Error;
use crate::fiber::{fiber_diagram, pushed_criticals};
use crate::filtration::OneCriticalFiltration;
use crate::grade::Grade;
use crate::homology::line_persistence_reduction;
use crate::json;
use crate::line::Line;
use crate::rank::{MorseRank, RankOptions, DEFAULT_CLOSURE_CAP};

/// Environment variable overriding the closure-size cap.
pub const CAP_ENV: &str = "MF_CBAR_CAP";

#[derive(Parser, Debug)]
#[command(name = "mpfiber", version, about = "Rank invariant and fibered barcodes of multi-parameter filtrations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Args, Debug)]
struct Input {
    /// Filtration in `.ocf` format.
    input: PathBuf,
    /// Gradient vector field in `.dgvf` format; built greedily when omitted.
    #[arg(long)]
    dgvf: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct LineArgs {
    /// Base point, e.g. `1,0` or `1/2,-3`.
    #[arg(long, allow_hyphen_values = true)]
    base: String,
    /// Direction, strictly positive in every coordinate.
    #[arg(long, allow_hyphen_values = true)]
    dir: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the filtration and, if given, the gradient vector field.
    Validate(Input),
    /// Build a consistent gradient vector field and print it as `.dgvf`.
    Dgvf(Input),
    /// Print the critical values and their closure.
    Critical(Input),
    /// Rank of the map in homology from grade `u` to grade `v`.
    Rank {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long)]
        dim: usize,
    },
    /// Persistence diagram along a line.
    Fiber {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        line: LineArgs,
        /// Homology degrees (repeatable or comma separated); all by default.
        #[arg(long = "dim", value_delimiter = ',')]
        dims: Vec<usize>,
        /// Also compute the diagram by matrix reduction and fail on any difference.
        #[arg(long)]
        oracle: bool,
    },
    /// Equivalence-class id and signature of a line.
    Classify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        line: LineArgs,
    },
    /// Serve the HTTP JSON API.
    Serve {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// File with one line literal (`base=… dir=…`) per line.
        #[arg(long)]
        seeds: Option<PathBuf>,
        /// Cache snapshot: loaded if present, rewritten after seeding.
        #[arg(long)]
        snapshot: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Data(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn closure_cap() -> std::result::Result<usize, Failure> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .parse()
            .map_err(|_| Failure::Usage(format!("{CAP_ENV} must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_CLOSURE_CAP),
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn load_filtration(input: &Input) -> std::result::Result<OneCriticalFiltration, Failure> {
    OneCriticalFiltration::parse(&read(&input.input)?)
        .map_err(|e| Failure::Data(format!("{}: {e}", input.input.display())))
}

fn load_field(input: &Input, f: &OneCriticalFiltration) -> std::result::Result<GradientVectorField, Failure> {
    match &input.dgvf {
        Some(p) => GradientVectorField::parse(&read(p)?).map_err(|e| Failure::Data(format!("{}: {e}", p.display()))),
        None => Ok(build_consistent_dgvf(f)),
    }
}

fn load_engine(input: &Input) -> std::result::Result<MorseRank, Failure> {
    let f = load_filtration(input)?;
    let v = load_field(input, &f)?;
    Ok(MorseRank::with_options(f, v, RankOptions { closure_cap: closure_cap()? })?)
}

fn parse_grade(s: &str, n: usize) -> std::result::Result<Grade, Failure> {
    let g: Grade = s.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    if g.n() != n {
        return Err(Failure::Usage(format!("expected {n} coordinates, got {} in `{s}`", g.n())));
    }
    Ok(g)
}

fn parse_line(args: &LineArgs, n: usize) -> std::result::Result<Line, Failure> {
    let base = parse_grade(&args.base, n)?;
    let dir = parse_grade(&args.dir, n)?;
    Line::new(base, dir).map_err(|e| match e {
        Error::NonPositiveSlope(d) => Failure::Usage(format!("direction must be strictly positive, got {d}")),
        other => Failure::Usage(other.to_string()),
    })
}

fn emit(out: &mut dyn Write, v: &Value) -> std::result::Result<(), Failure> {
    out.write_all(json::to_canonical_string(v).as_bytes())
        .map_err(|e| Failure::Data(e.to_string()))
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let io = |e: std::io::Error| Failure::Data(e.to_string());
    match cmd {
        Command::Validate(input) => {
            let f = load_filtration(&input)?;
            let mut report = json!({ "n": f.n(), "simplexCount": f.len(), "valid": true });
            let mut valid = true;
            if input.dgvf.is_some() {
                let v = load_field(&input, &f)?;
                let matching = check_matching(&f, &v)?;
                let acyclic = matching.is_valid() && check_acyclic(&f, &v)?;
                let consistent = check_consistent(&f, &v)?;
                valid = matching.is_valid() && acyclic && consistent;
                let violations: Vec<String> = matching.violations.iter().map(|x| format!("{x:?}")).collect();
                report["dgvf"] = json!({
                    "pairs": v.len(),
                    "violations": violations,
                    "acyclic": acyclic,
                    "consistent": consistent,
                });
                report["valid"] = json!(valid);
            }
            match input.format {
                Format::Json => emit(out, &report)?,
                Format::Text => writeln!(out, "{}", if valid { "valid" } else { "invalid" }).map_err(io)?,
            }
            Ok(if valid { 0 } else { 1 })
        }
        Command::Dgvf(input) => {
            let f = load_filtration(&input)?;
            write!(out, "{}", build_consistent_dgvf(&f).to_dgvf()).map_err(io)?;
            Ok(0)
        }
        Command::Critical(input) => {
            let engine = load_engine(&input)?;
            let c = engine.closure();
            match input.format {
                Format::Json => emit(out, &json!({ "C": json::grades(c.base()), "Cbar": json::grades(c.closed()) }))?,
                Format::Text => {
                    for g in c.closed() {
                        let tag = if c.is_closure_added(g) { "closure" } else { "critical" };
                        writeln!(out, "{g} {tag}").map_err(io)?;
                    }
                }
            }
            Ok(0)
        }
        Command::Rank { input, u, v, dim } => {
            let engine = load_engine(&input)?;
            let n = engine.filtration().n();
            let (u, v) = (parse_grade(&u, n)?, parse_grade(&v, n)?);
            if !u.leq(&v)? {
                return Err(Failure::Usage(format!("u = {u} is not below v = {v}")));
            }
            let rank = engine.rank(dim, &u, &v)?;
            match input.format {
                Format::Json => {
                    let bar = |g: &Grade| -> std::result::Result<Value, Failure> {
                        Ok(engine.bar(g)?.map_or(Value::Null, |b| json::grade(&b)))
                    };
                    emit(out, &json!({
                        "dim": dim,
                        "u": json::grade(&u),
                        "v": json::grade(&v),
                        "barU": bar(&u)?,
                        "barV": bar(&v)?,
                        "rank": rank,
                    }))?
                }
                Format::Text => writeln!(out, "{rank}").map_err(io)?,
            }
            Ok(0)
        }
        Command::Fiber { input, line, dims, oracle } => {
            let engine = load_engine(&input)?;
            let line = parse_line(&line, engine.filtration().n())?;
            let degrees: BTreeSet<usize> = if dims.is_empty() {
                (0..=engine.filtration().max_dim().unwrap_or(0)).collect()
            } else {
                dims.into_iter().collect()
            };
            let dgm = fiber_diagram(&engine, &line, &degrees)?;
            let mut status = 0;
            let mut body = json!({
                "line": json::line(&line),
                "points": json::diagram_points(&dgm),
                "pushedCriticals": json::pushed_criticals(&pushed_criticals(engine.closure(), &line)?),
            });
            if oracle {
                let reference = line_persistence_reduction(engine.filtration(), &line, &degrees)?;
                if reference == dgm {
                    body["oracle"] = json!("agree");
                } else {
                    body["oracle"] = json!("mismatch");
                    writeln!(err, "oracle mismatch\n--- critical values\n{dgm}--- matrix reduction\n{reference}")
                        .map_err(io)?;
                    status = 1;
                }
            }
            match input.format {
                Format::Json => emit(out, &body)?,
                Format::Text => write!(out, "{dgm}").map_err(io)?,
            }
            Ok(status)
        }
        Command::Classify { input, line } => {
            let engine = Arc::new(load_engine(&input)?);
            let line = parse_line(&line, engine.filtration().n())?;
            let cache = QueryCache::new(engine);
            let (id, sig) = cache.classify(&line)?;
            match input.format {
                Format::Json => {
                    let faces: Vec<Value> = sig
                        .faces()
                        .iter()
                        .map(|(c, face)| json!({ "value": json::grade(c), "face": face.one_based() }))
                        .collect();
                    emit(out, &json!({ "classId": id.to_string(), "line": json::line(&line), "signature": faces }))?
                }
                Format::Text => writeln!(out, "{id}").map_err(io)?,
            }
            Ok(0)
        }
        Command::Serve { input, port, host, seeds, snapshot } => {
            let engine = Arc::new(load_engine(&input)?);
            let cache = Arc::new(QueryCache::new(engine));
            if let Some(path) = snapshot.as_deref().filter(|p| p.exists()) {
                let loaded = cache.load_snapshot_json(&read(path)?)?;
                writeln!(err, "loaded {loaded} classes from {}", path.display()).map_err(io)?;
            }
            if let Some(path) = &seeds {
                let text = read(path)?;
                let literals: Vec<&str> = text
                    .lines()
                    .map(|l| l.split('#').next().unwrap_or("").trim())
                    .filter(|l| !l.is_empty())
                    .collect();
                let stats = cache.precompute_literals(&literals);
                writeln!(err, "seeded {} classes ({} duplicates)", stats.classes_discovered, stats.duplicates)
                    .map_err(io)?;
                for (pos, msg) in &stats.errors {
                    writeln!(err, "seed {}: {msg}", pos + 1).map_err(io)?;
                }
            }
            if let Some(path) = &snapshot {
                std::fs::write(path, cache.snapshot_json()).map_err(io)?;
            }
            let addr: SocketAddr = format!("{host}:{port}")
                .parse()
                .map_err(|e| Failure::Usage(format!("bad address {host}:{port}: {e}")))?;
            writeln!(err, "listening on http://{addr}").map_err(io)?;
            let rt = tokio::runtime::Runtime::new().map_err(io)?;
            rt.block_on(crate::service::serve(cache, addr)).map_err(io)?;
            Ok(0)
        }
    }
}

