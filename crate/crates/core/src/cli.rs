//! The `tropical` command line, callable in-process through [`run`].
//!
//! Exit codes: 0 on success, 1 when the library rejects the input (for
//! example a negative cycle), 2 for usage errors and malformed files.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::bench::{self, BenchOp};
use crate::dense::DenseMatrix;
use crate::error::Error;
use crate::graph;
use crate::io::{self, GraphFile};
use crate::scheduler::Time;
use crate::semiring::{Semiring, TropicalValue};
use crate::spectral::{self, CycleMean};

pub const DEFAULT_MAX_N: usize = 2048;

#[derive(Debug, Parser)]
#[command(name = "tropical", version, about = "Tropical matrix algebra on graph and schedule files")]
struct Cli {
    /// Emit one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Guard {
    /// Refuse matrices with more vertices than this.
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    max_n: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Kleene star A* under the file's semiring.
    Closure {
        file: PathBuf,
        /// Compute through CSR products instead of the dense kernel.
        #[arg(long)]
        sparse: bool,
        #[command(flatten)]
        guard: Guard,
    },
    /// Optimal path values from one source.
    Sssp {
        file: PathBuf,
        #[arg(long)]
        source: usize,
        #[arg(long)]
        sparse: bool,
    },
    /// All-pairs optimal path values.
    Apsp {
        file: PathBuf,
        #[command(flatten)]
        guard: Guard,
    },
    /// Transitive closure over the edges present in the file.
    Reach {
        file: PathBuf,
        #[command(flatten)]
        guard: Guard,
    },
    /// All-pairs widest paths (max-min).
    Bottleneck {
        file: PathBuf,
        #[command(flatten)]
        guard: Guard,
    },
    /// Product of two matrices stored as graph files.
    Matmul { left: PathBuf, right: PathBuf },
    /// Maximum cycle mean and critical vertices of a max-plus graph.
    Eig { file: PathBuf },
    /// Max-plus eigenvector by power iteration.
    Eigvec {
        file: PathBuf,
        #[arg(long, default_value_t = spectral::DEFAULT_EPSILON)]
        eps: f64,
        /// Defaults to 10·n.
        #[arg(long)]
        max_iter: Option<usize>,
    },
    /// Earliest-start schedule, plus cycle time for cyclic files.
    Schedule {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        start: Time,
    },
    /// Time a kernel on seeded random matrices.
    Bench {
        #[arg(long)]
        op: BenchOp,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        semiring: Semiring,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = bench::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            e => Failure::Library(e),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Runs the command line with `args` (the first item is the program name)
/// and captures what it would print.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: 2, stdout: String::new(), stderr: text }
            } else {
                Output { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(&cli) {
        Ok(stdout) => Output { code: 0, stdout, stderr: String::new() },
        Err(Failure::Usage(msg)) => Output { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Library(e)) => Output {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {}: {e}\n", error_name(&e)),
        },
    }
}

fn error_name(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch { .. } => "DimensionMismatch",
        Error::NotSquare { .. } => "NotSquare",
        Error::EmptyDimension { .. } => "EmptyDimension",
        Error::DataLength { .. } => "DataLength",
        Error::IndexOutOfRange { .. } => "IndexOutOfRange",
        Error::SemiringMismatch { .. } => "SemiringMismatch",
        Error::VertexOutOfRange { .. } => "VertexOutOfRange",
        Error::NegativeCycleDetected { .. } => "NegativeCycleDetected",
        Error::PositiveCycleDetected { .. } => "PositiveCycleDetected",
        Error::NoCycle => "NoCycle",
        Error::NotConverged { .. } => "NotConverged",
        Error::InvalidTolerance(_) => "InvalidTolerance",
        Error::InvalidTask { .. } => "InvalidTask",
        Error::InvalidTime { .. } => "InvalidTime",
        Error::CycleInAcyclicGraph { .. } => "CycleInAcyclicGraph",
        Error::FeedbackOnAcyclicGraph => "FeedbackOnAcyclicGraph",
        Error::InvalidArgument(_) => "InvalidArgument",
        Error::Parse { .. } => "Parse",
        Error::UnknownSemiring(_) => "UnknownSemiring",
        Error::InvalidValue(_) => "InvalidValue",
    }
}

fn read(path: &PathBuf) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &PathBuf) -> CliResult<GraphFile> {
    Ok(io::parse_graph(&read(path)?)?)
}

fn guarded(path: &PathBuf, guard: &Guard) -> CliResult<GraphFile> {
    let g = load_graph(path)?;
    if g.n > guard.max_n {
        return Err(Failure::Library(Error::InvalidArgument(format!(
            "{} vertices exceeds the --max-n guard of {} (closure is cubic)",
            g.n, guard.max_n
        ))));
    }
    Ok(g)
}

fn require(g: &GraphFile, s: Semiring) -> CliResult<()> {
    if g.semiring == s {
        Ok(())
    } else {
        Err(Failure::Library(Error::SemiringMismatch { left: g.semiring, right: s }))
    }
}

fn dispatch(cli: &Cli) -> CliResult<String> {
    let json = cli.json;
    match &cli.command {
        Command::Closure { file, sparse, guard } => {
            let g = guarded(file, guard)?;
            let star = if *sparse {
                g.to_sparse()?.closure()?.to_dense()
            } else {
                g.to_dense()?.closure(g.semiring)?.into_result()?
            };
            Ok(matrix_out(json, g.semiring, &star))
        }
        Command::Sssp { file, source, sparse } => {
            let g = load_graph(file)?;
            let d = if *sparse {
                graph::sssp_sparse(&g.to_sparse()?, *source)?
            } else {
                graph::sssp(&g.to_dense()?, *source, g.semiring)?
            };
            Ok(if json {
                line(json!({ "semiring": g.semiring, "source": source, "distances": d }))
            } else {
                format!("{d}\n")
            })
        }
        Command::Apsp { file, guard } => {
            let g = guarded(file, guard)?;
            let star = graph::all_pairs_paths(&g.to_dense()?, g.semiring)?;
            Ok(matrix_out(json, g.semiring, &star))
        }
        Command::Reach { file, guard } => {
            let g = guarded(file, guard)?;
            let r = graph::reachability(&g.to_dense()?.support(g.semiring))?;
            Ok(matrix_out(json, Semiring::Boolean, &r))
        }
        Command::Bottleneck { file, guard } => {
            let g = guarded(file, guard)?;
            let zero = g.semiring.zero();
            let widths = g
                .to_dense()?
                .map(|v| if v == zero { TropicalValue::NEG_INF } else { v });
            Ok(matrix_out(json, Semiring::MaxMin, &graph::bottleneck_paths(&widths)?))
        }
        Command::Matmul { left, right } => {
            let (a, b) = (load_graph(left)?, load_graph(right)?);
            if a.semiring != b.semiring {
                return Err(Failure::Library(Error::SemiringMismatch { left: a.semiring, right: b.semiring }));
            }
            let c = a.to_dense()?.matmul(&b.to_dense()?, a.semiring)?;
            Ok(matrix_out(json, a.semiring, &c))
        }
        Command::Eig { file } => {
            let g = load_graph(file)?;
            require(&g, Semiring::MaxPlus)?;
            let a = g.to_dense()?;
            let mean = spectral::max_cycle_mean(&a)?;
            let critical = spectral::critical_vertices(&a)?;
            Ok(if json {
                line(json!({
                    "lambda": rational_json(mean.lambda),
                    "strongly_connected": mean.strongly_connected,
                    "critical": critical,
                }))
            } else {
                format!(
                    "{}\ncritical {}\nstrongly_connected {}\n",
                    rational_text(mean.lambda),
                    join(&critical),
                    mean.strongly_connected
                )
            })
        }
        Command::Eigvec { file, eps, max_iter } => {
            let g = load_graph(file)?;
            require(&g, Semiring::MaxPlus)?;
            let a = g.to_dense()?;
            let lambda = spectral::max_cycle_mean(&a)?.lambda;
            let max_iter = max_iter.unwrap_or_else(|| spectral::default_max_iter(g.n));
            let v = spectral::eigenvector(&a, lambda, *eps, max_iter)?;
            let critical = spectral::critical_vertices(&a)?;
            let critical_residual = spectral::eigen_residual(&a, lambda, &v.values, critical.iter().copied())?;
            Ok(if json {
                line(json!({
                    "lambda": rational_json(lambda),
                    "vector": v.values.iter().map(|&x| float_json(x)).collect::<Vec<_>>(),
                    "residual": v.residual,
                    "critical_residual": critical_residual,
                    "iterations": v.iterations,
                    "period": v.period,
                }))
            } else {
                let vector: Vec<String> = v.values.iter().map(|&x| float_text(x)).collect();
                format!(
                    "lambda {}\nvector {}\nresidual {:e}\ncritical_residual {:e}\niterations {}\nperiod {}\n",
                    rational_text(lambda),
                    vector.join(" "),
                    v.residual,
                    critical_residual,
                    v.iterations,
                    v.period
                )
            })
        }
        Command::Schedule { file, start } => schedule(json, &read(file)?, *start),
        Command::Bench { op, size, semiring, reps, seed } => {
            let r = bench::bench(*op, *size, *semiring, *reps, *seed)?;
            Ok(if json {
                line(serde_json::to_value(&r).expect("report serializes"))
            } else {
                let samples: Vec<String> = r.elapsed_us.iter().map(|t| format!("{t:.3}")).collect();
                format!(
                    "op {}\nn {}\nsemiring {}\nreps {}\nseed {}\nops {}\nelapsed_us {}\nmean_us {:.3}\nmops {:.3}\nchecksum {:016x}\n",
                    r.op, r.n, r.semiring, r.reps, r.seed, r.ops, samples.join(" "), r.mean_us, r.mops, r.checksum
                )
            })
        }
    }
}

fn schedule(json: bool, text: &str, start: Time) -> CliResult<String> {
    let g = io::parse_schedule(text)?;
    let r = g.solve(start)?;
    let path = g.critical_path(&r);
    let cycle = if g.is_cyclic() { Some(g.cycle_time()?) } else { None };
    let names = g.names();

    if json {
        let tasks: Vec<Value> = (0..g.len())
            .map(|i| json!({ "id": i, "name": names[i], "start": r.start[i], "completion": r.completion[i] }))
            .collect();
        let mut out = json!({
            "tasks": tasks,
            "makespan": r.makespan,
            "critical_path": path,
            "iterations": r.iterations,
        });
        if let Some(lambda) = cycle {
            out["cycle_time"] = rational_json(lambda);
            out["throughput"] = json!(1.0 / lambda.as_f64());
        }
        return Ok(line(out));
    }

    let mut out = String::new();
    for (i, name) in names.iter().enumerate() {
        writeln!(out, "task {i} {name} start {} completion {}", r.start[i], r.completion[i]).unwrap();
    }
    writeln!(out, "makespan {}", r.makespan).unwrap();
    let chain: Vec<&str> = path.iter().map(|&i| names[i].as_str()).collect();
    writeln!(out, "critical_path {}", chain.join(" ")).unwrap();
    writeln!(out, "iterations {}", r.iterations).unwrap();
    if let Some(lambda) = cycle {
        writeln!(out, "cycle_time {}", rational_text(lambda)).unwrap();
        writeln!(out, "throughput {:.4}", 1.0 / lambda.as_f64()).unwrap();
    }
    Ok(out)
}

fn line(v: Value) -> String {
    format!("{v}\n")
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn matrix_out(json: bool, s: Semiring, m: &DenseMatrix) -> String {
    if json {
        let rows: Vec<&[TropicalValue]> = (0..m.rows()).map(|i| m.row(i)).collect();
        line(json!({ "semiring": s, "rows": m.rows(), "cols": m.cols(), "matrix": rows }))
    } else {
        format!("{m}\n")
    }
}

fn rational_text(q: CycleMean) -> String {
    format!("{q} ({:.6})", q.as_f64())
}

fn rational_json(q: CycleMean) -> Value {
    json!({ "numerator": q.numerator(), "denominator": q.denominator(), "value": q.as_f64() })
}

fn float_text(x: f64) -> String {
    if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x:.6}")
    }
}

fn float_json(x: f64) -> Value {
    if x == f64::NEG_INFINITY {
        json!("-inf")
    } else {
        json!(x)
    }
}
