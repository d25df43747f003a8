use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use sparsenav::bench::{run_suite, to_csv, Suite};
use sparsenav::instances::{
    binary_tree_pointset, binary_tree_reference_graph, gadget_metric, gadget_reference_graph,
    perturbed_path, perturbed_path_reference_graph, perturbed_path_with_pair, random_euclidean,
    uniform_metric,
};
use sparsenav::io;
use sparsenav::navbuild::verify_nav_batched;
use sparsenav::setcover::{
    brute_force_min_cover_sets, greedy_cover, MAX_BRUTE_ELEMENTS, MAX_BRUTE_SETS,
};
use sparsenav::{build, verify_naive, Algorithm, Error, Metric, NavGraph};

const EXIT_VIOLATIONS: u8 = 1;
const EXIT_BUILD_FAILED: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// How many violations to list before summarizing the rest.
const SHOW_VIOLATIONS: usize = 20;

#[derive(Parser)]
#[command(
    name = "sparsenav",
    version,
    about = "Build and verify sparse alpha-navigable graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    BinaryTree,
    Gadget,
    PerturbedPath,
    RandomEuclidean,
    Uniform,
}

#[derive(Subcommand)]
enum Command {
    /// Write an instance file (metric or point set).
    Generate {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Number of roots and gadget copies.
        #[arg(long = "L")]
        copies: Option<usize>,
        #[arg(long, default_value_t = 0.1)]
        gamma: f64,
        /// Set cover instance file for `gadget`.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Leaf shrink factor for `binary-tree`.
        #[arg(long, default_value_t = 0.0)]
        shrink: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a navigable graph and print its report as JSON.
    Build {
        /// `[ALGORITHM] METRIC`; the algorithm may also come from --algorithm.
        #[arg(num_args = 1..=2, required = true)]
        args: Vec<String>,
        #[arg(long)]
        algorithm: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Graph output path; defaults to the metric path with a `.graph` extension.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a graph for navigability. Exit 0 if navigable, 1 otherwise.
    Verify {
        graph: PathBuf,
        metric: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Also run the batched verifier on the eps-rounded metric.
        #[arg(long, requires = "eps")]
        batched: bool,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Run a benchmark suite and write a CSV table.
    Bench {
        suite: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write the known sparse navigable graph for a generated instance.
    Reference {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        n: Option<usize>,
        /// Sidecar JSON written by `generate perturbed-path`.
        #[arg(long)]
        sidecar: Option<PathBuf>,
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long = "L")]
        copies: Option<usize>,
        /// Comma-separated set indices; defaults to an exact or greedy cover.
        #[arg(long)]
        cover: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotNavigable { .. }
            | Error::RoundCap { .. }
            | Error::LikelyUncoverable { .. } => EXIT_BUILD_FAILED,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        msg: msg.into(),
    }
}

type CliResult = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_metric(path: &Path) -> Result<Metric, Failure> {
    io::read_metric_or_points(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn need<T>(v: Option<T>, flag: &str, kind: &str) -> Result<T, Failure> {
    v.ok_or_else(|| usage(format!("{kind} needs --{flag}")))
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

#[allow(clippy::too_many_arguments)]
fn generate(
    kind: Kind,
    n: Option<usize>,
    seed: u64,
    dim: usize,
    copies: Option<usize>,
    gamma: f64,
    spec: Option<PathBuf>,
    shrink: f64,
    out: &Path,
) -> CliResult {
    let text = match kind {
        Kind::BinaryTree => {
            io::write_points(&binary_tree_pointset(need(n, "n", "binary-tree")?, shrink)?)
        }
        Kind::RandomEuclidean => io::write_points(&random_euclidean(
            need(n, "n", "random-euclidean")?,
            dim,
            seed,
        )?),
        Kind::Uniform => io::write_metric(&uniform_metric(need(n, "n", "uniform")?)),
        Kind::PerturbedPath => {
            let inst = perturbed_path(need(n, "n", "perturbed-path")?, seed)?;
            let side = json!({
                "n": inst.metric.n(),
                "hidden_pair": [inst.hidden_pair.0, inst.hidden_pair.1],
                "seed": inst.seed,
            });
            write(&sidecar_path(out), &format!("{side:#}\n"))?;
            io::write_metric(&inst.metric)
        }
        Kind::Gadget => {
            let path = need(spec, "spec", "gadget")?;
            let sc = io::read_setcover(&read(&path)?)?;
            io::write_metric(&gadget_metric(&sc, need(copies, "L", "gadget")?, gamma)?)
        }
    };
    write(out, &text)?;
    Ok(0)
}

fn print_violations(v: &[sparsenav::Violation]) {
    for x in v.iter().take(SHOW_VIOLATIONS) {
        println!("violation {} {}", x.s, x.t);
    }
    if v.len() > SHOW_VIOLATIONS {
        println!("... {} more", v.len() - SHOW_VIOLATIONS);
    }
}

fn cmd_build(
    args: Vec<String>,
    algorithm: Option<String>,
    alpha: f64,
    eps: Option<f64>,
    seed: Option<u64>,
    out: Option<PathBuf>,
) -> CliResult {
    let (alg, metric_path) = match (args.as_slice(), algorithm) {
        ([a, m], None) => (a.clone(), PathBuf::from(m)),
        ([m], Some(a)) => (a, PathBuf::from(m)),
        ([_, _], Some(_)) => {
            return Err(usage(
                "algorithm given both positionally and with --algorithm",
            ))
        }
        _ => return Err(usage("expected `build ALGORITHM METRIC`")),
    };
    let alg: Algorithm = alg.parse()?;
    let m = load_metric(&metric_path)?;
    let (graph, report) = build(alg, &m, alpha, eps, seed)?;
    let out = out.unwrap_or_else(|| metric_path.with_extension("graph"));
    write(&out, &io::write_graph(&graph))?;
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    let violations = verify_naive(&graph, &m, alpha)?;
    if violations.is_empty() {
        Ok(0)
    } else {
        eprintln!(
            "built graph fails verification: {} violations",
            violations.len()
        );
        print_violations(&violations);
        Ok(EXIT_BUILD_FAILED)
    }
}

fn cmd_verify(
    graph: &Path,
    metric: &Path,
    alpha: f64,
    batched: bool,
    eps: Option<f64>,
) -> CliResult {
    let g =
        io::read_graph(&read(graph)?).map_err(|e| usage(format!("{}: {e}", graph.display())))?;
    let m = load_metric(metric)?;
    if g.n() != m.n() {
        return Err(usage(format!(
            "graph has {} vertices, metric has {} points",
            g.n(),
            m.n()
        )));
    }
    let start = Instant::now();
    let violations = verify_naive(&g, &m, alpha)?;
    let naive_secs = start.elapsed().as_secs_f64();
    let (max_deg, _) = g.degree_stats();
    println!(
        "vertices {} edges {} max_out_degree {} alpha {alpha} violations {}",
        g.n(),
        g.edge_count(),
        max_deg,
        violations.len()
    );
    println!("naive_seconds {naive_secs:.6}");
    if batched {
        let eps = need(eps, "eps", "--batched")?;
        let dm = m.discretize(eps)?;
        let start = Instant::now();
        let rounded = verify_nav_batched(&dm, &g, alpha)?;
        let batched_secs = start.elapsed().as_secs_f64();
        let count: usize = rounded.iter().map(Vec::len).sum();
        println!("batched_seconds {batched_secs:.6} rounded_violations {count} eps {eps}");
    }
    print_violations(&violations);
    Ok(if violations.is_empty() {
        0
    } else {
        EXIT_VIOLATIONS
    })
}

fn cmd_bench(suite: &str, out: Option<PathBuf>, seed: u64) -> CliResult {
    let suite: Suite = suite.parse()?;
    let csv = to_csv(&run_suite(suite, seed)?);
    match out {
        Some(p) => write(&p, &csv)?,
        None => print!("{csv}"),
    }
    Ok(0)
}

fn parse_cover(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|w| {
            w.trim()
                .parse::<usize>()
                .map_err(|e| usage(format!("--cover {w:?}: {e}")))
        })
        .collect()
}

fn cmd_reference(
    kind: Kind,
    n: Option<usize>,
    sidecar: Option<PathBuf>,
    spec: Option<PathBuf>,
    copies: Option<usize>,
    cover: Option<String>,
    out: &Path,
) -> CliResult {
    let g: NavGraph = match kind {
        Kind::BinaryTree => binary_tree_reference_graph(need(n, "n", "binary-tree")?)?,
        Kind::PerturbedPath => {
            let path = need(sidecar, "sidecar", "perturbed-path")?;
            let v: serde_json::Value = serde_json::from_str(&read(&path)?)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let field = |k: &str| v[k].as_u64().map(|x| x as usize);
            let pair = |i: usize| v["hidden_pair"][i].as_u64().map(|x| x as usize);
            let (Some(n), Some(i), Some(j)) = (field("n"), pair(0), pair(1)) else {
                return Err(usage(format!(
                    "{}: expected n and hidden_pair",
                    path.display()
                )));
            };
            let inst = perturbed_path_with_pair(n, (i, j), field("seed").unwrap_or(0) as u64)?;
            perturbed_path_reference_graph(&inst)?
        }
        Kind::Gadget => {
            let path = need(spec, "spec", "gadget")?;
            let sc = io::read_setcover(&read(&path)?)?;
            let cover = match cover {
                Some(c) => parse_cover(&c)?,
                None if sc.n_elements() <= MAX_BRUTE_ELEMENTS && sc.n_sets() <= MAX_BRUTE_SETS => {
                    brute_force_min_cover_sets(&sc)?
                }
                None => greedy_cover(&sc)?.sets,
            };
            gadget_reference_graph(&sc, need(copies, "L", "gadget")?, &cover)?
        }
        Kind::RandomEuclidean | Kind::Uniform => {
            return Err(usage("no reference graph for this kind; use `build`"));
        }
    };
    write(out, &io::write_graph(&g))?;
    println!(
        "edges {} max_out_degree {}",
        g.edge_count(),
        g.max_out_degree()
    );
    Ok(0)
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Generate {
            kind,
            n,
            seed,
            dim,
            copies,
            gamma,
            spec,
            shrink,
            out,
        } => generate(kind, n, seed, dim, copies, gamma, spec, shrink, &out),
        Command::Build {
            args,
            algorithm,
            alpha,
            eps,
            seed,
            out,
        } => cmd_build(args, algorithm, alpha, eps, seed, out),
        Command::Verify {
            graph,
            metric,
            alpha,
            batched,
            eps,
        } => cmd_verify(&graph, &metric, alpha, batched, eps),
        Command::Bench { suite, out, seed } => cmd_bench(&suite, out, seed),
        Command::Reference {
            kind,
            n,
            sidecar,
            spec,
            copies,
            cover,
            out,
        } => cmd_reference(kind, n, sidecar, spec, copies, cover, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
