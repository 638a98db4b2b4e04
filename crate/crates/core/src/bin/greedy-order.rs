use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use greedy_order::comm_time::{self, Method, OrderingReport};
use greedy_order::dfs::{run_ordering_only, Termination};
use greedy_order::experiments::{
    run_er_experiment, verify_prop1, verify_prop2, verify_theorem1, ExperimentConfig,
    ExperimentMethod, Prop1Config,
};
use greedy_order::generators::{
    gen_complete, gen_connected_erdos_renyi, gen_directed_cycle, gen_dn, gen_erdos_renyi, gen_line,
    gen_star,
};
use greedy_order::submodular::{brute_force_opt, greedy_execute, SubmodularProblem};
use greedy_order::{random_ordering, run_algorithm1, Error, Graph, Ordering};

#[derive(Parser)]
#[command(
    name = "greedy-order",
    version,
    about = "Agent orderings for the greedy algorithm on communication graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Line,
    Star,
    Complete,
    Dcycle,
    Dn,
    Er,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderMethod {
    Best,
    Worst,
    Walk,
    Alg1,
    Random,
    LineWorst,
    CycleWorst,
    DnBest,
    Identity,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Standard,
    OrderN,
}

impl From<Variant> for Termination {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Standard => Termination::Standard,
            Variant::OrderN => Termination::OrderEqualsN,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Claim {
    Theorem1,
    Prop1,
    Prop2,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph in edge-list format.
    Gen {
        kind: GraphKind,
        n: usize,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, visible_alias = "seed", default_value_t = 0)]
        rng: u64,
        /// Resample Erdős–Rényi graphs until connected.
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Communication time of an ordering on a graph.
    Time { graph: PathBuf, ordering: PathBuf },
    /// Produce an ordering with the chosen method.
    Order {
        graph: PathBuf,
        #[arg(long, value_enum)]
        method: OrderMethod,
        #[arg(long, default_value_t = 0)]
        rng: u64,
        #[arg(long, default_value_t = 0)]
        seed_vertex: usize,
        #[arg(long, value_enum, default_value_t = Variant::Standard)]
        variant: Variant,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the ordered greedy on a coverage problem.
    RunGreedy {
        graph: PathBuf,
        problem: PathBuf,
        /// Ordering file; overrides --method.
        #[arg(long)]
        ordering: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OrderMethod::Alg1)]
        method: OrderMethod,
        #[arg(long, default_value_t = 0)]
        rng: u64,
        #[arg(long, default_value_t = 0)]
        seed_vertex: usize,
        #[arg(long, value_enum, default_value_t = Variant::Standard)]
        variant: Variant,
        /// Write a JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Erdős–Rényi ordering experiment.
    Experiment {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        samples: usize,
        #[arg(long, value_delimiter = ',', default_value = "random,best,alg1")]
        methods: Vec<String>,
        #[arg(long, default_value_t = 0)]
        rng: u64,
        #[arg(long, value_enum, default_value_t = Variant::OrderN)]
        variant: Variant,
        /// Output prefix: writes `<out>.csv` and `<out>.json`; CSV goes to stdout otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write `<out>.hist` with integer-binned counts.
        #[arg(long)]
        histogram: bool,
    },
    /// Exhaustive or sampled checks of the communication-time bounds.
    Verify {
        claim: Claim,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 5)]
        n_min: usize,
        #[arg(long, default_value_t = 40)]
        n_max: usize,
        #[arg(long, default_value_t = 20)]
        max_seeds: usize,
        #[arg(long, default_value_t = 0)]
        rng: u64,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Io(PathBuf, std::io::Error),
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(Error::Budget(_)) => 3,
            CliError::Lib(Error::Argument(_) | Error::Parse(_)) | CliError::Io(..) => 2,
            CliError::Lib(_) | CliError::Failed(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Failed(msg) => f.write_str(msg),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &FsPath) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_owned(), e))
}

fn write(path: &FsPath, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::Io(path.to_owned(), e))
}

fn load_graph(path: &FsPath) -> CliResult<Graph> {
    Ok(Graph::parse_edge_list(&read(path)?)?)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Gen {
            kind,
            n,
            p,
            rng,
            connected,
            out,
        } => cmd_gen(kind, n, p, rng, connected, out),
        Command::Time { graph, ordering } => cmd_time(&graph, &ordering),
        Command::Order {
            graph,
            method,
            rng,
            seed_vertex,
            variant,
            out,
        } => cmd_order(&graph, method, rng, seed_vertex, variant.into(), out),
        Command::RunGreedy {
            graph,
            problem,
            ordering,
            method,
            rng,
            seed_vertex,
            variant,
            out,
        } => cmd_run_greedy(
            &graph,
            &problem,
            ordering,
            method,
            rng,
            seed_vertex,
            variant.into(),
            out,
        ),
        Command::Experiment {
            n,
            p,
            samples,
            methods,
            rng,
            variant,
            out,
            histogram,
        } => cmd_experiment(n, p, samples, &methods, rng, variant.into(), out, histogram),
        Command::Verify {
            claim,
            n,
            samples,
            n_min,
            n_max,
            max_seeds,
            rng,
            out,
        } => cmd_verify(claim, n, samples, n_min, n_max, max_seeds, rng, out),
    }
}

fn cmd_gen(
    kind: GraphKind,
    n: usize,
    p: Option<f64>,
    rng: u64,
    connected: bool,
    out: Option<PathBuf>,
) -> CliResult<()> {
    let g = match kind {
        GraphKind::Line => gen_line(n)?,
        GraphKind::Star => gen_star(n)?,
        GraphKind::Complete => gen_complete(n)?,
        GraphKind::Dcycle => gen_directed_cycle(n)?,
        GraphKind::Dn => gen_dn(n)?,
        GraphKind::Er => {
            let p = p.ok_or_else(|| Error::Argument("`gen er` needs --p".into()))?;
            if connected {
                gen_connected_erdos_renyi(n, p, rng)?
            } else {
                gen_erdos_renyi(n, p, rng)?
            }
        }
    };
    let summary = format!("n {} edges {}", g.n(), g.edge_count());
    match out {
        Some(path) => {
            write(&path, &g.to_edge_list())?;
            println!("{summary}");
        }
        None => {
            print!("{}", g.to_edge_list());
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn cmd_time(graph: &FsPath, ordering: &FsPath) -> CliResult<()> {
    let g = load_graph(graph)?;
    let pi: Ordering = read(ordering)?.parse()?;
    let t = comm_time::comm_time(&g, &pi)?;
    println!("total {}", t.total());
    println!("{}", t.to_csv_row());
    Ok(())
}

/// Ordering by `method`; for `alg1` also returns the traversal counter.
fn produce_ordering(
    g: &Graph,
    method: OrderMethod,
    rng: u64,
    seed_vertex: usize,
    variant: Termination,
) -> CliResult<(OrderingReport, Option<usize>)> {
    let n = g.n();
    let report = |o: Ordering, m: Method| OrderingReport::evaluate(g, o, m);
    Ok(match method {
        OrderMethod::Best => (comm_time::best_ordering_exact(g)?, None),
        OrderMethod::Worst => (comm_time::worst_ordering_exact(g)?, None),
        OrderMethod::Walk => (comm_time::best_ordering_spanning_walk(g)?.0, None),
        OrderMethod::Alg1 => {
            let trace = run_ordering_only(g, seed_vertex, variant)?;
            (report(trace.ordering, Method::Algorithm1)?, Some(trace.t))
        }
        OrderMethod::Random => (report(random_ordering(n, rng)?, Method::Random)?, None),
        OrderMethod::LineWorst => (
            report(
                comm_time::worst_line_ordering(n)?,
                Method::ConstructedWorstLine,
            )?,
            None,
        ),
        OrderMethod::CycleWorst => (
            report(
                comm_time::worst_directed_cycle_ordering(n)?,
                Method::ConstructedWorstCycle,
            )?,
            None,
        ),
        OrderMethod::DnBest => (
            report(comm_time::dn_best_ordering(n)?, Method::ConstructedBestDn)?,
            None,
        ),
        OrderMethod::Identity => (report(Ordering::identity(n)?, Method::Given)?, None),
    })
}

fn cmd_order(
    graph: &FsPath,
    method: OrderMethod,
    rng: u64,
    seed_vertex: usize,
    variant: Termination,
    out: Option<PathBuf>,
) -> CliResult<()> {
    let g = load_graph(graph)?;
    let (report, t) = produce_ordering(&g, method, rng, seed_vertex, variant)?;
    let line = format!("{}\n", report.ordering);
    match &out {
        Some(path) => write(path, &line)?,
        None => print!("ordering {line}"),
    }
    println!("total {}", report.time.total());
    println!("{}", report.time.to_csv_row());
    if let Some(t) = t {
        println!("t {t}");
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_run_greedy(
    graph: &FsPath,
    problem: &FsPath,
    ordering: Option<PathBuf>,
    method: OrderMethod,
    rng: u64,
    seed_vertex: usize,
    variant: Termination,
    out: Option<PathBuf>,
) -> CliResult<()> {
    let g = load_graph(graph)?;
    let problem = SubmodularProblem::from_json(&read(problem)?)?;
    if problem.agent_count() != g.n() {
        return Err(Error::Argument(format!(
            "problem has {} agents but the graph has {} vertices",
            problem.agent_count(),
            g.n()
        ))
        .into());
    }
    let (pi, t) = match ordering {
        Some(path) => (read(&path)?.parse::<Ordering>()?, None),
        None if method == OrderMethod::Alg1 => {
            let trace = run_algorithm1(&g, seed_vertex, Some(&problem), variant)?;
            (trace.ordering, Some(trace.t))
        }
        None => {
            let (report, t) = produce_ordering(&g, method, rng, seed_vertex, variant)?;
            (report.ordering, t)
        }
    };
    let (joint, value) = greedy_execute(&problem, &pi)?;
    println!("greedy {value}");
    let mut report = json!({
        "ordering": pi.labels(),
        "greedy_value": value,
        "greedy_choice": joint.choice(),
    });
    if let Some(t) = t {
        report["t"] = json!(t);
    }
    match brute_force_opt(&problem) {
        Ok((opt_joint, opt)) => {
            let degenerate = opt <= 0.0;
            let ratio = if degenerate { 1.0 } else { value / opt };
            println!("optimum {opt}");
            println!("ratio {ratio}");
            report["optimum"] = json!(opt);
            report["optimum_choice"] = json!(opt_joint.choice());
            report["ratio"] = json!(ratio);
            report["zero_optimum"] = json!(degenerate);
        }
        Err(Error::Budget(msg)) => {
            log::warn!("optimum skipped: {msg}");
        }
        Err(e) => return Err(e.into()),
    }
    if let Some(path) = out {
        write(
            &path,
            &serde_json::to_string_pretty(&report).expect("plain data"),
        )?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_experiment(
    n: usize,
    p: f64,
    samples: usize,
    methods: &[String],
    rng: u64,
    variant: Termination,
    out: Option<PathBuf>,
    histogram: bool,
) -> CliResult<()> {
    let methods = methods
        .iter()
        .map(|m| m.trim().parse::<ExperimentMethod>())
        .collect::<Result<Vec<_>, _>>()?;
    let mut cfg = ExperimentConfig::new(n, p, samples, methods, rng);
    cfg.algorithm1_variant = variant;
    let result = run_er_experiment(&cfg)?;
    let summary = serde_json::to_string_pretty(&result.summary_json()).expect("plain data");
    match out {
        Some(prefix) => {
            write(&prefix.with_extension("csv"), &result.to_csv())?;
            write(&prefix.with_extension("json"), &summary)?;
            if histogram {
                write(&prefix.with_extension("hist"), &result.histogram_text())?;
            }
            for (method, s) in &result.distribution.summary {
                println!(
                    "{method}: min {} max {} mean {:.3} median {}",
                    s.min, s.max, s.mean, s.median
                );
            }
        }
        None => {
            print!("{}", result.to_csv());
            eprintln!("{summary}");
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    claim: Claim,
    n: Option<usize>,
    samples: usize,
    n_min: usize,
    n_max: usize,
    max_seeds: usize,
    rng: u64,
    out: Option<PathBuf>,
) -> CliResult<()> {
    let need_n = || n.ok_or_else(|| CliError::Lib(Error::Argument("--n is required".into())));
    let (ok, line, report) = match claim {
        Claim::Theorem1 => {
            let r = verify_theorem1(need_n()?)?;
            (r.ok(), r.to_string(), serde_json::to_value(&r))
        }
        Claim::Prop2 => {
            let r = verify_prop2(need_n()?)?;
            (r.ok(), r.to_string(), serde_json::to_value(&r))
        }
        Claim::Prop1 => {
            let mut cfg = Prop1Config::new(samples, n_min..=n_max, rng);
            cfg.max_seeds = max_seeds;
            let r = verify_prop1(&cfg)?;
            (r.ok(), r.to_string(), serde_json::to_value(&r))
        }
    };
    println!("{line}");
    if let Some(path) = out {
        let report = report.expect("plain data");
        write(
            &path,
            &serde_json::to_string_pretty(&report).expect("plain data"),
        )?;
    }
    if ok {
        Ok(())
    } else {
        Err(CliError::Failed("verification failed".into()))
    }
}
