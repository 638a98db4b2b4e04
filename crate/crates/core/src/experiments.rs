//! Erdős–Rényi ordering experiments and exhaustive checks of the extremal
//! communication-time bounds.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::comm_time::{
    best_ordering_exact, comm_time, comm_time_with, connected_distances, dn_best_ordering,
    worst_directed_cycle_ordering, worst_ordering_exact, EXACT_MAX_N,
};
use crate::dfs::{run_ordering_only, Termination};
use crate::error::{Error, Result};
use crate::generators::{
    connected_erdos_renyi_with, enumerate_connected_graphs, gen_directed_cycle, gen_dn, gen_star,
    DEFAULT_MAX_ATTEMPTS,
};
use crate::graph::Graph;
use crate::ordering::random_ordering_with;

/// Ordering producers compared by [`run_er_experiment`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExperimentMethod {
    #[serde(rename = "random")]
    Random,
    #[serde(rename = "best")]
    BestExact,
    #[serde(rename = "alg1")]
    Algorithm1,
}

impl ExperimentMethod {
    pub const ALL: [ExperimentMethod; 3] = [
        ExperimentMethod::Random,
        ExperimentMethod::BestExact,
        ExperimentMethod::Algorithm1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentMethod::Random => "random",
            ExperimentMethod::BestExact => "best",
            ExperimentMethod::Algorithm1 => "alg1",
        }
    }
}

impl fmt::Display for ExperimentMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(ExperimentMethod::Random),
            "best" | "best-exact" => Ok(ExperimentMethod::BestExact),
            "alg1" | "algorithm1" => Ok(ExperimentMethod::Algorithm1),
            other => Err(Error::argument(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub p: f64,
    pub samples: usize,
    pub methods: Vec<ExperimentMethod>,
    pub rng_seed: u64,
    pub algorithm1_variant: Termination,
    pub max_attempts: usize,
}

impl ExperimentConfig {
    pub fn new(
        n: usize,
        p: f64,
        samples: usize,
        methods: Vec<ExperimentMethod>,
        rng_seed: u64,
    ) -> Self {
        ExperimentConfig {
            n,
            p,
            samples,
            methods,
            rng_seed,
            algorithm1_variant: Termination::OrderEqualsN,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::argument("n must be at least 1"));
        }
        if self.samples == 0 {
            return Err(Error::argument("samples must be at least 1"));
        }
        if self.methods.is_empty() {
            return Err(Error::argument("at least one method is required"));
        }
        if !(self.p > 0.0 && self.p <= 1.0) {
            return Err(Error::argument(format!(
                "edge probability {} must lie in (0, 1]",
                self.p
            )));
        }
        if self.methods.contains(&ExperimentMethod::BestExact) && self.n > EXACT_MAX_N {
            return Err(Error::budget(format!(
                "best-exact is capped at n = {EXACT_MAX_N}, got {}",
                self.n
            )));
        }
        Ok(())
    }
}

/// One `(sample, method)` measurement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub sample_index: usize,
    pub graph_edges: String,
    pub method: ExperimentMethod,
    pub time: usize,
    pub seed_vertex: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub min: usize,
    pub max: usize,
    pub mean: f64,
    pub median: f64,
}

impl Summary {
    pub fn of(values: &[usize]) -> Option<Summary> {
        if values.is_empty() {
            return None;
        }
        let mut sorted = values.to_vec();
        sorted.sort_unstable();
        let len = sorted.len();
        let median = if len % 2 == 1 {
            sorted[len / 2] as f64
        } else {
            (sorted[len / 2 - 1] + sorted[len / 2]) as f64 / 2.0
        };
        Some(Summary {
            min: sorted[0],
            max: sorted[len - 1],
            mean: sorted.iter().sum::<usize>() as f64 / len as f64,
            median,
        })
    }
}

/// Communication times per method, in sample order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    pub times: BTreeMap<ExperimentMethod, Vec<usize>>,
    pub summary: BTreeMap<ExperimentMethod, Summary>,
}

impl Distribution {
    pub fn mean(&self, method: ExperimentMethod) -> Option<f64> {
        self.summary.get(&method).map(|s| s.mean)
    }

    /// Integer-binned counts `(time, count)` for a method.
    pub fn histogram(&self, method: ExperimentMethod) -> Vec<(usize, usize)> {
        let mut bins = BTreeMap::new();
        for &t in self.times.get(&method).into_iter().flatten() {
            *bins.entry(t).or_insert(0) += 1;
        }
        bins.into_iter().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub records: Vec<SampleRecord>,
    pub distribution: Distribution,
    /// Disconnected samples discarded before each accepted graph, summed.
    pub rejected_samples: usize,
}

impl ExperimentResult {
    /// `sample_index,graph_edges,method,time,seed_vertex` with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("sample_index,graph_edges,method,time,seed_vertex\n");
        for r in &self.records {
            let seed = r.seed_vertex.map(|s| s.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.sample_index, r.graph_edges, r.method, r.time, seed
            ));
        }
        out
    }

    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::json!({
            "config": self.config,
            "summary": self.distribution.summary.iter()
                .map(|(m, s)| (m.name().to_string(), serde_json::to_value(s).expect("plain data")))
                .collect::<serde_json::Map<_, _>>(),
            "rejected_samples": self.rejected_samples,
        })
    }

    /// Histogram text, one `method time count` line per non-empty bin,
    /// usable directly as gnuplot data.
    pub fn histogram_text(&self) -> String {
        let mut out = String::new();
        for method in self.distribution.times.keys() {
            out.push_str(&format!("# {method}\n"));
            for (t, c) in self.distribution.histogram(*method) {
                out.push_str(&format!("{method} {t} {c}\n"));
            }
        }
        out
    }
}

/// Edges as `u-v` tokens separated by spaces (CSV-safe).
pub fn edges_field(g: &Graph) -> String {
    g.edges()
        .map(|(u, v)| format!("{u}-{v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

struct SampleOutcome {
    records: Vec<SampleRecord>,
    rejected: usize,
}

fn run_sample(cfg: &ExperimentConfig, index: usize) -> Result<SampleOutcome> {
    // one independent ChaCha stream per sample keeps results identical under any scheduling
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    rng.set_stream(index as u64);
    let (g, rejected) = connected_erdos_renyi_with(cfg.n, cfg.p, &mut rng, cfg.max_attempts)?;
    let random = random_ordering_with(cfg.n, &mut rng)?;
    let seed_vertex = rng.gen_range(0..cfg.n);
    let dist = connected_distances(&g)?;
    let edges = edges_field(&g);

    let mut records = Vec::with_capacity(cfg.methods.len());
    for &method in &cfg.methods {
        let (time, seed) = match method {
            ExperimentMethod::Random => (comm_time_with(&dist, &random).total(), None),
            ExperimentMethod::BestExact => (best_ordering_exact(&g)?.time.total(), None),
            ExperimentMethod::Algorithm1 => {
                let trace = run_ordering_only(&g, seed_vertex, cfg.algorithm1_variant)?;
                (trace.t, Some(seed_vertex))
            }
        };
        records.push(SampleRecord {
            sample_index: index,
            graph_edges: edges.clone(),
            method,
            time,
            seed_vertex: seed,
        });
    }
    Ok(SampleOutcome { records, rejected })
}

/// Samples connected G(n, p) graphs and measures every requested method.
pub fn run_er_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let mut methods = cfg.methods.clone();
    methods.dedup();
    let cfg = ExperimentConfig {
        methods,
        ..cfg.clone()
    };
    let outcomes = (0..cfg.samples)
        .into_par_iter()
        .map(|i| run_sample(&cfg, i))
        .collect::<Result<Vec<_>>>()?;

    let rejected_samples = outcomes.iter().map(|o| o.rejected).sum();
    log::info!(
        "sampled {} connected G({}, {}) graphs, {rejected_samples} disconnected draws rejected",
        cfg.samples,
        cfg.n,
        cfg.p
    );
    let records: Vec<SampleRecord> = outcomes.into_iter().flat_map(|o| o.records).collect();
    let mut times: BTreeMap<ExperimentMethod, Vec<usize>> = BTreeMap::new();
    for r in &records {
        times.entry(r.method).or_default().push(r.time);
    }
    let summary = times
        .iter()
        .map(|(m, v)| (*m, Summary::of(v).expect("samples >= 1")))
        .collect();
    Ok(ExperimentResult {
        config: cfg,
        records,
        distribution: Distribution { times, summary },
        rejected_samples,
    })
}

/// Extremal best/worst communication times over all connected graphs of one size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremesReport {
    pub n: usize,
    pub graphs_checked: usize,
    pub max_tmin: usize,
    pub max_tmax: usize,
    pub expected_tmin: usize,
    pub expected_tmax: usize,
    /// Edge lists of every graph attaining `max_tmin`.
    pub tmin_witnesses: Vec<String>,
    pub tmax_witnesses: Vec<String>,
}

impl ExtremesReport {
    pub fn ok(&self) -> bool {
        self.max_tmin == self.expected_tmin && self.max_tmax == self.expected_tmax
    }
}

impl fmt::Display for ExtremesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}) {}",
            self.max_tmin,
            self.max_tmax,
            if self.ok() { "OK" } else { "FAIL" }
        )
    }
}

fn extremes(n: usize, directed: bool, expected: (usize, usize)) -> Result<ExtremesReport> {
    let graphs: Vec<Graph> = enumerate_connected_graphs(n, directed)?.collect();
    let values = graphs
        .par_iter()
        .map(|g| {
            Ok((
                best_ordering_exact(g)?.time.total(),
                worst_ordering_exact(g)?.time.total(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let max_tmin = values.iter().map(|v| v.0).max().unwrap_or(0);
    let max_tmax = values.iter().map(|v| v.1).max().unwrap_or(0);
    let witnesses = |pick: fn(&(usize, usize)) -> usize, max: usize| {
        graphs
            .iter()
            .zip(&values)
            .filter(|(_, v)| pick(v) == max)
            .map(|(g, _)| edges_field(g))
            .collect()
    };
    Ok(ExtremesReport {
        n,
        graphs_checked: graphs.len(),
        max_tmin,
        max_tmax,
        expected_tmin: expected.0,
        expected_tmax: expected.1,
        tmin_witnesses: witnesses(|v| v.0, max_tmin),
        tmax_witnesses: witnesses(|v| v.1, max_tmax),
    })
}

/// Exhaustive check over connected undirected graphs: max best time `2n - 4`,
/// max worst time `⌊n²/2⌋ - 1`.
pub fn verify_theorem1(n: usize) -> Result<ExtremesReport> {
    if !(3..=6).contains(&n) {
        return Err(Error::budget(format!(
            "exhaustive undirected check needs 3 <= n <= 6, got {n}"
        )));
    }
    extremes(n, false, (2 * n - 4, n * n / 2 - 1))
}

/// `⌊n/2⌋·⌈n/2⌉`
pub fn dn_bound(n: usize) -> usize {
    (n / 2) * n.div_ceil(2)
}

/// Directed constructions evaluated at one size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionCheck {
    pub n: usize,
    pub cycle_worst: usize,
    pub dn_best: usize,
    /// Exact optimum over all orderings of `D_n`, when within the search cap.
    pub dn_exact_min: Option<usize>,
}

impl ConstructionCheck {
    pub fn ok(&self) -> bool {
        self.cycle_worst == (self.n - 1).pow(2)
            && self.dn_best == dn_bound(self.n)
            && self.dn_exact_min.is_none_or(|m| m == self.dn_best)
    }
}

pub fn check_constructions(n: usize) -> Result<ConstructionCheck> {
    let cycle_worst =
        comm_time(&gen_directed_cycle(n)?, &worst_directed_cycle_ordering(n)?)?.total();
    let dn = gen_dn(n)?;
    let dn_best = comm_time(&dn, &dn_best_ordering(n)?)?.total();
    let dn_exact_min = if n <= EXACT_MAX_N {
        Some(best_ordering_exact(&dn)?.time.total())
    } else {
        None
    };
    Ok(ConstructionCheck {
        n,
        cycle_worst,
        dn_best,
        dn_exact_min,
    })
}

/// Size range of the directed constructions checked alongside [`verify_prop2`].
pub const CONSTRUCTION_RANGE: RangeInclusive<usize> = 3..=10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop2Report {
    pub exhaustive: ExtremesReport,
    pub constructions: Vec<ConstructionCheck>,
}

impl Prop2Report {
    pub fn ok(&self) -> bool {
        self.exhaustive.ok() && self.constructions.iter().all(ConstructionCheck::ok)
    }
}

impl fmt::Display for Prop2Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}) {}",
            self.exhaustive.max_tmin,
            self.exhaustive.max_tmax,
            if self.ok() { "OK" } else { "FAIL" }
        )
    }
}

/// Exhaustive check over strongly connected digraphs (max best time
/// `⌊n/2⌋·⌈n/2⌉`, max worst `(n-1)²`) plus the cycle and `D_n` constructions.
pub fn verify_prop2(n: usize) -> Result<Prop2Report> {
    if !(3..=4).contains(&n) {
        return Err(Error::budget(format!(
            "exhaustive directed check needs 3 <= n <= 4, got {n}"
        )));
    }
    let exhaustive = extremes(n, true, (dn_bound(n), (n - 1).pow(2)))?;
    let constructions = CONSTRUCTION_RANGE
        .map(check_constructions)
        .collect::<Result<Vec<_>>>()?;
    Ok(Prop2Report {
        exhaustive,
        constructions,
    })
}

/// Parameters of the token-traversal bound check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prop1Config {
    pub samples: usize,
    pub n_range: RangeInclusive<usize>,
    /// Edge probability; `None` picks `min(1, 2 ln n / n)` per sampled size.
    pub p: Option<f64>,
    /// Seeds tried per graph: every vertex when `n <= max_seeds`, else this many sampled.
    pub max_seeds: usize,
    pub rng_seed: u64,
}

impl Prop1Config {
    pub fn new(samples: usize, n_range: RangeInclusive<usize>, rng_seed: u64) -> Self {
        Prop1Config {
            samples,
            n_range,
            p: None,
            max_seeds: usize::MAX,
            rng_seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop1Report {
    pub graphs_checked: usize,
    pub runs: usize,
    /// `(edge list, seed, t)` of every run with `t > 2n - 2`.
    pub violations: Vec<(String, usize, usize)>,
    /// Star sizes where some seed did not give exactly `2n - 2`.
    pub star_mismatches: Vec<usize>,
}

impl Prop1Report {
    pub fn ok(&self) -> bool {
        self.violations.is_empty() && self.star_mismatches.is_empty()
    }
}

impl fmt::Display for Prop1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} graphs, {} runs, {} violations {}",
            self.graphs_checked,
            self.runs,
            self.violations.len(),
            if self.ok() { "OK" } else { "FAIL" }
        )
    }
}

/// Runs the token traversal (both termination variants) on stars and on
/// sampled connected G(n, p) graphs and checks `t <= 2n - 2`, with equality on
/// stars under the standard variant.
pub fn verify_prop1(cfg: &Prop1Config) -> Result<Prop1Report> {
    let (lo, hi) = (*cfg.n_range.start(), *cfg.n_range.end());
    if lo == 0 || lo > hi {
        return Err(Error::argument(format!("bad size range {lo}..={hi}")));
    }
    let star_mismatches = (lo.max(3)..=hi)
        .filter(|&n| {
            let g = gen_star(n).expect("n >= 3");
            (0..n).any(|s| {
                run_ordering_only(&g, s, Termination::Standard).map(|t| t.t) != Ok(2 * n - 2)
            })
        })
        .collect();

    let per_graph = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
            rng.set_stream(i as u64);
            let n = rng.gen_range(lo..=hi);
            let p = cfg
                .p
                .unwrap_or_else(|| (2.0 * (n as f64).ln() / n as f64).clamp(0.05, 1.0));
            let (g, _) = connected_erdos_renyi_with(n, p, &mut rng, DEFAULT_MAX_ATTEMPTS)?;
            let seeds: Vec<usize> = if n <= cfg.max_seeds {
                (0..n).collect()
            } else {
                (0..cfg.max_seeds).map(|_| rng.gen_range(0..n)).collect()
            };
            let mut violations = Vec::new();
            let mut runs = 0;
            for &s in &seeds {
                for variant in [Termination::Standard, Termination::OrderEqualsN] {
                    let t = run_ordering_only(&g, s, variant)?.t;
                    runs += 1;
                    if t > 2 * n - 2 {
                        violations.push((edges_field(&g), s, t));
                    }
                }
            }
            Ok((runs, violations))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(Prop1Report {
        graphs_checked: cfg.samples,
        runs: per_graph.iter().map(|r| r.0).sum(),
        violations: per_graph.into_iter().flat_map(|r| r.1).collect(),
        star_mismatches,
    })
}
