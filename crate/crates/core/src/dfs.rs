//! Distributed near-optimal ordering: a single token performs a depth-first
//! traversal of the communication graph, labeling vertices on first visit and
//! running the greedy step at each newly labeled agent.
//!
//! Every hop of the token (forward to an unlabeled neighbor, or back to the
//! parent) costs one time step. The recursion of the distributed procedure is
//! unrolled into a loop so long lines do not exhaust the call stack.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::ordering::Ordering;
use crate::submodular::{ElementSet, SetFunction, SubmodularProblem};

/// When the token stops.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    /// Stop at a labeled vertex with no unlabeled neighbor and no parent.
    #[default]
    Standard,
    /// Stop as soon as some vertex receives label `n`.
    #[serde(rename = "order-n")]
    OrderEqualsN,
}

impl std::str::FromStr for Termination {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Termination::Standard),
            "order-n" | "order-equals-n" => Ok(Termination::OrderEqualsN),
            other => Err(Error::argument(format!(
                "unknown termination variant {other:?}"
            ))),
        }
    }
}

impl std::fmt::Display for Termination {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Termination::Standard => "standard",
            Termination::OrderEqualsN => "order-n",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EventKind {
    InitForward,
    Backtrack,
}

impl std::fmt::Display for EventKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EventKind::InitForward => "init-forward",
            EventKind::Backtrack => "backtrack",
        })
    }
}

/// One token hop; `time` is the counter value after the hop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Event {
    pub time: usize,
    pub from: Vertex,
    pub to: Vertex,
    pub kind: EventKind,
}

/// A greedy decision carried in the token. `choice` is `None` when the run
/// only computes an ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ActionRecord {
    pub agent: Vertex,
    pub choice: Option<usize>,
}

/// Local storage of one agent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentState {
    /// Length of the prefix of the token's action list this agent has seen.
    pub actions_known: usize,
    pub order: Option<usize>,
    pub parent: Option<Vertex>,
    pub neighborhood: Vec<Vertex>,
    pub done: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunTrace {
    pub t: usize,
    pub seed: Vertex,
    pub variant: Termination,
    /// Vertices in the order they were labeled (all of them for a connected graph).
    pub ordering: Ordering,
    pub events: Vec<Event>,
    /// Greedy decisions indexed by label - 1.
    pub greedy_actions: Vec<ActionRecord>,
    pub agents: Vec<AgentState>,
}

impl RunTrace {
    /// Forward hops (one per non-seed vertex).
    pub fn forward_count(&self) -> usize {
        self.count(EventKind::InitForward)
    }

    /// Hops back to a parent.
    pub fn backtrack_count(&self) -> usize {
        self.count(EventKind::Backtrack)
    }

    fn count(&self, kind: EventKind) -> usize {
        self.events.iter().filter(|e| e.kind == kind).count()
    }

    /// `time,from,to,kind` with a header line.
    pub fn events_csv(&self) -> String {
        let mut out = String::from("time,from,to,kind\n");
        for e in &self.events {
            out.push_str(&format!("{},{},{},{}\n", e.time, e.from, e.to, e.kind));
        }
        out
    }

    pub fn summary(&self) -> TraceSummary {
        TraceSummary {
            t: self.t,
            n: self.ordering.n(),
            seed: self.seed,
            ordering: self.ordering.labels().to_vec(),
            variant: self.variant,
        }
    }
}

/// JSON summary of a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceSummary {
    pub t: usize,
    pub n: usize,
    pub seed: Vertex,
    pub ordering: Vec<usize>,
    pub variant: Termination,
}

/// Picks which unlabeled neighbor receives the token; `candidates` is
/// non-empty and ascending.
pub trait NeighborPolicy {
    fn pick(&mut self, at: Vertex, candidates: &[Vertex]) -> Vertex;
}

/// The smallest unlabeled neighbor.
#[derive(Debug, Clone, Copy, Default)]
pub struct SmallestId;

impl NeighborPolicy for SmallestId {
    fn pick(&mut self, _at: Vertex, candidates: &[Vertex]) -> Vertex {
        candidates[0]
    }
}

impl<F: FnMut(Vertex, &[Vertex]) -> Vertex> NeighborPolicy for F {
    fn pick(&mut self, at: Vertex, candidates: &[Vertex]) -> Vertex {
        self(at, candidates)
    }
}

enum Step {
    Init { v: Vertex, parent: Option<Vertex> },
    Message { v: Vertex },
}

/// Runs the token traversal from `seed` with the smallest-id neighbor policy.
pub fn run_algorithm1<F: SetFunction>(
    g: &Graph,
    seed: Vertex,
    problem: Option<&SubmodularProblem<F>>,
    variant: Termination,
) -> Result<RunTrace> {
    run_algorithm1_with_policy(g, seed, problem, variant, &mut SmallestId)
}

/// Ordering-only run (no greedy objective).
pub fn run_ordering_only(g: &Graph, seed: Vertex, variant: Termination) -> Result<RunTrace> {
    run_algorithm1::<crate::submodular::CoverageObjective>(g, seed, None, variant)
}

pub fn run_algorithm1_with_policy<F: SetFunction, P: NeighborPolicy + ?Sized>(
    g: &Graph,
    seed: Vertex,
    problem: Option<&SubmodularProblem<F>>,
    variant: Termination,
    policy: &mut P,
) -> Result<RunTrace> {
    if g.is_directed() {
        return Err(Error::argument(
            "the token traversal is defined for undirected graphs",
        ));
    }
    g.check_vertex(seed)?;
    if !g.is_connected() {
        return Err(Error::domain("the token traversal needs a connected graph"));
    }
    let n = g.n();
    if let Some(p) = problem {
        if p.agent_count() != n {
            return Err(Error::argument(format!(
                "problem has {} agents for a graph on {n} vertices",
                p.agent_count()
            )));
        }
    }

    let mut agents: Vec<AgentState> = (0..n)
        .map(|v| AgentState {
            actions_known: 0,
            order: None,
            parent: None,
            neighborhood: g.neighbors(v).to_vec(),
            done: false,
        })
        .collect();
    let mut t = 0;
    let mut events = Vec::new();
    // the token: actions chosen so far, plus the union of their subsets
    let mut alpha: Vec<ActionRecord> = Vec::with_capacity(n);
    let mut covered = ElementSet::EMPTY;
    let mut sequence = Vec::with_capacity(n);
    let mut candidates = Vec::new();

    let mut step = Step::Init {
        v: seed,
        parent: None,
    };
    loop {
        step = match step {
            Step::Init { v, parent } => {
                let label = alpha.len() + 1;
                let agent = &mut agents[v];
                agent.done = true;
                agent.order = Some(label);
                agent.parent = parent;
                let choice = problem.map(|p| {
                    let idx = p.greedy_choice(v, covered);
                    covered = covered.union(p.actions(v)[idx]);
                    idx
                });
                alpha.push(ActionRecord { agent: v, choice });
                agent.actions_known = alpha.len();
                sequence.push(v);
                if variant == Termination::OrderEqualsN && label == n {
                    break;
                }
                Step::Message { v }
            }
            Step::Message { v } => {
                agents[v].actions_known = alpha.len();
                candidates.clear();
                candidates.extend(
                    agents[v]
                        .neighborhood
                        .iter()
                        .copied()
                        .filter(|&w| !agents[w].done),
                );
                if !candidates.is_empty() {
                    let w = policy.pick(v, &candidates);
                    if !candidates.contains(&w) {
                        return Err(Error::argument(format!(
                            "neighbor policy chose {w}, which is not an unlabeled neighbor of {v}"
                        )));
                    }
                    t += 1;
                    events.push(Event {
                        time: t,
                        from: v,
                        to: w,
                        kind: EventKind::InitForward,
                    });
                    Step::Init {
                        v: w,
                        parent: Some(v),
                    }
                } else if let Some(p) = agents[v].parent {
                    t += 1;
                    events.push(Event {
                        time: t,
                        from: v,
                        to: p,
                        kind: EventKind::Backtrack,
                    });
                    Step::Message { v: p }
                } else {
                    break;
                }
            }
        };
    }

    Ok(RunTrace {
        t,
        seed,
        variant,
        ordering: Ordering::from_sequence(sequence)?,
        events,
        greedy_actions: alpha,
        agents,
    })
}

/// Runs the default variant and checks `t <= 2n - 2`.
pub fn verify_prop1_bound(g: &Graph, seed: Vertex) -> Result<bool> {
    let trace = run_ordering_only(g, seed, Termination::Standard)?;
    Ok(trace.t <= 2 * (g.n() - 1))
}
