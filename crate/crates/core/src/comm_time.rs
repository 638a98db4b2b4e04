//! Communication time of an ordering and the constructions that minimize or
//! maximize it.
//!
//! The time of an ordering is the sum, over consecutive labels, of the hop
//! distance from the vertex labeled `i` to the vertex labeled `i + 1`. Hop
//! counts (edges) are used throughout, so a line traversed end to end on six
//! vertices costs 5.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph, Vertex, Walk};
use crate::ordering::Ordering;

/// Largest graph accepted by [`best_ordering_exact`] / [`worst_ordering_exact`].
pub const EXACT_MAX_N: usize = 9;
/// Largest graph accepted by [`min_spanning_walk`].
pub const SPANNING_WALK_MAX_N: usize = 12;

/// Per-step hop counts of an ordering and their sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TimeBreakdown {
    per_step: Vec<usize>,
    total: usize,
}

impl TimeBreakdown {
    pub fn new(per_step: Vec<usize>) -> Self {
        let total = per_step.iter().sum();
        TimeBreakdown { per_step, total }
    }

    pub fn per_step(&self) -> &[usize] {
        &self.per_step
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// `total,s1,s2,...`
    pub fn to_csv_row(&self) -> String {
        std::iter::once(self.total)
            .chain(self.per_step.iter().copied())
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// How an ordering was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ExactMin,
    ExactMax,
    SpanningWalk,
    TreeClosedForm,
    ConstructedWorstLine,
    ConstructedWorstCycle,
    ConstructedBestDn,
    Algorithm1,
    Random,
    /// Supplied by the caller.
    Given,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::ExactMin => "exact-min",
            Method::ExactMax => "exact-max",
            Method::SpanningWalk => "spanning-walk",
            Method::TreeClosedForm => "tree-closed-form",
            Method::ConstructedWorstLine => "constructed-worst-line",
            Method::ConstructedWorstCycle => "constructed-worst-cycle",
            Method::ConstructedBestDn => "constructed-best-dn",
            Method::Algorithm1 => "algorithm1",
            Method::Random => "random",
            Method::Given => "given",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingReport {
    pub ordering: Ordering,
    pub time: TimeBreakdown,
    pub method: Method,
}

impl OrderingReport {
    /// Evaluates `ordering` on `g` and tags it.
    pub fn evaluate(g: &Graph, ordering: Ordering, method: Method) -> Result<Self> {
        let time = comm_time(g, &ordering)?;
        Ok(OrderingReport {
            ordering,
            time,
            method,
        })
    }
}

/// Distance table of a graph that must be (strongly) connected.
pub fn connected_distances(g: &Graph) -> Result<DistanceMatrix> {
    let dist = g.distances();
    if !dist.all_reachable() {
        return Err(Error::domain(if g.is_directed() {
            "communication time needs a strongly connected graph"
        } else {
            "communication time needs a connected graph"
        }));
    }
    Ok(dist)
}

/// Communication time of `pi` on `g`.
pub fn comm_time(g: &Graph, pi: &Ordering) -> Result<TimeBreakdown> {
    if pi.n() != g.n() {
        return Err(Error::argument(format!(
            "ordering covers {} vertices but the graph has {}",
            pi.n(),
            g.n()
        )));
    }
    let dist = connected_distances(g)?;
    Ok(comm_time_with(&dist, pi))
}

/// Same as [`comm_time`] against a precomputed, fully reachable table.
pub fn comm_time_with(dist: &DistanceMatrix, pi: &Ordering) -> TimeBreakdown {
    TimeBreakdown::new(
        pi.sequence()
            .windows(2)
            .map(|w| dist.hop(w[0], w[1]) as usize)
            .collect(),
    )
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Goal {
    Min,
    Max,
}

impl Goal {
    fn better(self, a: u32, b: u32) -> bool {
        match self {
            Goal::Min => a < b,
            Goal::Max => a > b,
        }
    }
}

/// Exact optimum over all `n!` orderings by dynamic programming on
/// (visited set, last vertex). `rest[mask * n + v]` is the optimal cost of
/// finishing the sequence from `v` once `mask` has been labeled. Walking the
/// table forward and taking the smallest vertex that stays optimal yields the
/// lexicographically smallest optimal vertex sequence.
fn exact_search(g: &Graph, goal: Goal) -> Result<Ordering> {
    let n = g.n();
    if n > EXACT_MAX_N {
        return Err(Error::budget(format!(
            "exact ordering search is capped at n = {EXACT_MAX_N}, got {n}"
        )));
    }
    let dist = connected_distances(g)?;
    let full = (1usize << n) - 1;
    let unset = match goal {
        Goal::Min => u32::MAX,
        Goal::Max => 0,
    };
    let mut rest = vec![unset; (full + 1) * n];
    for v in 0..n {
        rest[full * n + v] = 0;
    }
    for mask in (1..full).rev() {
        for v in (0..n).filter(|v| mask >> v & 1 == 1) {
            let mut best = unset;
            let mut found = false;
            for u in (0..n).filter(|u| mask >> u & 1 == 0) {
                let cand = dist.hop(v, u) + rest[(mask | 1 << u) * n + u];
                if !found || goal.better(cand, best) {
                    best = cand;
                    found = true;
                }
            }
            rest[mask * n + v] = best;
        }
    }
    let optimum = (0..n)
        .map(|v| rest[(1 << v) * n + v])
        .reduce(|a, b| if goal.better(b, a) { b } else { a })
        .expect("n >= 1");
    let mut sequence = Vec::with_capacity(n);
    let mut cur = (0..n)
        .find(|&v| rest[(1 << v) * n + v] == optimum)
        .expect("optimum is attained");
    let mut mask = 1usize << cur;
    sequence.push(cur);
    while mask != full {
        let target = rest[mask * n + cur];
        let next = (0..n)
            .filter(|u| mask >> u & 1 == 0)
            .find(|&u| dist.hop(cur, u) + rest[(mask | 1 << u) * n + u] == target)
            .expect("an optimal successor exists");
        mask |= 1 << next;
        sequence.push(next);
        cur = next;
    }
    Ordering::from_sequence(sequence)
}

/// An ordering minimizing the communication time (n <= [`EXACT_MAX_N`]).
pub fn best_ordering_exact(g: &Graph) -> Result<OrderingReport> {
    let ordering = exact_search(g, Goal::Min)?;
    OrderingReport::evaluate(g, ordering, Method::ExactMin)
}

/// An ordering maximizing the communication time (n <= [`EXACT_MAX_N`]).
pub fn worst_ordering_exact(g: &Graph) -> Result<OrderingReport> {
    let ordering = exact_search(g, Goal::Max)?;
    OrderingReport::evaluate(g, ordering, Method::ExactMax)
}

/// A spanning walk with the fewest hops, found by breadth-first search over
/// (current vertex, visited set) states started from every vertex at once.
pub fn min_spanning_walk(g: &Graph) -> Result<Walk> {
    if g.is_directed() {
        return Err(Error::argument(
            "spanning-walk ordering is defined for undirected graphs",
        ));
    }
    let n = g.n();
    if n > SPANNING_WALK_MAX_N {
        return Err(Error::budget(format!(
            "spanning-walk search is capped at n = {SPANNING_WALK_MAX_N}, got {n}"
        )));
    }
    if !g.is_connected() {
        return Err(Error::domain(
            "no spanning walk exists on a disconnected graph",
        ));
    }
    let full = (1usize << n) - 1;
    let idx = |v: Vertex, mask: usize| mask * n + v;
    let mut parent: Vec<Option<usize>> = vec![None; (full + 1) * n];
    let mut seen = vec![false; (full + 1) * n];
    let mut frontier: Vec<usize> = (0..n).map(|v| idx(v, 1 << v)).collect();
    for &s in &frontier {
        seen[s] = true;
    }
    let mut goal = frontier.iter().copied().find(|&s| s / n == full);
    while goal.is_none() {
        let mut next = Vec::new();
        'level: for &state in &frontier {
            let (v, mask) = (state % n, state / n);
            for &w in g.neighbors(v) {
                let to = idx(w, mask | 1 << w);
                if !seen[to] {
                    seen[to] = true;
                    parent[to] = Some(state);
                    if to / n == full {
                        goal = Some(to);
                        break 'level;
                    }
                    next.push(to);
                }
            }
        }
        frontier = next;
    }
    let mut state = goal.expect("connected graphs have spanning walks");
    let mut vertices = vec![state % n];
    while let Some(p) = parent[state] {
        vertices.push(p % n);
        state = p;
    }
    vertices.reverse();
    Walk::new(g, vertices)
}

/// Labels vertices in the order they first appear on a minimum spanning walk.
pub fn best_ordering_spanning_walk(g: &Graph) -> Result<(OrderingReport, Walk)> {
    let walk = min_spanning_walk(g)?;
    let ordering = Ordering::from_sequence(walk.first_visits())?;
    let report = OrderingReport::evaluate(g, ordering, Method::SpanningWalk)?;
    Ok((report, walk))
}

/// Minimum communication time of a tree: `2(n - 1) - diameter`.
pub fn tree_tmin_closed_form(g: &Graph) -> Result<usize> {
    if !g.is_tree() {
        return Err(Error::argument(
            "closed form applies to connected undirected trees only",
        ));
    }
    Ok(2 * (g.n() - 1) - g.diameter()?)
}

/// Alternating labeling of the line `0 - 1 - ... - (n-1)` with time `⌊n²/2⌋ - 1`.
///
/// The label sequence alternates between the lower half of the positions
/// (starting from its innermost vertex) and the upper half (walking inward
/// from the far end), so label 1 sits next to the middle and every step
/// crosses the center.
pub fn worst_line_ordering(n: usize) -> Result<Ordering> {
    if n < 2 {
        return Err(Error::argument(format!(
            "worst line ordering needs n >= 2, got {n}"
        )));
    }
    let half = n / 2;
    // odd n: the lower half takes the middle vertex, both ends of the sequence land there
    let lower_len = n - half;
    let mut lower: Vec<Vertex> = Vec::with_capacity(lower_len);
    if n.is_multiple_of(2) {
        lower.push(half - 1);
        lower.extend(0..half - 1);
    } else {
        lower.push(half);
        lower.extend(0..half);
    }
    let upper: Vec<Vertex> = (lower_len..n).rev().collect();
    let mut sequence = Vec::with_capacity(n);
    for (i, &l) in lower.iter().enumerate() {
        sequence.push(l);
        if let Some(&u) = upper.get(i) {
            sequence.push(u);
        }
    }
    Ordering::from_sequence(sequence)
}

/// Labels the directed cycle against its orientation: each step costs `n - 1`.
pub fn worst_directed_cycle_ordering(n: usize) -> Result<Ordering> {
    if n < 3 {
        return Err(Error::argument(format!(
            "worst cycle ordering needs n >= 3, got {n}"
        )));
    }
    Ordering::from_sequence(std::iter::once(0).chain((1..n).rev()).collect())
}

/// Best ordering of `D_n`: the last vertex first, then `v_1, ..., v_{n-1}`.
pub fn dn_best_ordering(n: usize) -> Result<Ordering> {
    if n < 3 {
        return Err(Error::argument(format!(
            "D_n ordering needs n >= 3, got {n}"
        )));
    }
    Ordering::from_sequence(std::iter::once(n - 1).chain(0..n - 1).collect())
}
