//! Graph families: line, star, complete, directed cycle, the directed
//! construction `D_n`, Erdős–Rényi samples and exhaustive small-graph streams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Cap on rejected Erdős–Rényi samples before giving up.
pub const DEFAULT_MAX_ATTEMPTS: usize = 100_000;
/// Largest `n` for which connected undirected graphs are enumerated.
pub const ENUMERATE_UNDIRECTED_MAX_N: usize = 6;
/// Largest `n` for which strongly connected digraphs are enumerated.
pub const ENUMERATE_DIRECTED_MAX_N: usize = 4;
/// Largest `n` for which labeled trees are enumerated (`n^(n-2)` of them).
pub const ENUMERATE_TREES_MAX_N: usize = 9;

fn require_at_least(what: &str, n: usize, min: usize) -> Result<()> {
    if n < min {
        Err(Error::argument(format!("{what} needs n >= {min}, got {n}")))
    } else {
        Ok(())
    }
}

/// Path graph `0 - 1 - ... - (n-1)`.
pub fn gen_line(n: usize) -> Result<Graph> {
    require_at_least("line graph", n, 2)?;
    Graph::from_edges(n, false, (0..n - 1).map(|i| (i, i + 1)))
}

/// Star with center 0.
pub fn gen_star(n: usize) -> Result<Graph> {
    require_at_least("star graph", n, 3)?;
    Graph::from_edges(n, false, (1..n).map(|leaf| (0, leaf)))
}

pub fn gen_complete(n: usize) -> Result<Graph> {
    require_at_least("complete graph", n, 2)?;
    Graph::from_edges(
        n,
        false,
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))),
    )
}

/// Directed cycle with arcs `i -> i+1 (mod n)`.
pub fn gen_directed_cycle(n: usize) -> Result<Graph> {
    require_at_least("directed cycle", n, 2)?;
    Graph::from_edges(n, true, (0..n).map(|i| (i, (i + 1) % n)))
}

/// The strongly connected digraph whose best ordering costs `⌊n/2⌋·⌈n/2⌉`.
///
/// With `c = ⌈n/2⌉` and 1-based names `v_j = j - 1`: a chain
/// `v_1 -> ... -> v_{c-1}`, and for every `j >= c` the arcs
/// `v_{c-1} -> v_j` and `v_j -> v_1`. Consecutive tail vertices are then
/// `c + 1` hops apart.
pub fn gen_dn(n: usize) -> Result<Graph> {
    require_at_least("D_n construction", n, 3)?;
    let c = n.div_ceil(2);
    let hub = c - 2;
    let chain = (0..c.saturating_sub(2)).map(|j| (j, j + 1));
    let tail = (c - 1..n).flat_map(|v| [(hub, v), (v, 0)]);
    Graph::from_edges(n, true, chain.chain(tail))
}

/// G(n, p) drawn from `rng`; pairs are visited in lexicographic order.
pub fn erdos_renyi_with<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::argument(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    let mut g = Graph::empty(n, false)?;
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// G(n, p), deterministic in `seed`.
pub fn gen_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    erdos_renyi_with(n, p, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Connected G(n, p) sample by rejection, with the number of rejected draws.
pub fn connected_erdos_renyi_with<R: Rng + ?Sized>(
    n: usize,
    p: f64,
    rng: &mut R,
    max_attempts: usize,
) -> Result<(Graph, usize)> {
    if !(p > 0.0 && p <= 1.0) && n > 1 {
        return Err(Error::argument(format!(
            "edge probability {p} must lie in (0, 1] to sample connected graphs"
        )));
    }
    for attempt in 0..max_attempts {
        let g = erdos_renyi_with(n, p, rng)?;
        if g.is_connected() {
            return Ok((g, attempt));
        }
    }
    Err(Error::Sampling(format!(
        "no connected G({n}, {p}) sample within {max_attempts} attempts"
    )))
}

/// First connected G(n, p) sample drawn from the stream seeded by `seed`.
pub fn gen_connected_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    connected_erdos_renyi_with(n, p, &mut rng, DEFAULT_MAX_ATTEMPTS).map(|(g, _)| g)
}

/// Every labeled connected graph on `n` vertices (strongly connected when
/// `directed`), each exactly once, in increasing edge-mask order.
pub fn enumerate_connected_graphs(n: usize, directed: bool) -> Result<impl Iterator<Item = Graph>> {
    let cap = if directed {
        ENUMERATE_DIRECTED_MAX_N
    } else {
        ENUMERATE_UNDIRECTED_MAX_N
    };
    if n > cap {
        return Err(Error::budget(format!(
            "enumeration of {} graphs is capped at n = {cap}, got {n}",
            if directed { "directed" } else { "undirected" }
        )));
    }
    if n == 0 {
        return Err(Error::argument("a graph needs at least one vertex"));
    }
    let slots: Vec<(Vertex, Vertex)> = if directed {
        (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect()
    } else {
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect()
    };
    let total: u64 = 1 << slots.len();
    Ok((0..total).filter_map(move |mask| {
        let edges = slots
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask >> bit & 1 == 1)
            .map(|(_, &e)| e);
        let g = Graph::from_edges(n, directed, edges).expect("slots are distinct non-loops");
        g.is_connected().then_some(g)
    }))
}

/// Tree encoded by a Prüfer sequence of length `n - 2` over `0..n`.
pub fn tree_from_pruefer(seq: &[Vertex]) -> Result<Graph> {
    let n = seq.len() + 2;
    if let Some(&bad) = seq.iter().find(|&&v| v >= n) {
        return Err(Error::argument(format!(
            "Prüfer entry {bad} out of range for n = {n}"
        )));
    }
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (0..n)
            .find(|&u| degree[u] == 1)
            .expect("a leaf always exists");
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<Vertex> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, false, edges)
}

/// Every labeled tree on `n >= 2` vertices, via Prüfer sequences.
pub fn enumerate_labeled_trees(n: usize) -> Result<impl Iterator<Item = Graph>> {
    require_at_least("tree enumeration", n, 2)?;
    if n > ENUMERATE_TREES_MAX_N {
        return Err(Error::budget(format!(
            "tree enumeration is capped at n = {ENUMERATE_TREES_MAX_N}, got {n}"
        )));
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    Ok((0..total).map(move |mut code| {
        let mut seq = vec![0; len];
        for slot in seq.iter_mut() {
            *slot = code % n;
            code /= n;
        }
        tree_from_pruefer(&seq).expect("entries are in range")
    }))
}

/// Uniform random labeled tree on `n >= 2` vertices.
pub fn gen_random_tree(n: usize, seed: u64) -> Result<Graph> {
    require_at_least("random tree", n, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    tree_from_pruefer(&seq)
}
