//! Communication graphs, walks and hop-count shortest paths.
//!
//! Vertices are identified by `0..n`. Undirected edges are stored once as
//! `(min, max)`; arcs of a directed graph are stored as given. Neighbor lists
//! are kept sorted so every traversal visits vertices in ascending id order.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Vertex identifier.
pub type Vertex = usize;

/// A simple graph (no self-loops, no parallel edges), directed or undirected.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    directed: bool,
    edges: BTreeSet<(Vertex, Vertex)>,
    out: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize, directed: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::argument("a graph needs at least one vertex"));
        }
        Ok(Graph {
            n,
            directed,
            edges: BTreeSet::new(),
            out: vec![Vec::new(); n],
        })
    }

    /// Builds a graph from an edge iterator, rejecting self-loops and duplicates.
    pub fn from_edges<I>(n: usize, directed: bool, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n, directed)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::argument(format!("self-loop at vertex {u}")));
        }
        let key = self.key(u, v);
        if !self.edges.insert(key) {
            return Err(Error::argument(format!("duplicate edge ({u}, {v})")));
        }
        insert_sorted(&mut self.out[u], v);
        if !self.directed {
            insert_sorted(&mut self.out[v], u);
        }
        Ok(())
    }

    /// A copy of this graph with one more edge.
    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Result<Self> {
        let mut g = self.clone();
        g.add_edge(u, v)?;
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical form, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.edges.contains(&self.key(u, v))
    }

    /// Out-neighbors (all neighbors when undirected), ascending.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.out[v].len()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::argument(format!(
                "vertex {v} out of range for a graph on {} vertices",
                self.n
            )))
        }
    }

    fn key(&self, u: Vertex, v: Vertex) -> (Vertex, Vertex) {
        if self.directed || u < v {
            (u, v)
        } else {
            (v, u)
        }
    }

    /// Hop distances from `src` to every vertex; `None` where unreachable.
    pub fn bfs_hops(&self, src: Vertex) -> Result<Vec<Option<usize>>> {
        self.check_vertex(src)?;
        Ok(self.bfs_tree(src).0)
    }

    fn bfs_tree(&self, src: Vertex) -> (Vec<Option<usize>>, Vec<Option<Vertex>>) {
        let mut dist = vec![None; self.n];
        let mut parent = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or_default();
            for &w in &self.out[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        (dist, parent)
    }

    /// Minimum number of edges on a `src -> dst` path, `None` if unreachable.
    pub fn shortest_path_hops(&self, src: Vertex, dst: Vertex) -> Result<Option<usize>> {
        self.check_vertex(dst)?;
        Ok(self.bfs_hops(src)?[dst])
    }

    /// One shortest path (BFS tree path, ties resolved toward smaller ids).
    pub fn shortest_path(&self, src: Vertex, dst: Vertex) -> Result<Option<Path>> {
        self.check_vertex(src)?;
        self.check_vertex(dst)?;
        let (dist, parent) = self.bfs_tree(src);
        if dist[dst].is_none() {
            return Ok(None);
        }
        let mut vertices = vec![dst];
        let mut cur = dst;
        while let Some(p) = parent[cur] {
            vertices.push(p);
            cur = p;
        }
        vertices.reverse();
        Ok(Some(Path { vertices }))
    }

    /// Connectivity; strong connectivity for directed graphs.
    pub fn is_connected(&self) -> bool {
        let reaches_all = |g: &Graph| g.bfs_tree(0).0.iter().all(Option::is_some);
        if !reaches_all(self) {
            return false;
        }
        !self.directed || reaches_all(&self.reversed())
    }

    /// The same graph with every arc reversed (identity for undirected graphs).
    pub fn reversed(&self) -> Graph {
        if !self.directed {
            return self.clone();
        }
        let mut g = Graph::empty(self.n, true).expect("n >= 1");
        for &(u, v) in &self.edges {
            g.add_edge(v, u)
                .expect("reversal of a simple digraph is simple");
        }
        g
    }

    /// All-pairs hop distances, one BFS per vertex.
    pub fn distances(&self) -> DistanceMatrix {
        let mut hops = Vec::with_capacity(self.n * self.n);
        for s in 0..self.n {
            hops.extend(
                self.bfs_tree(s)
                    .0
                    .into_iter()
                    .map(|d| d.map_or(UNREACHABLE, |d| d as u32)),
            );
        }
        DistanceMatrix { n: self.n, hops }
    }

    /// Largest shortest-path hop count over ordered vertex pairs.
    pub fn diameter(&self) -> Result<usize> {
        self.distances()
            .max_finite()
            .ok_or_else(|| Error::domain("diameter is undefined on a disconnected graph"))
    }

    /// True for connected undirected graphs with exactly `n - 1` edges.
    pub fn is_tree(&self) -> bool {
        !self.directed && self.edges.len() + 1 == self.n && self.is_connected()
    }

    /// Edge-list text: header `n <count> <directed|undirected>`, then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        self.to_string()
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        text.parse()
    }
}

fn insert_sorted(list: &mut Vec<Vertex>, v: Vertex) {
    let at = list.partition_point(|&x| x < v);
    list.insert(at, v);
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.directed {
            "directed"
        } else {
            "undirected"
        };
        writeln!(f, "n {} {kind}", self.n)?;
        for (u, v) in self.edges() {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .enumerate()
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse("empty graph file"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let (n, directed) = match fields.as_slice() {
            ["n", count, kind] => {
                let n = count
                    .parse::<usize>()
                    .map_err(|_| Error::parse(format!("bad vertex count {count:?}")))?;
                let directed = match *kind {
                    "directed" => true,
                    "undirected" => false,
                    other => return Err(Error::parse(format!("unknown graph kind {other:?}"))),
                };
                (n, directed)
            }
            _ => {
                return Err(Error::parse(format!(
                    "expected header `n <count> <directed|undirected>`, got {header:?}"
                )))
            }
        };
        let mut g = Graph::empty(n, directed)?;
        for (lineno, line) in lines {
            let mut it = line.split_whitespace().map(str::parse::<Vertex>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => g.add_edge(u, v)?,
                _ => {
                    return Err(Error::parse(format!(
                        "line {}: expected `u v`, got {line:?}",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(g)
    }
}

const UNREACHABLE: u32 = u32::MAX;

/// Dense all-pairs hop-count table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    hops: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, src: Vertex, dst: Vertex) -> Option<usize> {
        match self.hops[src * self.n + dst] {
            UNREACHABLE => None,
            d => Some(d as usize),
        }
    }

    /// Raw lookup for callers that already checked connectivity.
    #[inline]
    pub(crate) fn hop(&self, src: Vertex, dst: Vertex) -> u32 {
        self.hops[src * self.n + dst]
    }

    pub fn all_reachable(&self) -> bool {
        self.hops.iter().all(|&d| d != UNREACHABLE)
    }

    /// Maximum entry, `None` if any pair is unreachable.
    pub fn max_finite(&self) -> Option<usize> {
        if !self.all_reachable() {
            return None;
        }
        self.hops.iter().copied().max().map(|d| d as usize)
    }
}

/// A walk whose vertices are pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    vertices: Vec<Vertex>,
}

impl Path {
    pub fn new(g: &Graph, vertices: Vec<Vertex>) -> Result<Self> {
        validate_walk(g, &vertices)?;
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::argument("a path may not repeat vertices"));
        }
        Ok(Path { vertices })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn hop_count(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// A vertex sequence whose consecutive entries are adjacent; repeats allowed.
///
/// Both length conventions are available: `vertex_count` is the sequence
/// length and `hop_count` the number of traversed edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    vertices: Vec<Vertex>,
}

impl Walk {
    pub fn new(g: &Graph, vertices: Vec<Vertex>) -> Result<Self> {
        validate_walk(g, &vertices)?;
        Ok(Walk { vertices })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn hop_count(&self) -> usize {
        self.vertices.len() - 1
    }

    /// True when every vertex of `g` occurs in the walk.
    pub fn is_spanning(&self, g: &Graph) -> bool {
        let seen: BTreeSet<_> = self.vertices.iter().collect();
        seen.len() == g.n()
    }

    /// Vertices in order of first appearance.
    pub fn first_visits(&self) -> Vec<Vertex> {
        let mut seen = BTreeSet::new();
        self.vertices
            .iter()
            .copied()
            .filter(|v| seen.insert(*v))
            .collect()
    }
}

fn validate_walk(g: &Graph, vertices: &[Vertex]) -> Result<()> {
    if vertices.is_empty() {
        return Err(Error::argument("a walk needs at least one vertex"));
    }
    for &v in vertices {
        g.check_vertex(v)?;
    }
    for pair in vertices.windows(2) {
        if !g.has_edge(pair[0], pair[1]) {
            return Err(Error::argument(format!(
                "({}, {}) is not an edge",
                pair[0], pair[1]
            )));
        }
    }
    Ok(())
}
