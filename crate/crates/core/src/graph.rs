//! Canonical graph representation and breadth-first distances.
//!
//! Graphs are simple, undirected, connected, with vertices `0..n`. Edges are
//! stored as `(min, max)` pairs in lexicographic order; the position of a
//! pair in that list is its [`EdgeId`], which is stable for the lifetime of
//! the graph and reproducible across runs.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Index into the canonical edge list of a [`Graph`].
pub type EdgeId = usize;

/// Rejection reasons for [`build_graph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    NoVertices,
    SelfLoop { v: usize },
    DuplicateEdge { u: usize, v: usize },
    VertexOutOfRange { v: usize, n: usize },
    Disconnected,
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::NoVertices => write!(f, "graph must have at least one vertex"),
            GraphError::SelfLoop { v } => write!(f, "self-loop at vertex {v}"),
            GraphError::DuplicateEdge { u, v } => write!(f, "duplicate edge ({u}, {v})"),
            GraphError::VertexOutOfRange { v, n } => {
                write!(f, "vertex {v} out of range for n = {n}")
            }
            GraphError::Disconnected => write!(f, "graph is not connected"),
        }
    }
}

impl core::error::Error for GraphError {}

/// Immutable simple connected graph with canonical edge indexing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    name: Option<String>,
}

impl Graph {
    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list, lexicographically sorted `(min, max)` pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Endpoints of edge `e`. Panics if `e` is out of range.
    pub fn edge(&self, e: EdgeId) -> (usize, usize) {
        self.edges[e]
    }

    /// The id of edge `{u, v}`, if present.
    pub fn edge_id(&self, u: usize, v: usize) -> Option<EdgeId> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// Sorted neighbor list of `u`.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    /// Connected with `m = n - 1`, i.e. a tree.
    pub fn is_tree(&self) -> bool {
        self.m() + 1 == self.n
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }
}

/// Builds the canonical [`Graph`] from a vertex count and an edge list.
///
/// Edges may arrive in any order and orientation; they are normalized to
/// `(min, max)` and sorted. Self-loops, duplicates, out-of-range endpoints,
/// and disconnected inputs are rejected.
pub fn build_graph(n: usize, edge_list: &[(usize, usize)]) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::NoVertices);
    }
    let mut edges = Vec::with_capacity(edge_list.len());
    for &(u, v) in edge_list {
        if u >= n {
            return Err(GraphError::VertexOutOfRange { v: u, n });
        }
        if v >= n {
            return Err(GraphError::VertexOutOfRange { v, n });
        }
        if u == v {
            return Err(GraphError::SelfLoop { v: u });
        }
        edges.push((u.min(v), u.max(v)));
    }
    edges.sort_unstable();
    for w in edges.windows(2) {
        if w[0] == w[1] {
            return Err(GraphError::DuplicateEdge {
                u: w[0].0,
                v: w[0].1,
            });
        }
    }

    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    // Connectivity: BFS from vertex 0 must reach everything.
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    seen[0] = true;
    queue.push_back(0);
    let mut reached = 1;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                reached += 1;
                queue.push_back(v);
            }
        }
    }
    if reached != n {
        return Err(GraphError::Disconnected);
    }

    Ok(Graph {
        n,
        edges,
        adj,
        name: None,
    })
}

/// All-pairs shortest-path distances in hops, stored densely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u16>,
}

impl DistanceMatrix {
    /// Distance between `u` and `v`.
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> usize {
        self.dist[u * self.n + v] as usize
    }

    /// Maximum entry of the matrix.
    pub fn diameter(&self) -> usize {
        self.dist.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Breadth-first distances from every source.
///
/// Entries are stored as `u16` with `u16::MAX` as the unvisited sentinel,
/// so graphs are capped at 65535 vertices. Larger graphs are far outside
/// the dense-matrix design anyway.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    assert!(n < 65536, "distance matrix supports at most 65535 vertices");
    let mut dist = vec![u16::MAX; n * n];
    let mut queue = VecDeque::new();
    for src in 0..n {
        let row = &mut dist[src * n..(src + 1) * n];
        row[src] = 0;
        queue.clear();
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = row[u];
            for &v in g.neighbors(u) {
                if row[v] == u16::MAX {
                    row[v] = du + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    DistanceMatrix { n, dist }
}

/// Maximum distance in the graph; `d` must have been computed from `g`.
pub fn diameter(_g: &Graph, d: &DistanceMatrix) -> usize {
    d.diameter()
}

/// Two-coloring classes if the graph is bipartite, `None` otherwise.
/// The side containing vertex 0 is reported first; both sides are sorted.
pub fn bipartition(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.n();
    let mut color = vec![u8::MAX; n];
    let mut queue = VecDeque::new();
    color[0] = 0;
    queue.push_back(0);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if color[v] == u8::MAX {
                color[v] = 1 - color[u];
                queue.push_back(v);
            } else if color[v] == color[u] {
                return None;
            }
        }
    }
    let side0 = (0..n).filter(|&v| color[v] == 0).collect();
    let side1 = (0..n).filter(|&v| color[v] == 1).collect();
    Some((side0, side1))
}

/// Sorted, duplicate-free set of edge ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgeSet {
    ids: Vec<EdgeId>,
}

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet { ids: Vec::new() }
    }

    /// Sorts and deduplicates the input.
    pub fn from_ids(ids: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut ids: Vec<EdgeId> = ids.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        EdgeSet { ids }
    }

    /// Every edge of `g`, i.e. `0..m`.
    pub fn full(g: &Graph) -> Self {
        EdgeSet {
            ids: (0..g.m()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.ids.binary_search(&e).is_ok()
    }

    pub fn insert(&mut self, e: EdgeId) -> bool {
        match self.ids.binary_search(&e) {
            Ok(_) => false,
            Err(pos) => {
                self.ids.insert(pos, e);
                true
            }
        }
    }

    pub fn ids(&self) -> &[EdgeId] {
        &self.ids
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.ids.iter().copied()
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet::from_ids(self.iter().chain(other.iter()))
    }

    /// True when every id refers to an edge of `g`.
    pub fn valid_for(&self, g: &Graph) -> bool {
        self.ids.last().is_none_or(|&last| last < g.m())
    }
}

impl FromIterator<EdgeId> for EdgeSet {
    fn from_iter<T: IntoIterator<Item = EdgeId>>(iter: T) -> Self {
        EdgeSet::from_ids(iter)
    }
}
