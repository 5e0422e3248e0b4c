//! Deterministic construction of the graph families under study, plus
//! Cartesian products and grid-layer queries.
//!
//! Vertex numbering is fixed per family so edge ids, witnesses, and covers
//! are byte-reproducible:
//! - `Path(n)`, `Cycle(n)`: vertices `0..n` in order.
//! - `Complete(n)`: vertices `0..n`.
//! - `Star(n)`: the star `K_{1,n}` with center `0` and leaves `1..=n`.
//! - `Hypercube(r)`: vertex `v` is the integer whose binary digits are the
//!   coordinate word, last coordinate in the least significant bit.
//! - `Grid(r, s)`: vertex `(i, j)` with `i in 1..=r`, `j in 1..=s` is
//!   numbered `(i-1)*s + (j-1)`.
//! - `Product(G, H)`: vertex `(g, h)` is numbered `g * n(H) + h`. Under
//!   these conventions `Grid(r, s)` and `Product(Path(r), Path(s))` are the
//!   same labeled graph, and so are `Hypercube(r+1)` and
//!   `Product(Hypercube(r), Path(2))`.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{build_graph, EdgeSet, Graph, GraphError};

/// Hard cap on generated vertex counts; keeps products from exploding.
const MAX_VERTICES: usize = 1_000_000;

/// Tree input: an explicit edge list on `0..=len`, or a Pruefer sequence
/// over `0..len+2` (the compact random-tree interchange format).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeSpec {
    Edges(Vec<(usize, usize)>),
    Pruefer(Vec<usize>),
}

/// The graph families with fixed vertex numbering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyDescriptor {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Star(usize),
    Hypercube(usize),
    Grid(usize, usize),
    Tree(TreeSpec),
    Fig1,
    Product(Box<FamilyDescriptor>, Box<FamilyDescriptor>),
}

impl fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyDescriptor::Path(n) => write!(f, "path({n})"),
            FamilyDescriptor::Cycle(n) => write!(f, "cycle({n})"),
            FamilyDescriptor::Complete(n) => write!(f, "complete({n})"),
            FamilyDescriptor::Star(n) => write!(f, "star({n})"),
            FamilyDescriptor::Hypercube(r) => write!(f, "hypercube({r})"),
            FamilyDescriptor::Grid(r, s) => write!(f, "grid({r},{s})"),
            FamilyDescriptor::Tree(TreeSpec::Edges(e)) => {
                write!(f, "tree(edges,n={})", e.len() + 1)
            }
            FamilyDescriptor::Tree(TreeSpec::Pruefer(p)) => {
                write!(f, "tree(pruefer,n={})", p.len() + 2)
            }
            FamilyDescriptor::Fig1 => write!(f, "fig1"),
            FamilyDescriptor::Product(a, b) => write!(f, "product({a},{b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenerateError {
    InvalidParameter(String),
    Graph(GraphError),
}

impl fmt::Display for GenerateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenerateError::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            GenerateError::Graph(e) => write!(f, "bad graph input: {e}"),
        }
    }
}

impl core::error::Error for GenerateError {}

impl From<GraphError> for GenerateError {
    fn from(e: GraphError) -> Self {
        GenerateError::Graph(e)
    }
}

fn param_err(what: &str) -> GenerateError {
    GenerateError::InvalidParameter(what.to_owned())
}

/// Builds the graph described by `f`, named after the descriptor.
pub fn generate(f: &FamilyDescriptor) -> Result<Graph, GenerateError> {
    let g = generate_unnamed(f)?;
    Ok(g.with_name(format!("{f}")))
}

fn generate_unnamed(f: &FamilyDescriptor) -> Result<Graph, GenerateError> {
    match f {
        FamilyDescriptor::Path(n) => {
            if *n < 1 {
                return Err(param_err("path needs n >= 1"));
            }
            let edges: Vec<_> = (1..*n).map(|v| (v - 1, v)).collect();
            Ok(build_graph(*n, &edges)?)
        }
        FamilyDescriptor::Cycle(n) => {
            if *n < 3 {
                return Err(param_err("cycle needs n >= 3"));
            }
            let mut edges: Vec<_> = (1..*n).map(|v| (v - 1, v)).collect();
            edges.push((*n - 1, 0));
            Ok(build_graph(*n, &edges)?)
        }
        FamilyDescriptor::Complete(n) => {
            if *n < 1 {
                return Err(param_err("complete graph needs n >= 1"));
            }
            let mut edges = Vec::new();
            for u in 0..*n {
                for v in (u + 1)..*n {
                    edges.push((u, v));
                }
            }
            Ok(build_graph(*n, &edges)?)
        }
        FamilyDescriptor::Star(n) => {
            if *n < 1 {
                return Err(param_err("star K_{1,n} needs n >= 1"));
            }
            let edges: Vec<_> = (1..=*n).map(|v| (0, v)).collect();
            Ok(build_graph(*n + 1, &edges)?)
        }
        FamilyDescriptor::Hypercube(r) => {
            if *r < 1 {
                return Err(param_err("hypercube needs r >= 1"));
            }
            if *r >= 20 {
                return Err(param_err("hypercube dimension too large"));
            }
            let n = 1usize << *r;
            let mut edges = Vec::with_capacity(*r << (*r - 1));
            for v in 0..n {
                for b in 0..*r {
                    let w = v ^ (1 << b);
                    if v < w {
                        edges.push((v, w));
                    }
                }
            }
            Ok(build_graph(n, &edges)?)
        }
        FamilyDescriptor::Grid(r, s) => {
            if *r < 1 || *s < 1 {
                return Err(param_err("grid needs r, s >= 1"));
            }
            let n = r
                .checked_mul(*s)
                .filter(|&n| n <= MAX_VERTICES)
                .ok_or_else(|| param_err("grid too large"))?;
            let idx = |i: usize, j: usize| (i - 1) * s + (j - 1);
            let mut edges = Vec::new();
            for i in 1..=*r {
                for j in 1..=*s {
                    if i < *r {
                        edges.push((idx(i, j), idx(i + 1, j)));
                    }
                    if j < *s {
                        edges.push((idx(i, j), idx(i, j + 1)));
                    }
                }
            }
            Ok(build_graph(n, &edges)?)
        }
        FamilyDescriptor::Tree(spec) => {
            let edges = match spec {
                TreeSpec::Edges(edges) => edges.clone(),
                TreeSpec::Pruefer(seq) => pruefer_to_edges(seq)?,
            };
            let n = edges.len() + 1;
            let g = build_graph(n, &edges)?;
            if !g.is_tree() {
                return Err(param_err("edge list does not describe a tree"));
            }
            Ok(g)
        }
        FamilyDescriptor::Fig1 => Ok(fig1_unnamed()),
        FamilyDescriptor::Product(a, b) => {
            let ga = generate_unnamed(a)?;
            let gb = generate_unnamed(b)?;
            cartesian_product(&ga, &gb)
        }
    }
}

/// Cartesian product with vertex `(g, h)` numbered `g * n(H) + h`.
pub fn cartesian_product(ga: &Graph, gb: &Graph) -> Result<Graph, GenerateError> {
    let n = ga
        .n()
        .checked_mul(gb.n())
        .filter(|&n| n <= MAX_VERTICES)
        .ok_or_else(|| param_err("product too large"))?;
    let nb = gb.n();
    let mut edges = Vec::with_capacity(ga.m() * gb.n() + gb.m() * ga.n());
    for &(u, v) in ga.edges() {
        for h in 0..nb {
            edges.push((u * nb + h, v * nb + h));
        }
    }
    for g in 0..ga.n() {
        for &(u, v) in gb.edges() {
            edges.push((g * nb + u, g * nb + v));
        }
    }
    Ok(build_graph(n, &edges)?)
}

/// Decodes a Pruefer sequence over `0..len+2` into a tree edge list.
fn pruefer_to_edges(seq: &[usize]) -> Result<Vec<(usize, usize)>, GenerateError> {
    let n = seq.len() + 2;
    if seq.iter().any(|&v| v >= n) {
        return Err(param_err("pruefer entry out of range"));
    }
    let mut degree = alloc::vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    // Standard decode: repeatedly join the smallest current leaf to the next
    // sequence entry. A min-scan per step is fine at tree interchange scale.
    let mut used = alloc::vec![false; n];
    for &v in seq {
        let leaf = (0..n).find(|&u| degree[u] == 1 && !used[u]).unwrap();
        edges.push((leaf, v));
        used[leaf] = true;
        degree[v] -= 1;
    }
    let mut last = (0..n).filter(|&u| degree[u] == 1 && !used[u]);
    let a = last.next().unwrap();
    let b = last.next().unwrap();
    edges.push((a, b));
    Ok(edges)
}

/// The 12-vertex, 16-edge worked example: an isometric subgraph of a grid,
/// shipped as a named builtin. Vertices are numbered in the order of the
/// plane coordinates (0,0),(0,1),(0,2),(0,3),(1,0),(1,1),(1,2),(1,3),
/// (2,0),(2,1),(3,0),(3,1).
pub fn fig1_graph() -> Graph {
    fig1_unnamed().with_name("fig1")
}

fn fig1_unnamed() -> Graph {
    // Outer 12-edge closed walk plus four chords.
    let edges = [
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 7),
        (7, 6),
        (6, 5),
        (5, 9),
        (9, 11),
        (11, 10),
        (10, 8),
        (8, 4),
        (4, 0),
        (2, 6),
        (1, 5),
        (4, 5),
        (8, 9),
    ];
    build_graph(12, &edges).expect("builtin graph is valid")
}

/// Which direction of grid layer to select.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayerKind {
    /// A copy of `P_r` (fixes the second coordinate to `index in 1..=s`);
    /// has `r - 1` edges.
    Row,
    /// A copy of `P_s` (fixes the first coordinate to `index in 1..=r`);
    /// has `s - 1` edges.
    Col,
}

/// Edge ids of one layer of `Grid(r, s)`. `index` is 1-based.
pub fn layer_edges(
    grid: &Graph,
    r: usize,
    s: usize,
    which: LayerKind,
    index: usize,
) -> Result<EdgeSet, GenerateError> {
    if grid.n() != r * s {
        return Err(param_err("graph size does not match grid dimensions"));
    }
    let idx = |i: usize, j: usize| (i - 1) * s + (j - 1);
    let mut ids = Vec::new();
    match which {
        LayerKind::Row => {
            if index < 1 || index > s {
                return Err(param_err("row layer index out of range"));
            }
            for i in 1..r {
                let e = grid
                    .edge_id(idx(i, index), idx(i + 1, index))
                    .ok_or_else(|| param_err("graph is not the expected grid"))?;
                ids.push(e);
            }
        }
        LayerKind::Col => {
            if index < 1 || index > r {
                return Err(param_err("column layer index out of range"));
            }
            for j in 1..s {
                let e = grid
                    .edge_id(idx(index, j), idx(index, j + 1))
                    .ok_or_else(|| param_err("graph is not the expected grid"))?;
                ids.push(e);
            }
        }
    }
    Ok(EdgeSet::from_ids(ids))
}

/// Detects a graph that is exactly the canonical `Grid(r, s)` labeling
/// (not isomorphism testing). Returns the dimensions in the orientation
/// that matches the labeling.
pub fn recognize_grid(g: &Graph) -> Option<(usize, usize)> {
    let n = g.n();
    let m = g.m();
    // In a grid, m = 2rs - r - s, so r + s = 2n - m and r*s = n.
    let sum = (2 * n).checked_sub(m)?;
    // r and s are the roots of x^2 - sum*x + n.
    let disc = sum.checked_mul(sum)?.checked_sub(4 * n)?;
    let root = disc.isqrt();
    if root * root != disc || (sum + root) % 2 != 0 {
        return None;
    }
    let a = (sum + root) / 2;
    let b = sum - a;
    if b < 1 || a * b != n {
        return None;
    }
    for (r, s) in [(a, b), (b, a)] {
        if let Ok(canonical) = generate_unnamed(&FamilyDescriptor::Grid(r, s)) {
            if canonical.edges() == g.edges() {
                return Some((r, s));
            }
        }
        if a == b {
            break;
        }
    }
    None
}

/// Detects a graph that is exactly the canonical `Hypercube(r)` labeling.
pub fn recognize_hypercube(g: &Graph) -> Option<usize> {
    let n = g.n();
    if !n.is_power_of_two() || n < 2 {
        return None;
    }
    let r = n.trailing_zeros() as usize;
    if g.m() != r << (r - 1) {
        return None;
    }
    let canonical = generate_unnamed(&FamilyDescriptor::Hypercube(r)).ok()?;
    (canonical.edges() == g.edges()).then_some(r)
}
