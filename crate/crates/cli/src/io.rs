//! File formats: graphs, edge sets, and run results.
//!
//! Graph files are JSON objects `{"n": .., "edges": [[u, v], ..]}` with an
//! optional `"name"`. Edges may appear in any order and orientation;
//! canonicalization happens in `build_graph`, so re-emitting a parsed graph
//! always yields the same bytes. Edge sets interchange as arrays of
//! `[u, v]` pairs rather than raw edge ids, so the files stay meaningful
//! independent of indexing.

use std::fmt;
use std::io::Read;

use serde::{Deserialize, Serialize};

use gpe_core::graph::{build_graph, EdgeSet, Graph, GraphError};

#[derive(Debug)]
pub enum FormatError {
    Io(std::io::Error),
    Parse(serde_json::Error),
    Graph(GraphError),
    UnknownEdge { u: usize, v: usize },
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Io(e) => write!(f, "io error: {e}"),
            FormatError::Parse(e) => write!(f, "parse error: {e}"),
            FormatError::Graph(e) => write!(f, "invalid graph: {e}"),
            FormatError::UnknownEdge { u, v } => {
                write!(f, "({u}, {v}) is not an edge of the graph")
            }
        }
    }
}

impl std::error::Error for FormatError {}

impl From<std::io::Error> for FormatError {
    fn from(e: std::io::Error) -> Self {
        FormatError::Io(e)
    }
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Parse(e)
    }
}

impl From<GraphError> for FormatError {
    fn from(e: GraphError) -> Self {
        FormatError::Graph(e)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    name: Option<String>,
}

/// Parses the JSON graph format and canonicalizes through `build_graph`.
pub fn read_graph(reader: impl Read) -> Result<Graph, FormatError> {
    let file: GraphFile = serde_json::from_reader(reader)?;
    let g = build_graph(file.n, &file.edges)?;
    Ok(match file.name {
        Some(name) => g.with_name(name),
        None => g,
    })
}

/// Canonical JSON serialization of a graph, newline-terminated.
pub fn write_graph(g: &Graph) -> String {
    let file = GraphFile {
        n: g.n(),
        edges: g.edges().to_vec(),
        name: g.name().map(str::to_owned),
    };
    let mut s = serde_json::to_string(&file).expect("graph serializes");
    s.push('\n');
    s
}

/// Parses an edge-set file (a JSON array of `[u, v]` pairs) against `g`.
pub fn read_edge_set(reader: impl Read, g: &Graph) -> Result<EdgeSet, FormatError> {
    let pairs: Vec<(usize, usize)> = serde_json::from_reader(reader)?;
    let mut ids = Vec::with_capacity(pairs.len());
    for (u, v) in pairs {
        let e = g.edge_id(u, v).ok_or(FormatError::UnknownEdge { u, v })?;
        ids.push(e);
    }
    Ok(EdgeSet::from_ids(ids))
}

/// Edge set rendered as `[u, v]` pairs in canonical order.
pub fn edge_set_pairs(g: &Graph, s: &EdgeSet) -> Vec<(usize, usize)> {
    s.iter().map(|e| g.edge(e)).collect()
}

#[derive(Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    pub name: Option<String>,
}

impl GraphSummary {
    pub fn of(g: &Graph) -> Self {
        GraphSummary {
            n: g.n(),
            m: g.m(),
            name: g.name().map(str::to_owned),
        }
    }
}

/// Envelope for every machine-readable command result. Field order is
/// fixed by declaration order, so output is reproducible byte for byte
/// (timings aside; they can be suppressed).
#[derive(Serialize)]
pub struct RunResult<P: Serialize> {
    pub command: String,
    pub graph: GraphSummary,
    pub payload: P,
    pub elapsed_ms: u64,
}

impl<P: Serialize> RunResult<P> {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("result serializes");
        s.push('\n');
        s
    }
}
