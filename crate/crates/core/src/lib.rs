//! Edge general position sets in graphs.
//!
//! An edge set is in general position when no geodesic of the host graph
//! carries `k` of its edges (`k = 3` unless stated otherwise). This crate
//! computes the maximum size of such a set exactly by branch and bound,
//! produces certified witnesses and isometric-path edge covers for the
//! families with known closed forms (hypercubes, trees, grids), and exposes
//! the Djokovic-Winkler machinery used to justify those constructions.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the CLI live
//! in the companion `gpe-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod constructions;
pub mod generators;
pub mod geodesy;
pub mod graph;
pub mod solver;
pub mod theta;

pub use graph::{
    all_pairs_distances, bipartition, build_graph, diameter, DistanceMatrix, EdgeId, EdgeSet, Graph,
};
