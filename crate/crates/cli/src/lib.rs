//! IO companion to `gpe-core`: the JSON graph and edge-set interchange
//! formats, machine-readable run results, and DOT export.

#![forbid(unsafe_code)]

pub mod dot;
pub mod io;
