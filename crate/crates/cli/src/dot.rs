//! DOT export for papers and docs: witness edges highlighted, theta
//! classes cycled through a fixed palette.

use std::fmt::Write;

use gpe_core::graph::{EdgeSet, Graph};
use gpe_core::theta::ThetaPartition;

const PALETTE: [&str; 10] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999",
    "#dede00", "#00ced1",
];

/// Renders the graph; when given, witness edges are drawn bold red and
/// theta classes pick colors from the palette.
pub fn graph_dot(g: &Graph, witness: Option<&EdgeSet>, classes: Option<&ThetaPartition>) -> String {
    let mut out = String::new();
    let name = g.name().unwrap_or("g").replace(['"', '\\'], "_");
    let _ = writeln!(out, "graph \"{name}\" {{");
    let _ = writeln!(out, "  node [shape=circle];");
    for v in 0..g.n() {
        let _ = writeln!(out, "  {v};");
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let mut attrs: Vec<String> = Vec::new();
        if let Some(p) = classes {
            let color = PALETTE[p.class_of[e] % PALETTE.len()];
            attrs.push(format!("color=\"{color}\""));
        }
        if witness.is_some_and(|w| w.contains(e)) {
            attrs.push("color=\"#e41a1c\"".to_owned());
            attrs.push("penwidth=2.5".to_owned());
        }
        if attrs.is_empty() {
            let _ = writeln!(out, "  {u} -- {v};");
        } else {
            let _ = writeln!(out, "  {u} -- {v} [{}];", attrs.join(", "));
        }
    }
    out.push_str("}\n");
    out
}
