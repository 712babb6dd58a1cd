//! Shared inputs for the benchmarks.

use parklc_core::MultiGraph;

/// Dense graphs that stress the deletion-contraction memo table.
pub fn dense_graphs() -> Vec<(String, MultiGraph)> {
    let mut out: Vec<(String, MultiGraph)> = (5..=7)
        .map(|n| (format!("K{n}"), MultiGraph::complete_graph(n).unwrap()))
        .collect();
    // Wheel on 8 vertices: hub 0, rim 1..=7.
    let rim = (1..8).map(|i| (i, if i == 7 { 1 } else { i + 1 }));
    let spokes = (1..8).map(|i| (0, i));
    out.push(("W8".into(), MultiGraph::new(8, rim.chain(spokes)).unwrap()));
    out
}
