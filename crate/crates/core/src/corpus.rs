//! Graph corpora for the verification suites.

use std::collections::BTreeMap;

use crate::graph::MultiGraph;

/// A graph with a stable, human-readable instance name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedGraph {
    pub name: String,
    pub graph: MultiGraph,
}

impl NamedGraph {
    pub fn new(name: impl Into<String>, graph: MultiGraph) -> Self {
        Self {
            name: name.into(),
            graph,
        }
    }
}

/// Every loopless connected multigraph with at most `max_vertices` vertices
/// and at most `max_edges` edges, one per isomorphism class.
///
/// Ordered by vertex count, then edge count, then canonical key, so the
/// list is stable across runs.
pub fn connected_multigraphs(max_vertices: usize, max_edges: usize) -> Vec<MultiGraph> {
    let mut out = Vec::new();
    for v in 1..=max_vertices {
        let pairs: Vec<(usize, usize)> =
            (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
        for e in v - 1..=max_edges {
            if pairs.is_empty() && e > 0 {
                break;
            }
            let mut classes = BTreeMap::new();
            for_each_multiset(pairs.len(), e, |choice| {
                let g = MultiGraph::new(v, choice.iter().map(|&i| pairs[i]))
                    .expect("pairs are in range");
                if g.is_connected() {
                    let key = g.canonical_key().expect("corpus stays under the cap");
                    classes.entry(key).or_insert(g);
                }
            });
            out.extend(classes.into_values());
        }
    }
    out
}

/// Nondecreasing index sequences of length `len` over `0..kinds`.
fn for_each_multiset(kinds: usize, len: usize, mut f: impl FnMut(&[usize])) {
    if len == 0 {
        f(&[]);
        return;
    }
    if kinds == 0 {
        return;
    }
    let mut cur = vec![0; len];
    loop {
        f(&cur);
        let Some(i) = (0..len).rev().find(|&i| cur[i] + 1 < kinds) else {
            return;
        };
        let next = cur[i] + 1;
        cur[i..].iter_mut().for_each(|c| *c = next);
    }
}

pub fn complete(n: usize) -> NamedGraph {
    NamedGraph::new(format!("K{n}"), MultiGraph::complete_graph(n).expect("n >= 1"))
}

pub fn cycle(n: usize) -> NamedGraph {
    NamedGraph::new(format!("C{n}"), MultiGraph::cycle(n).expect("n >= 2"))
}

pub fn path(n: usize) -> NamedGraph {
    NamedGraph::new(format!("P{n}"), MultiGraph::path(n).expect("n >= 1"))
}

pub fn banana() -> NamedGraph {
    NamedGraph::new("banana", MultiGraph::banana())
}

/// Small graphs carrying loops, for checks that accept them.
pub fn looped() -> Vec<NamedGraph> {
    let g = |v, e: &[(usize, usize)]| MultiGraph::new(v, e.iter().copied()).expect("static graph");
    vec![
        NamedGraph::new("loop", g(1, &[(0, 0)])),
        NamedGraph::new("bridge+loop", g(2, &[(0, 1), (1, 1)])),
        NamedGraph::new("banana+loop", g(2, &[(0, 1), (0, 1), (0, 0)])),
        NamedGraph::new("K4+loop", g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (2, 2)])),
        NamedGraph::new("C4+2loops", g(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 0), (0, 0)])),
    ]
}

pub fn generated(max_vertices: usize, max_edges: usize) -> Vec<NamedGraph> {
    connected_multigraphs(max_vertices, max_edges)
        .into_iter()
        .map(|g| NamedGraph::new(format!("multi:{}", g.describe()), g))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_walk() {
        let mut seen = Vec::new();
        for_each_multiset(3, 2, |c| seen.push(c.to_vec()));
        assert_eq!(seen, [[0, 0], [0, 1], [0, 2], [1, 1], [1, 2], [2, 2]]);
        let mut count = 0;
        for_each_multiset(10, 8, |_| count += 1);
        assert_eq!(count, 24310);
    }

    #[test]
    fn small_counts() {
        // Simple connected graphs up to isomorphism are a subset; count
        // multigraphs on 3 vertices with up to 3 edges by hand:
        // 2 edges: path; 3 edges: triangle, path with one doubled edge.
        let gs = connected_multigraphs(3, 3);
        let three: Vec<_> = gs.iter().filter(|g| g.vertex_count() == 3).collect();
        assert_eq!(three.len(), 3);
        // 1 vertex (edgeless), 2 vertices with 1..3 parallel edges.
        assert_eq!(gs.iter().filter(|g| g.vertex_count() <= 2).count(), 4);
    }

    #[test]
    fn simple_graph_counts() {
        // Connected simple graphs on 4 vertices up to isomorphism: 6.
        let simple = connected_multigraphs(4, 6)
            .into_iter()
            .filter(|g| g.vertex_count() == 4)
            .filter(|g| g.edges().iter().all(|&(u, v)| g.multiplicity(u, v) == 1))
            .count();
        assert_eq!(simple, 6);
    }

    #[test]
    fn generated_is_deduplicated() {
        let gs = connected_multigraphs(4, 5);
        let mut keys: Vec<_> = gs.iter().map(|g| g.canonical_key().unwrap()).collect();
        let before = keys.len();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), before);
        assert!(gs.iter().all(|g| g.is_connected() && g.loop_count() == 0));
    }
}
