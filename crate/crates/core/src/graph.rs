//! Labeled multigraphs on vertices `0..vertex_count`.
//!
//! Parallel edges and loops are both representable; an edge `{u, u}` is a
//! loop. Edge order only fixes iteration order and never changes meaning.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Canonicalization is exhaustive over color-respecting permutations and
/// stops here.
pub const CANONICAL_VERTEX_CAP: usize = 10;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphFile", into = "GraphFile")]
pub struct MultiGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

/// On-disk form: `{"vertices": n, "edges": [[u, v], ...]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphFile> for MultiGraph {
    type Error = Error;

    fn try_from(file: GraphFile) -> Result<Self> {
        MultiGraph::new(file.vertices, file.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl From<MultiGraph> for GraphFile {
    fn from(g: MultiGraph) -> Self {
        GraphFile {
            vertices: g.vertex_count,
            edges: g.edges.into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl MultiGraph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::NoVertices);
        }
        let edges = edges
            .into_iter()
            .map(|(u, v)| {
                if u >= vertex_count || v >= vertex_count {
                    Err(Error::EndpointOutOfRange { u, v, vertex_count })
                } else {
                    Ok((u.min(v), u.max(v)))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            vertex_count,
            edges,
        })
    }

    pub fn edgeless(vertex_count: usize) -> Result<Self> {
        Self::new(vertex_count, [])
    }

    /// `K_n`, edges in lexicographic order.
    pub fn complete_graph(n: usize) -> Result<Self> {
        Self::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// Cycle on `n >= 2` vertices; `n = 2` is the banana.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("cycle needs at least 2 vertices, got {n}")));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Two vertices joined by two parallel edges.
    pub fn banana() -> Self {
        Self::new(2, [(0, 1), (0, 1)]).expect("static graph")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Result<(usize, usize)> {
        self.edges.get(index).copied().ok_or(Error::EdgeIndexOutOfRange {
            index,
            len: self.edges.len(),
        })
    }

    pub fn is_loop(&self, index: usize) -> bool {
        let (u, v) = self.edges[index];
        u == v
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, vertex: usize) -> usize {
        self.edges
            .iter()
            .map(|&(u, v)| (u == vertex) as usize + (v == vertex) as usize)
            .sum()
    }

    /// Number of parallel edges joining `u` and `v`.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let key = (u.min(v), u.max(v));
        self.edges.iter().filter(|&&e| e == key).count()
    }

    /// Returns a copy with `edge` appended.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        Self::new(self.vertex_count, self.edges.iter().copied().chain([(u, v)]))
    }

    pub fn delete_edge(&self, index: usize) -> Result<Self> {
        self.edge(index)?;
        let mut edges = self.edges.clone();
        edges.remove(index);
        Ok(Self {
            vertex_count: self.vertex_count,
            edges,
        })
    }

    /// Merges the endpoints of edge `index`. The merged vertex keeps the
    /// smaller label and higher labels shift down by one; parallel copies of
    /// the contracted edge become loops.
    pub fn contract_edge(&self, index: usize) -> Result<Self> {
        let (keep, gone) = self.edge(index)?;
        if keep == gone {
            return Err(Error::ContractLoop { index });
        }
        let relabel = |w: usize| match w {
            w if w == gone => keep,
            w if w > gone => w - 1,
            w => w,
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != index)
            .map(|(_, &(u, v))| {
                let (a, b) = (relabel(u), relabel(v));
                (a.min(b), a.max(b))
            })
            .collect();
        Ok(Self {
            vertex_count: self.vertex_count - 1,
            edges,
        })
    }

    /// Components of the spanning subgraph with edge set `subset`.
    pub fn component_count(&self, subset: &[usize]) -> Result<usize> {
        let mut uf = UnionFind::new(self.vertex_count);
        for &i in subset {
            let (u, v) = self.edge(i)?;
            uf.union(u, v);
        }
        Ok(uf.components())
    }

    /// Same as [`component_count`](Self::component_count) for a bitmask
    /// subset of the first 64 edges.
    pub fn component_count_mask(&self, mask: u64) -> usize {
        debug_assert!(self.edges.len() <= 64 || mask >> 63 == 0);
        let mut uf = UnionFind::new(self.vertex_count);
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            let (u, v) = self.edges[i];
            uf.union(u, v);
            m &= m - 1;
        }
        uf.components()
    }

    pub fn is_connected(&self) -> bool {
        self.component_labels().1 == 1
    }

    /// Component id per vertex (ids numbered by smallest vertex) and the count.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.vertex_count);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        let mut id = vec![usize::MAX; self.vertex_count];
        let mut labels = vec![0; self.vertex_count];
        let mut next = 0;
        for (v, label) in labels.iter_mut().enumerate() {
            let r = uf.find(v);
            if id[r] == usize::MAX {
                id[r] = next;
                next += 1;
            }
            *label = id[r];
        }
        (labels, next)
    }

    /// Splits into connected components, each relabeled to `0..k` in
    /// increasing vertex order. Edge order within a component is preserved.
    pub fn components(&self) -> Vec<MultiGraph> {
        let (labels, count) = self.component_labels();
        let mut local = vec![0; self.vertex_count];
        let mut sizes = vec![0; count];
        for v in 0..self.vertex_count {
            local[v] = sizes[labels[v]];
            sizes[labels[v]] += 1;
        }
        let mut parts: Vec<MultiGraph> = sizes
            .iter()
            .map(|&n| MultiGraph {
                vertex_count: n,
                edges: Vec::new(),
            })
            .collect();
        for &(u, v) in &self.edges {
            parts[labels[u]].edges.push((local[u], local[v]));
        }
        parts
    }

    /// Whether removing edge `index` increases the number of components.
    pub fn is_bridge(&self, index: usize) -> bool {
        if self.is_loop(index) {
            return false;
        }
        let all: Vec<usize> = (0..self.edges.len()).collect();
        let rest: Vec<usize> = all.iter().copied().filter(|&i| i != index).collect();
        // Indices come from the graph itself, so neither call can fail.
        self.component_count(&rest).unwrap() > self.component_count(&all).unwrap()
    }

    /// Removes vertices with no incident edge, keeping relative label order.
    pub fn without_isolated_vertices(&self) -> MultiGraph {
        let mut used = vec![false; self.vertex_count];
        for &(u, v) in &self.edges {
            used[u] = true;
            used[v] = true;
        }
        let mut map = vec![0; self.vertex_count];
        let mut next = 0;
        for v in 0..self.vertex_count {
            if used[v] {
                map[v] = next;
                next += 1;
            }
        }
        MultiGraph {
            vertex_count: next.max(1),
            edges: self.edges.iter().map(|&(u, v)| (map[u], map[v])).collect(),
        }
    }

    /// Applies a vertex relabeling `v -> perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.vertex_count];
        if perm.len() != self.vertex_count
            || perm.iter().any(|&p| p >= self.vertex_count || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidSubset("not a permutation of the vertices".into()));
        }
        Self::new(self.vertex_count, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Isomorphism-invariant key; equal keys iff isomorphic as multigraphs
    /// (loop multiplicities included). Isolated vertices are ignored.
    pub fn canonical_key(&self) -> Result<CanonicalKey> {
        let g = self.without_isolated_vertices();
        if g.vertex_count > CANONICAL_VERTEX_CAP {
            return Err(Error::CapExceeded {
                what: "canonicalization vertex count",
                requested: g.vertex_count as u128,
                cap: CANONICAL_VERTEX_CAP as u128,
            });
        }
        if g.edges.is_empty() {
            return Ok(CanonicalKey(vec![0]));
        }
        Ok(canonical::key(&g))
    }

    /// A short human-readable description used in reports.
    pub fn describe(&self) -> String {
        let edges: Vec<String> = self.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        format!("V{}[{}]", self.vertex_count, edges.join(","))
    }
}

impl fmt::Debug for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiGraph({})", self.describe())
    }
}

/// Opaque canonical form produced by [`MultiGraph::canonical_key`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

mod canonical {
    //! Minimum adjacency encoding over vertex orders that respect a stable
    //! color refinement. Colors are derived from label-free signatures, so
    //! isomorphic graphs see the same color classes in the same order, and
    //! the search still visits every permutation inside each class.

    use super::{CanonicalKey, MultiGraph};

    pub(super) fn key(g: &MultiGraph) -> CanonicalKey {
        let n = g.vertex_count;
        let mut adj = vec![vec![0u32; n]; n];
        for &(u, v) in &g.edges {
            adj[u][v] += 1;
            if u != v {
                adj[v][u] += 1;
            }
        }
        let colors = refine(&adj);

        // Position p is filled from the vertices with the p-th smallest color.
        let mut slots: Vec<usize> = colors.clone();
        slots.sort_unstable();

        let mut search = Search {
            adj: &adj,
            colors: &colors,
            slots: &slots,
            order: Vec::with_capacity(n),
            used: vec![false; n],
            prefix: Vec::new(),
            best: None,
        };
        search.run();

        let best = search.best.expect("at least one ordering");
        let mut bytes = Vec::with_capacity(4 + best.len() * 2 + n);
        bytes.extend_from_slice(&(n as u32).to_be_bytes());
        bytes.extend(slots.iter().map(|&c| c as u8));
        for m in best {
            bytes.extend_from_slice(&(m as u16).to_be_bytes());
        }
        CanonicalKey(bytes)
    }

    /// Iterated 1-dimensional refinement starting from (loops, degree).
    fn refine(adj: &[Vec<u32>]) -> Vec<usize> {
        let n = adj.len();
        let initial: Vec<(u32, u32)> = (0..n)
            .map(|v| (adj[v][v], adj[v].iter().sum::<u32>() + adj[v][v]))
            .collect();
        let mut colors = rank(&initial);
        loop {
            let sigs: Vec<(usize, Vec<(usize, u32)>)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<(usize, u32)> = (0..n)
                        .filter(|&w| w != v && adj[v][w] > 0)
                        .map(|w| (colors[w], adj[v][w]))
                        .collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let next = rank(&sigs);
            let before = count_distinct(&colors);
            if count_distinct(&next) == before {
                return next;
            }
            colors = next;
        }
    }

    fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
        let mut sorted: Vec<T> = sigs.to_vec();
        sorted.sort();
        sorted.dedup();
        sigs.iter().map(|s| sorted.binary_search(s).unwrap()).collect()
    }

    fn count_distinct(colors: &[usize]) -> usize {
        let mut c = colors.to_vec();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    struct Search<'a> {
        adj: &'a [Vec<u32>],
        colors: &'a [usize],
        slots: &'a [usize],
        order: Vec<usize>,
        used: Vec<bool>,
        /// Row-wise lower triangle of the permuted adjacency matrix so far.
        prefix: Vec<u32>,
        best: Option<Vec<u32>>,
    }

    impl Search<'_> {
        fn run(&mut self) {
            let p = self.order.len();
            let n = self.adj.len();
            if p == n {
                if self.best.as_ref().is_none_or(|b| self.prefix < *b) {
                    self.best = Some(self.prefix.clone());
                }
                return;
            }
            for v in 0..n {
                if self.used[v] || self.colors[v] != self.slots[p] {
                    continue;
                }
                let start = self.prefix.len();
                for q in 0..p {
                    self.prefix.push(self.adj[v][self.order[q]]);
                }
                self.prefix.push(self.adj[v][v]);

                // Every completion of a prefix above the best one loses.
                let prune = self
                    .best
                    .as_ref()
                    .is_some_and(|b| self.prefix.as_slice() > &b[..self.prefix.len()]);
                if !prune {
                    self.used[v] = true;
                    self.order.push(v);
                    self.run();
                    self.order.pop();
                    self.used[v] = false;
                }
                self.prefix.truncate(start);
            }
        }
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when the two elements were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.components -= 1;
        true
    }

    pub fn components(&self) -> usize {
        self.components
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn triangle() -> MultiGraph {
        MultiGraph::complete_graph(3).unwrap()
    }

    #[test]
    fn complete_graph_sizes() {
        let k3 = triangle();
        assert_eq!((k3.vertex_count(), k3.edge_count()), (3, 3));
        let k1 = MultiGraph::complete_graph(1).unwrap();
        assert_eq!((k1.vertex_count(), k1.edge_count()), (1, 0));
        assert_eq!(MultiGraph::complete_graph(4).unwrap().edge_count(), 6);
        assert_eq!(MultiGraph::complete_graph(0), Err(Error::NoVertices));
    }

    #[test]
    fn endpoints_validated() {
        assert!(matches!(
            MultiGraph::new(2, [(0, 2)]),
            Err(Error::EndpointOutOfRange { .. })
        ));
    }

    #[test]
    fn delete_examples() {
        let path = triangle().delete_edge(2).unwrap();
        assert_eq!(path.canonical_key(), MultiGraph::path(3).unwrap().canonical_key());
        let single = MultiGraph::path(2).unwrap().delete_edge(0).unwrap();
        assert_eq!((single.vertex_count(), single.edge_count()), (2, 0));
        let once = MultiGraph::banana().delete_edge(1).unwrap();
        assert_eq!(once, MultiGraph::path(2).unwrap());
        assert_eq!(
            triangle().delete_edge(3),
            Err(Error::EdgeIndexOutOfRange { index: 3, len: 3 })
        );
    }

    #[test]
    fn contract_examples() {
        let c = triangle().contract_edge(0).unwrap();
        assert_eq!(c, MultiGraph::banana());

        let c = MultiGraph::banana().contract_edge(0).unwrap();
        assert_eq!((c.vertex_count(), c.edge_count(), c.loop_count()), (1, 1, 1));

        let c = MultiGraph::path(3).unwrap().contract_edge(1).unwrap();
        assert_eq!(c, MultiGraph::path(2).unwrap());

        let looped = MultiGraph::new(1, [(0, 0)]).unwrap();
        assert_eq!(looped.contract_edge(0), Err(Error::ContractLoop { index: 0 }));
    }

    #[test]
    fn component_examples() {
        let k3 = triangle();
        assert_eq!(k3.component_count(&[0, 1, 2]).unwrap(), 1);
        assert_eq!(k3.component_count(&[]).unwrap(), 3);
        let k4 = MultiGraph::complete_graph(4).unwrap();
        assert_eq!(k4.component_count(&[0]).unwrap(), 3);
        assert!(k3.component_count(&[7]).is_err());
        // Loops never merge anything.
        let g = MultiGraph::new(2, [(1, 1)]).unwrap();
        assert_eq!(g.component_count(&[0]).unwrap(), 2);
    }

    #[test]
    fn bridges() {
        let g = MultiGraph::new(4, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 3)]).unwrap();
        let flags: Vec<bool> = (0..g.edge_count()).map(|i| g.is_bridge(i)).collect();
        assert_eq!(flags, [false, false, false, true, false]);
        assert!(!MultiGraph::banana().is_bridge(0));
    }

    #[test]
    fn key_examples() {
        let a = MultiGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let b = MultiGraph::new(3, [(2, 0), (0, 1), (2, 1)]).unwrap();
        assert_eq!(a.canonical_key(), b.canonical_key());
        assert_ne!(a.canonical_key(), MultiGraph::path(3).unwrap().canonical_key());
        let two_edges = MultiGraph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_ne!(MultiGraph::banana().canonical_key(), two_edges.canonical_key());
    }

    #[test]
    fn key_distinguishes_loop_placement() {
        let at_leaf = MultiGraph::new(3, [(0, 1), (1, 2), (0, 0)]).unwrap();
        let at_center = MultiGraph::new(3, [(0, 1), (1, 2), (1, 1)]).unwrap();
        let at_other_leaf = MultiGraph::new(3, [(0, 1), (1, 2), (2, 2)]).unwrap();
        assert_ne!(at_leaf.canonical_key(), at_center.canonical_key());
        assert_eq!(at_leaf.canonical_key(), at_other_leaf.canonical_key());
    }

    #[test]
    fn key_ignores_isolated_vertices() {
        let a = MultiGraph::new(5, [(3, 4)]).unwrap();
        assert_eq!(a.canonical_key(), MultiGraph::path(2).unwrap().canonical_key());
    }

    #[test]
    fn key_regular_non_isomorphic() {
        // Two 3-regular graphs on 6 vertices: the prism and K_{3,3}. Color
        // refinement cannot split either one, so the permutation search decides.
        let prism =
            MultiGraph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
                .unwrap();
        let k33 = MultiGraph::new(
            6,
            [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        assert_ne!(prism.canonical_key(), k33.canonical_key());
        assert_eq!(k33.canonical_key(), k33.permuted(&[5, 0, 4, 1, 3, 2]).unwrap().canonical_key());
    }

    #[test]
    fn key_cap() {
        let big = MultiGraph::cycle(11).unwrap();
        assert!(matches!(big.canonical_key(), Err(Error::CapExceeded { .. })));
        assert!(MultiGraph::complete_graph(10).unwrap().canonical_key().is_ok());
    }

    #[test]
    fn components_split() {
        let g = MultiGraph::new(5, [(3, 4), (0, 2), (2, 2)]).unwrap();
        let parts = g.components();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], MultiGraph::new(2, [(0, 1), (1, 1)]).unwrap());
        assert_eq!(parts[1], MultiGraph::edgeless(1).unwrap());
        assert_eq!(parts[2], MultiGraph::path(2).unwrap());
    }

    #[test]
    fn json_format() {
        let g: MultiGraph = serde_json::from_str(r#"{"vertices": 2, "edges": [[0,1],[1,0]]}"#).unwrap();
        assert_eq!(g, MultiGraph::banana());
        assert!(serde_json::from_str::<MultiGraph>(r#"{"vertices": 2, "edges": [[0,2]]}"#).is_err());
        assert!(serde_json::from_str::<MultiGraph>(r#"{"vertices": 0, "edges": []}"#).is_err());
        let s = serde_json::to_string(&MultiGraph::path(3).unwrap()).unwrap();
        assert_eq!(s, r#"{"vertices":3,"edges":[[0,1],[1,2]]}"#);
    }

    fn arb_graph() -> impl Strategy<Value = MultiGraph> {
        (1usize..7).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n), 0..10)
                .prop_map(move |edges| MultiGraph::new(n, edges).unwrap())
        })
    }

    proptest! {
        #[test]
        fn key_invariant_under_permutation(g in arb_graph(), seed in any::<u64>()) {
            let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
            perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            let h = g.permuted(&perm).unwrap();
            prop_assert_eq!(g.canonical_key().unwrap(), h.canonical_key().unwrap());
        }

        #[test]
        fn delete_then_reinsert(g in arb_graph(), pick in any::<prop::sample::Index>()) {
            prop_assume!(g.edge_count() > 0);
            let i = pick.index(g.edge_count());
            let (u, v) = g.edges()[i];
            let back = g.delete_edge(i).unwrap().with_edge(u, v).unwrap();
            prop_assert_eq!(back.canonical_key().unwrap(), g.canonical_key().unwrap());
        }

        #[test]
        fn contract_shrinks_by_one(g in arb_graph(), pick in any::<prop::sample::Index>()) {
            prop_assume!(g.edge_count() > 0);
            let i = pick.index(g.edge_count());
            prop_assume!(!g.is_loop(i));
            let c = g.contract_edge(i).unwrap();
            prop_assert_eq!(c.vertex_count() + 1, g.vertex_count());
            prop_assert_eq!(c.edge_count() + 1, g.edge_count());
        }

        #[test]
        fn components_monotone(g in arb_graph(), bits in any::<u16>()) {
            let mut subset = Vec::new();
            let mut prev = g.vertex_count();
            for i in 0..g.edge_count() {
                if bits >> i & 1 == 1 {
                    subset.push(i);
                    let now = g.component_count(&subset).unwrap();
                    prop_assert!(now <= prev);
                    prev = now;
                }
            }
        }
    }

    /// Brute-force isomorphism over all vertex bijections, as an oracle for
    /// key equality.
    fn isomorphic(a: &MultiGraph, b: &MultiGraph) -> bool {
        let a = a.without_isolated_vertices();
        let b = b.without_isolated_vertices();
        if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
            return false;
        }
        let n = a.vertex_count();
        let sorted = |g: &MultiGraph| {
            let mut e = g.edges().to_vec();
            e.sort_unstable();
            e
        };
        let target = sorted(&b);
        let mut perm: Vec<usize> = (0..n).collect();
        permutations(&mut perm, 0, &mut |p| sorted(&a.permuted(p).unwrap()) == target)
    }

    fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if k == p.len() {
            return f(p);
        }
        for i in k..p.len() {
            p.swap(k, i);
            if permutations(p, k + 1, f) {
                p.swap(k, i);
                return true;
            }
            p.swap(k, i);
        }
        false
    }

    #[test]
    fn key_equality_matches_brute_force_isomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        use rand::Rng;
        let graphs: Vec<MultiGraph> = (0..150)
            .map(|_| {
                let n = rng.gen_range(1..6);
                let m = rng.gen_range(0..7);
                MultiGraph::new(n, (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))).unwrap()
            })
            .collect();
        for a in &graphs {
            for b in &graphs {
                assert_eq!(
                    a.canonical_key().unwrap() == b.canonical_key().unwrap(),
                    isomorphic(a, b),
                    "{a:?} vs {b:?}"
                );
            }
        }
    }
}
