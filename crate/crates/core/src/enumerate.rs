//! Labeled trees graded by inversions and connected labeled graphs graded
//! by edge count.
//!
//! `I_k` always means trees on the `k` vertices `{0, ..., k-1}` rooted at 0,
//! so the parking identity pairs `P_n` with `I_{n+1}`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::UnionFind;
use crate::poly::IntPolynomial;

/// Largest tree vertex count for [`inversion_enumerator`] (`9^7` trees).
pub const TREE_VERTEX_CAP: usize = 9;
/// Largest vertex count for [`connected_edge_enumerator`] (`2^21` subsets).
pub const CONNECTED_VERTEX_CAP: usize = 7;

/// A tree on `{0, ..., n}` stored as parent pointers toward the root 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledTree {
    /// `parent[v]` for `v >= 1`; `parent[0]` is unused and holds 0.
    parent: Vec<usize>,
}

impl LabeledTree {
    /// Validates that following parents from every vertex reaches 0.
    pub fn from_parents(parent: Vec<usize>) -> Result<Self> {
        let n = parent.len();
        if n == 0 {
            return Err(Error::NotATree("no vertices".into()));
        }
        if parent[0] != 0 {
            return Err(Error::NotATree("vertex 0 must be its own parent".into()));
        }
        for (v, &p) in parent.iter().enumerate().skip(1) {
            if p >= n {
                return Err(Error::LabelOutOfRange {
                    label: p,
                    vertex_count: n,
                });
            }
            let mut cur = v;
            let mut steps = 0;
            while cur != 0 {
                cur = parent[cur];
                steps += 1;
                if steps > n {
                    return Err(Error::NotATree(format!("vertex {v} never reaches 0")));
                }
            }
        }
        Ok(Self { parent })
    }

    /// Roots an edge list on `vertex_count` vertices at 0.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if vertex_count == 0 || edges.len() + 1 != vertex_count {
            return Err(Error::NotATree(format!(
                "{} edges cannot span {vertex_count} vertices as a tree",
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::LabelOutOfRange {
                        label: w,
                        vertex_count,
                    });
                }
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut parent = vec![usize::MAX; vertex_count];
        parent[0] = 0;
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    stack.push(w);
                }
            }
        }
        if parent.contains(&usize::MAX) {
            return Err(Error::NotATree("edges do not connect every vertex".into()));
        }
        Ok(Self { parent })
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        (v != 0).then(|| self.parent[v])
    }

    /// Edges as `(child, parent)` for children `1..vertex_count`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent.iter().enumerate().skip(1).map(|(v, &p)| (v, p))
    }

    /// Sorted edge set with each edge written `(min, max)`.
    pub fn edge_set(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self.edges().map(|(a, b)| (a.min(b), a.max(b))).collect();
        e.sort_unstable();
        e
    }

    /// Pairs `0 < i < j` with `j` on the path from `i` to the root.
    pub fn inversion_count(&self) -> usize {
        inversions(&self.parent)
    }
}

fn inversions(parent: &[usize]) -> usize {
    let mut count = 0;
    for i in 1..parent.len() {
        let mut cur = parent[i];
        while cur != 0 {
            if cur > i {
                count += 1;
            }
            cur = parent[cur];
        }
    }
    count
}

/// Decodes a Prüfer sequence of length `k - 2` over `{0, ..., k-1}` into a
/// tree on `k` vertices.
pub fn prufer_decode(seq: &[usize]) -> Result<LabeledTree> {
    let k = seq.len() + 2;
    let mut parent = vec![0; k];
    let mut degree = vec![0; k];
    decode_into(seq, &mut parent, &mut degree)?;
    Ok(LabeledTree { parent })
}

/// Linear-time decoder: the smallest leaf is tracked by a forward-moving
/// pointer. Edges come out oriented toward `k - 1` and are re-rooted at 0.
fn decode_into(seq: &[usize], parent: &mut [usize], degree: &mut [usize]) -> Result<()> {
    let k = seq.len() + 2;
    degree.iter_mut().for_each(|d| *d = 1);
    for &s in seq {
        if s >= k {
            return Err(Error::LabelOutOfRange {
                label: s,
                vertex_count: k,
            });
        }
        degree[s] += 1;
    }
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &s in seq {
        parent[leaf] = s;
        degree[s] -= 1;
        if s < ptr && degree[s] == 1 {
            leaf = s;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    // Final edge joins the last leaf with the largest label.
    parent[leaf] = k - 1;
    // Every vertex but k-1 now points toward k-1; re-root at 0 by reversing
    // the path from 0 to k-1.
    let mut prev = 0;
    let mut cur = 0;
    while cur != k - 1 {
        let next = parent[cur];
        parent[cur] = prev;
        prev = cur;
        cur = next;
    }
    parent[k - 1] = prev;
    parent[0] = 0;
    Ok(())
}

/// Every labeled tree on `vertex_count` vertices, in Prüfer order.
pub fn labeled_trees(vertex_count: usize) -> Result<Vec<LabeledTree>> {
    check_tree_cap(vertex_count)?;
    if vertex_count == 1 {
        return Ok(vec![LabeledTree { parent: vec![0] }]);
    }
    let len = vertex_count - 2;
    let mut out = Vec::new();
    let mut seq = vec![0; len];
    loop {
        out.push(prufer_decode(&seq)?);
        if !advance(&mut seq, vertex_count) {
            return Ok(out);
        }
    }
}

fn check_tree_cap(vertex_count: usize) -> Result<()> {
    if vertex_count == 0 {
        return Err(Error::InvalidArgument("trees need at least one vertex".into()));
    }
    if vertex_count > TREE_VERTEX_CAP {
        return Err(Error::CapExceeded {
            what: "tree vertex count",
            requested: vertex_count as u128,
            cap: TREE_VERTEX_CAP as u128,
        });
    }
    Ok(())
}

/// Odometer step over `{0..base}^len`; false after the last sequence.
fn advance(seq: &mut [usize], base: usize) -> bool {
    for d in seq.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// `I_k(x)`: trees on `{0, ..., k-1}` graded by inversions. `I_1 = 1`.
pub fn inversion_enumerator(vertex_count: usize) -> Result<IntPolynomial> {
    check_tree_cap(vertex_count)?;
    let k = vertex_count;
    if k <= 2 {
        return Ok(IntPolynomial::one());
    }
    let max_inv = (k - 1) * (k - 2) / 2;
    // Split on the first Prüfer symbol.
    let hist = (0..k)
        .into_par_iter()
        .map(|first| {
            let mut hist = vec![0u64; max_inv + 1];
            let mut seq = vec![0; k - 2];
            seq[0] = first;
            let mut parent = vec![0; k];
            let mut degree = vec![0; k];
            loop {
                decode_into(&seq, &mut parent, &mut degree).expect("labels in range");
                hist[inversions(&parent)] += 1;
                if !advance(&mut seq[1..], k) {
                    break;
                }
            }
            hist
        })
        .reduce(
            || vec![0u64; max_inv + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(IntPolynomial::from_counts(&hist))
}

/// `C_n(x)`: connected labeled simple graphs on `n` vertices by edge count.
pub fn connected_edge_enumerator(n: usize) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(Error::InvalidArgument("graphs need at least one vertex".into()));
    }
    if n > CONNECTED_VERTEX_CAP {
        return Err(Error::CapExceeded {
            what: "connected graph vertex count",
            requested: n as u128,
            cap: CONNECTED_VERTEX_CAP as u128,
        });
    }
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let m = pairs.len();
    let total: u64 = 1 << m;
    const CHUNK: u64 = 1 << 12;
    let hist = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|chunk| {
            let mut hist = vec![0u64; m + 1];
            for mask in chunk * CHUNK..((chunk + 1) * CHUNK).min(total) {
                let mut uf = UnionFind::new(n);
                let mut bits = mask;
                while bits != 0 {
                    let (u, v) = pairs[bits.trailing_zeros() as usize];
                    uf.union(u, v);
                    bits &= bits - 1;
                }
                if uf.components() == 1 {
                    hist[mask.count_ones() as usize] += 1;
                }
            }
            hist
        })
        .reduce(
            || vec![0u64; m + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(IntPolynomial::from_counts(&hist))
}
