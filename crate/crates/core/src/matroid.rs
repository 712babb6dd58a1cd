//! Matroids given by a rank oracle: graphic matroids of multigraphs and
//! duals of other rank-oracle matroids, plus the Tutte polynomial evaluated
//! straight from its rank-nullity subset sum.
//!
//! Duals are never materialized; their rank is the corank formula
//! `rank*(S) = |S| + rank(E \ S) - r(E)`.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::poly::BivariatePolynomial;

/// Largest ground set the subset sum will walk (2^22 subsets).
pub const RANK_SUM_CAP: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatroidKind {
    Graphic(MultiGraph),
    Dual(Box<RankOracleMatroid>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankOracleMatroid {
    ground_size: usize,
    kind: MatroidKind,
    full_rank: usize,
}

impl RankOracleMatroid {
    /// `M(G)`: ground set is the edge list of `g`, independent sets are forests.
    pub fn graphic(g: MultiGraph) -> Self {
        let full_rank = g.vertex_count() - g.component_count_mask_all();
        Self {
            ground_size: g.edge_count(),
            kind: MatroidKind::Graphic(g),
            full_rank,
        }
    }

    /// The dual matroid on the same ground set.
    pub fn dual(self) -> Self {
        let ground_size = self.ground_size;
        let full_rank = ground_size - self.full_rank;
        Self {
            ground_size,
            kind: MatroidKind::Dual(Box::new(self)),
            full_rank,
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    /// `r_M`, the rank of the whole ground set.
    pub fn full_rank(&self) -> usize {
        self.full_rank
    }

    pub fn kind(&self) -> &MatroidKind {
        &self.kind
    }

    /// Rank of a subset given as element indices; repeated indices count once.
    pub fn rank(&self, subset: &[usize]) -> Result<usize> {
        let mut members = vec![false; self.ground_size];
        for &e in subset {
            if e >= self.ground_size {
                return Err(Error::EdgeIndexOutOfRange {
                    index: e,
                    len: self.ground_size,
                });
            }
            members[e] = true;
        }
        Ok(self.rank_members(&members))
    }

    fn rank_members(&self, members: &[bool]) -> usize {
        match &self.kind {
            MatroidKind::Graphic(g) => {
                let chosen: Vec<usize> = (0..members.len()).filter(|&i| members[i]).collect();
                g.vertex_count() - g.component_count(&chosen).expect("indices within ground set")
            }
            MatroidKind::Dual(inner) => {
                let size = members.iter().filter(|&&m| m).count();
                let complement: Vec<bool> = members.iter().map(|&m| !m).collect();
                size + inner.rank_members(&complement) - inner.full_rank
            }
        }
    }

    /// Rank of a bitmask subset; requires `ground_size <= 64`.
    pub fn rank_mask(&self, mask: u64) -> usize {
        let mut scratch = Vec::new();
        self.rank_mask_with(mask, &mut scratch)
    }

    fn rank_mask_with(&self, mask: u64, scratch: &mut Vec<usize>) -> usize {
        match &self.kind {
            MatroidKind::Graphic(g) => forest_size(g, mask, scratch),
            MatroidKind::Dual(inner) => {
                let full = full_mask(self.ground_size);
                mask.count_ones() as usize + inner.rank_mask_with(!mask & full, scratch)
                    - inner.full_rank
            }
        }
    }

    /// Tutte polynomial as `sum over S of (x-1)^(r - rank S) (y-1)^(|S| - rank S)`.
    ///
    /// Subsets are first tallied by their (corank, nullity) pair in machine
    /// words, then the tally is expanded exactly. The tally is a sum of
    /// integers, so the result does not depend on how the subsets are split
    /// across threads.
    pub fn tutte_by_rank_sum(&self) -> Result<BivariatePolynomial> {
        let m = self.ground_size;
        if m > RANK_SUM_CAP {
            return Err(Error::CapExceeded {
                what: "rank-sum ground set size (use the deletion-contraction engine)",
                requested: m as u128,
                cap: RANK_SUM_CAP as u128,
            });
        }
        let r = self.full_rank;
        let width = m + 1;
        let total: u64 = 1 << m;
        const CHUNK: u64 = 1 << 12;

        let tally = (0..total.div_ceil(CHUNK))
            .into_par_iter()
            .fold(
                || (vec![0u64; (r + 1) * width], Vec::new()),
                |(mut table, mut scratch), chunk| {
                    let end = ((chunk + 1) * CHUNK).min(total);
                    for mask in chunk * CHUNK..end {
                        let rank = self.rank_mask_with(mask, &mut scratch);
                        let nullity = mask.count_ones() as usize - rank;
                        table[(r - rank) * width + nullity] += 1;
                    }
                    (table, scratch)
                },
            )
            .map(|(table, _)| table)
            .reduce(
                || vec![0u64; (r + 1) * width],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );

        let binom = binomial_rows(m.max(r));
        let mut out = BivariatePolynomial::zero();
        for corank in 0..=r {
            for nullity in 0..width {
                let count = tally[corank * width + nullity];
                if count == 0 {
                    continue;
                }
                // (x-1)^a (y-1)^b, expanded term by term
                for i in 0..=corank {
                    for j in 0..=nullity {
                        let sign = if (corank - i + nullity - j) % 2 == 0 { 1 } else { -1 };
                        let c = BigInt::from(count)
                            * &binom[corank][i]
                            * &binom[nullity][j]
                            * sign;
                        out.add_term(i as u32, j as u32, c);
                    }
                }
            }
        }
        Ok(out)
    }
}

impl MultiGraph {
    fn component_count_mask_all(&self) -> usize {
        let all: Vec<usize> = (0..self.edge_count()).collect();
        self.component_count(&all).expect("own edge indices")
    }
}

fn full_mask(m: usize) -> u64 {
    if m >= 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// Size of a spanning forest of the edges in `mask`: the number of unions
/// that merged two different trees.
fn forest_size(g: &MultiGraph, mask: u64, parent: &mut Vec<usize>) -> usize {
    parent.clear();
    parent.extend(0..g.vertex_count());
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let edges = g.edges();
    let mut merged = 0;
    let mut m = mask;
    while m != 0 {
        let (u, v) = edges[m.trailing_zeros() as usize];
        m &= m - 1;
        let (ru, rv) = (find(parent, u), find(parent, v));
        if ru != rv {
            parent[ru] = rv;
            merged += 1;
        }
    }
    merged
}

fn binomial_rows(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut row = vec![BigInt::from(1); k + 1];
        for i in 1..k {
            row[i] = &rows[k - 1][i - 1] + &rows[k - 1][i];
        }
        rows.push(row);
    }
    rows
}

/// Rank of `subset` in the graphic matroid `M(g)`: the size of a maximal
/// forest inside it.
pub fn graphic_rank(g: &MultiGraph, subset: &[usize]) -> Result<usize> {
    let mut seen = vec![false; g.edge_count()];
    let mut distinct = Vec::with_capacity(subset.len());
    for &e in subset {
        g.edge(e)?;
        if !std::mem::replace(&mut seen[e], true) {
            distinct.push(e);
        }
    }
    Ok(g.vertex_count() - g.component_count(&distinct)?)
}

/// Rank of `subset` in the dual of `m`.
pub fn dual_rank(m: &RankOracleMatroid, subset: &[usize]) -> Result<usize> {
    m.clone().dual().rank(subset)
}
