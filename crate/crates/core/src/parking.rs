//! Classical parking functions and G-parking functions, graded by the sum
//! of their entries.
//!
//! Entries are positive integers. A sequence is a parking function when its
//! nondecreasing rearrangement `b` has `b_i <= i` for all `i`. For a
//! connected loopless multigraph `G` on `{0, ..., n}` with root 0, a sequence
//! `(a_1, ..., a_n)` is G-parking when every nonempty `I` inside
//! `{1, ..., n}` has some `i` in `I` with `a_i <= d_I(i)`, the number of
//! edges from `i` to vertices outside `I`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::poly::IntPolynomial;

/// Largest `n` for the classical enumerator (`8^8` candidates).
pub const PF_LENGTH_CAP: usize = 8;
/// Largest candidate box `prod deg(i)` for the G-parking enumerator.
pub const GPF_SEARCH_CAP: u128 = 10_000_000;
/// Largest non-root vertex count for the subset test.
pub const GPF_VERTEX_CAP: usize = 20;

/// A validated classical parking function.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParkingFunction(Vec<u32>);

impl ParkingFunction {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if is_parking_function(&entries)? {
            Ok(Self(entries))
        } else {
            Err(Error::InvalidArgument(format!("{entries:?} is not a parking function")))
        }
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn sum(&self) -> u64 {
        sum_statistic(&self.0)
    }
}

fn check_positive(entries: &[u32]) -> Result<()> {
    match entries.iter().position(|&a| a == 0) {
        Some(position) => Err(Error::NonPositiveEntry { position, value: 0 }),
        None => Ok(()),
    }
}

pub fn is_parking_function(entries: &[u32]) -> Result<bool> {
    check_positive(entries)?;
    let mut sorted = entries.to_vec();
    sorted.sort_unstable();
    Ok(sorted.iter().enumerate().all(|(i, &b)| b as usize <= i + 1))
}

pub fn sum_statistic(entries: &[u32]) -> u64 {
    entries.iter().map(|&a| a as u64).sum()
}

/// Same verdict as [`is_parking_function`] for entries in `1..=n`: at least
/// `k` entries are `<= k` for every `k`.
fn counts_park(entries: &[u32], tally: &mut [u32]) -> bool {
    tally.iter_mut().for_each(|t| *t = 0);
    for &a in entries {
        tally[a as usize - 1] += 1;
    }
    let mut seen = 0;
    for (k, &t) in tally.iter().enumerate() {
        seen += t;
        if (seen as usize) < k + 1 {
            return false;
        }
    }
    true
}

/// Visits every sequence of the box `prod_i {1..=bounds[i]}` whose leading
/// coordinates are fixed by `prefix`, in lexicographic order.
fn for_each_in_box(bounds: &[u32], prefix: &[u32], mut f: impl FnMut(&[u32])) {
    let n = bounds.len();
    let mut cur: Vec<u32> = prefix.to_vec();
    cur.resize(n, 1);
    if bounds.contains(&0) {
        return;
    }
    loop {
        f(&cur);
        let mut i = n;
        loop {
            if i == prefix.len() {
                return;
            }
            i -= 1;
            if cur[i] < bounds[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 1;
        }
    }
}

/// All prefixes of length `depth` of the box, used to split work.
fn box_prefixes(bounds: &[u32], depth: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in &bounds[..depth.min(bounds.len())] {
        out = out
            .into_iter()
            .flat_map(|p| {
                (1..=b).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

fn sum_histogram<F>(bounds: &[u32], accept: F) -> IntPolynomial
where
    F: Fn(&[u32], &mut Vec<u32>) -> bool + Sync,
{
    let max_sum: usize = bounds.iter().map(|&b| b as usize).sum();
    let prefixes = box_prefixes(bounds, 2);
    let hist = prefixes
        .par_iter()
        .map(|prefix| {
            let mut hist = vec![0u64; max_sum + 1];
            let mut scratch = Vec::new();
            for_each_in_box(bounds, prefix, |seq| {
                if accept(seq, &mut scratch) {
                    hist[sum_statistic(seq) as usize] += 1;
                }
            });
            hist
        })
        .reduce(
            || vec![0u64; max_sum + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    IntPolynomial::from_counts(&hist)
}

/// `P_n(x)`, the sum enumerator of length-`n` parking functions.
/// `P_0 = 1` (the empty sequence).
pub fn pf_sum_enumerator(n: usize) -> Result<IntPolynomial> {
    if n > PF_LENGTH_CAP {
        return Err(Error::CapExceeded {
            what: "parking function length",
            requested: n as u128,
            cap: PF_LENGTH_CAP as u128,
        });
    }
    let bounds = vec![n as u32; n];
    Ok(sum_histogram(&bounds, |seq, tally| {
        tally.resize(seq.len(), 0);
        counts_park(seq, tally)
    }))
}

/// Every parking function of length `n` in lexicographic order.
pub fn parking_functions(n: usize) -> Result<Vec<ParkingFunction>> {
    if n > PF_LENGTH_CAP {
        return Err(Error::CapExceeded {
            what: "parking function length",
            requested: n as u128,
            cap: PF_LENGTH_CAP as u128,
        });
    }
    let bounds = vec![n as u32; n];
    let mut out = Vec::new();
    let mut tally = vec![0; n];
    for_each_in_box(&bounds, &[], |seq| {
        if counts_park(seq, &mut tally) {
            out.push(ParkingFunction(seq.to_vec()));
        }
    });
    Ok(out)
}

/// Edge multiplicities of a validated G-parking host graph.
struct RootedGraph {
    /// Non-root vertex count.
    n: usize,
    mult: Vec<Vec<u32>>,
    degree: Vec<u32>,
}

impl RootedGraph {
    fn new(g: &MultiGraph) -> Result<Self> {
        if let Some(&(u, _)) = g.edges().iter().find(|(u, v)| u == v) {
            return Err(Error::LoopNotAllowed { vertex: u });
        }
        let (_, components) = g.component_labels();
        if components != 1 {
            return Err(Error::Disconnected { components });
        }
        let v = g.vertex_count();
        let mut mult = vec![vec![0u32; v]; v];
        for &(a, b) in g.edges() {
            mult[a][b] += 1;
            mult[b][a] += 1;
        }
        let degree = mult.iter().map(|row| row.iter().sum()).collect();
        Ok(Self {
            n: v - 1,
            mult,
            degree,
        })
    }

    fn subset_cap(&self) -> Result<()> {
        if self.n > GPF_VERTEX_CAP {
            return Err(Error::CapExceeded {
                what: "G-parking non-root vertex count",
                requested: self.n as u128,
                cap: GPF_VERTEX_CAP as u128,
            });
        }
        Ok(())
    }

    /// Edges from `i` to vertices outside the non-root subset `mask`
    /// (bit `k` is vertex `k + 1`).
    fn d_out_mask(&self, mask: u32, i: usize) -> u32 {
        let inside: u32 = (1..=self.n)
            .filter(|&j| mask >> (j - 1) & 1 == 1)
            .map(|j| self.mult[i][j])
            .sum();
        self.degree[i] - inside
    }

    fn accepts(&self, entries: &[u32], dtab: Option<&[u32]>) -> bool {
        let n = self.n;
        (1u32..1 << n).all(|mask| {
            let mut m = mask;
            while m != 0 {
                let k = m.trailing_zeros() as usize;
                m &= m - 1;
                let d = match dtab {
                    Some(t) => t[mask as usize * n + k],
                    None => self.d_out_mask(mask, k + 1),
                };
                if entries[k] <= d {
                    return true;
                }
            }
            false
        })
    }
}

fn subset_mask(n: usize, subset: &[usize]) -> Result<u32> {
    if subset.is_empty() {
        return Err(Error::InvalidSubset("subset must be nonempty".into()));
    }
    let mut mask = 0u32;
    for &v in subset {
        if v == 0 || v > n {
            return Err(Error::InvalidSubset(format!(
                "vertex {v} is not a non-root vertex of 1..={n}"
            )));
        }
        mask |= 1 << (v - 1);
    }
    Ok(mask)
}

/// `d_I(i)`: edges (with multiplicity) from `i` to vertices not in `subset`.
pub fn d_out(g: &MultiGraph, subset: &[usize], i: usize) -> Result<u32> {
    let rg = RootedGraph::new(g)?;
    if rg.n > 31 {
        return Err(Error::CapExceeded {
            what: "G-parking non-root vertex count",
            requested: rg.n as u128,
            cap: 31,
        });
    }
    let mask = subset_mask(rg.n, subset)?;
    if !subset.contains(&i) {
        return Err(Error::InvalidSubset(format!("vertex {i} is not in the subset")));
    }
    Ok(rg.d_out_mask(mask, i))
}

/// Checks every nonempty subset of non-root vertices directly.
pub fn is_gparking(g: &MultiGraph, entries: &[u32]) -> Result<bool> {
    let rg = RootedGraph::new(g)?;
    rg.subset_cap()?;
    if entries.len() != rg.n {
        return Err(Error::LengthMismatch {
            expected: rg.n,
            got: entries.len(),
        });
    }
    check_positive(entries)?;
    Ok(rg.accepts(entries, None))
}

/// `P_G(x)`: G-parking functions graded by entry sum.
///
/// Candidates range over `prod_i {1..=deg(i)}`, since the singleton `I = {i}`
/// forces `a_i <= deg(i)`.
pub fn gpf_sum_enumerator(g: &MultiGraph) -> Result<IntPolynomial> {
    let rg = RootedGraph::new(g)?;
    rg.subset_cap()?;
    let n = rg.n;
    let bounds: Vec<u32> = rg.degree[1..].to_vec();
    let space: u128 = bounds.iter().map(|&b| b as u128).product();
    if space > GPF_SEARCH_CAP {
        return Err(Error::CapExceeded {
            what: "G-parking candidate space",
            requested: space,
            cap: GPF_SEARCH_CAP,
        });
    }
    // d_I(i) for every subset, when the table is small.
    let dtab: Option<Vec<u32>> = (n <= 16).then(|| {
        let mut t = vec![0u32; (1usize << n) * n.max(1)];
        for mask in 1u32..1 << n {
            for k in 0..n {
                if mask >> k & 1 == 1 {
                    t[mask as usize * n + k] = rg.d_out_mask(mask, k + 1);
                }
            }
        }
        t
    });
    Ok(sum_histogram(&bounds, |seq, _| rg.accepts(seq, dtab.as_deref())))
}
