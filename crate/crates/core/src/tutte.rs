//! Memoized deletion-contraction for Tutte polynomials of multigraphs.
//!
//! Every call first peels loops (factor `y` each) and contracts bridges
//! (factor `x` each), drops isolated vertices and splits into components.
//! What remains is loopless and bridgeless, so its lowest-indexed edge is
//! the deletion-contraction pivot:
//!
//! ```text
//! T(G) = x^bridges * y^loops * prod over components C of (T(C - e) + T(C / e))
//! ```
//!
//! Cores with at most [`CANONICAL_VERTEX_CAP`] vertices are cached under
//! their canonical key, which collapses the many isomorphic minors that
//! dense graphs produce.

use dashmap::DashMap;

use crate::graph::{CanonicalKey, MultiGraph, CANONICAL_VERTEX_CAP};
use crate::poly::{BivariatePolynomial, IntPolynomial, Variable};

/// Cores with at least this many edges split their two branches across
/// rayon workers.
const PARALLEL_EDGE_THRESHOLD: usize = 12;

/// Deletion-contraction engine with a shared, concurrency-safe memo table.
///
/// One engine can be reused across graphs; cached values are exact, so a
/// shared cache never changes a result.
#[derive(Debug, Default)]
pub struct TutteEngine {
    cache: DashMap<CanonicalKey, BivariatePolynomial>,
    memoize: bool,
}

impl TutteEngine {
    pub fn new() -> Self {
        Self {
            cache: DashMap::new(),
            memoize: true,
        }
    }

    /// Plain recursion, no cache. Useful as a slow reference.
    pub fn without_memo() -> Self {
        Self {
            cache: DashMap::new(),
            memoize: false,
        }
    }

    pub fn cached_cores(&self) -> usize {
        self.cache.len()
    }

    pub fn tutte(&self, g: &MultiGraph) -> BivariatePolynomial {
        let (bridges, loops, core) = peel(g);
        let mut out = BivariatePolynomial::monomial(1, bridges, loops);
        if core.edge_count() == 0 {
            return out;
        }
        for part in core.components() {
            if part.edge_count() > 0 {
                out = out.poly_mul(&self.reduce(&part));
            }
        }
        out
    }

    /// `g` is connected, loopless and bridgeless with at least one edge.
    fn reduce(&self, g: &MultiGraph) -> BivariatePolynomial {
        let key = if self.memoize && g.vertex_count() <= CANONICAL_VERTEX_CAP {
            g.canonical_key().ok()
        } else {
            None
        };
        if let Some(k) = &key {
            if let Some(hit) = self.cache.get(k) {
                return hit.clone();
            }
        }

        let deleted = g.delete_edge(0).expect("core has edges");
        let contracted = g.contract_edge(0).expect("core has no loops");
        let (a, b) = if g.edge_count() >= PARALLEL_EDGE_THRESHOLD {
            rayon::join(|| self.tutte(&deleted), || self.tutte(&contracted))
        } else {
            (self.tutte(&deleted), self.tutte(&contracted))
        };
        let result = a + b;

        if let Some(k) = key {
            // A concurrent worker may have inserted the same value already.
            self.cache.entry(k).or_insert_with(|| result.clone());
        }
        result
    }
}

/// Removes loops, contracts bridges and drops isolated vertices.
/// Returns `(bridges, loops, rest)`.
fn peel(g: &MultiGraph) -> (u32, u32, MultiGraph) {
    let loops = g.loop_count();
    let loopless = MultiGraph::new(
        g.vertex_count(),
        g.edges().iter().copied().filter(|(u, v)| u != v),
    )
    .expect("endpoints already validated");

    let bridges: Vec<usize> =
        (0..loopless.edge_count()).filter(|&i| loopless.is_bridge(i)).collect();
    // Contracting a bridge neither creates loops nor changes which other
    // edges are bridges. Go high to low so earlier indices stay valid.
    let mut rest = loopless;
    for &i in bridges.iter().rev() {
        rest = rest.contract_edge(i).expect("bridges are not loops");
    }
    (bridges.len() as u32, loops as u32, rest.without_isolated_vertices())
}

/// Tutte polynomial of `M(g)` by memoized deletion-contraction.
pub fn tutte_delcon(g: &MultiGraph) -> BivariatePolynomial {
    TutteEngine::new().tutte(g)
}

/// Sets the `pinned` variable to 1.
pub fn specialize(t: &BivariatePolynomial, pinned: Variable) -> IntPolynomial {
    t.specialize(pinned)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::RankOracleMatroid;
    use crate::poly::lc_diagnostics;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bi(terms: &[(u32, u32, i64)]) -> BivariatePolynomial {
        BivariatePolynomial::from_terms(terms.iter().copied())
    }

    fn k(n: usize) -> MultiGraph {
        MultiGraph::complete_graph(n).unwrap()
    }

    fn oracle(g: &MultiGraph) -> BivariatePolynomial {
        RankOracleMatroid::graphic(g.clone()).tutte_by_rank_sum().unwrap()
    }

    #[test]
    fn examples() {
        let k4 = bi(&[(3, 0, 1), (2, 0, 3), (1, 0, 2), (1, 1, 4), (0, 1, 2), (0, 2, 3), (0, 3, 1)]);
        assert_eq!(tutte_delcon(&k(4)), k4);
        assert_eq!(tutte_delcon(&MultiGraph::banana()), bi(&[(1, 0, 1), (0, 1, 1)]));
        for n in 1..5 {
            assert_eq!(tutte_delcon(&MultiGraph::edgeless(n).unwrap()), BivariatePolynomial::one());
        }
    }

    #[test]
    fn specialize_examples() {
        let k4 = tutte_delcon(&k(4));
        assert_eq!(specialize(&k4, Variable::X), IntPolynomial::from_coeffs(&[6, 6, 3, 1]));
        let k3 = tutte_delcon(&k(3));
        assert_eq!(specialize(&k3, Variable::Y), IntPolynomial::from_coeffs(&[1, 1, 1]));
        let one = BigInt::from(1);
        assert_eq!(tutte_delcon(&k(5)).eval(&one, &one), BigInt::from(125));
    }

    #[test]
    fn disconnected_is_product() {
        let g = MultiGraph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (3, 4), (5, 5)]).unwrap();
        let parts = tutte_delcon(&k(3))
            .poly_mul(&tutte_delcon(&MultiGraph::banana()))
            .poly_mul(&bi(&[(0, 1, 1)]));
        assert_eq!(tutte_delcon(&g), parts);
        assert_eq!(tutte_delcon(&g), oracle(&g));
    }

    #[test]
    fn matches_rank_sum_on_complete_graphs() {
        for n in 3..=6 {
            assert_eq!(tutte_delcon(&k(n)), oracle(&k(n)), "K{n}");
        }
    }

    fn random_multigraph(rng: &mut ChaCha8Rng, max_v: usize, max_e: usize, loops: bool) -> MultiGraph {
        loop {
            let n = rng.gen_range(1..=max_v);
            let m = rng.gen_range(0..=max_e);
            let edges: Vec<(usize, usize)> = (0..m)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
                .filter(|(u, v)| loops || u != v)
                .collect();
            let g = MultiGraph::new(n, edges).unwrap();
            if g.is_connected() {
                return g;
            }
        }
    }

    #[test]
    fn matches_rank_sum_on_random_multigraphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x7077e);
        let engine = TutteEngine::new();
        for _ in 0..400 {
            let g = random_multigraph(&mut rng, 6, 12, true);
            let t = engine.tutte(&g);
            assert_eq!(t, oracle(&g), "{g:?}");
            // Duality through the engine.
            let dual = RankOracleMatroid::graphic(g.clone()).dual().tutte_by_rank_sum().unwrap();
            assert_eq!(t.swap_variables(), dual, "{g:?}");
        }
    }

    #[test]
    fn memo_does_not_change_results() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let plain = TutteEngine::without_memo();
        let memo = TutteEngine::new();
        for _ in 0..100 {
            let g = random_multigraph(&mut rng, 7, 14, true);
            assert_eq!(plain.tutte(&g), memo.tutte(&g));
        }
        assert!(memo.cached_cores() > 0);
        assert_eq!(plain.cached_cores(), 0);
    }

    #[test]
    fn above_canonical_cap_still_works() {
        // C_12 has 12 vertices: T = x^11 + ... + x + y.
        let t = tutte_delcon(&MultiGraph::cycle(12).unwrap());
        let mut expected = bi(&[(0, 1, 1)]);
        for i in 1..12 {
            expected.add_term(i, 0, BigInt::from(1));
        }
        assert_eq!(t, expected);
    }

    #[test]
    fn spanning_trees_of_complete_graphs() {
        let one = BigInt::from(1);
        for n in 2..=8u32 {
            let t = tutte_delcon(&k(n as usize));
            assert_eq!(t.eval(&one, &one), BigInt::from(n).pow(n - 2), "K{n}");
        }
    }

    #[test]
    fn x_axis_log_concave() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let g = random_multigraph(&mut rng, 6, 10, true);
            let t = tutte_delcon(&g);
            assert!(lc_diagnostics(&specialize(&t, Variable::Y)).is_log_concave, "{g:?}");
            assert!(lc_diagnostics(&specialize(&t, Variable::X)).is_log_concave, "{g:?} dual");
        }
    }

    #[test]
    fn thread_count_independent() {
        let g = k(7);
        let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let many = rayon::ThreadPoolBuilder::new().num_threads(8).build().unwrap();
        let a = single.install(|| tutte_delcon(&g));
        let b = many.install(|| tutte_delcon(&g));
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
