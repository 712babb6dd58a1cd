//! Identity and log-concavity checks with machine-readable results.
//!
//! Every identity check computes both sides by independent routes and
//! compares them coefficient by coefficient. There are no tolerances; all
//! arithmetic is exact.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{self, NamedGraph};
use crate::enumerate::{connected_edge_enumerator, inversion_enumerator, labeled_trees};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::matroid::{RankOracleMatroid, RANK_SUM_CAP};
use crate::parking::{gpf_sum_enumerator, pf_sum_enumerator};
use crate::poly::{lc_diagnostics, BivariatePolynomial, IntPolynomial, LcReport, Variable};
use crate::tutte::TutteEngine;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_name: String,
    pub instance: String,
    pub passed: bool,
    pub lhs: Option<serde_json::Value>,
    pub rhs: Option<serde_json::Value>,
    pub detail: Option<String>,
}

fn to_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("polynomials always serialize")
}

/// Exact comparison of two univariate polynomials.
pub fn compare_int(
    check_name: &str,
    instance: impl Into<String>,
    lhs: &IntPolynomial,
    rhs: &IntPolynomial,
) -> CheckResult {
    let exponents: std::collections::BTreeSet<u32> =
        lhs.terms().chain(rhs.terms()).map(|(e, _)| e).collect();
    let detail = exponents.into_iter().find_map(|e| {
        let (a, b) = (lhs.coeff(e), rhs.coeff(e));
        (a != b).then(|| format!("coefficient of x^{e}: lhs {a}, rhs {b}"))
    });
    CheckResult {
        check_name: check_name.to_string(),
        instance: instance.into(),
        passed: detail.is_none(),
        lhs: Some(to_value(lhs)),
        rhs: Some(to_value(rhs)),
        detail,
    }
}

/// Exact comparison of two bivariate polynomials.
pub fn compare_bivariate(
    check_name: &str,
    instance: impl Into<String>,
    lhs: &BivariatePolynomial,
    rhs: &BivariatePolynomial,
) -> CheckResult {
    let keys: std::collections::BTreeSet<(u32, u32)> =
        lhs.terms().chain(rhs.terms()).map(|(i, j, _)| (i, j)).collect();
    let detail = keys.into_iter().find_map(|(i, j)| {
        let (a, b) = (lhs.coeff(i, j), rhs.coeff(i, j));
        (a != b).then(|| format!("coefficient of x^{i} y^{j}: lhs {a}, rhs {b}"))
    });
    CheckResult {
        check_name: check_name.to_string(),
        instance: instance.into(),
        passed: detail.is_none(),
        lhs: Some(to_value(lhs)),
        rhs: Some(to_value(rhs)),
        detail,
    }
}

/// Which field of an [`LcReport`] a diagnostics check demands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Demand {
    LogConcave,
    Unimodal,
    NoInternalZeros,
}

pub fn lc_check(
    check_name: &str,
    instance: impl Into<String>,
    poly: &IntPolynomial,
    demand: Demand,
) -> CheckResult {
    let report: LcReport = lc_diagnostics(poly);
    let passed = match demand {
        Demand::LogConcave => report.is_log_concave,
        Demand::Unimodal => report.is_unimodal,
        Demand::NoInternalZeros => !report.has_internal_zeros,
    };
    let detail = (!passed).then(|| match (demand, report.first_violation) {
        (Demand::LogConcave, Some(i)) => format!("a_{i}^2 < a_{}*a_{}", i - 1, i + 1),
        (Demand::NoInternalZeros, _) => "zero coefficient inside the support".to_string(),
        _ => format!("{report:?}"),
    });
    CheckResult {
        check_name: check_name.to_string(),
        instance: instance.into(),
        passed,
        lhs: Some(to_value(poly)),
        rhs: None,
        detail,
    }
}

fn require_rank_sum(g: &MultiGraph) -> Result<()> {
    if g.edge_count() > RANK_SUM_CAP {
        return Err(Error::CapExceeded {
            what: "rank-sum ground set size",
            requested: g.edge_count() as u128,
            cap: RANK_SUM_CAP as u128,
        });
    }
    Ok(())
}

/// Shared state for a batch of checks: a Tutte engine whose memo table is
/// reused, plus enumerator outputs computed ahead of time.
#[derive(Debug, Default)]
pub struct Verifier {
    engine: TutteEngine,
    pf: BTreeMap<usize, IntPolynomial>,
    inv: BTreeMap<usize, IntPolynomial>,
    conn: BTreeMap<usize, IntPolynomial>,
}

impl Verifier {
    pub fn new() -> Self {
        Self {
            engine: TutteEngine::new(),
            ..Default::default()
        }
    }

    /// Precomputes `P_n`, `I_n` and `C_n` for the given sizes so that checks
    /// running concurrently never duplicate the expensive enumerations.
    pub fn prepare(&mut self, pf: &[usize], inv: &[usize], conn: &[usize]) -> Result<()> {
        let (a, (b, c)) = rayon::join(
            || pf.par_iter().map(|&n| Ok((n, pf_sum_enumerator(n)?))).collect::<Result<Vec<_>>>(),
            || {
                rayon::join(
                    || {
                        inv.par_iter()
                            .map(|&n| Ok((n, inversion_enumerator(n)?)))
                            .collect::<Result<Vec<_>>>()
                    },
                    || {
                        conn.par_iter()
                            .map(|&n| Ok((n, connected_edge_enumerator(n)?)))
                            .collect::<Result<Vec<_>>>()
                    },
                )
            },
        );
        self.pf.extend(a?);
        self.inv.extend(b?);
        self.conn.extend(c?);
        Ok(())
    }

    pub fn pf(&self, n: usize) -> Result<IntPolynomial> {
        match self.pf.get(&n) {
            Some(p) => Ok(p.clone()),
            None => pf_sum_enumerator(n),
        }
    }

    pub fn inv(&self, n: usize) -> Result<IntPolynomial> {
        match self.inv.get(&n) {
            Some(p) => Ok(p.clone()),
            None => inversion_enumerator(n),
        }
    }

    pub fn conn(&self, n: usize) -> Result<IntPolynomial> {
        match self.conn.get(&n) {
            Some(p) => Ok(p.clone()),
            None => connected_edge_enumerator(n),
        }
    }

    pub fn tutte(&self, g: &MultiGraph) -> BivariatePolynomial {
        self.engine.tutte(g)
    }

    /// Count of length-`n` parking functions against `(n+1)^(n-1)`.
    pub fn check_pf_cardinality(&self, n: usize) -> Result<CheckResult> {
        let count = self.pf(n)?.eval_at_one();
        let expected = if n == 0 {
            BigInt::from(1)
        } else {
            BigInt::from(n + 1).pow(n as u32 - 1)
        };
        Ok(compare_int(
            "pf_cardinality",
            format!("n={n}"),
            &IntPolynomial::constant(count),
            &IntPolynomial::constant(expected),
        ))
    }

    /// `P_n(x) = x^(n(n+1)/2) I_{n+1}(1/x)`.
    pub fn check_eq_pftree(&self, n: usize) -> Result<CheckResult> {
        let lhs = self.pf(n)?;
        let rhs = self.inv(n + 1)?.reciprocal_reverse((n * (n + 1) / 2) as u32)?;
        Ok(compare_int("eq_pftree", format!("n={n}"), &lhs, &rhs))
    }

    /// `I_n(y) = T_{K_n}(1, y)`.
    pub fn check_tutte_inversion(&self, n: usize) -> Result<CheckResult> {
        let lhs = self.inv(n)?;
        let rhs = self.tutte(&MultiGraph::complete_graph(n)?).specialize(Variable::X);
        Ok(compare_int("tutte_inversion", format!("n={n}"), &lhs, &rhs))
    }

    /// `T_{K_n}(1, 1)` against the number of Prüfer-decoded trees.
    pub fn check_spanning_trees(&self, n: usize) -> Result<CheckResult> {
        let one = BigInt::from(1);
        let lhs = self.tutte(&MultiGraph::complete_graph(n)?).eval(&one, &one);
        let rhs = BigInt::from(labeled_trees(n)?.len());
        Ok(compare_int(
            "spanning_trees",
            format!("K{n}"),
            &IntPolynomial::constant(lhs),
            &IntPolynomial::constant(rhs),
        ))
    }

    /// Deletion-contraction against the rank-sum definition.
    pub fn check_engine_oracle(&self, g: &NamedGraph) -> Result<CheckResult> {
        require_rank_sum(&g.graph)?;
        let lhs = self.tutte(&g.graph);
        let rhs = RankOracleMatroid::graphic(g.graph.clone()).tutte_by_rank_sum()?;
        Ok(compare_bivariate("engine_vs_rank_sum", &g.name, &lhs, &rhs))
    }

    /// `T_M(x, y) = T_{M*}(y, x)` with the dual evaluated by rank sum.
    pub fn check_duality(&self, g: &NamedGraph) -> Result<CheckResult> {
        require_rank_sum(&g.graph)?;
        let lhs = self.tutte(&g.graph).swap_variables();
        let rhs = RankOracleMatroid::graphic(g.graph.clone()).dual().tutte_by_rank_sum()?;
        Ok(compare_bivariate("duality", &g.name, &lhs, &rhs))
    }

    /// `C_n(x) = x^(n-1) I_n(1 + x)`.
    pub fn check_connected_identity(&self, n: usize) -> Result<CheckResult> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        let lhs = self.conn(n)?;
        let rhs = IntPolynomial::monomial(1, n as u32 - 1).poly_mul(&self.inv(n)?.shift_compose());
        Ok(compare_int("connected_identity", format!("n={n}"), &lhs, &rhs))
    }

    /// `T_G(1, y) = y^e(G) P_G(1/y)`.
    pub fn check_gpf_identity(&self, g: &NamedGraph) -> Result<CheckResult> {
        let pg = gpf_sum_enumerator(&g.graph)?;
        let lhs = self.tutte(&g.graph).specialize(Variable::X);
        let rhs = pg.reciprocal_reverse(g.graph.edge_count() as u32)?;
        Ok(compare_int("gpf_identity", &g.name, &lhs, &rhs))
    }

    /// `P_{K_{n+1}} = P_n`.
    pub fn check_gpf_complete(&self, n: usize) -> Result<CheckResult> {
        let lhs = gpf_sum_enumerator(&MultiGraph::complete_graph(n + 1)?)?;
        let rhs = self.pf(n)?;
        Ok(compare_int("gpf_complete", format!("K{}", n + 1), &lhs, &rhs))
    }
}

/// Free-standing versions of the checks, each with a fresh [`Verifier`].
pub fn check_eq_pftree(n: usize) -> Result<CheckResult> {
    Verifier::new().check_eq_pftree(n)
}

pub fn check_tutte_inversion(n: usize) -> Result<CheckResult> {
    Verifier::new().check_tutte_inversion(n)
}

pub fn check_duality(g: &NamedGraph) -> Result<CheckResult> {
    Verifier::new().check_duality(g)
}

pub fn check_connected_identity(n: usize) -> Result<CheckResult> {
    Verifier::new().check_connected_identity(n)
}

pub fn check_gpf_identity(g: &NamedGraph) -> Result<CheckResult> {
    Verifier::new().check_gpf_identity(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// The full desk-scale suite.
    Default,
    /// A seconds-long subset for smoke tests.
    Quick,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "default" => Ok(Suite::Default),
            "quick" => Ok(Suite::Quick),
            other => Err(Error::UnknownSuite(other.to_string())),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Default => "default",
            Suite::Quick => "quick",
        })
    }
}

/// Sizes and corpora a suite covers. Every `n`-indexed range is inclusive.
#[derive(Debug, Clone)]
pub struct SuitePlan {
    pub pf_cardinality: Vec<usize>,
    pub eq_pftree: Vec<usize>,
    pub tutte_inversion: Vec<usize>,
    pub spanning_trees: Vec<usize>,
    pub connected_identity: Vec<usize>,
    pub gpf_complete: Vec<usize>,
    pub lc_pf: Vec<usize>,
    pub lc_inversion: Vec<usize>,
    pub lc_connected: Vec<usize>,
    /// Graphs for the engine-vs-rank-sum check.
    pub engine_corpus: Vec<NamedGraph>,
    /// Graphs for the duality check (may carry loops).
    pub duality_corpus: Vec<NamedGraph>,
    /// Loopless connected graphs for the G-parking checks.
    pub gpf_corpus: Vec<NamedGraph>,
}

impl SuitePlan {
    /// The plan for `suite`, with every `n` above `max_n` dropped. For named
    /// families (`K_n`, `C_n`, `P_n`) the cut applies to the vertex count.
    pub fn new(suite: Suite, max_n: Option<usize>) -> Self {
        let cut = |lo: usize, hi: usize| -> Vec<usize> {
            (lo..=hi).filter(|&n| max_n.is_none_or(|m| n <= m)).collect()
        };
        let keep = |n: usize| max_n.is_none_or(|m| n <= m);

        let (gen_small, gen_engine, top) = match suite {
            Suite::Default => ((4, 6), (5, 8), 1),
            Suite::Quick => ((3, 4), (4, 5), 0),
        };
        let scale = |default: usize, quick: usize| if top == 1 { default } else { quick };

        let mut named: Vec<NamedGraph> = vec![corpus::banana()];
        named.extend((3..=scale(6, 4)).filter(|&n| keep(n)).map(corpus::cycle));
        named.extend((2..=scale(6, 4)).filter(|&n| keep(n)).map(corpus::complete));
        named.extend((2..=scale(5, 4)).filter(|&n| keep(n)).map(corpus::path));

        let mut gpf_corpus = named.clone();
        gpf_corpus.extend(corpus::generated(gen_small.0, gen_small.1));

        let mut duality_corpus = gpf_corpus.clone();
        duality_corpus.extend(corpus::looped());

        let mut engine_corpus: Vec<NamedGraph> =
            (3..=scale(6, 4)).filter(|&n| keep(n)).map(corpus::complete).collect();
        engine_corpus.extend(corpus::looped());
        engine_corpus.extend(corpus::generated(gen_engine.0, gen_engine.1));

        SuitePlan {
            pf_cardinality: cut(1, scale(7, 5)),
            eq_pftree: cut(1, scale(7, 5)),
            tutte_inversion: cut(2, scale(7, 5)),
            spanning_trees: cut(2, scale(8, 6)),
            connected_identity: cut(1, scale(6, 5)),
            gpf_complete: cut(1, scale(5, 4)),
            lc_pf: cut(1, scale(8, 6)),
            lc_inversion: cut(1, scale(8, 6)),
            lc_connected: cut(1, scale(6, 5)),
            engine_corpus,
            duality_corpus,
            gpf_corpus,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub max_n: Option<usize>,
    pub total: usize,
    pub failed: usize,
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Fixed-width table, one row per check.
    pub fn to_table(&self) -> String {
        let name_w = self.results.iter().map(|r| r.check_name.len()).max().unwrap_or(5).max(5);
        let inst_w = self.results.iter().map(|r| r.instance.len()).max().unwrap_or(8).clamp(8, 48);
        let mut out = format!("{:<name_w$}  {:<inst_w$}  RESULT  DETAIL\n", "CHECK", "INSTANCE");
        for r in &self.results {
            out.push_str(&format!(
                "{:<name_w$}  {:<inst_w$}  {:<6}  {}\n",
                r.check_name,
                r.instance,
                if r.passed { "pass" } else { "FAIL" },
                r.detail.as_deref().unwrap_or(""),
            ));
        }
        out.push_str(&format!(
            "suite {}: {} checks, {} passed, {} failed\n",
            self.suite,
            self.total,
            self.total - self.failed,
            self.failed
        ));
        out
    }
}

enum Task<'a> {
    PfCardinality(usize),
    EqPftree(usize),
    TutteInversion(usize),
    SpanningTrees(usize),
    EngineOracle(&'a NamedGraph),
    Duality(&'a NamedGraph),
    ConnectedIdentity(usize),
    GpfIdentity(&'a NamedGraph),
    GpfComplete(usize),
    LcPf(usize),
    LcInversion(usize),
    LcConnected(usize),
    LcGpf(&'a NamedGraph),
    LcTutte(&'a NamedGraph),
}

impl Task<'_> {
    fn run(&self, v: &Verifier) -> Result<Vec<CheckResult>> {
        Ok(match *self {
            Task::PfCardinality(n) => vec![v.check_pf_cardinality(n)?],
            Task::EqPftree(n) => vec![v.check_eq_pftree(n)?],
            Task::TutteInversion(n) => vec![v.check_tutte_inversion(n)?],
            Task::SpanningTrees(n) => vec![v.check_spanning_trees(n)?],
            Task::EngineOracle(g) => vec![v.check_engine_oracle(g)?],
            Task::Duality(g) => vec![v.check_duality(g)?],
            Task::ConnectedIdentity(n) => vec![v.check_connected_identity(n)?],
            Task::GpfIdentity(g) => vec![v.check_gpf_identity(g)?],
            Task::GpfComplete(n) => vec![v.check_gpf_complete(n)?],
            Task::LcPf(n) => {
                let p = v.pf(n)?;
                let inst = format!("P_{n}");
                vec![
                    lc_check("lc_pf", &inst, &p, Demand::LogConcave),
                    lc_check("unimodal_pf", &inst, &p, Demand::Unimodal),
                    lc_check("no_internal_zeros_pf", &inst, &p, Demand::NoInternalZeros),
                ]
            }
            Task::LcInversion(n) => {
                let p = v.inv(n)?;
                let inst = format!("I_{n}");
                vec![
                    lc_check("lc_inversion", &inst, &p, Demand::LogConcave),
                    lc_check("no_internal_zeros_inversion", &inst, &p, Demand::NoInternalZeros),
                    lc_check("lc_shifted_inversion", format!("I_{n}(1+x)"), &p.shift_compose(), Demand::LogConcave),
                ]
            }
            Task::LcConnected(n) => {
                vec![lc_check("lc_connected", format!("C_{n}"), &v.conn(n)?, Demand::LogConcave)]
            }
            Task::LcGpf(g) => {
                let p = gpf_sum_enumerator(&g.graph)?;
                vec![lc_check("lc_gpf", &g.name, &p, Demand::LogConcave)]
            }
            Task::LcTutte(g) => {
                let t = v.tutte(&g.graph);
                vec![
                    lc_check("lc_tutte_x1", format!("M({})", g.name), &t.specialize(Variable::Y), Demand::LogConcave),
                    lc_check("lc_tutte_x1", format!("M({})*", g.name), &t.specialize(Variable::X), Demand::LogConcave),
                ]
            }
        })
    }
}

/// Runs a suite on the current rayon pool. Results come back in plan order,
/// which does not depend on scheduling, so the report is byte-stable.
pub fn run_suite(suite: Suite, max_n: Option<usize>) -> Result<Report> {
    let plan = SuitePlan::new(suite, max_n);
    run_plan(&plan, suite, max_n)
}

pub fn run_plan(plan: &SuitePlan, suite: Suite, max_n: Option<usize>) -> Result<Report> {
    let mut verifier = Verifier::new();
    let mut pf_sizes: Vec<usize> = plan.pf_cardinality.iter().chain(&plan.lc_pf).chain(&plan.gpf_complete).copied().collect();
    pf_sizes.extend(&plan.eq_pftree);
    let mut inv_sizes: Vec<usize> = plan.eq_pftree.iter().map(|n| n + 1).collect();
    inv_sizes.extend(plan.tutte_inversion.iter().chain(&plan.connected_identity).chain(&plan.lc_inversion));
    let mut conn_sizes: Vec<usize> = plan.connected_identity.iter().chain(&plan.lc_connected).copied().collect();
    for v in [&mut pf_sizes, &mut inv_sizes, &mut conn_sizes] {
        v.sort_unstable();
        v.dedup();
    }
    verifier.prepare(&pf_sizes, &inv_sizes, &conn_sizes)?;

    let mut tasks: Vec<Task> = Vec::new();
    tasks.extend(plan.pf_cardinality.iter().map(|&n| Task::PfCardinality(n)));
    tasks.extend(plan.eq_pftree.iter().map(|&n| Task::EqPftree(n)));
    tasks.extend(plan.tutte_inversion.iter().map(|&n| Task::TutteInversion(n)));
    tasks.extend(plan.spanning_trees.iter().map(|&n| Task::SpanningTrees(n)));
    tasks.extend(plan.engine_corpus.iter().map(Task::EngineOracle));
    tasks.extend(plan.duality_corpus.iter().map(Task::Duality));
    tasks.extend(plan.connected_identity.iter().map(|&n| Task::ConnectedIdentity(n)));
    tasks.extend(plan.gpf_corpus.iter().map(Task::GpfIdentity));
    tasks.extend(plan.gpf_complete.iter().map(|&n| Task::GpfComplete(n)));
    tasks.extend(plan.lc_pf.iter().map(|&n| Task::LcPf(n)));
    tasks.extend(plan.lc_inversion.iter().map(|&n| Task::LcInversion(n)));
    tasks.extend(plan.lc_connected.iter().map(|&n| Task::LcConnected(n)));
    tasks.extend(plan.gpf_corpus.iter().map(Task::LcGpf));
    // Every matroid instance the suite builds, and its dual.
    let mut seen = std::collections::BTreeSet::new();
    tasks.extend(
        plan.engine_corpus
            .iter()
            .chain(&plan.duality_corpus)
            .filter(|g| seen.insert(g.name.as_str()))
            .map(Task::LcTutte),
    );

    let results: Vec<CheckResult> = tasks
        .par_iter()
        .map(|t| t.run(&verifier))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let failed = results.iter().filter(|r| !r.passed).count();
    Ok(Report {
        suite: suite.to_string(),
        max_n,
        total: results.len(),
        failed,
        results,
    })
}
