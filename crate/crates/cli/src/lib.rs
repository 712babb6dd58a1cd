//! `parklc` command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification check fails, 2 on a
//! usage or input error (bad arguments, unreadable graph file, cap exceeded).

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use parklc_core::verify::{run_suite, Suite};
use parklc_core::{
    connected_edge_enumerator, gpf_sum_enumerator, inversion_enumerator, lc_diagnostics,
    pf_sum_enumerator, tutte_delcon, BivariatePolynomial, IntPolynomial, MultiGraph,
    RankOracleMatroid,
};

#[derive(Debug, Parser)]
#[command(name = "parklc", version, about = "Exact parking-function, tree, and Tutte polynomial enumerators")]
pub struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Memoized deletion-contraction.
    Delcon,
    /// Subset sum over the rank function (at most 22 edges).
    RankSum,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parking functions of length N graded by entry sum.
    PfPoly {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Labeled trees on N vertices {0,...,N-1} graded by inversions.
    InvPoly {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Connected labeled simple graphs on N vertices graded by edge count.
    ConnectedPoly {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// G-parking functions graded by entry sum (root is vertex 0).
    Gpf {
        /// Graph JSON file, or complete:N, banana, cycle:N, path:N.
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Tutte polynomial of the graphic matroid.
    Tutte {
        #[arg(long)]
        graph: String,
        /// Evaluate at the integer point (X, Y) instead of printing the polynomial.
        #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_negative_numbers = true)]
        at: Option<Vec<BigInt>>,
        #[arg(long, value_enum, default_value_t = Method::Delcon)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Tutte polynomial of the dual of the graphic matroid.
    DualTutte {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum, default_value_t = Method::RankSum)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a verification suite (`default` or `quick`).
    Verify {
        #[arg(long, default_value = "default")]
        suite: String,
        /// Drop every size parameter above K.
        #[arg(long, value_name = "K")]
        max_n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Log-concavity diagnostics for a polynomial JSON file.
    Diagnostics {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Input and usage errors; always exit status 2.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

/// Parses a `--graph` argument: a named built-in or a JSON file path.
pub fn load_graph(spec: &str) -> Result<MultiGraph, String> {
    let count = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| format!("`{spec}`: expected a vertex count after the colon"))
    };
    let named = match spec.split_once(':') {
        Some(("complete", n)) => Some(MultiGraph::complete_graph(count(n)?)),
        Some(("cycle", n)) => Some(MultiGraph::cycle(count(n)?)),
        Some(("path", n)) => Some(MultiGraph::path(count(n)?)),
        _ if spec == "banana" => Some(Ok(MultiGraph::banana())),
        _ => None,
    };
    if let Some(g) = named {
        return g.map_err(|e| format!("`{spec}`: {e}"));
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read graph file `{spec}`: {e}"))?;
    serde_json::from_str(&text).map_err(|e| format!("malformed graph file `{spec}`: {e}"))
}

fn render_int(p: &IntPolynomial, format: Format) -> String {
    match format {
        Format::Text => format!("{p}\n"),
        Format::Json => serde_json::to_string(p).expect("serializable") + "\n",
        Format::Csv => {
            let mut out = String::from("exponent,coefficient\n");
            for (e, c) in p.terms() {
                writeln!(out, "{e},{c}").unwrap();
            }
            out
        }
    }
}

fn render_bivariate(t: &BivariatePolynomial, format: Format) -> String {
    match format {
        Format::Text => format!("{t}\n"),
        Format::Json => serde_json::to_string(t).expect("serializable") + "\n",
        Format::Csv => {
            let mut out = String::from("x_exponent,y_exponent,coefficient\n");
            for (i, j, c) in t.terms() {
                writeln!(out, "{i},{j},{c}").unwrap();
            }
            out
        }
    }
}

#[derive(Serialize)]
struct Evaluation {
    x: String,
    y: String,
    value: String,
}

fn tutte_of(g: MultiGraph, method: Method, dual: bool) -> Result<BivariatePolynomial, UsageError> {
    Ok(match (method, dual) {
        (Method::Delcon, false) => tutte_delcon(&g),
        (Method::Delcon, true) => tutte_delcon(&g).swap_variables(),
        (Method::RankSum, false) => RankOracleMatroid::graphic(g).tutte_by_rank_sum()?,
        (Method::RankSum, true) => RankOracleMatroid::graphic(g).dual().tutte_by_rank_sum()?,
    })
}

/// Returns the text to print and the exit status.
fn execute(command: Command) -> Result<(String, i32), UsageError> {
    let ok = |s: String| Ok((s, 0));
    match command {
        Command::PfPoly { n, format } => ok(render_int(&pf_sum_enumerator(n)?, format)),
        Command::InvPoly { n, format } => ok(render_int(&inversion_enumerator(n)?, format)),
        Command::ConnectedPoly { n, format } => {
            ok(render_int(&connected_edge_enumerator(n)?, format))
        }
        Command::Gpf { graph, format } => {
            let g = load_graph(&graph)?;
            ok(render_int(&gpf_sum_enumerator(&g)?, format))
        }
        Command::Tutte {
            graph,
            at,
            method,
            format,
        } => {
            let t = tutte_of(load_graph(&graph)?, method, false)?;
            match at {
                None => ok(render_bivariate(&t, format)),
                Some(point) => {
                    let (x, y) = (&point[0], &point[1]);
                    let value = t.eval(x, y);
                    ok(match format {
                        Format::Text => format!("{value}\n"),
                        Format::Json => {
                            let e = Evaluation {
                                x: x.to_string(),
                                y: y.to_string(),
                                value: value.to_string(),
                            };
                            serde_json::to_string(&e).expect("serializable") + "\n"
                        }
                        Format::Csv => format!("x,y,value\n{x},{y},{value}\n"),
                    })
                }
            }
        }
        Command::DualTutte {
            graph,
            method,
            format,
        } => ok(render_bivariate(&tutte_of(load_graph(&graph)?, method, true)?, format)),
        Command::Verify {
            suite,
            max_n,
            format,
        } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite, max_n)?;
            let text = match format {
                Format::Json => report.to_json(),
                Format::Text => report.to_table(),
                Format::Csv => {
                    let mut out = String::from("check_name,instance,passed\n");
                    for r in &report.results {
                        writeln!(out, "{},\"{}\",{}", r.check_name, r.instance, r.passed).unwrap();
                    }
                    out
                }
            };
            Ok((text, if report.all_passed() { 0 } else { 1 }))
        }
        Command::Diagnostics { poly, format } => {
            let text = std::fs::read_to_string(&poly)
                .map_err(|e| format!("cannot read polynomial file `{}`: {e}", poly.display()))?;
            let p: IntPolynomial = text
                .parse()
                .map_err(|e| format!("malformed polynomial file `{}`: {e}", poly.display()))?;
            let report = lc_diagnostics(&p);
            ok(match format {
                Format::Json => serde_json::to_string(&report).expect("serializable") + "\n",
                Format::Text => format!(
                    "polynomial: {p}\nlog_concave: {}\nunimodal: {}\ninternal_zeros: {}\nfirst_violation: {}\n",
                    report.is_log_concave,
                    report.is_unimodal,
                    report.has_internal_zeros,
                    report.first_violation.map_or("none".to_string(), |e| e.to_string()),
                ),
                Format::Csv => format!(
                    "log_concave,unimodal,internal_zeros,first_violation\n{},{},{},{}\n",
                    report.is_log_concave,
                    report.is_unimodal,
                    report.has_internal_zeros,
                    report.first_violation.map_or(String::new(), |e| e.to_string()),
                ),
            })
        }
    }
}

/// Runs the CLI on `argv` (including the program name), writing results to
/// `out` and errors to `err`. Returns the process exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            let _ = writeln!(err, "error: --threads must be at least 1");
            return 2;
        }
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return 2;
        }
    };

    match pool.install(|| execute(cli.command)) {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 2;
            }
            code
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}
