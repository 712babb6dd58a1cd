use std::io::Write;
use std::process::{Command, Output};

use parklc_core::IntPolynomial;

fn parklc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parklc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 output")
}

#[test]
fn pf_poly_formats() {
    let out = parklc(&["pf-poly", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "x^3 + 3x^4 + 6x^5 + 6x^6\n");

    let out = parklc(&["pf-poly", "3", "--format", "json"]);
    assert_eq!(stdout(&out), "{\"coeffs\":{\"3\":\"1\",\"4\":\"3\",\"5\":\"6\",\"6\":\"6\"}}\n");

    let out = parklc(&["pf-poly", "3", "--format", "csv"]);
    assert_eq!(stdout(&out), "exponent,coefficient\n3,1\n4,3\n5,6\n6,6\n");
}

#[test]
fn csv_rows_ascend_numerically() {
    // Exponents run past 9, so a lexicographic sort would misplace 10.
    let out = parklc(&["connected-poly", "5", "--format", "csv"]);
    let exps: Vec<u32> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(exps, (4..=10).collect::<Vec<_>>());
}

#[test]
fn tree_and_graph_enumerators() {
    assert_eq!(stdout(&parklc(&["inv-poly", "4"])), "6 + 6x + 3x^2 + x^3\n");
    assert_eq!(stdout(&parklc(&["connected-poly", "4"])), "16x^3 + 15x^4 + 6x^5 + x^6\n");
    assert_eq!(stdout(&parklc(&["gpf", "--graph", "banana"])), "x + x^2\n");
}

#[test]
fn tutte_named_and_file_graphs() {
    assert_eq!(stdout(&parklc(&["tutte", "--graph", "cycle:3"])), "x^2 + x + y\n");
    assert_eq!(stdout(&parklc(&["tutte", "--graph", "banana"])), "x + y\n");
    assert_eq!(stdout(&parklc(&["tutte", "--graph", "complete:4", "--at", "1", "1"])), "16\n");
    assert_eq!(
        stdout(&parklc(&["tutte", "--graph", "complete:4", "--method", "rank-sum"])),
        stdout(&parklc(&["tutte", "--graph", "complete:4"])),
    );
    assert_eq!(stdout(&parklc(&["dual-tutte", "--graph", "cycle:3"])), "x + y + y^2\n");

    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "{{\"vertices\": 3, \"edges\": [[0, 1], [1, 2], [2, 0]]}}").unwrap();
    let out = parklc(&["tutte", "--graph", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "x^2 + x + y\n");
}

#[test]
fn json_round_trip_with_huge_coefficients() {
    // No desk-scale enumerator reaches 10^18, so feed a hand-made file.
    let big = "{\"coeffs\":{\"0\":\"100000000000000000000\",\"2\":\"-7\"}}";
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(big.as_bytes()).unwrap();
    let out = parklc(&["diagnostics", "--poly", file.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let parsed: IntPolynomial = big.parse().unwrap();
    assert_eq!(serde_json::to_string(&parsed).unwrap(), big);

    let out = parklc(&["pf-poly", "7", "--format", "json"]);
    let text = stdout(&out);
    let p: IntPolynomial = text.trim_end().parse().unwrap();
    assert_eq!(serde_json::to_string(&p).unwrap() + "\n", text);
    assert_eq!(p.eval_at_one(), 262144.into());
}

#[test]
fn diagnostics_text() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "{{\"coeffs\":{{\"0\":\"1\",\"2\":\"1\"}}}}").unwrap();
    let out = parklc(&["diagnostics", "--poly", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "polynomial: 1 + x^2\nlog_concave: false\nunimodal: false\ninternal_zeros: true\nfirst_violation: 1\n"
    );
}

#[test]
fn verify_quick_suite() {
    let out = parklc(&["verify", "--suite", "quick"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).ends_with(" 0 failed\n"));

    let one = parklc(&["--threads", "1", "verify", "--suite", "quick", "--format", "json"]);
    let many = parklc(&["verify", "--suite", "quick", "--format", "json", "--threads", "8"]);
    assert_eq!(one.stdout, many.stdout);
    let report: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(report["failed"], 0);
}

#[test]
fn usage_and_input_errors_exit_2() {
    let out = parklc(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unrecognized subcommand"));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    write!(bad, "{{\"vertices\": 2, \"edges\": [[0, 5]]}}").unwrap();
    let out = parklc(&["tutte", "--graph", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("malformed graph file"), "{}", stderr(&out));

    let out = parklc(&["tutte", "--graph", "/nonexistent/graph.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cannot read graph file"));

    let out = parklc(&["pf-poly", "12"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cap"), "{}", stderr(&out));

    let out = parklc(&["verify", "--suite", "enormous"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());

    let out = parklc(&["gpf", "--graph", "cycle:x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn in_process_run_matches_binary() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = parklc_cli::run(["parklc", "tutte", "--graph", "path:3", "--format", "csv"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), "x_exponent,y_exponent,coefficient\n2,0,1\n");
}
