use std::io::Write;
use std::process::{Command, Output, Stdio};

use forcing_core::graph::{complete, cycle, matching, path};
use forcing_core::io::{emit_graph6, parse_graph6};
use forcing_core::Graph;
use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    run_env(args, stdin, &[])
}

fn run_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_forcing"));
    cmd.args(args)
        .env_remove("FORCING_BUDGET")
        .env_remove("FORCING_WORKERS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    // Commands that fail before reading close the pipe early.
    let _ = child.stdin.take().unwrap().write_all(stdin.as_bytes());
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert_eq!(code(o), 0, "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(stdout(o).trim()).unwrap()
}

fn g6(g: &Graph) -> String {
    emit_graph6(g) + "\n"
}

#[test]
fn fchi_of_c5() {
    let v = json(&run(&["compute", "fchi"], &g6(&cycle(5).unwrap())));
    assert_eq!(v["value"], 3);
    assert_eq!(v["certificate"]["defining_set"].as_array().unwrap().len(), 3);
    assert_eq!(v["certificate"]["s"], 3);
    assert!(v["stats"]["nodes"].as_u64().unwrap() > 0);
    assert!(v["stats"].get("elapsed_ms").is_none());
}

#[test]
fn fomega_of_c4() {
    let v = json(&run(&["compute", "fomega"], &g6(&cycle(4).unwrap())));
    assert_eq!(v["value"], 2);
    assert_eq!(v["certificate"]["optimum"], 2);
}

#[test]
fn theta_of_three_edges() {
    let v = json(&run(&["compute", "theta"], &g6(&matching(3).unwrap())));
    assert_eq!(v["value"], 4);
}

#[test]
fn other_invariants() {
    let c5 = g6(&cycle(5).unwrap());
    assert_eq!(json(&run(&["compute", "chi"], &c5))["value"], 3);
    assert_eq!(json(&run(&["compute", "ffchi"], &c5))["value"], 4);
    let p3 = g6(&path(3).unwrap());
    assert_eq!(json(&run(&["compute", "fgamma"], &p3))["value"], 0);
    assert_eq!(json(&run(&["compute", "ftau"], &p3))["value"], 0);
}

#[test]
fn one_line_per_graph6_input() {
    let input = g6(&cycle(5).unwrap()) + &g6(&complete(4).unwrap());
    let o = run(&["compute", "chi"], &input);
    let values: Vec<u64> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap()["value"].as_u64().unwrap())
        .collect();
    assert_eq!(values, vec![3, 4]);
}

#[test]
fn dimacs_and_json_graph_input() {
    let dimacs = "c five cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n";
    assert_eq!(json(&run(&["--format", "dimacs", "compute", "fchi"], dimacs))["value"], 3);
    let edges = r#"{"n": 4, "edges": [[0,1],[1,2],[2,3],[3,0]]}"#;
    assert_eq!(json(&run(&["compute", "fomega", "--format", "json"], edges))["value"], 2);
}

#[test]
fn text_output() {
    let o = run(&["compute", "chi", "--output-format", "text"], &g6(&cycle(5).unwrap()));
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("chi = 3"));
}

#[test]
fn timing_is_opt_in() {
    let v = json(&run(&["compute", "chi", "--timing"], &g6(&cycle(5).unwrap())));
    assert!(v["stats"]["elapsed_ms"].is_u64());
}

#[test]
fn parse_error_exits_2() {
    let o = run(&["compute", "chi"], "E!!\n");
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
}

#[test]
fn budget_floor_and_exhaustion() {
    assert_eq!(code(&run(&["--budget", "9999", "compute", "chi"], "Bw\n")), 2);
    assert_eq!(code(&run(&["--workers", "0", "verify", "c2"], "")), 2);
    let big = g6(&forcing_core::graph::cartesian_product(&cycle(5).unwrap(), &complete(4).unwrap()).unwrap());
    let o = run(&["--budget", "10000", "compute", "fchi"], &big);
    assert_eq!(code(&o), 3, "stderr: {}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn environment_fallback_loses_to_flags() {
    let big = g6(&forcing_core::graph::cartesian_product(&cycle(5).unwrap(), &complete(4).unwrap()).unwrap());
    let env = [("FORCING_BUDGET", "10000")];
    assert_eq!(code(&run_env(&["compute", "fchi"], &big, &env)), 3);
    let o = run_env(&["compute", "chi", "--budget", "100000000"], &big, &env);
    assert_eq!(json(&o)["value"], 4);
}

#[test]
fn reduce_times_k3() {
    let o = run(&["reduce", "times-k3"], &g6(&complete(3).unwrap()));
    assert_eq!(code(&o), 0);
    let g = parse_graph6(stdout(&o).trim()).unwrap();
    let want = forcing_core::graph::cartesian_product(&complete(3).unwrap(), &complete(3).unwrap()).unwrap();
    assert_eq!(g, want);
}

#[test]
fn reduce_chain_pipes_into_compute() {
    let o = run(&["reduce", "times-k3"], &g6(&cycle(5).unwrap()));
    let v = json(&run(&["compute", "chi"], &stdout(&o)));
    assert_eq!(v["value"], 3);
}

#[test]
fn reduce_cnf_and_set_cover() {
    let cnf = "p cnf 2 2\n1 0\n1 2 0\n";
    let o = run(&["reduce", "implicant-graph"], cnf);
    let g = parse_graph6(stdout(&o).trim()).unwrap();
    assert_eq!(g.n(), 4);
    let o = run(&["reduce", "sat-to-3sat"], "p cnf 4 1\n1 2 3 4 0\n");
    assert!(stdout(&o).starts_with("p cnf 6 7\n"));
    let sc = r#"{"m": 2, "subsets": [[1], [1, 2]]}"#;
    let o = run(&["reduce", "reduction-b"], sc);
    assert_eq!(code(&o), 0);
    assert_eq!(parse_graph6(stdout(&o).trim()).unwrap().n(), 2 * 2 + 2);
    let o = run(&["reduce", "reduction-a", "--output-format", "json"], &g6(&path(3).unwrap()));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["set_cover"]["m"], 2);
    assert_eq!(v["reduction"], "reduction-a");
}

#[test]
fn reduce_usage_errors() {
    assert_eq!(code(&run(&["reduce", "times-k3", "--format", "dimacs"], "p cnf 1 1\n1 0\n")), 2);
    assert_eq!(code(&run(&["reduce", "implicant-graph", "--format", "graph6"], "Bw\n")), 2);
    assert_eq!(code(&run(&["reduce", "pendant-pairs"], "Bw\n")), 2);
    assert_eq!(code(&run(&["reduce", "times-k3", "--m", "2"], "Bw\n")), 2);
    assert_eq!(code(&run(&["reduce", "no-such-reduction"], "Bw\n")), 2);
    let o = run(&["reduce", "pendant-pairs", "--m", "1"], &g6(&complete(3).unwrap()));
    assert_eq!(code(&o), 0);
    assert_eq!(parse_graph6(stdout(&o).trim()).unwrap().n(), 5);
}

#[test]
fn cnf_and_reads_second_file() {
    let dir = std::env::temp_dir().join(format!("forcing-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let second = dir.join("g.cnf");
    std::fs::write(&second, "p cnf 1 1\n-1 0\n").unwrap();
    let out = dir.join("out.cnf");
    let o = run(
        &["reduce", "cnf-and", "--with", second.to_str().unwrap(), "--output", out.to_str().unwrap()],
        "p cnf 1 1\n1 0\n",
    );
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "p cnf 2 2\n1 0\n-2 0\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_reports_and_exit_codes() {
    let o = run(&["verify", "c2", "gk_family"], "");
    assert_eq!(code(&o), 0);
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["lemma_id"], "c2");
    assert!(lines[1]["counterexamples"].as_array().unwrap().is_empty());
    assert_eq!(code(&run(&["verify", "no-such-lemma"], "")), 2);
    assert_eq!(code(&run(&["verify", "c2", "--max-n", "9"], "")), 2);
}

#[test]
fn verify_output_independent_of_workers() {
    let one = run(&["verify", "chiofchart", "red2", "--workers", "1"], "");
    let four = run_env(&["verify", "chiofchart", "red2"], "", &[("FORCING_WORKERS", "4")]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn latin_commands() {
    let v = json(&run(&["latin", "count"], "0 0 0\n0 0 0\n0 0 0\n"));
    assert_eq!(v["completions"], 12);
    let v = json(&run(&["latin", "count", "--format", "json"], "[[1,0,0],[0,2,0],[0,0,0]]"));
    assert_eq!(v["completions"], 1);
    let v = json(&run(&["latin", "critical"], "1 . .\n. 2 .\n. . .\n"));
    assert_eq!(v["uniquely_completable"], true);
    assert_eq!(v["minimal"], true);
    assert_eq!(code(&run(&["latin", "critical"], "1 . .\n. . .\n. . .\n")), 1);
    assert_eq!(json(&run(&["latin", "forcing-size", "3"], ""))["smallest_forcing_size"], 2);
    assert_eq!(code(&run(&["latin", "forcing-size", "5"], "")), 2);
    let v = json(&run(&["latin", "to-coloring"], "1 2\n2 1\n"));
    assert_eq!(v["coloring"]["s"], 2);
    assert_eq!(parse_graph6(v["graph"].as_str().unwrap()).unwrap(), cycle(4).unwrap().permuted(&[0, 1, 3, 2]));
}
