use std::io::Write;
use std::process::{Command, Stdio};

use nqueens_core::{Arrangement, QueenFunction};

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn nq_with_stdin(args: &[&str], stdin: &str) -> Out {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("nqueens").chain(args.iter().copied());
    let code = nqueens_cli::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Out {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn nq(args: &[&str]) -> Out {
    nq_with_stdin(args, "")
}

fn is_solution(p: &[usize]) -> bool {
    let n = p.len();
    let mut sorted = p.to_vec();
    sorted.sort_unstable();
    sorted == (1..=n).collect::<Vec<_>>()
        && (0..n).all(|i| (0..i).all(|j| p[i].abs_diff(p[j]) != i - j))
}

fn perm_of(line: &str) -> Vec<usize> {
    line.split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect()
}

#[test]
fn solve_eight_as_text() {
    let r = nq(&["solve", "8", "--format", "perm"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "2 4 6 8 3 1 7 5\n"));
}

#[test]
fn validate_table_arrangement() {
    let r = nq(&["validate", "--perm", "3 1 7 5 8 2 4 6"]);
    assert_eq!((r.code, r.stdout.trim()), (0, "valid"));
    let r = nq(&["validate", "--perm", "1 2 3 4"]);
    assert_eq!((r.code, r.stdout.trim()), (1, "invalid"));
    // duplicates are a verdict, not an input error
    let r = nq(&["validate", "--perm", "1 1 3 4", "--format", "json"]);
    assert_eq!((r.code, r.stdout.trim()), (1, r#"{"n":4,"valid":false}"#));
}

#[test]
fn criterion_rejects_gcd_counterexample() {
    let r = nq(&["criterion", "--perm", "4 7 5 2 6 1 3"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("differences complete: no"));
    assert!(r.stdout.contains("sums complete: yes"));
    assert!(r.stdout.ends_with("criterion: fails\n"));

    let r = nq(&["criterion", "--perm", "2 4 1 3 5", "--format", "json"]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["diff_residues"], serde_json::json!([1, 2, 3, 4, 0]));
    assert_eq!(v["passes"], true);
}

#[test]
fn usage_and_input_errors_exit_two() {
    for args in [
        &["solve"][..],
        &["solve", "eight"],
        &["frobnicate"],
        &["validate"],
        &["validate", "--perm", "1 2", "--file", "x"],
        &["solve", "0"],
        &["validate", "--perm", "1 9 3"],
        &["validate", "--file", "/nonexistent/board.json"],
        &["enumerate", "18", "--count-only"],
        &["enumerate", "8", "--prefix", "1 2"],
        &["enumerate", "8", "--prefix", "1", "--fundamental"],
        &["complete", "8", "--queens", "1;2"],
        &["complete", "8", "--queens", "1,9"],
        &["check-conjecture", "15"],
        &["width", "--perm", "1 1 2"],
        &["solve", "8", "--format", "svg"],
    ] {
        let r = nq(args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stderr);
        assert!(!r.stderr.is_empty(), "{args:?}");
        assert!(r.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn missing_solutions_exit_one() {
    for args in [
        &["solve", "3"][..],
        &["solve", "2"],
        &["witness", "9"],
        &["witness", "4"],
    ] {
        let r = nq(args);
        assert_eq!(r.code, 1, "{args:?}");
        assert!(r.stderr.starts_with("error: "));
    }
}

#[test]
fn help_goes_to_stdout() {
    let r = nq(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("check-remark15"));
    assert!(r.stderr.is_empty());
}

#[test]
fn board_format() {
    let r = nq(&["solve", "6", "--format", "board"]);
    let rows: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(
        rows,
        [".Q....", "...Q..", ".....Q", "Q.....", "..Q...", "....Q."]
    );
}

#[test]
fn json_round_trip_sweep() {
    for n in (4..=2000).chain([1]) {
        let solved = nq(&["solve", &n.to_string(), "--format", "json"]);
        assert_eq!(solved.code, 0);
        let r = nq_with_stdin(&["validate", "--file", "-"], &solved.stdout);
        assert_eq!((r.code, r.stdout.as_str()), (0, "valid\n"), "n = {n}");
    }
}

#[test]
fn binary_pipeline() {
    let bin = env!("CARGO_BIN_EXE_nqueens");
    for n in [4, 97, 1000] {
        let solved = Command::new(bin)
            .args(["solve", &n.to_string(), "--format", "json"])
            .output()
            .unwrap();
        assert!(solved.status.success());
        let mut child = Command::new(bin)
            .args(["validate", "--file", "-"])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .unwrap();
        child
            .stdin
            .take()
            .unwrap()
            .write_all(&solved.stdout)
            .unwrap();
        let done = child.wait_with_output().unwrap();
        assert_eq!(done.status.code(), Some(0));
        assert_eq!(String::from_utf8_lossy(&done.stdout), "valid\n");
    }
    let bad = Command::new(bin)
        .args(["validate", "--perm", "1 2 3 4"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let usage = Command::new(bin).arg("solve").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn binary_survives_closed_pipe() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nqueens"))
        .args(["enumerate", "13"])
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    drop(child.stdout.take());
    let status = child.wait().unwrap();
    assert_eq!(status.code(), Some(0));
}

#[test]
fn count_is_independent_of_jobs() {
    let counts: Vec<String> = ["1", "2", "3", "8", "0"]
        .iter()
        .map(|j| {
            let r = nq(&["enumerate", "11", "--count-only", "--jobs", j]);
            assert_eq!(r.code, 0);
            r.stdout
        })
        .collect();
    assert!(counts.iter().all(|c| c == "2680\n"), "{counts:?}");
    let classes: Vec<String> = ["1", "4"]
        .iter()
        .map(|j| {
            nq(&[
                "enumerate",
                "10",
                "--fundamental",
                "--jobs",
                j,
                "--format",
                "json",
            ])
            .stdout
        })
        .collect();
    assert_eq!(classes[0], classes[1]);
}

#[test]
fn enumerate_streams_every_solution_in_order() {
    let r = nq(&["enumerate", "8"]);
    let perms: Vec<Vec<usize>> = r.stdout.lines().map(perm_of).collect();
    assert_eq!(perms.len(), 92);
    assert!(perms.iter().all(|p| is_solution(p)));
    assert!(perms.windows(2).all(|w| w[0] < w[1]));

    let json = nq(&["enumerate", "6", "--format", "json"]);
    let parsed: Vec<Arrangement> = json
        .stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(parsed.len(), 4);

    let boards = nq(&["enumerate", "4", "--format", "board"]);
    assert_eq!(
        boards.stdout,
        ".Q..\n...Q\nQ...\n..Q.\n\n..Q.\nQ...\n...Q\n.Q..\n\n"
    );
}

#[test]
fn enumerate_prefix() {
    let r = nq(&["enumerate", "8", "--prefix", "1 5"]);
    assert_eq!(r.stdout, "1 5 8 6 3 7 2 4\n");
    let r = nq(&["enumerate", "8", "--prefix", "1", "--count-only"]);
    assert_eq!(r.stdout, "4\n");
}

#[test]
fn fundamental_classes_of_eight() {
    let r = nq(&["enumerate", "8", "--fundamental", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let classes = v.as_array().unwrap();
    assert_eq!(classes.len(), 12);
    let total: u64 = classes.iter().map(|c| c["orbit"].as_u64().unwrap()).sum();
    assert_eq!(total, 92);
    assert_eq!(
        classes[0]["rep"],
        serde_json::json!([1, 5, 8, 6, 3, 7, 2, 4])
    );
    assert_eq!(
        nq(&["enumerate", "8", "--fundamental", "--count-only"]).stdout,
        "12\n"
    );
    let text = nq(&["enumerate", "8", "--fundamental"]).stdout;
    assert!(text.lines().any(|l| l == "3 5 2 8 1 7 4 6\t4"), "{text}");
}

#[test]
fn compose_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let path = dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        path.to_str().unwrap().to_string()
    };
    let a = write("a.json", r#"{"n":5,"perm":[2,4,1,3,5]}"#);
    let good = write("b.txt", "2 4 1 3 5\n");
    let bad = write("bad.json", r#"{"n": 7, "perm": [4,7,5,2,6,1,3]}"#);

    let r = nq(&["compose", &a, &good, "--format", "json"]);
    assert_eq!(r.code, 0);
    let c: Arrangement = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(c.n(), 25);
    assert!(is_solution(c.perm()));

    let r = nq(&["compose", &a, &bad]);
    assert_eq!(r.code, 1);
    assert!(!is_solution(&perm_of(&r.stdout)));
    assert!(r.stderr.contains("not a solution"));

    let parts = [
        "2 4 1 3 5",
        "3 5 2 4 1",
        "2 4 1 3 5",
        "4 1 3 5 2",
        "5 3 1 4 2",
    ]
    .iter()
    .enumerate()
    .map(|(k, p)| write(&format!("p{k}.txt"), p))
    .collect::<Vec<_>>()
    .join(",");
    let r = nq(&["compose", &good, "--generalized", &parts]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(is_solution(&perm_of(&r.stdout)));

    let r = nq(&["compose", &a, &good, "--generalized", &parts]);
    assert_eq!(r.code, 2);
    let mismatch = write("short.json", r#"{"n":6,"perm":[2,4,1,3,5]}"#);
    assert_eq!(nq(&["compose", &a, &mismatch]).code, 2);
}

#[test]
fn witness_and_classify() {
    assert_eq!(nq(&["witness", "7"]).stdout, "2 4 6 1 3 5 7\n");
    let r = nq(&["classify", "20", "--format", "json"]);
    assert_eq!(
        r.stdout.trim(),
        r#"{"n":20,"verdict":"reducible","inner":4,"outer":5}"#
    );
    let r = nq(&["classify", "2019"]);
    assert_eq!(
        r.stdout,
        "2019: Q-irreducible, 3p (p = 673)\nconjecture applies: yes\n"
    );
    assert_eq!(nq(&["classify", "0"]).code, 2);
}

#[test]
fn width_reports_a_materializing_function() {
    let perm = "3 5 7 9 11 13 15 1 6 4 10 8 14 12 2";
    let r = nq(&["width", "--perm", perm]);
    assert_eq!(
        r.stdout,
        "width 2\nrows 1-8: odd 2i+1, even 2i+1 (mod 16)\nrows 9-15: odd 2i+4, even 2i (mod 16)\n"
    );
    let r = nq(&[
        "width",
        "--perm",
        "1 3 10 7 9 11 2 4 6 8 5",
        "--orbit",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["width"], 5);
    let f: QueenFunction = serde_json::from_value(v["function"].clone()).unwrap();
    let member: Vec<usize> = serde_json::from_value(v["perm"].clone()).unwrap();
    assert_eq!(f.width(), 5);
    assert_eq!(f.materialize().unwrap().perm(), &member[..]);
}

#[test]
fn completion_methods() {
    let r = nq(&["complete", "8", "--queens", "1,1;2,5"]);
    assert_eq!(r.code, 0);
    let p = perm_of(&r.stdout);
    assert!(is_solution(&p) && p[0] == 1 && p[1] == 5);

    let r = nq(&["complete", "4", "--queens", "1,1"]);
    assert_eq!((r.code, r.stderr.as_str()), (1, "no completion exists\n"));

    let r = nq(&[
        "complete",
        "30",
        "--queens",
        "3,7",
        "--method",
        "qf",
        "--max-width",
        "3",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let p = perm_of(&r.stdout);
    assert!(is_solution(&p) && p[2] == 7);
    assert_eq!(
        nq(&["complete", "8", "--method", "qf", "--max-width", "0"]).code,
        2
    );
}

#[test]
fn conjecture_report_exit_codes() {
    let r = nq(&["check-conjecture", "8"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("fundamental classes: 12"));
    // a width-5 class at n = 11
    let r = nq(&["check-conjecture", "11", "--format", "json"]);
    assert_eq!(r.code, 1);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(
        (v["classes"].as_u64(), v["worst_width"].as_u64()),
        (Some(341), Some(5))
    );
}

#[test]
fn remark_census_reports_width_two() {
    let r = nq(&["check-remark15"]);
    assert_eq!(r.code, 1);
    assert!(r
        .stdout
        .starts_with("solutions visited: 2279184 (first-row partition total 2279184)\n"));
    assert!(r.stdout.contains("  2: 24\n"));
    assert!(r.stdout.contains("minimum width: 2\n"));
}
