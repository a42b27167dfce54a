//! End-to-end tests of the `qsim` binary.

use std::path::Path;
use std::process::{Command, Output};

fn qsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn write_qft(n: usize, dir: &Path) -> std::path::PathBuf {
    let path = dir.join(format!("qft{n}.qasm"));
    let out = qsim(&[
        "qasm",
        "emit-qft",
        &n.to_string(),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    path
}

#[test]
fn run_prints_uniform_qft_amplitudes() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_qft(4, dir.path());
    let out = qsim(&["run", path.to_str().unwrap(), "--index", "0"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().map(str::trim).collect();
    assert_eq!(lines.len(), 16);
    for (j, line) in lines.iter().enumerate() {
        let cols: Vec<&str> = line.split('\t').collect();
        assert_eq!(cols[0], j.to_string());
        let re: f64 = cols[1].parse().unwrap();
        let im: f64 = cols[2].parse().unwrap();
        assert!(
            ((re * re + im * im).sqrt() - 0.25).abs() < 1e-12,
            "line {line}"
        );
    }
}

#[test]
fn run_reports_missing_file() {
    let out = qsim(&["run", "/definitely/not/here.qasm"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cannot open"), "{}", stderr(&out));
}

#[test]
fn run_reports_parse_errors_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.qasm");
    std::fs::write(&path, "OPENQASM 2.0;\nqreg q[1];\nnope q[0];\n").unwrap();
    let out = qsim(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("3:1"), "{}", stderr(&out));
}

#[test]
fn run_refuses_full_dump_of_large_registers() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_qft(20, dir.path());
    let out = qsim(&["run", path.to_str().unwrap(), "--output", "full"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("n <= 10"), "{}", stderr(&out));
}

#[test]
fn run_top_mode_reports_norm_and_eight_amplitudes() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_qft(6, dir.path());
    let out = qsim(&[
        "run",
        path.to_str().unwrap(),
        "--output",
        "top",
        "--precision",
        "single",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    let norm_line = lines.next().unwrap();
    assert!(norm_line.starts_with("norm\t"));
    let norm: f64 = norm_line.split('\t').nth(1).unwrap().parse().unwrap();
    assert!((norm - 1.0).abs() < 1e-5);
    assert_eq!(lines.count(), 8);
}

#[test]
fn bench_emits_expected_gate_counts() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bench.csv");
    let out = qsim(&[
        "bench",
        "--family",
        "qft",
        "--n-min",
        "4",
        "--n-max",
        "6",
        "--reps",
        "1",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "family,n,precision,reps,gate_count,wall_seconds");
    assert_eq!(lines.len(), 4);
    for (line, (n, gates)) in lines[1..].iter().zip([(4, 12), (5, 17), (6, 24)]) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[0], "qft");
        assert_eq!(cols[1], n.to_string());
        assert_eq!(cols[2], "double");
        assert_eq!(cols[3], "1");
        assert_eq!(cols[4], gates.to_string());
        let wall: f64 = cols[5].parse().unwrap();
        assert!(wall > 0.0);
    }
}

#[test]
fn bench_tfxy_gate_count_uses_default_trotter_steps() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("tfxy.csv");
    let out = qsim(&[
        "bench",
        "--family",
        "tfxy",
        "--n-min",
        "4",
        "--n-max",
        "4",
        "--reps",
        "1",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&csv).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[4], "240"); // 10 steps x 24 gates
}

#[test]
fn bench_is_deterministic_apart_from_wall_time() {
    let dir = tempfile::tempdir().unwrap();
    let mut snapshots = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let csv = dir.path().join(name);
        let out = qsim(&[
            "bench",
            "--family",
            "tfxy",
            "--n-min",
            "3",
            "--n-max",
            "5",
            "--reps",
            "1",
            "--seed",
            "9",
            "--out",
            csv.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        let text = std::fs::read_to_string(&csv).unwrap();
        let without_wall: Vec<String> = text
            .lines()
            .map(|line| {
                line.rsplit_once(',')
                    .map(|(head, _)| head.to_string())
                    .unwrap_or_else(|| line.to_string())
            })
            .collect();
        snapshots.push(without_wall);
    }
    assert_eq!(snapshots[0], snapshots[1]);
}

#[test]
fn bench_refuses_over_memory_budget() {
    let out = qsim(&[
        "bench",
        "--family",
        "qft",
        "--n-min",
        "4",
        "--n-max",
        "20",
        "--mem-budget",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let msg = stderr(&out);
    // 2^20 amplitudes at 16 bytes each.
    assert!(msg.contains("16777216"), "{msg}");
}

#[test]
fn bench_single_precision_halves_the_estimate() {
    let out = qsim(&[
        "bench",
        "--family",
        "qft",
        "--n-min",
        "4",
        "--n-max",
        "20",
        "--precision",
        "single",
        "--mem-budget",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("8388608"), "{}", stderr(&out));
}

#[test]
fn bench_refusal_triggers_exactly_above_the_budget() {
    // n = 6 double needs 16 * 2^6 = 1024 bytes: allowed at budget 1024,
    // refused one byte under.
    let ok = qsim(&[
        "bench",
        "--family",
        "qft",
        "--n-min",
        "6",
        "--n-max",
        "6",
        "--reps",
        "1",
        "--mem-budget",
        "1024",
        "--out",
        "/dev/null",
    ]);
    assert!(ok.status.success(), "{}", stderr(&ok));
    let refused = qsim(&[
        "bench",
        "--family",
        "qft",
        "--n-min",
        "6",
        "--n-max",
        "6",
        "--reps",
        "1",
        "--mem-budget",
        "1023",
        "--out",
        "/dev/null",
    ]);
    assert_eq!(refused.status.code(), Some(3));
    assert!(stderr(&refused).contains("1024"), "{}", stderr(&refused));
}

#[test]
fn bench_rejects_bad_ranges() {
    let out = qsim(&["bench", "--family", "qft", "--n-min", "6", "--n-max", "4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_passes_at_small_sizes() {
    let out = qsim(&["verify", "--n", "1", "--gates", "1", "--trials", "1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("verification passed"));

    let out = qsim(&[
        "verify", "--n", "6", "--gates", "200", "--trials", "20", "--seed", "3",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
}

#[test]
fn verify_refuses_large_registers() {
    let out = qsim(&["verify", "--n", "12"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("n <= 10"), "{}", stderr(&out));
}

#[test]
fn emit_qft_one_qubit_is_a_single_hadamard() {
    let out = qsim(&["qasm", "emit-qft", "1"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[1];\nh q[0];\n"
    );
}

#[test]
fn emit_qft_two_qubits_matches_the_reference_program() {
    let out = qsim(&["qasm", "emit-qft", "2"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\nh q[0];\ncu1(-1.5707963267948966) q[1],q[0];\nh q[1];\nswap q[0],q[1];\n"
    );
}

#[test]
fn emit_tfxy_single_block_statement_mix() {
    let out = qsim(&["qasm", "emit-tfxy", "2", "1", "--seed", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let statements: Vec<&str> = text.lines().skip(3).collect();
    assert_eq!(statements.len(), 8);
    for statement in &statements {
        let name = statement.split(['(', ' ']).next().unwrap();
        assert!(matches!(name, "rz" | "rx" | "cx"), "unexpected {statement}");
    }
    // Deterministic in the seed.
    let again = qsim(&["qasm", "emit-tfxy", "2", "1", "--seed", "7"]);
    assert_eq!(text, stdout(&again));
}

#[test]
fn threads_flag_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_qft(4, dir.path());
    let out = qsim(&["run", path.to_str().unwrap(), "--threads", "1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let out = qsim(&["run", path.to_str().unwrap(), "--threads", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_flags_exit_with_usage_error() {
    let out = qsim(&["run", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}
