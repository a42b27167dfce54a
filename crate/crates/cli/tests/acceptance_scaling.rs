//! Acceptance criterion 7: wall-time doubling per added qubit at desk scale.
//!
//! Kept in its own test binary so the measurement runs with the machine to
//! itself; cargo executes test binaries one after another.

use std::collections::BTreeMap;
use std::process::Command;

#[test]
fn criterion_7_scaling() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("scaling.csv");

    let output = Command::new(env!("CARGO_BIN_EXE_qsim"))
        .args([
            "bench",
            "--family",
            "qft",
            "--n-min",
            "20",
            "--n-max",
            "26",
            "--reps",
            "2",
            "--precision",
            "double",
            "--out",
            csv_path.to_str().unwrap(),
        ])
        .output()
        .expect("bench run");
    assert!(
        output.status.success(),
        "bench failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );

    let text = std::fs::read_to_string(&csv_path).unwrap();
    let mut wall: BTreeMap<usize, f64> = BTreeMap::new();
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        wall.insert(cols[1].parse().unwrap(), cols[5].parse().unwrap());
    }
    assert_eq!(wall.len(), 7, "expected one row per n in 20..=26");

    let mut summary = String::new();
    for n in 22..=26usize {
        let ratio = wall[&n] / wall[&(n - 1)];
        summary.push_str(&format!("t({n})/t({}) = {ratio:.2}  ", n - 1));
        assert!(
            (1.5..=3.0).contains(&ratio),
            "ratio t({n})/t({}) = {ratio:.3} outside [1.5, 3.0]; timings: {text}",
            n - 1
        );
    }
    println!("criterion 7: PASS - {summary}");
}
