//! `qsim bench`: wall-clock timing of the benchmark circuit families.
//!
//! Timing covers only the `simulate` call: circuit construction and state
//! allocation happen outside the clock, and the best of `reps` repetitions is
//! reported to damp scheduler noise.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use qsim_core::real::Real;
use qsim_core::{QuantumCircuit, StateVector};

use crate::{build_family, fail, CmdResult, Failure, Family, Precision, EXIT_REFUSAL, EXIT_USAGE};

pub const CSV_HEADER: &str = "family,n,precision,reps,gate_count,wall_seconds";

/// One benchmark measurement row.
#[derive(Debug, Clone, PartialEq)]
pub struct TimingRecord {
    pub family: Family,
    pub nb_qubits: usize,
    pub precision: Precision,
    pub repetitions: usize,
    pub gate_count: usize,
    pub wall_seconds: f64,
}

impl TimingRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.family.label(),
            self.nb_qubits,
            self.precision.label(),
            self.repetitions,
            self.gate_count,
            self.wall_seconds
        )
    }
}

pub struct BenchArgs {
    pub family: Family,
    pub n_min: usize,
    pub n_max: usize,
    pub precision: Precision,
    pub reps: usize,
    pub seed: u64,
    pub steps: usize,
    pub out: Option<PathBuf>,
    pub mem_budget: Option<u64>,
}

/// State-vector footprint in bytes: `2^n` amplitudes of 8 or 16 bytes.
pub fn state_bytes(nb_qubits: usize, precision: Precision) -> u64 {
    precision.amplitude_bytes() << nb_qubits
}

/// `MemAvailable` from /proc/meminfo, if the host exposes it.
fn available_memory_bytes() -> Option<u64> {
    let text = std::fs::read_to_string("/proc/meminfo").ok()?;
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("MemAvailable:") {
            let kb: u64 = rest.trim().trim_end_matches("kB").trim().parse().ok()?;
            return Some(kb * 1024);
        }
    }
    None
}

fn check_memory_budget(args: &BenchArgs) -> CmdResult {
    let budget = match args.mem_budget {
        Some(bytes) => bytes,
        None => match available_memory_bytes() {
            Some(avail) => avail / 4 * 3,
            // No way to measure; let the allocator be the judge.
            None => return Ok(()),
        },
    };
    let needed = state_bytes(args.n_max, args.precision);
    if needed > budget {
        return Err(fail(
            EXIT_REFUSAL,
            format!(
                "n = {} needs an estimated {needed} bytes of state ({} per amplitude), over the budget of {budget} bytes",
                args.n_max,
                args.precision.amplitude_bytes()
            ),
        ));
    }
    Ok(())
}

pub fn cmd_bench(args: BenchArgs) -> CmdResult {
    if args.n_min < 1 || args.n_min > args.n_max {
        return Err(fail(
            EXIT_USAGE,
            format!("invalid qubit range {}..{}", args.n_min, args.n_max),
        ));
    }
    if args.reps < 1 {
        return Err(fail(EXIT_USAGE, "--reps must be at least 1"));
    }
    check_memory_budget(&args)?;

    let mut sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(std::fs::File::create(path).map_err(|err| {
            fail(
                EXIT_USAGE,
                format!("cannot create {}: {err}", path.display()),
            )
        })?),
        None => Box::new(std::io::stdout()),
    };
    writeln!(sink, "{CSV_HEADER}").map_err(io_failure)?;

    for nb_qubits in args.n_min..=args.n_max {
        let circuit = build_family(args.family, nb_qubits, args.steps, args.seed)
            .map_err(|err| fail(EXIT_USAGE, err.to_string()))?;
        let record = match args.precision {
            Precision::Single => time_circuit::<f32>(&circuit, &args, nb_qubits)?,
            Precision::Double => time_circuit::<f64>(&circuit, &args, nb_qubits)?,
        };
        eprintln!(
            "{} n={} gates={} best of {}: {:.6} s",
            args.family.label(),
            nb_qubits,
            record.gate_count,
            record.repetitions,
            record.wall_seconds
        );
        writeln!(sink, "{}", record.csv_row()).map_err(io_failure)?;
        sink.flush().map_err(io_failure)?;
    }
    Ok(())
}

fn io_failure(err: std::io::Error) -> Failure {
    fail(EXIT_USAGE, format!("cannot write output: {err}"))
}

fn time_circuit<T: Real>(
    circuit: &QuantumCircuit,
    args: &BenchArgs,
    nb_qubits: usize,
) -> Result<TimingRecord, Failure> {
    let mut state = StateVector::<T>::basis_state(nb_qubits, 0)
        .map_err(|err| fail(EXIT_REFUSAL, err.to_string()))?;
    let mut best = f64::INFINITY;
    for _ in 0..args.reps {
        state
            .set_basis_state(0)
            .expect("index 0 is always in range");
        let started = Instant::now();
        circuit
            .simulate(&mut state)
            .map_err(|err| fail(EXIT_USAGE, err.to_string()))?;
        best = best.min(started.elapsed().as_secs_f64());
    }
    Ok(TimingRecord {
        family: args.family,
        nb_qubits,
        precision: args.precision,
        repetitions: args.reps,
        gate_count: circuit.len(),
        wall_seconds: best,
    })
}
