//! `qsim` command line: run circuits from openQASM, generate benchmark
//! circuits, time them over qubit ranges, and cross-check the kernels against
//! the dense reference simulator.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 verification failure,
//! 3 resource refusal.

mod bench;
mod run;
mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qsim_core::circuit::{build_qft, build_tfxy_trotter, QuantumCircuit};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;
pub const EXIT_REFUSAL: i32 = 3;

/// A command failure carrying the process exit code.
pub struct Failure {
    pub code: i32,
    pub message: String,
}

pub fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

pub type CmdResult = Result<(), Failure>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Precision {
    Single,
    Double,
}

impl Precision {
    pub fn label(self) -> &'static str {
        match self {
            Precision::Single => "single",
            Precision::Double => "double",
        }
    }

    /// Bytes per amplitude (two scalars).
    pub fn amplitude_bytes(self) -> u64 {
        match self {
            Precision::Single => 8,
            Precision::Double => 16,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Qft,
    Tfxy,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::Qft => "qft",
            Family::Tfxy => "tfxy",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    /// Print every amplitude (guarded to registers of at most 10 qubits).
    Full,
    /// Print the norm and the 8 largest-magnitude amplitudes.
    Top,
}

#[derive(Parser)]
#[command(
    name = "qsim",
    about = "State-vector quantum circuit simulator",
    version
)]
struct Cli {
    /// Floating-point precision of the state vector.
    #[arg(long, global = true, value_enum, default_value_t = Precision::Double)]
    precision: Precision,

    /// Worker threads used by the gate kernels (default: all hardware threads).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate an openQASM file from a basis state and print the result.
    Run {
        /// Path to an openQASM 2.0 file.
        qasm_path: PathBuf,
        /// Initial basis-state index.
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// How much of the final state to print.
        #[arg(long, value_enum, default_value_t = OutputMode::Full)]
        output: OutputMode,
    },
    /// Time a benchmark circuit family over a qubit range and emit CSV.
    Bench {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        /// Repetitions per size; the best (smallest) wall time is reported.
        #[arg(long, default_value_t = 3)]
        reps: usize,
        /// Seed for the tfxy rotation angles.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trotter steps for the tfxy family.
        #[arg(long, default_value_t = 10)]
        steps: usize,
        /// CSV output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Memory budget in bytes (default: 75% of available memory).
        #[arg(long)]
        mem_budget: Option<u64>,
    },
    /// Compare the kernels against the dense reference on random circuits.
    Verify {
        /// Register size; guarded to n <= 10 by the reference cost.
        #[arg(long)]
        n: usize,
        /// Gates per random circuit.
        #[arg(long, default_value_t = 200)]
        gates: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write benchmark circuits as openQASM text.
    Qasm {
        #[command(subcommand)]
        which: QasmCommand,
    },
}

#[derive(Subcommand)]
enum QasmCommand {
    /// Emit the quantum Fourier transform circuit on n qubits.
    EmitQft {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the Trotterized TFXY spin-chain circuit.
    EmitTfxy {
        n: usize,
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Deterministic rotation-angle stream for the tfxy builder.
pub fn seeded_angles(seed: u64) -> impl FnMut() -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    move || rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)
}

pub fn build_family(
    family: Family,
    nb_qubits: usize,
    steps: usize,
    seed: u64,
) -> Result<QuantumCircuit, qsim_core::Error> {
    match family {
        Family::Qft => build_qft(nb_qubits),
        Family::Tfxy => build_tfxy_trotter(nb_qubits, steps, seeded_angles(seed)),
    }
}

fn emit_qasm(circuit: &QuantumCircuit, out: Option<&PathBuf>) -> CmdResult {
    let text = qsim_core::qasm::emit(circuit)
        .map_err(|err| fail(EXIT_USAGE, format!("cannot serialize circuit: {err}")))?;
    match out {
        Some(path) => std::fs::write(path, text).map_err(|err| {
            fail(
                EXIT_USAGE,
                format!("cannot write {}: {err}", path.display()),
            )
        }),
        None => {
            print!("{text}");
            std::io::stdout()
                .flush()
                .map_err(|err| fail(EXIT_USAGE, format!("cannot write to stdout: {err}")))
        }
    }
}

fn dispatch(cli: Cli) -> CmdResult {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(fail(EXIT_USAGE, "--threads must be at least 1"));
        }
        rayon_pool_init(threads)?;
    }
    match cli.command {
        Command::Run {
            qasm_path,
            index,
            output,
        } => run::cmd_run(&qasm_path, index, cli.precision, output),
        Command::Bench {
            family,
            n_min,
            n_max,
            reps,
            seed,
            steps,
            out,
            mem_budget,
        } => bench::cmd_bench(bench::BenchArgs {
            family,
            n_min,
            n_max,
            precision: cli.precision,
            reps,
            seed,
            steps,
            out,
            mem_budget,
        }),
        Command::Verify {
            n,
            gates,
            trials,
            seed,
        } => verify::cmd_verify(n, gates, trials, seed, cli.precision),
        Command::Qasm { which } => match which {
            QasmCommand::EmitQft { n, out } => {
                let circuit = build_qft(n)
                    .map_err(|err| fail(EXIT_USAGE, format!("cannot build qft circuit: {err}")))?;
                emit_qasm(&circuit, out.as_ref())
            }
            QasmCommand::EmitTfxy {
                n,
                steps,
                seed,
                out,
            } => {
                let circuit = build_tfxy_trotter(n, steps, seeded_angles(seed))
                    .map_err(|err| fail(EXIT_USAGE, format!("cannot build tfxy circuit: {err}")))?;
                emit_qasm(&circuit, out.as_ref())
            }
        },
    }
}

fn rayon_pool_init(threads: usize) -> CmdResult {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|err| fail(EXIT_USAGE, format!("cannot configure thread pool: {err}")))
}

fn main() {
    // Die quietly when a downstream pipe closes (e.g. `qsim run ... | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    if let Err(failure) = dispatch(cli) {
        eprintln!("error: {}", failure.message);
        std::process::exit(failure.code);
    }
}
