//! `qsim run`: simulate an openQASM file from a basis state.

use std::path::Path;

use qsim_core::real::Real;
use qsim_core::{qasm, QuantumCircuit, StateVector};

use crate::{fail, CmdResult, OutputMode, Precision, EXIT_REFUSAL, EXIT_USAGE};

/// Full amplitude listings are refused above this register size.
pub const PRINT_GUARD_QUBITS: usize = 10;

pub fn cmd_run(
    qasm_path: &Path,
    index: usize,
    precision: Precision,
    output: OutputMode,
) -> CmdResult {
    let source = std::fs::read_to_string(qasm_path).map_err(|err| {
        fail(
            EXIT_USAGE,
            format!("cannot open {}: {err}", qasm_path.display()),
        )
    })?;
    let circuit = qasm::parse(&source)
        .map_err(|err| fail(EXIT_USAGE, format!("{}: {err}", qasm_path.display())))?;

    if output == OutputMode::Full && circuit.nb_qubits() > PRINT_GUARD_QUBITS {
        return Err(fail(
            EXIT_REFUSAL,
            format!(
                "refusing to print all 2^{} amplitudes (print guard is n <= {PRINT_GUARD_QUBITS}); rerun with --output top",
                circuit.nb_qubits()
            ),
        ));
    }

    match precision {
        Precision::Single => simulate_and_print::<f32>(&circuit, index, output),
        Precision::Double => simulate_and_print::<f64>(&circuit, index, output),
    }
}

fn simulate_and_print<T: Real + std::fmt::Display>(
    circuit: &QuantumCircuit,
    index: usize,
    output: OutputMode,
) -> CmdResult {
    let mut state = StateVector::<T>::basis_state(circuit.nb_qubits(), index)
        .map_err(|err| fail(EXIT_USAGE, err.to_string()))?;
    circuit
        .simulate(&mut state)
        .map_err(|err| fail(EXIT_USAGE, err.to_string()))?;

    match output {
        OutputMode::Full => {
            for (j, amp) in state.amplitudes().iter().enumerate() {
                println!("{j}\t{}\t{}", amp.re, amp.im);
            }
        }
        OutputMode::Top => {
            println!("norm\t{}", state.norm());
            let mut ranked: Vec<(usize, f64)> = state
                .amplitudes()
                .iter()
                .enumerate()
                .map(|(j, amp)| (j, amp.norm().to_f64()))
                .collect();
            ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
            for (j, _) in ranked.into_iter().take(8) {
                let amp = state.amplitudes()[j];
                println!("{j}\t{}\t{}", amp.re, amp.im);
            }
        }
    }
    Ok(())
}
