//! `qsim verify`: random-circuit equivalence trials against the dense
//! reference simulator.

use qsim_core::oracle::reference_simulate;
use qsim_core::random::{random_circuit, random_state};
use qsim_core::real::Real;

use crate::{fail, CmdResult, Precision, EXIT_REFUSAL, EXIT_VERIFICATION};

/// The dense reference is quadratic in the state size; past this register
/// width the trials stop being quick.
pub const ORACLE_GUARD_QUBITS: usize = 10;

pub fn tolerance(precision: Precision) -> f64 {
    match precision {
        Precision::Single => 1e-5,
        Precision::Double => 1e-12,
    }
}

pub fn cmd_verify(
    nb_qubits: usize,
    gates_per_trial: usize,
    trials: usize,
    seed: u64,
    precision: Precision,
) -> CmdResult {
    if nb_qubits > ORACLE_GUARD_QUBITS {
        return Err(fail(
            EXIT_REFUSAL,
            format!(
                "n = {nb_qubits} exceeds the reference-simulator guard of n <= {ORACLE_GUARD_QUBITS}"
            ),
        ));
    }
    let worst = match precision {
        Precision::Single => run_trials::<f32>(nb_qubits, gates_per_trial, trials, seed),
        Precision::Double => run_trials::<f64>(nb_qubits, gates_per_trial, trials, seed),
    }?;
    let tol = tolerance(precision);
    println!(
        "max deviation over {trials} trial(s) of {gates_per_trial} gate(s) at n={nb_qubits} ({}): {worst:e}",
        precision.label()
    );
    if worst <= tol {
        println!("verification passed (tolerance {tol:e})");
        Ok(())
    } else {
        Err(fail(
            EXIT_VERIFICATION,
            format!("max deviation {worst:e} exceeds tolerance {tol:e}"),
        ))
    }
}

fn run_trials<T: Real>(
    nb_qubits: usize,
    gates_per_trial: usize,
    trials: usize,
    seed: u64,
) -> Result<f64, crate::Failure> {
    let mut worst = 0f64;
    for trial in 0..trials as u64 {
        let circuit = random_circuit(nb_qubits, gates_per_trial, seed ^ (trial * 2 + 1));
        let initial = random_state::<T>(nb_qubits, seed ^ (trial * 2));
        let mut via_kernels = initial.clone();
        circuit
            .simulate(&mut via_kernels)
            .map_err(|err| fail(crate::EXIT_USAGE, err.to_string()))?;
        let via_reference = reference_simulate(&circuit, &initial)
            .map_err(|err| fail(crate::EXIT_USAGE, err.to_string()))?;
        let diff = via_kernels
            .max_abs_diff(&via_reference)
            .map_err(|err| fail(crate::EXIT_USAGE, err.to_string()))?;
        worst = worst.max(diff.to_f64());
    }
    Ok(worst)
}
