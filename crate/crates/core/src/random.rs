//! Seeded random states, unitaries, and circuits for verification runs.
//!
//! Everything here is deterministic in the seed (ChaCha8), so failures
//! reproduce across machines.

use num_complex::Complex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::circuit::QuantumCircuit;
use crate::gates::{Gate, GateKind, Matrix2, Matrix4};
use crate::real::Real;
use crate::state::StateVector;

type C64 = Complex<f64>;

/// A normalized random state with i.i.d. complex Gaussian-ish amplitudes.
pub fn random_state<T: Real>(nb_qubits: usize, seed: u64) -> StateVector<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = 1usize << nb_qubits;
    let mut amps: Vec<C64> = (0..len)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    StateVector::from_amplitudes(
        nb_qubits,
        amps.into_iter()
            .map(|a| crate::real::convert_amplitude(a))
            .collect(),
    )
    .expect("length is 2^n by construction")
}

/// Haar-ish random 2x2 unitary (random complex matrix, orthonormalized).
pub fn random_unitary2(seed: u64) -> Matrix2 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let flat = random_unitary_flat(&mut rng, 2);
    [[flat[0], flat[1]], [flat[2], flat[3]]]
}

/// Haar-ish random 4x4 unitary.
pub fn random_unitary4(seed: u64) -> Matrix4 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let flat = random_unitary_flat(&mut rng, 4);
    let mut m = [[C64::new(0.0, 0.0); 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            m[r][c] = flat[r * 4 + c];
        }
    }
    m
}

/// Random unitary of dimension `dim`, row-major, via modified Gram-Schmidt on
/// a random complex matrix. Two passes keep the unitarity defect near machine
/// epsilon.
fn random_unitary_flat(rng: &mut ChaCha8Rng, dim: usize) -> Vec<C64> {
    let mut cols: Vec<Vec<C64>> = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect()
        })
        .collect();
    for _pass in 0..2 {
        for i in 0..dim {
            for j in 0..i {
                let proj: C64 = (0..dim).map(|k| cols[j][k].conj() * cols[i][k]).sum();
                let basis = cols[j].clone();
                for (x, b) in cols[i].iter_mut().zip(&basis) {
                    *x -= proj * b;
                }
            }
            let norm: f64 = cols[i].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            for x in &mut cols[i] {
                *x /= norm;
            }
        }
    }
    let mut flat = vec![C64::new(0.0, 0.0); dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            flat[r * dim + c] = cols[c][r];
        }
    }
    flat
}

fn distinct_qubits(rng: &mut ChaCha8Rng, nb_qubits: usize, count: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..nb_qubits).collect();
    all.shuffle(rng);
    all.truncate(count);
    all
}

fn random_angle(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)
}

/// A random circuit over the full gate vocabulary, including arbitrary
/// matrices, zero-controls, and noncontiguous 2-qubit pairs in either order.
pub fn random_circuit(nb_qubits: usize, nb_gates: usize, seed: u64) -> QuantumCircuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut circuit = QuantumCircuit::new(nb_qubits).expect("nb_qubits >= 1");
    for _ in 0..nb_gates {
        let gate = random_gate(&mut rng, nb_qubits, true);
        circuit
            .push_back(gate)
            .expect("generated gates are in range");
    }
    circuit
}

/// A random circuit restricted to the openQASM-serializable vocabulary
/// (named kinds only, all controls active-on-1).
pub fn random_supported_circuit(nb_qubits: usize, nb_gates: usize, seed: u64) -> QuantumCircuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut circuit = QuantumCircuit::new(nb_qubits).expect("nb_qubits >= 1");
    for _ in 0..nb_gates {
        let gate = random_gate(&mut rng, nb_qubits, false);
        circuit
            .push_back(gate)
            .expect("generated gates are in range");
    }
    circuit
}

fn random_gate(rng: &mut ChaCha8Rng, nb_qubits: usize, full_vocabulary: bool) -> Gate {
    let max_arity = nb_qubits.min(3);
    let arity = match max_arity {
        1 => 1,
        // Lean toward multi-qubit gates; they carry the interesting paths.
        2 => *[1, 1, 2, 2, 2].choose(rng).unwrap(),
        _ => *[1, 1, 2, 2, 2, 3].choose(rng).unwrap(),
    };
    let qubits = distinct_qubits(rng, nb_qubits, arity);
    match arity {
        1 => {
            let choices = if full_vocabulary { 9 } else { 8 };
            match rng.gen_range(0..choices) {
                0 => Gate::h(qubits[0]),
                1 => Gate::x(qubits[0]),
                2 => Gate::y(qubits[0]),
                3 => Gate::z(qubits[0]),
                4 => Gate::p(random_angle(rng), qubits[0]),
                5 => Gate::rx(random_angle(rng), qubits[0]),
                6 => Gate::ry(random_angle(rng), qubits[0]),
                7 => Gate::rz(random_angle(rng), qubits[0]),
                _ => Gate::u2(random_unitary2(rng.gen()), qubits[0]).unwrap(),
            }
        }
        2 => {
            let choices = if full_vocabulary { 6 } else { 4 };
            let pick = rng.gen_range(0..choices);
            let kind = match pick {
                0 => GateKind::Cnot,
                1 => GateKind::Cz,
                2 => GateKind::Cp(random_angle(rng)),
                3 => GateKind::Swap,
                4 => GateKind::Cu2(random_unitary2(rng.gen())),
                _ => GateKind::U4(random_unitary4(rng.gen())),
            };
            let controls = kind.control_count();
            let states = if full_vocabulary {
                (0..controls).map(|_| rng.gen()).collect()
            } else {
                vec![true; controls]
            };
            Gate::with_control_states(kind, qubits, states).unwrap()
        }
        _ => {
            let states = if full_vocabulary {
                vec![rng.gen(), rng.gen()]
            } else {
                vec![true, true]
            };
            Gate::with_control_states(GateKind::Ccx, qubits, states).unwrap()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_state_is_normalized() {
        let s = random_state::<f64>(6, 1);
        assert!((s.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_unitaries_pass_the_gate_check() {
        for seed in 0..20 {
            Gate::u2(random_unitary2(seed), 0).unwrap();
            Gate::u4(random_unitary4(seed), 0, 1).unwrap();
        }
    }

    #[test]
    fn generation_is_deterministic_in_the_seed() {
        assert_eq!(random_circuit(4, 50, 9), random_circuit(4, 50, 9));
        let a = random_state::<f32>(5, 3);
        let b = random_state::<f32>(5, 3);
        assert_eq!(a.max_abs_diff(&b).unwrap(), 0.0);
    }

    #[test]
    fn supported_circuits_avoid_matrix_gates_and_zero_controls() {
        let circuit = random_supported_circuit(5, 200, 13);
        for gate in circuit.gates() {
            assert!(!matches!(
                gate.kind(),
                GateKind::U2(_) | GateKind::U4(_) | GateKind::Cu2(_)
            ));
            assert!(gate.control_states().iter().all(|&s| s));
        }
    }

    #[test]
    fn single_qubit_register_gets_single_qubit_gates() {
        let circuit = random_circuit(1, 30, 2);
        assert!(circuit.gates().iter().all(|g| g.qubits().len() == 1));
    }
}
