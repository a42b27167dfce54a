//! Circuit container, simulation dispatch, and benchmark circuit builders.

use crate::error::{Error, Result};
use crate::gates::{mat2_cast, mat4_cast, Gate, GateKind};
use crate::kernels;
use crate::real::Real;
use crate::state::StateVector;

/// An ordered gate sequence on a fixed-width register. Gate order is
/// application order (left to right in circuit diagrams).
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumCircuit {
    nb_qubits: usize,
    gates: Vec<Gate>,
}

impl QuantumCircuit {
    pub fn new(nb_qubits: usize) -> Result<Self> {
        if nb_qubits == 0 {
            return Err(Error::InvalidQubitCount { nb_qubits });
        }
        Ok(Self {
            nb_qubits,
            gates: Vec::new(),
        })
    }

    #[inline]
    pub fn nb_qubits(&self) -> usize {
        self.nb_qubits
    }

    #[inline]
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.gates.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends a gate; its qubits are range-checked at insertion time.
    pub fn push_back(&mut self, gate: Gate) -> Result<()> {
        if gate.max_qubit() >= self.nb_qubits {
            return Err(Error::QubitOutOfRange {
                qubit: gate.max_qubit(),
                nb_qubits: self.nb_qubits,
            });
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Applies every gate in order to `state`, dispatching each kind to its
    /// most specialized kernel.
    pub fn simulate<T: Real>(&self, state: &mut StateVector<T>) -> Result<()> {
        if state.nb_qubits() != self.nb_qubits {
            return Err(Error::QubitCountMismatch {
                left: self.nb_qubits,
                right: state.nb_qubits(),
            });
        }
        for gate in &self.gates {
            apply_gate(state, gate)?;
        }
        Ok(())
    }

    /// The inverse circuit: gates reversed, each replaced by its adjoint.
    pub fn inverse(&self) -> Self {
        Self {
            nb_qubits: self.nb_qubits,
            gates: self.gates.iter().rev().map(Gate::dagger).collect(),
        }
    }
}

/// Applies a single gate through the kernel dispatch table.
pub fn apply_gate<T: Real>(state: &mut StateVector<T>, gate: &Gate) -> Result<()> {
    let qubits = gate.qubits();
    match gate.kind() {
        GateKind::H => kernels::apply_h(state, qubits[0]),
        GateKind::X => kernels::apply_x(state, qubits[0]),
        GateKind::Y => kernels::apply_y(state, qubits[0]),
        GateKind::Z => kernels::apply_z(state, qubits[0]),
        GateKind::P(theta) => kernels::apply_1q(
            state,
            &mat2_cast(&crate::gates::p_matrix(*theta)),
            qubits[0],
        ),
        GateKind::Rx(theta) => kernels::apply_1q(
            state,
            &mat2_cast(&crate::gates::rx_matrix(*theta)),
            qubits[0],
        ),
        GateKind::Ry(theta) => kernels::apply_1q(
            state,
            &mat2_cast(&crate::gates::ry_matrix(*theta)),
            qubits[0],
        ),
        GateKind::Rz(theta) => kernels::apply_1q(
            state,
            &mat2_cast(&crate::gates::rz_matrix(*theta)),
            qubits[0],
        ),
        GateKind::U2(m) => kernels::apply_1q(state, &mat2_cast(m), qubits[0]),
        GateKind::Cnot => {
            let ctrl = gate.controls()[0];
            kernels::apply_cnot(state, ctrl, qubits[1])
        }
        GateKind::Cz => {
            let ctrl = gate.controls()[0];
            kernels::apply_ctrl_1q(
                state,
                &mat2_cast(&crate::gates::z_matrix()),
                ctrl,
                qubits[1],
            )
        }
        GateKind::Cp(theta) => {
            let ctrl = gate.controls()[0];
            kernels::apply_ctrl_1q(
                state,
                &mat2_cast(&crate::gates::p_matrix(*theta)),
                ctrl,
                qubits[1],
            )
        }
        GateKind::Cu2(m) => {
            let ctrl = gate.controls()[0];
            kernels::apply_ctrl_1q(state, &mat2_cast(m), ctrl, qubits[1])
        }
        GateKind::Swap => kernels::apply_swap(state, qubits[0], qubits[1]),
        GateKind::U4(m) => kernels::apply_2q(state, &mat4_cast(m), qubits[0], qubits[1]),
        GateKind::Ccx => kernels::apply_multi_ctrl_1q(
            state,
            &mat2_cast(&crate::gates::x_matrix()),
            &gate.controls(),
            qubits[2],
        ),
    }
}

/// Builds the quantum Fourier transform circuit on `n` qubits: per qubit a
/// Hadamard followed by controlled phases `θ = -2π/2^j` from each later
/// qubit, then a terminal layer reversing the register with SWAPs.
pub fn build_qft(nb_qubits: usize) -> Result<QuantumCircuit> {
    let mut circuit = QuantumCircuit::new(nb_qubits)?;
    let n = nb_qubits;
    for i in 0..n {
        circuit.push_back(Gate::h(i))?;
        for j in 2..=(n - i) {
            let control = j + i - 1;
            let theta = -2.0 * std::f64::consts::PI / 2f64.powi(j as i32);
            circuit.push_back(Gate::cp(theta, control, i)?)?;
        }
    }
    for i in 0..n / 2 {
        circuit.push_back(Gate::swap(i, n - i - 1)?)?;
    }
    Ok(circuit)
}

/// Builds a Trotterized time-evolution circuit for a 1D nearest-neighbor
/// transverse-field XY spin chain.
///
/// Per Trotter step, the even pair layer (0,1), (2,3), ... and then the odd
/// pair layer (1,2), (3,4), ... each receive an 8-gate block on (q, q+1):
/// RZ(q), RZ(q+1), CNOT(q,q+1), RX(q), RZ(q+1), CNOT(q,q+1), RZ(q), RZ(q+1).
/// `angles` supplies one angle per rotation slot in emission order.
pub fn build_tfxy_trotter(
    nb_qubits: usize,
    steps: usize,
    mut angles: impl FnMut() -> f64,
) -> Result<QuantumCircuit> {
    if nb_qubits < 2 {
        return Err(Error::InvalidQubitCount { nb_qubits });
    }
    let mut circuit = QuantumCircuit::new(nb_qubits)?;
    for _ in 0..steps {
        for layer_start in [0, 1] {
            let mut q = layer_start;
            while q + 1 < nb_qubits {
                circuit.push_back(Gate::rz(angles(), q))?;
                circuit.push_back(Gate::rz(angles(), q + 1))?;
                circuit.push_back(Gate::cnot(q, q + 1)?)?;
                circuit.push_back(Gate::rx(angles(), q))?;
                circuit.push_back(Gate::rz(angles(), q + 1))?;
                circuit.push_back(Gate::cnot(q, q + 1)?)?;
                circuit.push_back(Gate::rz(angles(), q))?;
                circuit.push_back(Gate::rz(angles(), q + 1))?;
                q += 2;
            }
        }
    }
    Ok(circuit)
}

/// Gate count of [`build_qft`] without building it.
pub fn qft_gate_count(nb_qubits: usize) -> usize {
    nb_qubits + nb_qubits * (nb_qubits - 1) / 2 + nb_qubits / 2
}

/// Gate count of [`build_tfxy_trotter`] without building it.
pub fn tfxy_gate_count(nb_qubits: usize, steps: usize) -> usize {
    let even_pairs = nb_qubits / 2;
    let odd_pairs = (nb_qubits - 1) / 2;
    steps * (even_pairs + odd_pairs) * 8
}
