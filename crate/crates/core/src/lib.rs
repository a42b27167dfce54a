//! A state-vector quantum circuit simulator built around bit-mask gate kernels.
//!
//! The simulator keeps all `2^n` amplitudes of an `n`-qubit register in a dense
//! array and mutates them in place, one gate at a time. Every gate application
//! reduces to a single flat loop over small matvec blocks; the block indices are
//! computed with bit masks so that no nested loops or per-amplitude branching
//! are needed. Specialized kernels cover the common gates (Pauli, Hadamard,
//! CNOT, SWAP, multi-controlled), and generic 2x2 / 4x4 kernels handle
//! arbitrary unitaries, including 2-qubit gates on noncontiguous qubit pairs.
//!
//! Amplitudes are generic over the floating-point precision: the same kernels
//! instantiate for `f32` and `f64`.
//!
//! Qubit 0 is the most significant bit of an amplitude index: the basis state
//! `|q0 q1 ... q(n-1)>` lives at index `q0*2^(n-1) + q1*2^(n-2) + ... + q(n-1)`.
//!
//! # Example
//!
//! ```
//! use qsim_core::circuit::{build_qft, QuantumCircuit};
//! use qsim_core::state::StateVector;
//!
//! let circuit = build_qft(3).unwrap();
//! let mut state = StateVector::<f64>::basis_state(3, 0).unwrap();
//! circuit.simulate(&mut state).unwrap();
//! // The transform of |000> is the uniform superposition.
//! for amp in state.amplitudes() {
//!     assert!((amp.norm() - 1.0 / 8f64.sqrt()).abs() < 1e-12);
//! }
//! ```

pub mod circuit;
pub mod error;
pub mod gates;
pub mod kernels;
pub mod oracle;
pub mod qasm;
pub mod random;
pub mod real;
pub mod state;

pub use circuit::QuantumCircuit;
pub use error::{Error, Result};
pub use gates::{Gate, GateKind};
pub use real::{Amplitude, Real};
pub use state::StateVector;
