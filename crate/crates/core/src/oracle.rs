//! Naive dense reference simulator used as ground truth in tests.
//!
//! This module deliberately shares no index arithmetic with the kernels: the
//! gate is applied by per-amplitude bit extraction against the gate's full
//! matrix, accepting the extra cost. Everything here runs in double precision
//! regardless of the state's precision.

use num_complex::Complex;

use crate::circuit::QuantumCircuit;
use crate::error::{Error, Result};
use crate::gates::Gate;
use crate::real::Real;
use crate::state::StateVector;

type C64 = Complex<f64>;

/// Largest register the dense circuit matrix is built for.
pub const FULL_MATRIX_GUARD: usize = 12;

/// Dense square complex matrix of dimension `2^k`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseUnitary {
    dim: usize,
    entries: Vec<C64>,
}

impl DenseUnitary {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![C64::new(0.0, 0.0); dim * dim];
        for r in 0..dim {
            entries[r * dim + r] = C64::new(1.0, 0.0);
        }
        Self { dim, entries }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        self.entries[row * self.dim + col] = value;
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let dim = self.dim;
        let mut out = Self {
            dim,
            entries: vec![C64::new(0.0, 0.0); dim * dim],
        };
        for r in 0..dim {
            for k in 0..dim {
                let lhs = self.get(r, k);
                if lhs == C64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..dim {
                    out.entries[r * dim + c] += lhs * rhs.get(k, c);
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let dim = self.dim;
        let mut out = self.clone();
        for r in 0..dim {
            for c in 0..dim {
                out.entries[r * dim + c] = self.get(c, r).conj();
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, vector: &[C64]) -> Vec<C64> {
        assert_eq!(vector.len(), self.dim);
        (0..self.dim)
            .map(|r| {
                (0..self.dim)
                    .map(|c| self.get(r, c) * vector[c])
                    .sum::<C64>()
            })
            .collect()
    }

    /// `max |(U U† - I)[r][c]|`, the unitarity defect.
    pub fn max_unitarity_defect(&self) -> f64 {
        self.mul(&self.dagger()).max_deviation_from_identity()
    }

    /// `max |(self - I)[r][c]|`.
    pub fn max_deviation_from_identity(&self) -> f64 {
        let mut dev = 0f64;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let expected = if r == c { 1.0 } else { 0.0 };
                dev = dev.max((self.get(r, c) - expected).norm());
            }
        }
        dev
    }
}

/// Applies `gate` to a double-precision amplitude vector by bit extraction.
///
/// For each output index, the bits at the gate's qubit positions select the
/// matrix row; the sum then runs over all input configurations of those bits
/// with every other bit held fixed.
fn apply_by_bit_extraction(amps: &[C64], gate: &Gate, nb_qubits: usize) -> Vec<C64> {
    let matrix = gate.matrix();
    let qubits = gate.qubits();
    let k = qubits.len();
    let configs = 1usize << k;

    let mut out = vec![C64::new(0.0, 0.0); amps.len()];
    for (index, slot) in out.iter_mut().enumerate() {
        // Row: the gate-qubit bits of this output index, list order.
        let mut row = 0usize;
        for &q in qubits {
            row = (row << 1) | ((index >> (nb_qubits - q - 1)) & 1);
        }
        let mut acc = C64::new(0.0, 0.0);
        for config in 0..configs {
            let mut source = index;
            for (pos, &q) in qubits.iter().enumerate() {
                let bit = (config >> (k - pos - 1)) & 1;
                let mask = 1usize << (nb_qubits - q - 1);
                source = (source & !mask) | (bit * mask);
            }
            acc += matrix.get(row, config) * amps[source];
        }
        *slot = acc;
    }
    out
}

fn check_gate_fits<T: Real>(state: &StateVector<T>, gate: &Gate) -> Result<()> {
    let nb_qubits = state.nb_qubits();
    if gate.max_qubit() >= nb_qubits {
        return Err(Error::QubitOutOfRange {
            qubit: gate.max_qubit(),
            nb_qubits,
        });
    }
    Ok(())
}

/// Out-of-place reference application of one gate.
pub fn reference_apply<T: Real>(state: &StateVector<T>, gate: &Gate) -> Result<StateVector<T>> {
    check_gate_fits(state, gate)?;
    let amps: Vec<C64> = state
        .amplitudes()
        .iter()
        .map(|a| crate::real::convert_amplitude(*a))
        .collect();
    let out = apply_by_bit_extraction(&amps, gate, state.nb_qubits());
    StateVector::from_amplitudes(
        state.nb_qubits(),
        out.into_iter()
            .map(|a| crate::real::convert_amplitude(a))
            .collect(),
    )
}

/// Folds [`reference_apply`] over a whole circuit.
pub fn reference_simulate<T: Real>(
    circuit: &QuantumCircuit,
    state: &StateVector<T>,
) -> Result<StateVector<T>> {
    let mut current = state.clone();
    for gate in circuit.gates() {
        current = reference_apply(&current, gate)?;
    }
    Ok(current)
}

/// The circuit's full `2^n x 2^n` unitary, built column by column.
///
/// Refused above [`FULL_MATRIX_GUARD`] qubits, where the dense product stops
/// being affordable.
pub fn full_matrix(circuit: &QuantumCircuit) -> Result<DenseUnitary> {
    let nb_qubits = circuit.nb_qubits();
    if nb_qubits > FULL_MATRIX_GUARD {
        return Err(Error::MatrixTooLarge {
            nb_qubits,
            guard: FULL_MATRIX_GUARD,
        });
    }
    let dim = 1usize << nb_qubits;
    let mut columns: Vec<Vec<C64>> = (0..dim)
        .map(|c| {
            let mut col = vec![C64::new(0.0, 0.0); dim];
            col[c] = C64::new(1.0, 0.0);
            col
        })
        .collect();
    for gate in circuit.gates() {
        for col in &mut columns {
            *col = apply_by_bit_extraction(col, gate, nb_qubits);
        }
    }
    let mut out = DenseUnitary::identity(dim);
    for (c, col) in columns.iter().enumerate() {
        for (r, value) in col.iter().enumerate() {
            out.set(r, c, *value);
        }
    }
    Ok(out)
}
