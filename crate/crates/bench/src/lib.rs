//! Shared setup for the criterion benchmarks.

use qsim_core::gates::{mat2_cast, mat4_cast};
use qsim_core::kernels::{Mat2, Mat4};
use qsim_core::random;
use qsim_core::StateVector;

/// Register size the kernel benchmarks run at: large enough to engage the
/// parallel loop, small enough to fit comfortably in memory.
pub const BENCH_QUBITS: usize = 18;

pub fn bench_state(nb_qubits: usize) -> StateVector<f64> {
    random::random_state(nb_qubits, 0xB_E7C)
}

pub fn bench_unitary2() -> Mat2<f64> {
    mat2_cast(&random::random_unitary2(11))
}

pub fn bench_unitary4() -> Mat4<f64> {
    mat4_cast(&random::random_unitary4(17))
}
