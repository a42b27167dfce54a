//! Error type shared by all simulator modules.

use thiserror::Error;

/// Errors reported by the simulator library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Qubit index outside `[0, nb_qubits)`.
    #[error("qubit index {qubit} out of range for a {nb_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, nb_qubits: usize },

    /// Basis-state index outside `[0, 2^n)`.
    #[error("basis index {index} out of range, valid range is 0..{size}")]
    BasisIndexOutOfRange { index: usize, size: usize },

    /// A register of zero qubits (or one too large to address) was requested.
    #[error("invalid qubit count {nb_qubits}: must be at least 1 and addressable")]
    InvalidQubitCount { nb_qubits: usize },

    /// Two state vectors of different sizes were combined.
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitCountMismatch { left: usize, right: usize },

    /// An operation received the same qubit index twice.
    #[error("qubit indices must be distinct, got {qubit} twice")]
    DuplicateQubit { qubit: usize },

    /// A user-provided matrix failed the unitarity check.
    #[error("matrix is not unitary: max deviation from identity is {deviation:e}")]
    NotUnitary { deviation: f64 },

    /// A gate was built with the wrong number of qubits for its kind.
    #[error("gate {gate} expects {expected} qubit(s), got {got}")]
    ArityMismatch {
        gate: String,
        expected: usize,
        got: usize,
    },

    /// A gate was built with the wrong number of control-state flags.
    #[error("gate {gate} expects {expected} control state(s), got {got}")]
    ControlCountMismatch {
        gate: String,
        expected: usize,
        got: usize,
    },

    /// A gate has no representation in the supported openQASM subset.
    #[error("gate {index} ({name}) cannot be serialized to openQASM")]
    QasmUnsupportedGate { index: usize, name: String },

    /// Malformed openQASM source.
    #[error("syntax error at {line}:{col}: {msg}")]
    QasmSyntax {
        line: usize,
        col: usize,
        msg: String,
    },

    /// A gate name outside the supported set.
    #[error("unknown gate '{name}' at {line}:{col}")]
    QasmUnknownGate {
        line: usize,
        col: usize,
        name: String,
    },

    /// A well-formed openQASM feature this simulator does not accept.
    #[error("unsupported feature at {line}:{col}: {feature}")]
    QasmUnsupportedFeature {
        line: usize,
        col: usize,
        feature: String,
    },

    /// Semantically invalid openQASM (bad register reference, bounds, ...).
    #[error("semantic error at {line}:{col}: {msg}")]
    QasmSemantic {
        line: usize,
        col: usize,
        msg: String,
    },

    /// Dense-matrix construction refused above the size guard.
    #[error("dense circuit matrix refused: {nb_qubits} qubits exceeds the guard of {guard}")]
    MatrixTooLarge { nb_qubits: usize, guard: usize },

    /// The host could not provide memory for the requested state vector.
    #[error("cannot allocate state vector of 2^{nb_qubits} amplitudes")]
    AllocationFailed { nb_qubits: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
