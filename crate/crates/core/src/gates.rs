//! Gate vocabulary: kinds, parameter conventions, and matrices.
//!
//! Conventions:
//! - `P(θ) = diag(1, e^{iθ})`; `CP` is its one-controlled version.
//! - `RX(θ) = [[cos(θ/2), -i sin(θ/2)], [-i sin(θ/2), cos(θ/2)]]`, and
//!   analogously for `RY`; `RZ(θ) = diag(e^{-iθ/2}, e^{iθ/2})`. These match
//!   openQASM 2.0 semantics.
//! - In a gate's qubit list, control qubits precede targets. Control states
//!   default to 1 (filled dot).

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::kernels::{ControlSpec, Mat2, Mat4};
use crate::oracle::DenseUnitary;
use crate::real::Real;

type C64 = Complex<f64>;

/// Dense 2x2 matrix in double precision.
pub type Matrix2 = Mat2<f64>;

/// Dense 4x4 matrix in double precision.
pub type Matrix4 = Mat4<f64>;

/// Tolerance of the unitarity check applied to user-provided matrices.
pub const UNITARITY_TOL: f64 = 1e-12;

/// The supported gate kinds. Angles are radians.
#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    H,
    X,
    Y,
    Z,
    /// Phase gate `diag(1, e^{iθ})`.
    P(f64),
    Rx(f64),
    Ry(f64),
    Rz(f64),
    /// Controlled phase gate.
    Cp(f64),
    Cnot,
    Cz,
    Swap,
    /// Toffoli (doubly-controlled X).
    Ccx,
    /// Arbitrary 1-qubit unitary.
    U2(Matrix2),
    /// Arbitrary 2-qubit unitary in the basis ordering of its qubit list.
    U4(Matrix4),
    /// Controlled arbitrary 1-qubit unitary.
    Cu2(Matrix2),
}

impl GateKind {
    /// Total number of qubits the kind acts on.
    pub fn arity(&self) -> usize {
        match self {
            GateKind::H
            | GateKind::X
            | GateKind::Y
            | GateKind::Z
            | GateKind::P(_)
            | GateKind::Rx(_)
            | GateKind::Ry(_)
            | GateKind::Rz(_)
            | GateKind::U2(_) => 1,
            GateKind::Cp(_)
            | GateKind::Cnot
            | GateKind::Cz
            | GateKind::Swap
            | GateKind::U4(_)
            | GateKind::Cu2(_) => 2,
            GateKind::Ccx => 3,
        }
    }

    /// How many of the leading qubits are controls.
    pub fn control_count(&self) -> usize {
        match self {
            GateKind::Cp(_) | GateKind::Cnot | GateKind::Cz | GateKind::Cu2(_) => 1,
            GateKind::Ccx => 2,
            _ => 0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::P(_) => "P",
            GateKind::Rx(_) => "RX",
            GateKind::Ry(_) => "RY",
            GateKind::Rz(_) => "RZ",
            GateKind::Cp(_) => "CP",
            GateKind::Cnot => "CNOT",
            GateKind::Cz => "CZ",
            GateKind::Swap => "SWAP",
            GateKind::Ccx => "CCX",
            GateKind::U2(_) => "U2",
            GateKind::U4(_) => "U4",
            GateKind::Cu2(_) => "CU2",
        }
    }

    /// The unitary acting on the non-control qubits: 2x2 for everything except
    /// SWAP and U4.
    fn target_matrix(&self) -> TargetMatrix {
        match self {
            GateKind::H => TargetMatrix::M2(h_matrix()),
            GateKind::X | GateKind::Cnot | GateKind::Ccx => TargetMatrix::M2(x_matrix()),
            GateKind::Y => TargetMatrix::M2(y_matrix()),
            GateKind::Z | GateKind::Cz => TargetMatrix::M2(z_matrix()),
            GateKind::P(theta) | GateKind::Cp(theta) => TargetMatrix::M2(p_matrix(*theta)),
            GateKind::Rx(theta) => TargetMatrix::M2(rx_matrix(*theta)),
            GateKind::Ry(theta) => TargetMatrix::M2(ry_matrix(*theta)),
            GateKind::Rz(theta) => TargetMatrix::M2(rz_matrix(*theta)),
            GateKind::U2(m) | GateKind::Cu2(m) => TargetMatrix::M2(*m),
            GateKind::Swap => TargetMatrix::M4(swap_matrix()),
            GateKind::U4(m) => TargetMatrix::M4(*m),
        }
    }
}

enum TargetMatrix {
    M2(Matrix2),
    M4(Matrix4),
}

pub fn h_matrix() -> Matrix2 {
    let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[s, s], [s, -s]]
}

pub fn x_matrix() -> Matrix2 {
    let o = C64::new(0.0, 0.0);
    let l = C64::new(1.0, 0.0);
    [[o, l], [l, o]]
}

pub fn y_matrix() -> Matrix2 {
    let o = C64::new(0.0, 0.0);
    [[o, C64::new(0.0, -1.0)], [C64::new(0.0, 1.0), o]]
}

pub fn z_matrix() -> Matrix2 {
    let o = C64::new(0.0, 0.0);
    [[C64::new(1.0, 0.0), o], [o, C64::new(-1.0, 0.0)]]
}

pub fn p_matrix(theta: f64) -> Matrix2 {
    let o = C64::new(0.0, 0.0);
    [[C64::new(1.0, 0.0), o], [o, C64::from_polar(1.0, theta)]]
}

pub fn rx_matrix(theta: f64) -> Matrix2 {
    let cos = C64::new((theta / 2.0).cos(), 0.0);
    let msin = C64::new(0.0, -(theta / 2.0).sin());
    [[cos, msin], [msin, cos]]
}

pub fn ry_matrix(theta: f64) -> Matrix2 {
    let cos = C64::new((theta / 2.0).cos(), 0.0);
    let sin = C64::new((theta / 2.0).sin(), 0.0);
    [[cos, -sin], [sin, cos]]
}

pub fn rz_matrix(theta: f64) -> Matrix2 {
    let o = C64::new(0.0, 0.0);
    [
        [C64::from_polar(1.0, -theta / 2.0), o],
        [o, C64::from_polar(1.0, theta / 2.0)],
    ]
}

pub fn swap_matrix() -> Matrix4 {
    let o = C64::new(0.0, 0.0);
    let l = C64::new(1.0, 0.0);
    [[l, o, o, o], [o, o, l, o], [o, l, o, o], [o, o, o, l]]
}

/// Converts a double-precision 2x2 matrix to the simulation precision.
pub fn mat2_cast<T: Real>(m: &Matrix2) -> Mat2<T> {
    let cv = crate::real::convert_amplitude::<f64, T>;
    [[cv(m[0][0]), cv(m[0][1])], [cv(m[1][0]), cv(m[1][1])]]
}

/// Converts a double-precision 4x4 matrix to the simulation precision.
pub fn mat4_cast<T: Real>(m: &Matrix4) -> Mat4<T> {
    let cv = crate::real::convert_amplitude::<f64, T>;
    let mut out = [[Complex::new(T::zero(), T::zero()); 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            out[r][c] = cv(m[r][c]);
        }
    }
    out
}

fn dagger2(m: &Matrix2) -> Matrix2 {
    [
        [m[0][0].conj(), m[1][0].conj()],
        [m[0][1].conj(), m[1][1].conj()],
    ]
}

fn dagger4(m: &Matrix4) -> Matrix4 {
    let mut out = *m;
    for r in 0..4 {
        for c in 0..4 {
            out[r][c] = m[c][r].conj();
        }
    }
    out
}

fn unitarity_deviation(rows: &[&[C64]]) -> f64 {
    let dim = rows.len();
    let mut dev = 0f64;
    for r in 0..dim {
        for c in 0..dim {
            // (U U†)[r][c]
            let acc: C64 = rows[r].iter().zip(rows[c]).map(|(a, b)| a * b.conj()).sum();
            let expected = if r == c { 1.0 } else { 0.0 };
            dev = dev.max((acc - expected).norm());
        }
    }
    dev
}

fn check_unitary(kind: &GateKind) -> Result<()> {
    let dev = match kind {
        GateKind::U2(m) | GateKind::Cu2(m) => unitarity_deviation(&[&m[0], &m[1]]),
        GateKind::U4(m) => unitarity_deviation(&[&m[0], &m[1], &m[2], &m[3]]),
        _ => return Ok(()),
    };
    if dev > UNITARITY_TOL {
        return Err(Error::NotUnitary { deviation: dev });
    }
    Ok(())
}

/// A gate kind bound to concrete qubits.
///
/// Validated on construction: the qubit count matches the kind's arity, the
/// indices are pairwise distinct, and provided matrices are unitary. Immutable
/// afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    kind: GateKind,
    qubits: Vec<usize>,
    control_states: Vec<bool>,
}

impl Gate {
    /// Builds a gate with all control states defaulting to 1.
    pub fn new(kind: GateKind, qubits: Vec<usize>) -> Result<Self> {
        let states = vec![true; kind.control_count()];
        Self::with_control_states(kind, qubits, states)
    }

    /// Builds a gate with explicit per-control activation values.
    pub fn with_control_states(
        kind: GateKind,
        qubits: Vec<usize>,
        control_states: Vec<bool>,
    ) -> Result<Self> {
        if qubits.len() != kind.arity() {
            return Err(Error::ArityMismatch {
                gate: kind.name().to_string(),
                expected: kind.arity(),
                got: qubits.len(),
            });
        }
        if control_states.len() != kind.control_count() {
            return Err(Error::ControlCountMismatch {
                gate: kind.name().to_string(),
                expected: kind.control_count(),
                got: control_states.len(),
            });
        }
        for (i, &q) in qubits.iter().enumerate() {
            if qubits[..i].contains(&q) {
                return Err(Error::DuplicateQubit { qubit: q });
            }
        }
        check_unitary(&kind)?;
        Ok(Self {
            kind,
            qubits,
            control_states,
        })
    }

    pub fn h(q: usize) -> Self {
        Self::new(GateKind::H, vec![q]).expect("1-qubit gate")
    }

    pub fn x(q: usize) -> Self {
        Self::new(GateKind::X, vec![q]).expect("1-qubit gate")
    }

    pub fn y(q: usize) -> Self {
        Self::new(GateKind::Y, vec![q]).expect("1-qubit gate")
    }

    pub fn z(q: usize) -> Self {
        Self::new(GateKind::Z, vec![q]).expect("1-qubit gate")
    }

    pub fn p(theta: f64, q: usize) -> Self {
        Self::new(GateKind::P(theta), vec![q]).expect("1-qubit gate")
    }

    pub fn rx(theta: f64, q: usize) -> Self {
        Self::new(GateKind::Rx(theta), vec![q]).expect("1-qubit gate")
    }

    pub fn ry(theta: f64, q: usize) -> Self {
        Self::new(GateKind::Ry(theta), vec![q]).expect("1-qubit gate")
    }

    pub fn rz(theta: f64, q: usize) -> Self {
        Self::new(GateKind::Rz(theta), vec![q]).expect("1-qubit gate")
    }

    pub fn cp(theta: f64, control: usize, target: usize) -> Result<Self> {
        Self::new(GateKind::Cp(theta), vec![control, target])
    }

    pub fn cnot(control: usize, target: usize) -> Result<Self> {
        Self::new(GateKind::Cnot, vec![control, target])
    }

    pub fn cz(control: usize, target: usize) -> Result<Self> {
        Self::new(GateKind::Cz, vec![control, target])
    }

    pub fn swap(qa: usize, qb: usize) -> Result<Self> {
        Self::new(GateKind::Swap, vec![qa, qb])
    }

    pub fn ccx(control_a: usize, control_b: usize, target: usize) -> Result<Self> {
        Self::new(GateKind::Ccx, vec![control_a, control_b, target])
    }

    pub fn u2(matrix: Matrix2, q: usize) -> Result<Self> {
        Self::new(GateKind::U2(matrix), vec![q])
    }

    pub fn u4(matrix: Matrix4, qa: usize, qb: usize) -> Result<Self> {
        Self::new(GateKind::U4(matrix), vec![qa, qb])
    }

    pub fn cu2(matrix: Matrix2, control: usize, target: usize) -> Result<Self> {
        Self::new(GateKind::Cu2(matrix), vec![control, target])
    }

    #[inline]
    pub fn kind(&self) -> &GateKind {
        &self.kind
    }

    /// Qubit list, controls first, in big-endian significance order.
    #[inline]
    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    #[inline]
    pub fn control_states(&self) -> &[bool] {
        &self.control_states
    }

    /// Control qubits paired with their activation values.
    pub fn controls(&self) -> Vec<ControlSpec> {
        self.qubits
            .iter()
            .zip(&self.control_states)
            .map(|(&control, &state)| ControlSpec { control, state })
            .collect()
    }

    /// The non-control qubits, in list order.
    pub fn targets(&self) -> &[usize] {
        &self.qubits[self.kind.control_count()..]
    }

    /// Largest qubit index used by this gate.
    pub fn max_qubit(&self) -> usize {
        *self.qubits.iter().max().expect("gates act on >= 1 qubit")
    }

    /// The adjoint gate on the same qubits: `dagger(g).matrix()` is the
    /// conjugate transpose of `g.matrix()`.
    pub fn dagger(&self) -> Self {
        let kind = match &self.kind {
            GateKind::P(theta) => GateKind::P(-theta),
            GateKind::Rx(theta) => GateKind::Rx(-theta),
            GateKind::Ry(theta) => GateKind::Ry(-theta),
            GateKind::Rz(theta) => GateKind::Rz(-theta),
            GateKind::Cp(theta) => GateKind::Cp(-theta),
            GateKind::U2(m) => GateKind::U2(dagger2(m)),
            GateKind::U4(m) => GateKind::U4(dagger4(m)),
            GateKind::Cu2(m) => GateKind::Cu2(dagger2(m)),
            self_inverse => self_inverse.clone(),
        };
        Self {
            kind,
            qubits: self.qubits.clone(),
            control_states: self.control_states.clone(),
        }
    }

    /// The gate's full unitary (2x2, 4x4, or 8x8) in the big-endian basis
    /// ordering of its qubit list, control embedding included.
    pub fn matrix(&self) -> DenseUnitary {
        let arity = self.kind.control_count()
            + match self.kind.target_matrix() {
                TargetMatrix::M2(_) => 1,
                TargetMatrix::M4(_) => 2,
            };
        debug_assert_eq!(arity, self.kind.arity());
        let dim = 1usize << arity;
        let target_bits = arity - self.kind.control_count();
        let block = 1usize << target_bits;

        // Required value of the control-bit prefix for the unitary to act.
        let active_prefix = self
            .control_states
            .iter()
            .fold(0usize, |acc, &s| (acc << 1) | s as usize);

        let mut full = DenseUnitary::identity(dim);
        for r in 0..block {
            for c in 0..block {
                let value = match self.kind.target_matrix() {
                    TargetMatrix::M2(m) => m[r][c],
                    TargetMatrix::M4(m) => m[r][c],
                };
                full.set(active_prefix * block + r, active_prefix * block + c, value);
            }
        }
        full
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn x_matrix_entries() {
        let m = Gate::x(0).matrix();
        assert_eq!(m.get(0, 0), C64::new(0.0, 0.0));
        assert_eq!(m.get(0, 1), C64::new(1.0, 0.0));
        assert_eq!(m.get(1, 0), C64::new(1.0, 0.0));
        assert_eq!(m.get(1, 1), C64::new(0.0, 0.0));
    }

    #[test]
    fn phase_gate_convention() {
        let theta = 0.7;
        let m = p_matrix(theta);
        assert_eq!(m[0][0], C64::new(1.0, 0.0));
        assert_eq!(m[1][0], C64::new(0.0, 0.0));
        assert!((m[1][1] - C64::from_polar(1.0, theta)).norm() < 1e-16);
    }

    #[test]
    fn zero_angle_rotation_is_identity() {
        let m = rz_matrix(0.0);
        assert_eq!(m[0][0], C64::new(1.0, 0.0));
        assert_eq!(m[1][1], C64::new(1.0, 0.0));
        assert_eq!(m[0][1], C64::new(0.0, 0.0));
    }

    #[test]
    fn hadamard_is_self_adjoint() {
        let g = Gate::h(2);
        assert_eq!(g.dagger(), g);
    }

    #[test]
    fn phase_dagger_negates_angle() {
        let g = Gate::p(0.3, 0);
        assert_eq!(*g.dagger().kind(), GateKind::P(-0.3));
    }

    #[test]
    fn u2_dagger_product_is_identity() {
        let u = crate::random::random_unitary2(5);
        let g = Gate::u2(u, 0).unwrap();
        let product = g.matrix().mul(&g.dagger().matrix());
        assert!(product.max_deviation_from_identity() < 1e-14);
    }

    #[test]
    fn dagger_inverts_every_kind() {
        let u2 = crate::random::random_unitary2(8);
        let u4 = crate::random::random_unitary4(9);
        let mut gates = vec![
            Gate::h(0),
            Gate::x(0),
            Gate::y(0),
            Gate::z(0),
            Gate::cnot(0, 1).unwrap(),
            Gate::cz(1, 0).unwrap(),
            Gate::swap(0, 1).unwrap(),
            Gate::ccx(0, 1, 2).unwrap(),
            Gate::u2(u2, 1).unwrap(),
            Gate::u4(u4, 0, 2).unwrap(),
            Gate::cu2(u2, 2, 0).unwrap(),
        ];
        for i in 0..100 {
            let theta = -PI + (i as f64) * (2.0 * PI / 99.0);
            gates.push(Gate::p(theta, 0));
            gates.push(Gate::rx(theta, 0));
            gates.push(Gate::ry(theta, 0));
            gates.push(Gate::rz(theta, 0));
            gates.push(Gate::cp(theta, 1, 0).unwrap());
        }
        for g in gates {
            let product = g.matrix().mul(&g.dagger().matrix());
            let dev = product.max_deviation_from_identity();
            assert!(dev < 1e-12, "{}: deviation {dev}", g.kind().name());
        }
    }

    #[test]
    fn construction_rejects_wrong_arity() {
        assert!(matches!(
            Gate::new(GateKind::H, vec![0, 1]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn construction_rejects_duplicate_qubits() {
        assert!(matches!(
            Gate::cnot(3, 3),
            Err(Error::DuplicateQubit { qubit: 3 })
        ));
    }

    #[test]
    fn construction_rejects_non_unitary_matrix() {
        let mut m = x_matrix();
        m[0][0] = C64::new(0.5, 0.0);
        assert!(matches!(Gate::u2(m, 0), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn toffoli_matrix_is_the_expected_permutation() {
        let m = Gate::ccx(0, 1, 2).unwrap().matrix();
        // Identity on the first six basis states, swap on the last two.
        for r in 0..6 {
            assert_eq!(m.get(r, r), C64::new(1.0, 0.0));
        }
        assert_eq!(m.get(6, 7), C64::new(1.0, 0.0));
        assert_eq!(m.get(7, 6), C64::new(1.0, 0.0));
        assert_eq!(m.get(6, 6), C64::new(0.0, 0.0));
        assert_eq!(m.get(7, 7), C64::new(0.0, 0.0));
    }

    #[test]
    fn zero_controlled_cnot_matrix() {
        let g = Gate::with_control_states(GateKind::Cnot, vec![0, 1], vec![false]).unwrap();
        let m = g.matrix();
        // Swaps |00> and |01>, fixes |10> and |11>.
        assert_eq!(m.get(0, 1), C64::new(1.0, 0.0));
        assert_eq!(m.get(1, 0), C64::new(1.0, 0.0));
        assert_eq!(m.get(2, 2), C64::new(1.0, 0.0));
        assert_eq!(m.get(3, 3), C64::new(1.0, 0.0));
    }
}
