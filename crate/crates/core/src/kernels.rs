//! Bit-mask gate-application kernels.
//!
//! Applying a `k`-qubit gate to an `n`-qubit state touches the amplitudes in
//! blocks of `2^k`: the block members differ only in the bits of the gate's
//! qubits. Each kernel is one flat loop over `j = 0..2^(n-k)` where the block
//! indices are recovered from `j` by splicing zero bits into the gate-qubit
//! positions with precomputed masks, then offsetting by the per-qubit strides.
//!
//! For a register of `n` qubits, qubit `q` occupies bit `n-q-1` of the
//! amplitude index (qubit 0 is the most significant bit), so its stride is
//! `2^(n-q-1)`.
//!
//! Loop iterations write pairwise-disjoint amplitude sets, which is what makes
//! the flat loop parallelizable: above [`parallel_cutoff`] iterations the loop
//! is split across the rayon thread pool.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::real::{Amplitude, Real};
use crate::state::StateVector;

/// Dense 2x2 gate matrix, row-major.
pub type Mat2<T> = [[Amplitude<T>; 2]; 2];

/// Dense 4x4 gate matrix, row-major.
pub type Mat4<T> = [[Amplitude<T>; 4]; 4];

/// Fall back to the serial loop below this many iterations (scheduling
/// overhead dominates for tiny registers).
pub const DEFAULT_PARALLEL_CUTOFF: usize = 1 << 12;

static PARALLEL_CUTOFF: AtomicUsize = AtomicUsize::new(DEFAULT_PARALLEL_CUTOFF);

/// Iteration count above which kernel loops run on the rayon pool.
pub fn parallel_cutoff() -> usize {
    PARALLEL_CUTOFF.load(Ordering::Relaxed)
}

/// Overrides the parallel cutoff. Results are identical either way; this only
/// moves the serial/parallel switch point.
pub fn set_parallel_cutoff(iterations: usize) {
    PARALLEL_CUTOFF.store(iterations, Ordering::Relaxed);
}

#[inline]
fn par_for<F>(jmax: usize, body: F)
where
    F: Fn(usize) + Send + Sync,
{
    if jmax > parallel_cutoff() {
        (0..jmax).into_par_iter().for_each(body);
    } else {
        (0..jmax).for_each(body);
    }
}

/// Raw pointer into the amplitude array, shared across loop workers.
///
/// SAFETY: each kernel maps distinct loop indices `j` to disjoint amplitude
/// index sets (see the coverage tests), so no element is accessed by two
/// iterations. The `&mut StateVector` receiver guarantees exclusivity for the
/// duration of the loop.
struct AmpPtr<T>(*mut Amplitude<T>);

unsafe impl<T> Send for AmpPtr<T> {}
unsafe impl<T> Sync for AmpPtr<T> {}

impl<T: Real> AmpPtr<T> {
    #[inline]
    unsafe fn read(&self, i: usize) -> Amplitude<T> {
        *self.0.add(i)
    }

    #[inline]
    unsafe fn write(&self, i: usize, value: Amplitude<T>) {
        *self.0.add(i) = value;
    }
}

fn check_qubit(qubit: usize, nb_qubits: usize) -> Result<()> {
    if qubit >= nb_qubits {
        return Err(Error::QubitOutOfRange { qubit, nb_qubits });
    }
    Ok(())
}

/// Index masks for a 1-qubit gate on qubit `target` of an `n`-qubit register.
///
/// `right` selects the loop-counter bits below the target position and `left`
/// the bits above it; splicing a zero bit in between yields the index of the
/// block member with the target bit clear.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Masks1Q {
    pub nb_qubits: usize,
    pub target: usize,
    pub left: usize,
    pub right: usize,
    /// Distance between the two paired amplitudes, `2^(n-target-1)`.
    pub stride: usize,
}

impl Masks1Q {
    pub fn new(nb_qubits: usize, target: usize) -> Result<Self> {
        check_qubit(target, nb_qubits)?;
        let stride = 1usize << (nb_qubits - target - 1);
        let right = stride - 1;
        let left = ((1usize << (nb_qubits - 1)) - 1) - right;
        Ok(Self {
            nb_qubits,
            target,
            left,
            right,
            stride,
        })
    }

    /// Number of 2x2 blocks, `2^(n-1)`.
    #[inline]
    pub fn pair_count(&self) -> usize {
        1usize << (self.nb_qubits - 1)
    }

    /// The amplitude pair touched by iteration `j`: the first index has the
    /// target bit clear, the second has it set.
    #[inline]
    pub fn pair(&self, j: usize) -> (usize, usize) {
        let a = (j & self.right) + ((j & self.left) << 1);
        (a, a + self.stride)
    }
}

/// Index masks for gates involving an ordered qubit pair `q0 < q1`.
///
/// The loop counter is spliced around both qubit positions: `right` selects
/// the bits below `q1`, `center` the bits between the two, `left` the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Masks2Q {
    pub nb_qubits: usize,
    pub q0: usize,
    pub q1: usize,
    pub left: usize,
    pub center: usize,
    pub right: usize,
    /// `2^(n-q0-1)`, the stride of the more significant qubit.
    pub stride0: usize,
    /// `2^(n-q1-1)`, the stride of the less significant qubit.
    pub stride1: usize,
}

impl Masks2Q {
    /// Accepts the qubits in either order and sorts internally.
    pub fn new(nb_qubits: usize, qa: usize, qb: usize) -> Result<Self> {
        check_qubit(qa, nb_qubits)?;
        check_qubit(qb, nb_qubits)?;
        if qa == qb {
            return Err(Error::DuplicateQubit { qubit: qa });
        }
        let q0 = qa.min(qb);
        let q1 = qa.max(qb);
        let stride0 = 1usize << (nb_qubits - q0 - 1);
        let stride1 = 1usize << (nb_qubits - q1 - 1);
        let right = stride1 - 1;
        let center = ((1usize << (nb_qubits - q0 - 2)) - 1) - right;
        let left = ((1usize << (nb_qubits - 2)) - 1) - center - right;
        Ok(Self {
            nb_qubits,
            q0,
            q1,
            left,
            center,
            right,
            stride0,
            stride1,
        })
    }

    /// Number of 4x4 blocks, `2^(n-2)`.
    #[inline]
    pub fn quad_count(&self) -> usize {
        1usize << (self.nb_qubits - 2)
    }

    /// Block base index: both qubit bits clear.
    #[inline]
    pub fn base(&self, j: usize) -> usize {
        (j & self.right) + ((j & self.center) << 1) + ((j & self.left) << 2)
    }

    /// The four amplitudes touched by iteration `j`, enumerating the qubit
    /// bits `|q0 q1>` in the order `00, 10, 01, 11`.
    #[inline]
    pub fn quad(&self, j: usize) -> (usize, usize, usize, usize) {
        let a = self.base(j);
        (
            a,
            a + self.stride0,
            a + self.stride1,
            a + self.stride0 + self.stride1,
        )
    }
}

/// A control qubit together with the value that activates the gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ControlSpec {
    pub control: usize,
    /// `true`: the gate fires when the control reads 1 (filled dot);
    /// `false`: when it reads 0 (open dot).
    pub state: bool,
}

impl ControlSpec {
    pub fn one(control: usize) -> Self {
        Self {
            control,
            state: true,
        }
    }

    pub fn zero(control: usize) -> Self {
        Self {
            control,
            state: false,
        }
    }
}

/// Applies a general 2x2 unitary to `target`, updating all `2^(n-1)` pairs.
pub fn apply_1q<T: Real>(state: &mut StateVector<T>, u: &Mat2<T>, target: usize) -> Result<()> {
    let masks = Masks1Q::new(state.nb_qubits(), target)?;
    let u = *u;
    let amps = AmpPtr(state.amplitudes_mut().as_mut_ptr());
    par_for(masks.pair_count(), |j| unsafe {
        let (a, b) = masks.pair(j);
        let xa = amps.read(a);
        let xb = amps.read(b);
        amps.write(a, u[0][0] * xa + u[0][1] * xb);
        amps.write(b, u[1][0] * xa + u[1][1] * xb);
    });
    Ok(())
}

/// Pauli-X: swaps the two amplitudes of every pair.
pub fn apply_x<T: Real>(state: &mut StateVector<T>, target: usize) -> Result<()> {
    let masks = Masks1Q::new(state.nb_qubits(), target)?;
    let amps = AmpPtr(state.amplitudes_mut().as_mut_ptr());
    par_for(masks.pair_count(), |j| unsafe {
        let (a, b) = masks.pair(j);
        let xa = amps.read(a);
        amps.write(a, amps.read(b));
        amps.write(b, xa);
    });
    Ok(())
}

/// Pauli-Y: swaps every pair with factors `-i` and `i`.
pub fn apply_y<T: Real>(state: &mut StateVector<T>, target: usize) -> Result<()> {
    let masks = Masks1Q::new(state.nb_qubits(), target)?;
    let amps = AmpPtr(state.amplitudes_mut().as_mut_ptr());
    par_for(masks.pair_count(), |j| unsafe {
        let (a, b) = masks.pair(j);
        let xa = amps.read(a);
        let xb = amps.read(b);
        amps.write(a, Amplitude::new(xb.im, -xb.re)); // -i * xb
        amps.write(b, Amplitude::new(-xa.im, xa.re)); // i * xa
    });
    Ok(())
}

/// Pauli-Z: negates only the set-bit half of every pair.
pub fn apply_z<T: Real>(state: &mut StateVector<T>, target: usize) -> Result<()> {
    let masks = Masks1Q::new(state.nb_qubits(), target)?;
    let amps = AmpPtr(state.amplitudes_mut().as_mut_ptr());
    par_for(masks.pair_count(), |j| unsafe {
        let (_, b) = masks.pair(j);
        amps.write(b, -amps.read(b));
    });
    Ok(())
}

/// Hadamard butterfly: `(xa, xb) -> ((xa+xb)/sqrt(2), (xa-xb)/sqrt(2))`.
pub fn apply_h<T: Real>(state: &mut StateVector<T>, target: usize) -> Result<()> {
    let masks = Masks1Q::new(state.nb_qubits(), target)?;
    let scale = T::from_f64(std::f64::consts::FRAC_1_SQRT_2);
    let amps = AmpPtr(state.amplitudes_mut().as_mut_ptr());
    par_for(masks.pair_count(), |j| unsafe {
        let (a, b) = masks.pair(j);
        let xa = amps.read(a);
        let xb = amps.read(b);
        amps.write(a, (xa + xb).scale(scale));
        amps.write(b, (xa - xb).scale(scale));
    });
    Ok(())
}

/// Applies a controlled 2x2 unitary, updating only the `2^(n-2)` pairs whose
/// control bit matches `ctrl.state`.
pub fn apply_ctrl_1q<T: Real>(
    state: &mut StateVector<T>,
    u: &Mat2<T>,
    ctrl: ControlSpec,
    target: usize,
) -> Result<()> {
    let n = state.nb_qubits();
    let masks = Masks2Q::new(n, ctrl.control, target)?;
    let target_stride = 1usize << (n - target - 1);
    let ctrl_shift = if ctrl.state {
        1usize << (n - ctrl.control - 1)
    } else {
        0
    };
    let u = *u;
    let amps = AmpPtr(state.amplitudes_mut().as_mut_ptr());
    par_for(masks.quad_count(), |j| unsafe {
        let a = masks.base(j) + ctrl_shift;
        let b = a + target_stride;
        let xa = amps.read(a);
        let xb = amps.read(b);
        amps.write(a, u[0][0] * xa + u[0][1] * xb);
        amps.write(b, u[1][0] * xa + u[1][1] * xb);
    });
    Ok(())
}

/// CNOT specialization of [`apply_ctrl_1q`]: swaps the selected pairs.
pub fn apply_cnot<T: Real>(
    state: &mut StateVector<T>,
    ctrl: ControlSpec,
    target: usize,
) -> Result<()> {
    let n = state.nb_qubits();
    let masks = Masks2Q::new(n, ctrl.control, target)?;
    let target_stride = 1usize << (n - target - 1);
    let ctrl_shift = if ctrl.state {
        1usize << (n - ctrl.control - 1)
    } else {
        0
    };
    let amps = AmpPtr(state.amplitudes_mut().as_mut_ptr());
    par_for(masks.quad_count(), |j| unsafe {
        let a = masks.base(j) + ctrl_shift;
        let b = a + target_stride;
        let xa = amps.read(a);
        amps.write(a, amps.read(b));
        amps.write(b, xa);
    });
    Ok(())
}

/// Reorders a matrix given in `|qa qb>` basis ordering into `|qb qa>` by
/// conjugating with the swap permutation (exchange of rows/columns 1 and 2).
fn swap_conjugate<T: Real>(u: &Mat4<T>) -> Mat4<T> {
    const P: [usize; 4] = [0, 2, 1, 3];
    let mut m = *u;
    for r in 0..4 {
        for c in 0..4 {
            m[r][c] = u[P[r]][P[c]];
        }
    }
    m
}

/// Applies a general 4x4 unitary to the qubit pair `(qa, qb)`, contiguous or
/// not, in either order.
///
/// `u` is expressed in the caller's basis ordering `|qa qb> = 00, 01, 10, 11`.
pub fn apply_2q<T: Real>(
    state: &mut StateVector<T>,
    u: &Mat4<T>,
    qa: usize,
    qb: usize,
) -> Result<()> {
    let masks = Masks2Q::new(state.nb_qubits(), qa, qb)?;
    // The quad enumerates |q0 q1> as (00, 10, 01, 11) with q0 = min(qa, qb),
    // which coincides with the caller's ordering read as |qb qa|. A matrix
    // given for qa < qb therefore needs its middle rows/columns exchanged;
    // one given for qa > qb lines up as-is.
    let m = if qa < qb { swap_conjugate(u) } else { *u };
    let amps = AmpPtr(state.amplitudes_mut().as_mut_ptr());
    par_for(masks.quad_count(), |j| unsafe {
        let (a, b, c, d) = masks.quad(j);
        let xa = amps.read(a);
        let xb = amps.read(b);
        let xc = amps.read(c);
        let xd = amps.read(d);
        amps.write(a, m[0][0] * xa + m[0][1] * xb + m[0][2] * xc + m[0][3] * xd);
        amps.write(b, m[1][0] * xa + m[1][1] * xb + m[1][2] * xc + m[1][3] * xd);
        amps.write(c, m[2][0] * xa + m[2][1] * xb + m[2][2] * xc + m[2][3] * xd);
        amps.write(d, m[3][0] * xa + m[3][1] * xb + m[3][2] * xc + m[3][3] * xd);
    });
    Ok(())
}

/// SWAP specialization of [`apply_2q`]: exchanges the two middle amplitudes
/// of every quad, leaving the outer two untouched.
pub fn apply_swap<T: Real>(state: &mut StateVector<T>, qa: usize, qb: usize) -> Result<()> {
    let masks = Masks2Q::new(state.nb_qubits(), qa, qb)?;
    let amps = AmpPtr(state.amplitudes_mut().as_mut_ptr());
    par_for(masks.quad_count(), |j| unsafe {
        let (_, b, c, _) = masks.quad(j);
        let xb = amps.read(b);
        amps.write(b, amps.read(c));
        amps.write(c, xb);
    });
    Ok(())
}

/// Splice masks for a loop counter with several removed bit positions.
///
/// `removed` holds distinct qubit indices sorted ascending; the result has
/// `removed.len() + 1` masks built with the same subtraction pattern as the
/// two-qubit case, one per contiguous run of free bits.
fn splice_masks(nb_qubits: usize, removed: &[usize]) -> Vec<usize> {
    let m = removed.len();
    let mut masks = vec![0usize; m + 1];
    let mut covered = 0usize;
    for (r, mask) in masks.iter_mut().take(m).enumerate() {
        // LSB position of the r-th lowest removed bit, minus the r bits
        // already spliced out below it.
        let lsb_pos = nb_qubits - 1 - removed[m - 1 - r];
        *mask = ((1usize << (lsb_pos - r)) - 1) - covered;
        covered += *mask;
    }
    masks[m] = ((1usize << (nb_qubits - m)) - 1) - covered;
    masks
}

#[inline]
fn splice_base(j: usize, masks: &[usize]) -> usize {
    masks
        .iter()
        .enumerate()
        .map(|(r, mask)| (j & mask) << r)
        .sum()
}

/// Applies a 2x2 unitary to `target` gated on every control matching its
/// required state. With `k` controls only `2^(n-1-k)` pairs are updated.
///
/// An empty control list degenerates to [`apply_1q`].
pub fn apply_multi_ctrl_1q<T: Real>(
    state: &mut StateVector<T>,
    u: &Mat2<T>,
    controls: &[ControlSpec],
    target: usize,
) -> Result<()> {
    if controls.is_empty() {
        return apply_1q(state, u, target);
    }
    let n = state.nb_qubits();
    check_qubit(target, n)?;
    let mut removed: Vec<usize> = controls.iter().map(|c| c.control).collect();
    removed.push(target);
    removed.sort_unstable();
    for pair in removed.windows(2) {
        if pair[0] == pair[1] {
            return Err(Error::DuplicateQubit { qubit: pair[0] });
        }
    }
    check_qubit(removed[removed.len() - 1], n)?;

    let masks = splice_masks(n, &removed);
    let target_stride = 1usize << (n - target - 1);
    let ctrl_shift: usize = controls
        .iter()
        .filter(|c| c.state)
        .map(|c| 1usize << (n - c.control - 1))
        .sum();
    let jmax = 1usize << (n - removed.len());
    let u = *u;
    let masks = &masks;
    let amps = AmpPtr(state.amplitudes_mut().as_mut_ptr());
    par_for(jmax, |j| unsafe {
        let a = splice_base(j, masks) + ctrl_shift;
        let b = a + target_stride;
        let xa = amps.read(a);
        let xb = amps.read(b);
        amps.write(a, u[0][0] * xa + u[0][1] * xb);
        amps.write(b, u[1][0] * xa + u[1][1] * xb);
    });
    Ok(())
}
