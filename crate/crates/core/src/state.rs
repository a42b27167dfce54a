//! Dense state-vector representation.

use crate::error::{Error, Result};
use crate::real::{Amplitude, Real};

/// The full quantum state of an `n`-qubit register: `2^n` complex amplitudes.
///
/// Indexing is big-endian: qubit 0 is the most significant bit of the
/// amplitude index, so `|q0 q1 ... q(n-1)>` is stored at
/// `q0*2^(n-1) + q1*2^(n-2) + ... + q(n-1)*2^0`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real> {
    nb_qubits: usize,
    amps: Vec<Amplitude<T>>,
}

fn checked_len(nb_qubits: usize) -> Result<usize> {
    if nb_qubits == 0 || nb_qubits >= usize::BITS as usize {
        return Err(Error::InvalidQubitCount { nb_qubits });
    }
    Ok(1usize << nb_qubits)
}

impl<T: Real> StateVector<T> {
    /// Builds the computational basis state `|index>` on `nb_qubits` qubits.
    pub fn basis_state(nb_qubits: usize, index: usize) -> Result<Self> {
        let size = checked_len(nb_qubits)?;
        if index >= size {
            return Err(Error::BasisIndexOutOfRange { index, size });
        }
        let mut amps = Vec::new();
        amps.try_reserve_exact(size)
            .map_err(|_| Error::AllocationFailed { nb_qubits })?;
        amps.resize(size, Amplitude::new(T::zero(), T::zero()));
        amps[index] = Amplitude::new(T::one(), T::zero());
        Ok(Self { nb_qubits, amps })
    }

    /// Wraps an explicit amplitude vector; the length must be `2^nb_qubits`.
    pub fn from_amplitudes(nb_qubits: usize, amps: Vec<Amplitude<T>>) -> Result<Self> {
        let size = checked_len(nb_qubits)?;
        if amps.len() != size {
            return Err(Error::QubitCountMismatch {
                left: size,
                right: amps.len(),
            });
        }
        Ok(Self { nb_qubits, amps })
    }

    /// Resets this vector to `|index>` without reallocating.
    pub fn set_basis_state(&mut self, index: usize) -> Result<()> {
        if index >= self.amps.len() {
            return Err(Error::BasisIndexOutOfRange {
                index,
                size: self.amps.len(),
            });
        }
        self.amps.fill(Amplitude::new(T::zero(), T::zero()));
        self.amps[index] = Amplitude::new(T::one(), T::zero());
        Ok(())
    }

    #[inline]
    pub fn nb_qubits(&self) -> usize {
        self.nb_qubits
    }

    /// Number of amplitudes, `2^nb_qubits`; never zero.
    #[allow(clippy::len_without_is_empty)]
    #[inline]
    pub fn len(&self) -> usize {
        self.amps.len()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Amplitude<T>] {
        &self.amps
    }

    #[inline]
    pub fn amplitudes_mut(&mut self) -> &mut [Amplitude<T>] {
        &mut self.amps
    }

    /// Euclidean norm, `sqrt(sum |amp|^2)`; 1 for any physical state.
    pub fn norm(&self) -> T {
        self.amps
            .iter()
            .map(|a| a.norm_sqr())
            .fold(T::zero(), |acc, x| acc + x)
            .sqrt()
    }

    /// Largest elementwise deviation `max_j |a[j] - b[j]|` between two states.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.nb_qubits != other.nb_qubits {
            return Err(Error::QubitCountMismatch {
                left: self.nb_qubits,
                right: other.nb_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max))
    }

    /// Converts the amplitudes to another precision through `f64`.
    pub fn cast<D: Real>(&self) -> StateVector<D> {
        StateVector {
            nb_qubits: self.nb_qubits,
            amps: self
                .amps
                .iter()
                .map(|a| crate::real::convert_amplitude(*a))
                .collect(),
        }
    }
}

/// Reconstructs an amplitude index from its big-endian bits.
///
/// `bits[0]` is qubit 0, the most significant bit.
pub fn index_from_bits(bits: &[u8]) -> usize {
    bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize)
}

/// Splits an amplitude index into its big-endian bits for `nb_qubits` qubits.
pub fn bits_from_index(index: usize, nb_qubits: usize) -> Vec<u8> {
    (0..nb_qubits)
        .map(|q| ((index >> (nb_qubits - q - 1)) & 1) as u8)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    type C64 = Complex<f64>;

    #[test]
    fn basis_state_one_qubit() {
        let s = StateVector::<f64>::basis_state(1, 0).unwrap();
        assert_eq!(s.amplitudes(), &[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
    }

    #[test]
    fn basis_state_places_single_amplitude() {
        let s = StateVector::<f64>::basis_state(3, 6).unwrap();
        for (j, amp) in s.amplitudes().iter().enumerate() {
            let expected = if j == 6 { 1.0 } else { 0.0 };
            assert_eq!(amp.re, expected);
            assert_eq!(amp.im, 0.0);
        }
    }

    #[test]
    fn basis_state_rejects_out_of_range_index() {
        let err = StateVector::<f64>::basis_state(2, 4).unwrap_err();
        assert_eq!(err, Error::BasisIndexOutOfRange { index: 4, size: 4 });
    }

    #[test]
    fn basis_state_rejects_zero_qubits() {
        assert!(StateVector::<f64>::basis_state(0, 0).is_err());
    }

    #[test]
    fn norm_of_basis_state_is_one() {
        let s = StateVector::<f64>::basis_state(3, 5).unwrap();
        assert_eq!(s.norm(), 1.0);
    }

    #[test]
    fn norm_of_zero_vector_is_zero() {
        let s = StateVector::<f64>::from_amplitudes(2, vec![C64::new(0.0, 0.0); 4]).unwrap();
        assert_eq!(s.norm(), 0.0);
    }

    #[test]
    fn norm_of_uniform_vector_is_one() {
        let amp = C64::new(1.0 / 8f64.sqrt(), 0.0);
        let s = StateVector::<f64>::from_amplitudes(3, vec![amp; 8]).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn max_abs_diff_of_identical_states_is_zero() {
        let s = StateVector::<f64>::basis_state(4, 9).unwrap();
        assert_eq!(s.max_abs_diff(&s).unwrap(), 0.0);
    }

    #[test]
    fn max_abs_diff_of_orthogonal_basis_states() {
        let a = StateVector::<f64>::basis_state(1, 0).unwrap();
        let b = StateVector::<f64>::basis_state(1, 1).unwrap();
        assert_eq!(a.max_abs_diff(&b).unwrap(), 1.0);
    }

    #[test]
    fn max_abs_diff_sees_single_differing_entry() {
        let a =
            StateVector::<f64>::from_amplitudes(1, vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)])
                .unwrap();
        let b =
            StateVector::<f64>::from_amplitudes(1, vec![C64::new(1.0, 0.0), C64::new(1e-13, 0.0)])
                .unwrap();
        assert_eq!(a.max_abs_diff(&b).unwrap(), 1e-13);
    }

    #[test]
    fn max_abs_diff_rejects_mismatched_sizes() {
        let a = StateVector::<f64>::basis_state(2, 0).unwrap();
        let b = StateVector::<f64>::basis_state(3, 0).unwrap();
        assert!(a.max_abs_diff(&b).is_err());
    }

    #[test]
    fn set_basis_state_reuses_storage() {
        let mut s = StateVector::<f32>::basis_state(3, 0).unwrap();
        s.set_basis_state(7).unwrap();
        assert_eq!(s.amplitudes()[7], Complex::new(1.0f32, 0.0));
        assert_eq!(s.amplitudes()[0], Complex::new(0.0f32, 0.0));
        assert!(s.set_basis_state(8).is_err());
    }

    #[test]
    fn state_vectors_move_between_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<StateVector<f32>>();
        assert_send_sync::<StateVector<f64>>();
    }

    #[test]
    fn index_bit_roundtrip_up_to_20_qubits() {
        for n in 1..=20 {
            // Exhaustive below 2^12, strided above to keep the test quick.
            let size = 1usize << n;
            let step = if n <= 12 { 1 } else { (size >> 12).max(1) };
            for j in (0..size).step_by(step) {
                assert_eq!(index_from_bits(&bits_from_index(j, n)), j);
            }
        }
    }
}
