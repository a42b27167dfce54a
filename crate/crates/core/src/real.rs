//! Floating-point precision abstraction.
//!
//! All state and kernel code is generic over [`Real`], with `f32` ("single",
//! ~7 decimal digits) and `f64` ("double", ~16 decimal digits) as the two
//! supported instantiations.

use num_complex::Complex;
use num_traits::{Float, FloatConst, NumAssign};

/// Scalar type an amplitude's real and imaginary parts are stored in.
pub trait Real:
    Float + FloatConst + NumAssign + std::iter::Sum + Send + Sync + std::fmt::Debug + 'static
{
    fn from_f64(value: f64) -> Self;
    fn to_f64(self) -> f64;
}

impl Real for f32 {
    #[inline]
    fn from_f64(value: f64) -> Self {
        value as f32
    }
    #[inline]
    fn to_f64(self) -> f64 {
        f64::from(self)
    }
}

impl Real for f64 {
    #[inline]
    fn from_f64(value: f64) -> Self {
        value
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
}

/// One complex amplitude of a state vector.
pub type Amplitude<T> = Complex<T>;

/// Converts a complex number between precisions through `f64`.
#[inline]
pub fn convert_amplitude<S: Real, D: Real>(amp: Amplitude<S>) -> Amplitude<D> {
    Amplitude::new(D::from_f64(amp.re.to_f64()), D::from_f64(amp.im.to_f64()))
}
