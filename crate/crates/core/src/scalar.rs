//! Scalar abstraction shared by every solver in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive};
use rustfft::FftNum;

/// Floating point scalar the solvers are generic over: `f32` or `f64`.
///
/// `FftNum` brings `Signed` along with it, so `abs`/`signum` are ambiguous as
/// methods on a generic `T: Real`; call them as `Float::abs(x)`.
pub trait Real:
    Float + FloatConst + FromPrimitive + FftNum + Default + Display + LowerExp + Debug
{
    /// Machine-level tolerance used when classifying values as "zero".
    fn tiny() -> Self;
}

impl Real for f32 {
    fn tiny() -> Self {
        1e-6
    }
}

impl Real for f64 {
    fn tiny() -> Self {
        1e-14
    }
}

/// Converts an `f64` literal into the working scalar.
#[inline]
pub fn lit<T: Real>(value: f64) -> T {
    T::from_f64(value).expect("f64 literal representable in scalar type")
}

/// Converts a count into the working scalar.
#[inline]
pub fn count<T: Real>(value: usize) -> T {
    T::from_usize(value).expect("count representable in scalar type")
}

#[inline]
pub fn abs<T: Real>(value: T) -> T {
    Float::abs(value)
}

/// Maximum absolute value of a slice, NaN-propagating.
pub fn max_abs<T: Real>(values: &[T]) -> T {
    values.iter().fold(T::zero(), |acc, &v| {
        let a = abs(v);
        if a.is_nan() || acc.is_nan() {
            T::nan()
        } else if a > acc {
            a
        } else {
            acc
        }
    })
}
