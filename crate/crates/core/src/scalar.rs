//! Scalar abstraction shared by every numeric type in the crate.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating-point scalar the library is generic over (`f32` or `f64`).
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Converts a count into this scalar type.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// A tolerance of at least `x`, widened for low-precision types.
    ///
    /// For `f64` every tolerance used in this crate is far above `64 * eps`,
    /// so this returns `x` unchanged.
    #[inline]
    fn tol(x: f64) -> Self {
        let floor = Self::epsilon() * Self::lit(64.0);
        Self::lit(x).max(floor)
    }
}

impl<T> Scalar for T where
    T: Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
}

#[cfg(test)]
pub(crate) fn c(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn is_finite<T: Scalar>(z: &Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Largest imaginary residue tolerated on a trace that must be real.
pub const IMAGINARY_TOLERANCE: f64 = 1e-10;

/// Real part of `z`, after checking that its imaginary part is negligible.
pub(crate) fn real_part<T: Scalar>(z: Complex<T>) -> crate::error::Result<T> {
    let limit = T::tol(IMAGINARY_TOLERANCE);
    if z.im.abs() > limit {
        return Err(crate::error::Error::ImaginaryResidue {
            imag: z.im.to_f64().unwrap_or(f64::NAN),
            limit: limit.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(z.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tol_keeps_f64_values() {
        assert_eq!(f64::tol(1e-12), 1e-12);
        assert!(f32::tol(1e-12) > 1e-6);
    }

    #[test]
    fn real_part_rejects_imaginary_residue() {
        assert_eq!(real_part(Complex::new(0.5, 1e-13)).unwrap(), 0.5);
        assert!(real_part(Complex::new(0.5, 1e-6)).is_err());
    }
}
