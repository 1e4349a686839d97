//! Scalar abstraction for the solver core.
//!
//! Everything downstream of the catalog is written against [`Float`] so the
//! same formulas run at `f32` or `f64`. The shipped tolerances assume `f64`;
//! an `f32` caller should loosen the solver configs accordingly.

use std::fmt;

/// Floating-point scalar the solvers are generic over.
pub trait Float:
    num_traits::Float + num_traits::FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

impl Float for f32 {}
impl Float for f64 {}

/// Lift an `f64` literal into the working scalar type.
#[inline]
pub(crate) fn lit<T: Float>(x: f64) -> T {
    T::from_f64(x).expect("literal not representable in scalar type")
}

/// Lift a small integer (quantum number, count) into the working scalar type.
#[inline]
pub(crate) fn int<T: Float>(k: u32) -> T {
    T::from_u32(k).expect("integer not representable in scalar type")
}

/// `1 / sqrt(1 + x)` without intermediate overflow for large `x`.
#[inline]
pub(crate) fn inv_sqrt1p<T: Float>(x: T) -> T {
    (T::one() + x).sqrt().recip()
}

/// `1 - 1/sqrt(1 + x)` evaluated without cancellation for small `x`.
///
/// Identity: `1 - (1+x)^(-1/2) = x / ((1+x) + sqrt(1+x))`.
#[inline]
pub(crate) fn one_minus_inv_sqrt1p<T: Float>(x: T) -> T {
    let onep = T::one() + x;
    x / (onep + onep.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_one_minus_inv_sqrt1p_matches_naive_where_naive_is_safe() {
        for &x in &[0.5, 1.0, 3.0, 10.0] {
            let naive = 1.0 - 1.0 / (1.0f64 + x).sqrt();
            let stable = one_minus_inv_sqrt1p(x);
            assert!((naive - stable).abs() <= 1e-15 * naive);
        }
    }

    #[test]
    fn stable_form_keeps_precision_for_tiny_arguments() {
        // For x ~ 1e-12 the naive form loses half the digits; the stable
        // form must agree with the leading series x/2 - 3x^2/8.
        let x = 1e-12f64;
        let series = x / 2.0 - 3.0 * x * x / 8.0;
        let stable = one_minus_inv_sqrt1p(x);
        assert!(((stable - series) / series).abs() < 1e-14);
    }
}
