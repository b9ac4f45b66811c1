//! Scalar abstraction for the numeric kernels.
//!
//! Everything under [`crate::math`] is generic over [`Real`] so the same code
//! runs at `f32` (embedding space) and `f64` (statistics and reports). The
//! pipeline instantiates at [`crate::Score`].

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::AddAssign;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Sum<Self> + AddAssign + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion from `f64`; total for `f32` and `f64`.
    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("f64 converts to any Real")
    }

    /// Conversion from a count.
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_f64_lossy(n as f64)
    }
}

impl<T> Real for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + Sum<T>
        + AddAssign
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mean_of<R: Real>(xs: &[R]) -> R {
        xs.iter().copied().sum::<R>() / R::from_usize_lossy(xs.len())
    }

    #[test]
    fn works_for_both_widths() {
        assert_eq!(mean_of(&[1.0f32, 2.0, 3.0]), 2.0f32);
        assert_eq!(mean_of(&[1.0f64, 2.0, 3.0]), 2.0f64);
    }
}
