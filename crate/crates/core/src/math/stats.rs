//! Descriptive statistics over slices of scalars.
//!
//! Variance and standard deviation here are the population forms (divide by
//! `n`); the paired t-test in [`crate::eval::significance`] uses the sample
//! form and computes it locally.

use crate::num::Real;

/// Arithmetic mean. Returns zero for an empty slice.
pub fn mean<R: Real>(xs: &[R]) -> R {
    if xs.is_empty() {
        return R::zero();
    }
    xs.iter().copied().sum::<R>() / R::from_usize_lossy(xs.len())
}

/// Population variance (divide by `n`). Returns zero for fewer than 2 values.
pub fn population_variance<R: Real>(xs: &[R]) -> R {
    if xs.len() < 2 {
        return R::zero();
    }
    let m = mean(xs);
    let ss = xs.iter().map(|&x| (x - m) * (x - m)).sum::<R>();
    ss / R::from_usize_lossy(xs.len())
}

/// Population standard deviation; never negative.
pub fn population_stdev<R: Real>(xs: &[R]) -> R {
    population_variance(xs).max(R::zero()).sqrt()
}

/// Maximum of a nonempty slice.
pub fn max<R: Real>(xs: &[R]) -> R {
    xs.iter().copied().fold(R::neg_infinity(), R::max)
}

/// Minimum of a nonempty slice.
pub fn min<R: Real>(xs: &[R]) -> R {
    xs.iter().copied().fold(R::infinity(), R::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_and_variance() {
        let xs = [2.0f64, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0];
        assert_eq!(mean(&xs), 5.0);
        assert_eq!(population_variance(&xs), 4.0);
        assert_eq!(population_stdev(&xs), 2.0);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(mean::<f64>(&[]), 0.0);
        assert_eq!(population_variance(&[3.0f64]), 0.0);
        assert_eq!(population_stdev(&[3.0f64]), 0.0);
    }

    #[test]
    fn extrema() {
        let xs = [3.0f64, -1.0, 2.5];
        assert_eq!(max(&xs), 3.0);
        assert_eq!(min(&xs), -1.0);
    }
}
