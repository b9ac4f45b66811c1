//! Dense vector operations used by the embedding-based rankers and
//! estimators.

use crate::num::Real;

/// Dot product of two equal-length vectors.
pub fn dot<R: Real>(a: &[R], b: &[R]) -> R {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// Euclidean norm.
pub fn norm<R: Real>(a: &[R]) -> R {
    dot(a, a).sqrt()
}

/// Squared Euclidean distance.
pub fn sq_dist<R: Real>(a: &[R], b: &[R]) -> R {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y) * (x - y))
        .sum()
}

/// Cosine similarity; zero when either vector has zero norm.
pub fn cosine<R: Real>(a: &[R], b: &[R]) -> R {
    let na = norm(a);
    let nb = norm(b);
    if na == R::zero() || nb == R::zero() {
        return R::zero();
    }
    dot(a, b) / (na * nb)
}

/// True iff every component is exactly zero.
pub fn is_zero<R: Real>(a: &[R]) -> bool {
    a.iter().all(|&x| x == R::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosine_identical_is_one() {
        let v = [1.0f64, 2.0, 3.0];
        assert!((cosine(&v, &v) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cosine_orthogonal_is_zero() {
        assert_eq!(cosine(&[1.0f64, 0.0], &[0.0, 2.0]), 0.0);
    }

    #[test]
    fn cosine_zero_vector_is_zero() {
        assert_eq!(cosine(&[0.0f64, 0.0], &[1.0, 2.0]), 0.0);
    }

    #[test]
    fn sq_dist_matches_hand_value() {
        assert_eq!(sq_dist(&[0.0f64, 0.0], &[3.0, 4.0]), 25.0);
    }
}
