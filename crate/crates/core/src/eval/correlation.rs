//! Spearman and Pearson correlation with t-approximation p-values.
//!
//! Spearman ranks both inputs with average-rank tie handling, then computes
//! the Pearson product-moment coefficient on the ranks. Both p-values use
//! the two-tailed t approximation `t = r·sqrt((n-2)/(1-r^2))` with `n-2`
//! degrees of freedom.

use crate::math::special::t_two_tailed_p;
use crate::num::Real;
use crate::{Error, Result};

/// A correlation coefficient with its p-value and sample size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Correlation<R> {
    pub value: R,
    pub p_value: R,
    pub n: usize,
}

fn check_inputs<R: Real>(xs: &[R], ys: &[R]) -> Result<()> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 3 {
        return Err(Error::TooFewPoints {
            need: 3,
            got: xs.len(),
        });
    }
    Ok(())
}

fn product_moment<R: Real>(xs: &[R], ys: &[R]) -> Result<R> {
    let n = R::from_usize_lossy(xs.len());
    let mean_x = xs.iter().copied().sum::<R>() / n;
    let mean_y = ys.iter().copied().sum::<R>() / n;
    let mut cov = R::zero();
    let mut var_x = R::zero();
    let mut var_y = R::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - mean_x;
        let dy = y - mean_y;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    if var_x == R::zero() || var_y == R::zero() {
        return Err(Error::ConstantInput);
    }
    let r = cov / (var_x * var_y).sqrt();
    // Clamp rounding spill outside [-1, 1].
    Ok(r.min(R::one()).max(-R::one()))
}

fn p_from_r<R: Real>(r: R, n: usize) -> R {
    let r = r.to_f64().unwrap_or(f64::NAN);
    let df = (n - 2) as f64;
    if (1.0 - r * r).abs() < 1e-15 {
        return R::zero();
    }
    let t = r * (df / (1.0 - r * r)).sqrt();
    R::from_f64_lossy(t_two_tailed_p(t, df))
}

/// Pearson product-moment correlation. Errors on length mismatch, fewer than
/// three points, or a constant input.
pub fn pearson<R: Real>(xs: &[R], ys: &[R]) -> Result<Correlation<R>> {
    check_inputs(xs, ys)?;
    let r = product_moment(xs, ys)?;
    Ok(Correlation {
        value: r,
        p_value: p_from_r(r, xs.len()),
        n: xs.len(),
    })
}

/// Average ranks (1-based); tied values share the mean of their positions.
pub fn average_ranks<R: Real>(xs: &[R]) -> Vec<R> {
    let n = xs.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| xs[a].partial_cmp(&xs[b]).expect("finite values"));
    let mut ranks = vec![R::zero(); n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j < n && xs[order[j]] == xs[order[i]] {
            j += 1;
        }
        // Mean of 1-based positions i+1 ..= j.
        let avg = R::from_usize_lossy(i + 1 + j) / R::from_f64_lossy(2.0);
        for &idx in &order[i..j] {
            ranks[idx] = avg;
        }
        i = j;
    }
    ranks
}

/// Spearman rank correlation. Same error conditions as [`pearson`].
pub fn spearman<R: Real>(xs: &[R], ys: &[R]) -> Result<Correlation<R>> {
    check_inputs(xs, ys)?;
    let rx = average_ranks(xs);
    let ry = average_ranks(ys);
    let rho = product_moment(&rx, &ry)?;
    Ok(Correlation {
        value: rho,
        p_value: p_from_r(rho, xs.len()),
        n: xs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_lists_have_rho_one() {
        let xs = [3.0f64, 1.0, 4.0, 1.5, 9.0];
        let s = spearman(&xs, &xs).unwrap();
        assert!((s.value - 1.0).abs() < 1e-12);
        assert!(s.p_value < 1e-6);
    }

    #[test]
    fn reversed_ranks_have_rho_minus_one() {
        let xs = [1.0f64, 2.0, 3.0, 4.0, 5.0];
        let ys = [5.0f64, 4.0, 3.0, 2.0, 1.0];
        let s = spearman(&xs, &ys).unwrap();
        assert!((s.value + 1.0).abs() < 1e-12);
    }

    #[test]
    fn linear_transform_has_r_one() {
        let xs = [1.0f64, 2.0, 3.0, 4.0];
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x + 1.0).collect();
        let p = pearson(&xs, &ys).unwrap();
        assert!((p.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spearman_invariant_under_monotone_transform() {
        let xs = [0.3f64, 2.0, 1.1, 5.5, 4.2, 0.9];
        let ys = [1.0f64, 0.5, 2.5, 0.1, 3.0, 2.9];
        let base = spearman(&xs, &ys).unwrap().value;
        let xs_t: Vec<f64> = xs.iter().map(|x| x.exp()).collect();
        let ys_t: Vec<f64> = ys.iter().map(|y| y.powi(3)).collect();
        assert_eq!(spearman(&xs_t, &ys).unwrap().value, base);
        assert_eq!(spearman(&xs, &ys_t).unwrap().value, base);
    }

    #[test]
    fn average_ranks_handle_ties() {
        let ranks = average_ranks(&[10.0f64, 20.0, 20.0, 30.0]);
        assert_eq!(ranks, vec![1.0, 2.5, 2.5, 4.0]);
    }

    #[test]
    fn constant_input_is_an_error() {
        let xs = [1.0f64, 1.0, 1.0];
        let ys = [1.0f64, 2.0, 3.0];
        assert!(matches!(spearman(&xs, &ys), Err(Error::ConstantInput)));
        assert!(matches!(pearson(&xs, &ys), Err(Error::ConstantInput)));
    }

    #[test]
    fn length_and_size_guards() {
        assert!(matches!(
            pearson(&[1.0f64, 2.0], &[1.0, 2.0, 3.0]),
            Err(Error::LengthMismatch(2, 3))
        ));
        assert!(matches!(
            spearman(&[1.0f64, 2.0], &[2.0, 1.0]),
            Err(Error::TooFewPoints { need: 3, got: 2 })
        ));
    }

    #[test]
    fn negating_one_input_flips_the_sign_exactly() {
        let xs = [0.2f64, 1.4, 0.9, 3.2, 2.8, 0.1, 1.0];
        let ys = [5.0f64, 3.0, 4.0, 1.0, 2.0, 6.0, 3.5];
        let s = spearman(&xs, &ys).unwrap();
        let neg: Vec<f64> = xs.iter().map(|x| -x).collect();
        let s_neg = spearman(&neg, &ys).unwrap();
        assert_eq!(s.value, -s_neg.value);
        assert_eq!(s.p_value, s_neg.p_value);

        let p = pearson(&xs, &ys).unwrap();
        let p_neg = pearson(&neg, &ys).unwrap();
        assert_eq!(p.value, -p_neg.value);
    }

    #[test]
    fn works_at_f32() {
        let xs = [1.0f32, 2.0, 3.0, 4.0];
        let ys = [2.0f32, 4.0, 6.0, 8.0];
        let p = pearson(&xs, &ys).unwrap();
        assert!((p.value - 1.0).abs() < 1e-6);
    }

    #[test]
    fn independent_noise_has_small_r_at_n_1000() {
        // Deterministic LCG noise; |r| stays under 0.2 at n = 1000.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let xs: Vec<f64> = (0..1000).map(|_| next()).collect();
        let ys: Vec<f64> = (0..1000).map(|_| next()).collect();
        let p = pearson(&xs, &ys).unwrap();
        assert!(p.value.abs() < 0.2, "r = {}", p.value);
    }

    /// Independent oracle: O(n^2) counting ranks plus the direct sum
    /// formulation of the product-moment coefficient.
    fn oracle_spearman(xs: &[f64], ys: &[f64]) -> f64 {
        let rank = |v: &[f64]| -> Vec<f64> {
            v.iter()
                .map(|&x| {
                    let less = v.iter().filter(|&&o| o < x).count() as f64;
                    let equal = v.iter().filter(|&&o| o == x).count() as f64;
                    less + (equal + 1.0) / 2.0
                })
                .collect()
        };
        let rx = rank(xs);
        let ry = rank(ys);
        let n = xs.len() as f64;
        let sx: f64 = rx.iter().sum();
        let sy: f64 = ry.iter().sum();
        let sxy: f64 = rx.iter().zip(&ry).map(|(a, b)| a * b).sum();
        let sxx: f64 = rx.iter().map(|a| a * a).sum();
        let syy: f64 = ry.iter().map(|b| b * b).sum();
        (n * sxy - sx * sy) / ((n * sxx - sx * sx).sqrt() * (n * syy - sy * sy).sqrt())
    }

    #[test]
    fn matches_counting_rank_oracle() {
        let mut state = 123456789u64;
        let mut next = move || {
            state = state.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for case in 0..50 {
            let n = 5 + (case % 20);
            let xs: Vec<f64> = (0..n).map(|_| (next() * 10.0).round() / 10.0).collect();
            let ys: Vec<f64> = (0..n).map(|_| (next() * 10.0).round() / 10.0).collect();
            let got = match spearman(&xs, &ys) {
                Ok(c) => c.value,
                Err(Error::ConstantInput) => continue,
                Err(e) => panic!("{e}"),
            };
            let want = oracle_spearman(&xs, &ys);
            assert!((got - want).abs() < 1e-9, "case {case}: {got} vs {want}");
        }
    }
}
