//! Subsample-based significance testing between two estimators.
//!
//! Following the evaluation protocol, coefficients are recomputed on fixed
//! random subsample groups of reviews; the two estimators' per-group
//! coefficient lists are then compared with a paired two-tailed t-test.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::math::special::t_two_tailed_p;
use crate::{Error, Result, Score};

/// Draw `n_groups` subsample groups of `group_size` ids each, without
/// replacement within a group. Deterministic for a fixed RNG.
pub fn subsample_groups(
    sr_ids: &[String],
    n_groups: usize,
    group_size: usize,
    rng: &mut impl Rng,
) -> Vec<Vec<String>> {
    let size = group_size.min(sr_ids.len());
    (0..n_groups)
        .map(|_| {
            let mut ids = sr_ids.to_vec();
            let (sampled, _) = ids.partial_shuffle(rng, size);
            let mut group = sampled.to_vec();
            group.sort();
            group
        })
        .collect()
}

/// Paired two-tailed t-test p-value over matched observations. Identical
/// lists give p = 1; a constant nonzero shift gives p near 0.
pub fn paired_t_test(a: &[Score], b: &[Score]) -> Result<Score> {
    if a.len() != b.len() {
        return Err(Error::GroupCountMismatch(a.len(), b.len()));
    }
    let n = a.len();
    if n < 2 {
        return Err(Error::TooFewPoints { need: 2, got: n });
    }
    let diffs: Vec<Score> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let mean = diffs.iter().sum::<Score>() / n as Score;
    let ss: Score = diffs.iter().map(|d| (d - mean) * (d - mean)).sum();
    let sd = (ss / (n as Score - 1.0)).sqrt();
    if sd == 0.0 {
        // No variation in the differences: either the lists are identical
        // (no evidence of a difference) or uniformly shifted (certain one).
        return Ok(if mean == 0.0 { 1.0 } else { 0.0 });
    }
    let t = mean / (sd / (n as Score).sqrt());
    Ok(t_two_tailed_p(t, n as Score - 1.0))
}

/// Significance of the difference between two estimators' per-group
/// coefficients (computed on identical subsample groups).
pub fn significance_test(coeffs_a: &[Score], coeffs_b: &[Score]) -> Result<Score> {
    paired_t_test(coeffs_a, coeffs_b)
}
