//! Uniform sampling of `S_n` and the empirical displacement distribution.
//!
//! Randomness comes from ChaCha8 seeded with the user seed; trial `t` reads
//! stream `t` of that generator, so every trial is a pure function of
//! `(seed, t)` and parallel runs reproduce sequential ones exactly.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{displacement_sum, hamming_distance, normalized_displacement, Permutation};
use crate::ExactRatio;

/// Default number of histogram bins.
pub const DEFAULT_BINS: usize = 50;

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Fisher-Yates on `1..=n` driven by `rng`.
pub fn shuffle_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    assert!(n >= 1);
    let mut image: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i as u64) as usize;
        image.swap(i, j);
    }
    Permutation::from_vec_unchecked(image)
}

/// Uniform permutation for trial `trial` under `seed`.
pub fn sample_trial(n: usize, seed: u64, trial: u64) -> Permutation {
    shuffle_with(n, &mut trial_rng(seed, trial))
}

/// Uniform permutation of `S_n`; identical `(n, seed)` gives identical output.
pub fn sample_uniform(n: usize, seed: u64) -> Permutation {
    sample_trial(n, seed, 0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: u64,
}

/// Summary of `trials` uniform samples of the displacement at size `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleStats {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    /// Exact sample mean of the displacement.
    pub mean_exact: ExactRatio,
    pub mean: f64,
    /// Lower-middle order statistic of the displacement.
    pub median: f64,
    pub histogram: Vec<HistogramBin>,
    /// `(ε, fraction of samples with |d/n - median/n| <= ε)`, ascending in ε.
    pub fractions: Vec<(f64, f64)>,
    /// Undivided displacement sums of the samples, sorted.
    sums: Vec<u64>,
}

impl SampleStats {
    /// Fraction of samples whose displacement lies strictly inside `(lo, hi)`.
    pub fn fraction_between(&self, lo: f64, hi: f64) -> f64 {
        let n = self.n as f64;
        let inside = self
            .sums
            .iter()
            .filter(|&&s| {
                let d = s as f64 / n;
                lo < d && d < hi
            })
            .count();
        inside as f64 / self.trials as f64
    }

    /// Sample standard deviation of the displacement.
    pub fn std_dev(&self) -> f64 {
        if self.trials < 2 {
            return 0.0;
        }
        let n = self.n as f64;
        let ss: f64 = self
            .sums
            .iter()
            .map(|&s| (s as f64 / n - self.mean).powi(2))
            .sum();
        (ss / (self.trials - 1) as f64).sqrt()
    }
}

/// Samples `trials` uniform permutations and summarizes their displacement.
pub fn empirical_stats(n: usize, trials: u64, seed: u64, epsilons: &[f64]) -> Result<SampleStats> {
    empirical_stats_with_bins(n, trials, seed, epsilons, DEFAULT_BINS)
}

pub fn empirical_stats_with_bins(
    n: usize,
    trials: u64,
    seed: u64,
    epsilons: &[f64],
    bins: usize,
) -> Result<SampleStats> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if trials == 0 {
        return Err(Error::OutOfRange {
            what: "trials",
            value: "0".into(),
            expected: "trials >= 1",
        });
    }
    if bins == 0 {
        return Err(Error::OutOfRange {
            what: "bins",
            value: "0".into(),
            expected: "bins >= 1",
        });
    }
    if let Some(bad) = epsilons.iter().find(|e| !e.is_finite() || **e < 0.0) {
        return Err(Error::OutOfRange {
            what: "epsilon",
            value: bad.to_string(),
            expected: "finite and nonnegative",
        });
    }

    let mut sums: Vec<u64> = (0..trials)
        .into_par_iter()
        .map(|t| displacement_sum(&sample_trial(n, seed, t)))
        .collect();
    sums.sort_unstable();

    let total: u128 = sums.iter().map(|&s| s as u128).sum();
    let mean_exact = ExactRatio::new(total.into(), (trials as u128 * n as u128).into());
    let nf = n as f64;
    let mean = total as f64 / (trials as f64 * nf);
    let median_sum = sums[((trials - 1) / 2) as usize];
    let median = median_sum as f64 / nf;

    let lo = sums[0] as f64 / nf;
    let hi = *sums.last().unwrap() as f64 / nf;
    let (lo, hi) = if hi > lo { (lo, hi) } else { (lo, lo + 1.0) };
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0u64; bins];
    for &s in &sums {
        let d = s as f64 / nf;
        let k = (((d - lo) / width) as usize).min(bins - 1);
        counts[k] += 1;
    }
    let histogram = counts
        .into_iter()
        .enumerate()
        .map(|(k, count)| HistogramBin {
            lo: lo + k as f64 * width,
            hi: if k + 1 == bins {
                hi
            } else {
                lo + (k + 1) as f64 * width
            },
            count,
        })
        .collect();

    // |s/n² - m/n²| <= ε  <=>  |s - m| <= ε n²
    let n2 = nf * nf;
    let mut eps: Vec<f64> = epsilons.to_vec();
    eps.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eps.dedup();
    let fractions = eps
        .into_iter()
        .map(|e| {
            let within = sums
                .iter()
                .filter(|&&s| (s.abs_diff(median_sum) as f64) <= e * n2)
                .count();
            (e, within as f64 / trials as f64)
        })
        .collect();

    Ok(SampleStats {
        n,
        trials,
        seed,
        mean_exact,
        mean,
        median,
        histogram,
        fractions,
        sums,
    })
}

/// Lower bound on the mass of the ε-neighbourhood of the median for a
/// 1-Lipschitz function on `S_n` with the normalized Hamming metric:
/// `1 - 2 c1 exp(-c2 ε² n)`, clamped at 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConcentrationBound {
    pub c1: f64,
    pub c2: f64,
}

impl Default for ConcentrationBound {
    fn default() -> Self {
        Self {
            c1: 2.0,
            c2: 1.0 / 64.0,
        }
    }
}

impl ConcentrationBound {
    pub fn bound(&self, epsilon: f64, n: usize) -> f64 {
        (1.0 - 2.0 * self.c1 * (-self.c2 * epsilon * epsilon * n as f64).exp()).max(0.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConcentrationRow {
    pub epsilon: f64,
    pub empirical: f64,
    pub bound: f64,
}

impl ConcentrationRow {
    pub fn holds(&self) -> bool {
        self.empirical >= self.bound
    }
}

/// Pairs each empirical ε-fraction with the concentration bound.
pub fn concentration_report(stats: &SampleStats) -> Vec<ConcentrationRow> {
    let bound = ConcentrationBound::default();
    stats
        .fractions
        .iter()
        .map(|&(epsilon, empirical)| ConcentrationRow {
            epsilon,
            empirical,
            bound: bound.bound(epsilon, stats.n),
        })
        .collect()
}

/// True iff `|d(p)/n - d(q)/n| <= hamming(p, q)` for every pair, exactly.
pub fn lipschitz_check<'a>(
    pairs: impl IntoIterator<Item = (&'a Permutation, &'a Permutation)>,
) -> Result<bool> {
    for (p, q) in pairs {
        let dist: ExactRatio = hamming_distance(p, q)?;
        let dp: ExactRatio = normalized_displacement(p);
        let dq: ExactRatio = normalized_displacement(q);
        let gap = if dp > dq { dp - dq } else { dq - dp };
        if gap > dist {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn sample_is_deterministic() {
        assert_eq!(sample_uniform(1, 7), Permutation::identity(1));
        assert_eq!(sample_uniform(5, 42), sample_uniform(5, 42));
        assert_eq!(sample_uniform(200, 42), sample_uniform(200, 42));
        assert_ne!(sample_trial(200, 42, 0), sample_trial(200, 42, 1));
    }

    #[test]
    fn pinned_output_for_seed_42() {
        // Freezes the generator and shuffle so a dependency bump that
        // changes the stream is caught.
        let p = sample_uniform(8, 42);
        let again = trial_rng(42, 0);
        assert_eq!(shuffle_with(8, &mut again.clone()), p);
        assert_eq!(p.to_string(), PINNED_SEED_42_N8);
    }

    const PINNED_SEED_42_N8: &str = "5 8 1 2 4 3 7 6";

    #[test]
    fn chi_square_uniform_on_s3() {
        let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();
        for t in 0..6000 {
            *counts
                .entry(sample_trial(3, 2024, t).into_image())
                .or_default() += 1;
        }
        assert_eq!(counts.len(), 6);
        let chi2: f64 = counts
            .values()
            .map(|&c| (c as f64 - 1000.0).powi(2) / 1000.0)
            .sum();
        // 5 degrees of freedom, p = 0.001
        assert!(chi2 < 20.515, "chi2 = {chi2}");
        for &c in counts.values() {
            assert!((850..=1150).contains(&c), "count {c}");
        }
    }

    #[test]
    fn two_element_group() {
        let s = empirical_stats(2, 20_000, 1, &[0.1]).unwrap();
        let ones = s.sums.iter().filter(|&&x| x == 2).count() as f64 / 20_000.0;
        assert!((ones - 0.5).abs() < 0.02, "{ones}");
        assert!((s.mean - 0.5).abs() < 0.02);
    }

    #[test]
    fn histogram_and_fractions_are_consistent() {
        let s = empirical_stats(30, 5000, 9, &[0.3, 0.01, 0.05, 0.5]).unwrap();
        assert_eq!(s.histogram.len(), DEFAULT_BINS);
        assert_eq!(s.histogram.iter().map(|b| b.count).sum::<u64>(), 5000);
        let eps: Vec<f64> = s.fractions.iter().map(|f| f.0).collect();
        assert_eq!(eps, vec![0.01, 0.05, 0.3, 0.5]);
        assert!(s.fractions.windows(2).all(|w| w[0].1 <= w[1].1));
        assert_eq!(s.fractions.last().unwrap().1, 1.0);
    }

    #[test]
    fn degenerate_histogram() {
        let s = empirical_stats(1, 10, 0, &[]).unwrap();
        assert_eq!(s.histogram[0].count, 10);
        assert_eq!(s.mean, 0.0);
        assert_eq!(s.median, 0.0);
    }

    #[test]
    fn input_validation() {
        assert!(empirical_stats(5, 0, 0, &[]).is_err());
        assert!(empirical_stats(0, 5, 0, &[]).is_err());
        assert!(empirical_stats(5, 5, 0, &[-0.1]).is_err());
        assert!(empirical_stats(5, 5, 0, &[f64::NAN]).is_err());
    }

    #[test]
    fn bound_examples() {
        let b = ConcentrationBound::default();
        assert_eq!(b.bound(1.0, 64), 0.0);
        assert_eq!(b.bound(0.02, 1000), 0.0);
        // 1 - 4 e^{-ε² n / 64} at ε = 0.5, n = 10⁴
        let v = b.bound(0.5, 10_000);
        assert!((v - (1.0 - 4.0 * (-(0.25 * 10_000.0) / 64.0f64).exp())).abs() < 1e-15);
        assert!(v > 0.99);
    }

    #[test]
    fn report_at_half_is_total() {
        let s = empirical_stats(17, 500, 3, &[0.5]).unwrap();
        let rows = concentration_report(&s);
        assert_eq!(rows[0].empirical, 1.0);
        assert!(rows[0].holds());
    }

    #[test]
    fn lipschitz_examples() {
        let id = Permutation::identity(2);
        let sw = Permutation::new(vec![2, 1]).unwrap();
        assert_eq!(lipschitz_check([(&id, &id)]), Ok(true));
        assert_eq!(lipschitz_check([(&id, &sw)]), Ok(true));
        let three = Permutation::identity(3);
        assert!(lipschitz_check([(&id, &three)]).is_err());
    }
}
