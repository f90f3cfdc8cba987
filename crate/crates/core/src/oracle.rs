//! Ground truth by exhaustive enumeration of `S_n`.
//!
//! Statistics are recomputed here from their definitions on integer keys
//! (sums and products of gaps) rather than through the closed forms or the
//! shortcuts used elsewhere in the crate. Work is split by first element
//! across threads; each worker walks its block in lexicographic order and
//! the merged reports are sorted, so results do not depend on scheduling.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::product::ProductValue;
use crate::scalar::Scalar;
use crate::ExactRatio;

/// Enumeration limit used unless a caller opts into more.
pub const DEFAULT_LIMIT: usize = 9;
/// Absolute ceiling on `n` for enumeration.
pub const HARD_LIMIT: usize = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statistic {
    Displacement,
    AdditiveStretch,
    MultiplicativeStretch,
    /// Maximized over n-cycles rather than permutations.
    CycleStat,
}

impl Statistic {
    pub fn name(self) -> &'static str {
        match self {
            Statistic::Displacement => "displacement",
            Statistic::AdditiveStretch => "additive-stretch",
            Statistic::MultiplicativeStretch => "multiplicative-stretch",
            Statistic::CycleStat => "cycle-stat",
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "displacement" | "disp" => Ok(Statistic::Displacement),
            "additive-stretch" | "s-plus" => Ok(Statistic::AdditiveStretch),
            "multiplicative-stretch" | "s-star" => Ok(Statistic::MultiplicativeStretch),
            "cycle-stat" => Ok(Statistic::CycleStat),
            other => Err(Error::Parse {
                token: other.to_string(),
                reason: "unknown statistic".into(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StatValue {
    Ratio(ExactRatio),
    Product(ProductValue),
}

impl fmt::Display for StatValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatValue::Ratio(r) => write!(f, "{r}"),
            StatValue::Product(p) => write!(f, "{p}"),
        }
    }
}

/// Maximum of a statistic over `S_n` and every permutation attaining it.
///
/// For [`Statistic::CycleStat`] each maximizing cycle is listed once, as the
/// permutation obtained by starting it at 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArgmaxReport {
    pub n: usize,
    pub statistic: Statistic,
    pub max: StatValue,
    pub maximizers: Vec<Permutation>,
    pub count: usize,
}

/// Calls `visit` on every permutation of `1..=n` whose first element is
/// `first`, in lexicographic order.
fn for_each_with_first(n: usize, first: usize, mut visit: impl FnMut(&[usize])) {
    let mut image: Vec<usize> = std::iter::once(first)
        .chain((1..=n).filter(|&v| v != first))
        .collect();
    loop {
        visit(&image);
        if !next_permutation(&mut image[1..]) {
            break;
        }
    }
}

/// Advances `v` to its lexicographic successor; false when `v` was last.
pub fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Calls `visit` on every permutation of `S_n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    for first in 1..=n {
        for_each_with_first(n, first, &mut visit);
    }
}

fn disp_key(img: &[usize]) -> u128 {
    img.iter()
        .enumerate()
        .map(|(k, &v)| (k + 1).abs_diff(v) as u128)
        .sum()
}

fn gap_sum_key(img: &[usize]) -> u128 {
    img.windows(2).map(|w| w[0].abs_diff(w[1]) as u128).sum()
}

fn gap_product_key(img: &[usize]) -> u128 {
    img.windows(2)
        .map(|w| w[0].abs_diff(w[1]) as u128)
        .product()
}

/// `max over j of the product of all jump lengths except j`, evaluated by
/// trying every exclusion. `img` lists the cycle in order.
fn cycle_stat_key(img: &[usize]) -> u128 {
    let n = img.len();
    if n == 1 {
        return 1;
    }
    let lengths: Vec<u128> = (0..n)
        .map(|k| img[k].abs_diff(img[(k + 1) % n]) as u128)
        .collect();
    (0..n)
        .map(|skip| {
            lengths
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != skip)
                .map(|(_, &l)| l)
                .product()
        })
        .max()
        .unwrap()
}

#[derive(Default)]
struct Best {
    key: u128,
    maximizers: Vec<Vec<usize>>,
}

impl Best {
    fn offer(&mut self, key: u128, img: &[usize]) {
        if key > self.key || self.maximizers.is_empty() {
            self.key = key;
            self.maximizers.clear();
        }
        if key == self.key {
            self.maximizers.push(img.to_vec());
        }
    }

    fn merge(mut self, other: Best) -> Best {
        if other.maximizers.is_empty() {
            return self;
        }
        if self.maximizers.is_empty() || other.key > self.key {
            return other;
        }
        if other.key == self.key {
            self.maximizers.extend(other.maximizers);
        }
        self
    }
}

/// Enumeration with a configurable limit on `n`.
#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    limit: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self {
            limit: DEFAULT_LIMIT,
        }
    }
}

impl Oracle {
    /// Raises (or lowers) the enumeration limit, up to [`HARD_LIMIT`].
    pub fn with_limit(limit: usize) -> Result<Self> {
        if limit > HARD_LIMIT {
            return Err(Error::EnumerationLimit {
                n: limit,
                limit: HARD_LIMIT,
            });
        }
        Ok(Self { limit })
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    fn check(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if n > self.limit {
            return Err(Error::EnumerationLimit {
                n,
                limit: self.limit,
            });
        }
        Ok(())
    }

    pub fn argmax(&self, n: usize, statistic: Statistic) -> Result<ArgmaxReport> {
        self.check(n)?;
        if n < 2
            && matches!(
                statistic,
                Statistic::AdditiveStretch | Statistic::MultiplicativeStretch
            )
        {
            return Err(Error::Undefined {
                statistic: statistic.name(),
                n,
                min: 2,
            });
        }
        let key: fn(&[usize]) -> u128 = match statistic {
            Statistic::Displacement => disp_key,
            Statistic::AdditiveStretch => gap_sum_key,
            Statistic::MultiplicativeStretch => gap_product_key,
            Statistic::CycleStat => cycle_stat_key,
        };
        // Cycles are enumerated once each, as the orders starting at 1.
        let firsts: Vec<usize> = match statistic {
            Statistic::CycleStat => vec![1],
            _ => (1..=n).collect(),
        };
        let blocks: Vec<(usize, usize)> = if statistic == Statistic::CycleStat && n >= 3 {
            // Split the single block on the second element instead.
            (2..=n).map(|second| (1, second)).collect()
        } else {
            firsts.into_iter().map(|f| (f, 0)).collect()
        };
        let best = blocks
            .into_par_iter()
            .map(|(first, second)| {
                let mut best = Best::default();
                if second == 0 {
                    for_each_with_first(n, first, |img| best.offer(key(img), img));
                } else {
                    let mut img: Vec<usize> = [first, second]
                        .into_iter()
                        .chain((1..=n).filter(|&v| v != first && v != second))
                        .collect();
                    loop {
                        best.offer(key(&img), &img);
                        if !next_permutation(&mut img[2..]) {
                            break;
                        }
                    }
                }
                best
            })
            .reduce(Best::default, Best::merge);

        let mut maximizers: Vec<Permutation> = best
            .maximizers
            .into_iter()
            .map(Permutation::from_vec_unchecked)
            .collect();
        maximizers.sort_unstable();
        let max = match statistic {
            Statistic::Displacement => {
                StatValue::Ratio(ExactRatio::from_ratio(best.key, n as u128))
            }
            Statistic::AdditiveStretch => {
                StatValue::Ratio(ExactRatio::from_ratio(best.key, (n - 1) as u128))
            }
            Statistic::MultiplicativeStretch | Statistic::CycleStat => StatValue::Product(
                ProductValue::integer(BigUint::from(best.key), (n - 1).max(1) as u32),
            ),
        };
        Ok(ArgmaxReport {
            n,
            statistic,
            max,
            count: maximizers.len(),
            maximizers,
        })
    }

    /// Exact mean of the displacement over all `n!` permutations.
    pub fn average_displacement(&self, n: usize) -> Result<ExactRatio> {
        self.check(n)?;
        let (total, count) = (1..=n)
            .into_par_iter()
            .map(|first| {
                let mut total = 0u128;
                let mut count = 0u128;
                for_each_with_first(n, first, |img| {
                    total += disp_key(img);
                    count += 1;
                });
                (total, count)
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        Ok(ExactRatio::from_ratio(total, count * n as u128))
    }

    /// Every permutation of `S_n` satisfying `pred`, sorted.
    pub fn filter(
        &self,
        n: usize,
        pred: impl Fn(&Permutation) -> bool + Sync,
    ) -> Result<Vec<Permutation>> {
        self.check(n)?;
        let mut out: Vec<Permutation> = (1..=n)
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut block = Vec::new();
                for_each_with_first(n, first, |img| {
                    let p = Permutation::from_vec_unchecked(img.to_vec());
                    if pred(&p) {
                        block.push(p);
                    }
                });
                block
            })
            .collect();
        out.sort_unstable();
        Ok(out)
    }
}

/// [`Oracle::argmax`] at the default limit.
pub fn brute_argmax(n: usize, statistic: Statistic) -> Result<ArgmaxReport> {
    Oracle::default().argmax(n, statistic)
}

/// [`Oracle::average_displacement`] at the default limit.
pub fn brute_average_displacement(n: usize) -> Result<ExactRatio> {
    Oracle::default().average_displacement(n)
}
