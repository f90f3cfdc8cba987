//! Stretch of a permutation with respect to a family of index sets.
//!
//! For a family `A_1, ..., A_k` of subsets of `{1..n}`, each member
//! contributes the factor `diam(p(A)) / diam(A)`. The additive stretch is the
//! arithmetic mean of those factors and the multiplicative stretch their
//! geometric mean. Over the consecutive-pairs family `{{i, i+1}}` both reduce
//! to means of the gaps `|p(i) - p(i+1)|`, and their maxima and maximizers
//! are known in closed form.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::cycle::{cycle_to_perm, CycleWithStart};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::product::ProductValue;
use crate::scalar::Scalar;

/// A nonempty family of index sets, each with at least two elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalFamily {
    n: usize,
    sets: Vec<Vec<usize>>,
}

impl IntervalFamily {
    pub fn new(n: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::InvalidFamily("family is empty".into()));
        }
        for (k, set) in sets.iter().enumerate() {
            let distinct: BTreeSet<usize> = set.iter().copied().collect();
            if distinct.len() < 2 {
                return Err(Error::InvalidFamily(format!(
                    "member {} has fewer than two distinct elements",
                    k + 1
                )));
            }
            if let Some(&bad) = distinct.iter().find(|&&x| x == 0 || x > n) {
                return Err(Error::InvalidFamily(format!(
                    "member {} contains {bad}, outside 1..={n}",
                    k + 1
                )));
            }
        }
        Ok(Self { n, sets })
    }

    /// The consecutive pairs `{i, i + 1}`, `1 <= i < n`.
    pub fn consecutive_pairs(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| vec![i, i + 1]).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    fn check(&self, p: &Permutation) -> Result<()> {
        if self.n != p.len() {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: p.len(),
            });
        }
        Ok(())
    }

    /// `(diam(p(A)), diam(A))` per member.
    fn diameters<'a>(&'a self, p: &'a Permutation) -> impl Iterator<Item = (usize, usize)> + 'a {
        self.sets.iter().map(move |set| {
            let (lo, hi) = min_max(set.iter().copied());
            let (img_lo, img_hi) = min_max(set.iter().map(|&i| p.at(i)));
            (img_hi - img_lo, hi - lo)
        })
    }
}

fn min_max(values: impl Iterator<Item = usize>) -> (usize, usize) {
    values.fold((usize::MAX, 0), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// Arithmetic mean of `diam(p(A)) / diam(A)` over the family.
pub fn stretch_additive<T: Scalar>(family: &IntervalFamily, p: &Permutation) -> Result<T> {
    family.check(p)?;
    let sum = family.diameters(p).fold(T::zero(), |acc, (img, dom)| {
        acc + T::from_ratio(img as u128, dom as u128)
    });
    Ok(sum / T::from_integer(family.len() as u128))
}

/// Geometric mean of `diam(p(A)) / diam(A)` over the family, kept exact.
pub fn stretch_multiplicative(family: &IntervalFamily, p: &Permutation) -> Result<ProductValue> {
    family.check(p)?;
    let (num, den) = family.diameters(p).fold(
        (BigUint::from(1u32), BigUint::from(1u32)),
        |(num, den), (img, dom)| (num * img, den * dom),
    );
    Ok(ProductValue::ratio(num, den, family.len() as u32))
}

/// `|p(i) - p(i + 1)|` for `1 <= i < n`.
pub fn consecutive_gaps(p: &Permutation) -> Vec<usize> {
    p.image().windows(2).map(|w| w[0].abs_diff(w[1])).collect()
}

fn require_pairs(statistic: &'static str, n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::Undefined {
            statistic,
            n,
            min: 2,
        })
    } else {
        Ok(())
    }
}

/// Maximum of the consecutive-pairs additive stretch over `S_n`:
/// `(2m² - 1)/(2m - 1)` for `n = 2m` and `(2m² + 2m - 1)/(2m)` for
/// `n = 2m + 1`.
pub fn max_additive_stretch<T: Scalar>(n: usize) -> Result<T> {
    require_pairs("additive stretch", n)?;
    let m = (n / 2) as u128;
    Ok(if n.is_multiple_of(2) {
        T::from_ratio(2 * m * m - 1, 2 * m - 1)
    } else {
        T::from_ratio(2 * m * m + 2 * m - 1, 2 * m)
    })
}

/// True when consecutive images alternate between `{1..split}` and
/// `{split+1..n}`.
fn oscillates(p: &Permutation, split: usize) -> bool {
    p.image()
        .windows(2)
        .all(|w| (w[0] <= split) != (w[1] <= split))
}

fn ends_in(p: &Permutation, a: usize, b: usize) -> bool {
    let ends = (p.at(1), p.at(p.len()));
    ends == (a, b) || ends == (b, a)
}

/// Characterization of the additive-stretch maximizers.
///
/// For `n = 2m`: `p` oscillates between `{1..m}` and `{m+1..n}` and its end
/// values are `m` and `m + 1`. For `n = 2m + 1`: either it oscillates between
/// `{1..m}` and `{m+1..n}` with end values `m + 1`, `m + 2`, or it
/// oscillates between `{1..m+1}` and `{m+2..n}` with end values `m`, `m + 1`.
///
/// Returns false for `n < 2`, where the stretch is undefined.
pub fn is_additive_maximizer(p: &Permutation) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let m = n / 2;
    if n.is_multiple_of(2) {
        oscillates(p, m) && ends_in(p, m, m + 1)
    } else {
        (oscillates(p, m) && ends_in(p, m + 1, m + 2))
            || (oscillates(p, m + 1) && ends_in(p, m, m + 1))
    }
}

/// Largest product of `n` positive integers summing to `s`, together with
/// the balanced multiset attaining it (sorted ascending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedPartition {
    pub value: BigUint,
    pub parts: Vec<usize>,
}

/// `M_{n,s} = ⌊a⌋^k · ⌈a⌉^(n-k)` with `a = s/n` and `k = n⌈a⌉ - s`.
pub fn max_product_partition(n: usize, s: usize) -> Result<BalancedPartition> {
    if n == 0 || s < n {
        return Err(Error::InfeasiblePartition { n, s });
    }
    let floor = s / n;
    let ceil = s.div_ceil(n);
    let k = n * ceil - s;
    let mut parts = vec![floor; k];
    parts.extend(std::iter::repeat_n(ceil, n - k));
    let value = BigUint::from(floor).pow(k as u32) * BigUint::from(ceil).pow((n - k) as u32);
    Ok(BalancedPartition { value, parts })
}

/// Maximum of the consecutive-pairs multiplicative stretch over `S_n`,
/// as the product `m^m (m+1)^(m-1)` (`n = 2m`) or `m^m (m+1) (m+2)^(m-1)`
/// (`n = 2m + 1`) under the root `n - 1`.
pub fn max_multiplicative_stretch(n: usize) -> Result<ProductValue> {
    require_pairs("multiplicative stretch", n)?;
    let m = (n / 2) as u32;
    let big = |x: u32| BigUint::from(x);
    let product = if n.is_multiple_of(2) {
        big(m).pow(m) * big(m + 1).pow(m - 1)
    } else {
        big(m).pow(m) * big(m + 1) * big(m + 2).pow(m - 1)
    };
    Ok(ProductValue::integer(product, (n - 1) as u32))
}

/// The two even-case maximizers: `p(2i) = n - i + 1, p(2i - 1) = m - i + 1`
/// and `p(2i) = i, p(2i - 1) = m + i`.
fn even_maximizers(n: usize) -> [Permutation; 2] {
    let m = n / 2;
    let mut first = vec![0; n];
    let mut second = vec![0; n];
    for i in 1..=m {
        first[2 * i - 1] = n - i + 1;
        first[2 * i - 2] = m - i + 1;
        second[2 * i - 1] = i;
        second[2 * i - 2] = m + i;
    }
    [
        Permutation::from_vec_unchecked(first),
        Permutation::from_vec_unchecked(second),
    ]
}

/// The unique odd-case maximizing cycle whose short jump is `m -> m + 1` and
/// whose only jump not passing over it is the right jump that follows it.
/// Its shape depends on the parity of `m`. Starts at `m + 1`.
pub fn odd_maximizer_cycle(n: usize) -> Result<CycleWithStart> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::OutOfRange {
            what: "n",
            value: n.to_string(),
            expected: "odd n >= 3",
        });
    }
    let m = n / 2;
    let next = |i: usize| -> usize {
        let even = i.is_multiple_of(2);
        if i == m {
            return i + 1;
        }
        if m % 2 == 1 {
            match () {
                _ if i == m + 2 => i - (m + 1),
                _ if even && i < m + 2 => i + m,
                _ if !even && i < m => i + m + 2,
                _ if even && i > m + 1 => i - m,
                _ => i - (m + 2),
            }
        } else {
            match () {
                _ if i == 1 => i + m + 1,
                _ if !even && i < m + 2 => i + m,
                _ if even && i < m => i + m + 2,
                _ if even && i > m + 1 => i - m,
                _ => i - (m + 2),
            }
        }
    };
    CycleWithStart::new((1..=n).map(next).collect(), m + 1)
}

/// Every permutation attaining [`max_multiplicative_stretch`], sorted
/// lexicographically.
///
/// Even `n` gives two closed-form permutations. Odd `n` unrolls
/// [`odd_maximizer_cycle`] from `m + 1` (dropping the short jump `m -> m + 1`)
/// and closes the result under reversal and complement, giving four.
pub fn multiplicative_maximizers(n: usize) -> Result<Vec<Permutation>> {
    require_pairs("multiplicative stretch", n)?;
    let mut found: BTreeSet<Permutation> = BTreeSet::new();
    if n.is_multiple_of(2) {
        found.extend(even_maximizers(n));
    } else {
        let base = cycle_to_perm(&odd_maximizer_cycle(n)?);
        debug_assert_eq!(base.at(n), n / 2);
        let reversed = base.reverse();
        found.extend([base.complement(), reversed.complement(), reversed, base]);
    }
    Ok(found.into_iter().collect())
}
