//! The [`Permutation`] type and its per-permutation statistics.
//!
//! All indices and values are 1-based: `p.at(i)` is the image of `i` for
//! `1 <= i <= n`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A bijection of `{1, ..., n}` stored in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    /// Validates `image` as one-line notation of a permutation of `1..=n`.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut seen = vec![false; n];
        for (k, &value) in image.iter().enumerate() {
            if value == 0 || value > n {
                return Err(Error::ValueOutOfRange {
                    position: k + 1,
                    value,
                    n,
                });
            }
            if std::mem::replace(&mut seen[value - 1], true) {
                return Err(Error::DuplicateValue {
                    position: k + 1,
                    value,
                });
            }
        }
        Ok(Self { image })
    }

    /// Skips validation. The caller guarantees `image` is a bijection of `1..=n`.
    pub(crate) fn from_vec_unchecked(image: Vec<usize>) -> Self {
        debug_assert!(Self::new(image.clone()).is_ok());
        Self { image }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "identity of an empty set");
        Self {
            image: (1..=n).collect(),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.image.len()
    }

    /// Always false; kept for the `len`/`is_empty` pairing.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// Image of the 1-based position `i`.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    /// One-line notation, `image()[i - 1] == p(i)`.
    #[inline]
    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn into_image(self) -> Vec<usize> {
        self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (k, &v) in self.image.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Self { image: inv }
    }

    /// `i -> p(n + 1 - i)`.
    pub fn reverse(&self) -> Self {
        let mut image = self.image.clone();
        image.reverse();
        Self { image }
    }

    /// `i -> n + 1 - p(i)`.
    pub fn complement(&self) -> Self {
        let n = self.len();
        Self {
            image: self.image.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    /// `self ∘ (i j)`: the images at positions `i` and `j` are exchanged.
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut image = self.image.clone();
        image.swap(i - 1, j - 1);
        Self { image }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.image.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Parses one-line notation separated by whitespace and/or commas. An
/// optional leading `n=<count>` header is ignored.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut tokens = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .peekable();
        if tokens.peek().is_some_and(|t| t.starts_with("n=")) {
            tokens.next();
        }
        let mut image = Vec::new();
        for token in tokens {
            let value = token.parse::<usize>().map_err(|e| Error::Parse {
                token: token.to_string(),
                reason: e.to_string(),
            })?;
            image.push(value);
        }
        Self::new(image).map_err(|e| match e {
            Error::ValueOutOfRange { value, n, .. } => Error::Parse {
                token: value.to_string(),
                reason: format!("not in 1..={n}"),
            },
            Error::DuplicateValue { value, .. } => Error::Parse {
                token: value.to_string(),
                reason: "repeated value; not a bijection".to_string(),
            },
            other => other,
        })
    }
}

/// The symmetries of the square acting on one-line notation that the
/// extremal families are closed under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Transform {
    Reverse,
    Complement,
    Inverse,
}

pub fn transform(p: &Permutation, kind: Transform) -> Permutation {
    match kind {
        Transform::Reverse => p.reverse(),
        Transform::Complement => p.complement(),
        Transform::Inverse => p.inverse(),
    }
}

/// `Σ |i - p(i)|`, the undivided displacement. At most `⌊n²/2⌋`.
pub fn displacement_sum(p: &Permutation) -> u64 {
    p.image
        .iter()
        .enumerate()
        .map(|(k, &v)| (k + 1).abs_diff(v) as u64)
        .sum()
}

/// Mean absolute delay, `Σ |i - p(i)| / n`.
pub fn displacement<T: Scalar>(p: &Permutation) -> T {
    T::from_ratio(displacement_sum(p) as u128, p.len() as u128)
}

/// `displacement(p) / n`, always in `[0, 1/2]`.
pub fn normalized_displacement<T: Scalar>(p: &Permutation) -> T {
    let n = p.len() as u128;
    T::from_ratio(displacement_sum(p) as u128, n * n)
}

/// Mean displacement over all of `S_n`: `(n² - 1) / (3n)`.
pub fn average_displacement_exact<T: Scalar>(n: usize) -> T {
    assert!(n >= 1, "average over an empty symmetric group");
    let n = n as u128;
    T::from_ratio(n * n - 1, 3 * n)
}

/// Normalized Hamming distance: the fraction of positions where `p` and `q`
/// disagree.
pub fn hamming_distance<T: Scalar>(p: &Permutation, q: &Permutation) -> Result<T> {
    if p.len() != q.len() {
        return Err(Error::SizeMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let differ = p.image.iter().zip(&q.image).filter(|(a, b)| a != b).count();
    Ok(T::from_ratio(differ as u128, p.len() as u128))
}

/// Smallest absolute delay `min |i - p(i)|`; zero iff `p` has a fixed point.
pub fn min_delay(p: &Permutation) -> usize {
    p.image
        .iter()
        .enumerate()
        .map(|(k, &v)| (k + 1).abs_diff(v))
        .min()
        .expect("nonempty permutation")
}

/// `min over i < j of |i - j| + |p(i) - p(j)|`.
pub fn spread(p: &Permutation) -> Result<usize> {
    let n = p.len();
    if n < 2 {
        return Err(Error::Undefined {
            statistic: "spread",
            n,
            min: 2,
        });
    }
    let img = &p.image;
    let mut best = usize::MAX;
    for i in 0..n {
        for j in i + 1..n {
            // |i - j| alone already bounds the candidate from below.
            if j - i >= best {
                break;
            }
            best = best.min(j - i + img[i].abs_diff(img[j]));
        }
    }
    Ok(best)
}

/// Number of distinct difference vectors `(i - j, p(i) - p(j))`, `i < j`,
/// over the number of pairs `n(n - 1)/2`.
pub fn dispersion<T: Scalar>(p: &Permutation) -> Result<T> {
    let n = p.len();
    if n < 2 {
        return Err(Error::Undefined {
            statistic: "dispersion",
            n,
            min: 2,
        });
    }
    let img = &p.image;
    let mut seen: HashSet<(usize, isize)> = HashSet::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            seen.insert((j - i, img[j] as isize - img[i] as isize));
        }
    }
    let pairs = (n * (n - 1) / 2) as u128;
    Ok(T::from_ratio(seen.len() as u128, pairs))
}
