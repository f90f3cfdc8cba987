//! Crossing permutations and the extremes of displacement.
//!
//! A permutation is *crossing* when every two closed intervals
//! `[i, p(i)]`, `[j, p(j)]` intersect. Crossing permutations are exactly the
//! permutations of maximal displacement; any noncrossing one can be improved
//! by a single transposition.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::perm::{normalized_displacement, Permutation};
use crate::scalar::Scalar;
use crate::ExactRatio;

/// Two positions whose intervals `[i, p(i)]`, `[j, p(j)]` are disjoint, with
/// `left`'s interval entirely to the left of `right`'s.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingWitness {
    pub left: usize,
    pub right: usize,
}

fn interval(p: &Permutation, i: usize) -> (usize, usize) {
    let v = p.at(i);
    (i.min(v), i.max(v))
}

/// Definitional O(n²) test. Returns the first disjoint pair in
/// lexicographic order, or `None` when `p` is crossing.
pub fn noncrossing_witness(p: &Permutation) -> Option<CrossingWitness> {
    let n = p.len();
    for i in 1..=n {
        let (lo_i, hi_i) = interval(p, i);
        for j in i + 1..=n {
            let (lo_j, hi_j) = interval(p, j);
            if hi_i < lo_j {
                return Some(CrossingWitness { left: i, right: j });
            }
            if hi_j < lo_i {
                return Some(CrossingWitness { left: j, right: i });
            }
        }
    }
    None
}

/// O(n) test through the image sets. With `m = ⌊n/2⌋`: for even `n`,
/// `p` maps `{1..m}` onto `{m+1..n}`; for odd `n`, additionally
/// `{m+2..n}` lands in `{1..m+1}`.
pub fn is_crossing_by_images(p: &Permutation) -> bool {
    let n = p.len();
    let m = n / 2;
    let low_goes_high = (1..=m).all(|i| p.at(i) > m);
    if n.is_multiple_of(2) {
        low_goes_high
    } else {
        low_goes_high && (m + 2..=n).all(|i| p.at(i) <= m + 1)
    }
}

/// Runs both crossing tests and returns the verdict with a witness when `p`
/// is noncrossing.
///
/// # Panics
///
/// If the two tests disagree.
pub fn is_crossing(p: &Permutation) -> (bool, Option<CrossingWitness>) {
    let witness = noncrossing_witness(p);
    let by_images = is_crossing_by_images(p);
    assert_eq!(
        witness.is_none(),
        by_images,
        "crossing tests disagree on {p}"
    );
    (by_images, witness)
}

/// Largest displacement attained in `S_n`: `n/2` for even `n`,
/// `(n - 1)(n + 1)/(2n)` for odd `n`.
pub fn max_displacement<T: Scalar>(n: usize) -> T {
    assert!(n >= 1);
    let n = n as u128;
    if n.is_multiple_of(2) {
        T::from_ratio(n, 2)
    } else {
        T::from_ratio((n - 1) * (n + 1), 2 * n)
    }
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// Number of permutations of maximal displacement: `(m!)²` for `n = 2m` and
/// `(2m + 1)(m!)²` for `n = 2m + 1`.
///
/// The crossing characterization lets the `m` low positions map to any `m`
/// of the high values and the high positions fill the rest; for odd `n` the
/// middle value may sit at any of the `2m + 1` positions in a compatible way.
/// The odd count is checked against enumeration in the test suite.
pub fn count_max_displacement(n: usize) -> BigUint {
    assert!(n >= 1);
    let m = n / 2;
    let square = factorial(m).pow(2);
    if n.is_multiple_of(2) {
        square
    } else {
        square * n
    }
}

/// Swaps the images at the first disjoint pair, which strictly increases
/// displacement.
pub fn improve_noncrossing(p: &Permutation) -> Result<Permutation> {
    match is_crossing(p) {
        (true, _) => Err(Error::AlreadyCrossing),
        (false, Some(w)) => Ok(p.swap_positions(w.left, w.right)),
        (false, None) => unreachable!("noncrossing without witness"),
    }
}

/// A canonical member of the maximal-displacement family: the low half is
/// swapped with the high half (fixing the middle point when `n` is odd).
pub fn crossing_block_swap(n: usize) -> Permutation {
    assert!(n >= 1);
    let m = n / 2;
    let shift = n - m;
    let image = (1..=n)
        .map(|i| {
            if i <= m {
                i + shift
            } else if i > shift {
                i - shift
            } else {
                i
            }
        })
        .collect();
    Permutation::from_vec_unchecked(image)
}

/// Output of [`construct_prescribed`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrescribedDisplacement {
    pub permutation: Permutation,
    /// Block size `u`: positions `1..=u` and `u+1..=2u` are swapped.
    pub block: usize,
    /// Exact normalized displacement `2u²/n²`.
    pub achieved: ExactRatio,
}

/// Smallest `u >= 0` with `2u >= sqrt(2d)·n`, i.e. `4u² >= 2dn²`.
///
/// Seeded by the floating point estimate and then corrected with exact
/// integer arithmetic so rounding never moves `u`.
fn ceil_half_delta_n(n: usize, d: &ExactRatio) -> usize {
    let target = d * BigRational::from_integer((2 * n * n).into());
    let fits = |u: usize| -> bool {
        let lhs = BigRational::from_integer((4 * u * u).into());
        lhs >= target
    };
    let delta = (2.0 * d.to_f64().unwrap_or(0.0)).sqrt();
    let mut u = ((delta * n as f64 / 2.0).ceil().max(0.0) as usize).min(n);
    while u > 0 && fits(u - 1) {
        u -= 1;
    }
    while !fits(u) {
        u += 1;
    }
    u
}

/// Builds a permutation of `S_n` whose normalized displacement is within
/// `2/n` of `d`, for any `d` in `[0, 1/2]`.
///
/// With `u = ⌈sqrt(2d)·n/2⌉` (clamped to `⌊n/2⌋`), the first `u` positions are
/// swapped with the next `u` and the rest is fixed, giving a normalized
/// displacement of `2u²/n²`.
pub fn construct_prescribed(n: usize, d: &ExactRatio) -> Result<PrescribedDisplacement> {
    if n == 0 {
        return Err(Error::Empty);
    }
    let half = BigRational::new(1.into(), 2.into());
    if d.is_negative() || *d > half {
        return Err(Error::OutOfRange {
            what: "displacement",
            value: d.to_string(),
            expected: "0 <= d <= 1/2",
        });
    }
    let u = if d.is_zero() {
        0
    } else {
        ceil_half_delta_n(n, d).min(n / 2)
    };
    let image = (1..=n)
        .map(|i| {
            if i <= u {
                i + u
            } else if i <= 2 * u {
                i - u
            } else {
                i
            }
        })
        .collect();
    let permutation = Permutation::from_vec_unchecked(image);
    let achieved: ExactRatio = normalized_displacement(&permutation);
    debug_assert_eq!(
        achieved,
        BigRational::new((2 * u * u).into(), (n * n).into())
    );
    Ok(PrescribedDisplacement {
        permutation,
        block: u,
        achieved,
    })
}
