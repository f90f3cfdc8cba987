//! Permutation statistics for interleaver design.
//!
//! Displacement, spread, dispersion and stretch of permutations, the
//! permutations that extremize them, and brute-force and Monte Carlo
//! verifiers for the closed forms.
//!
//! Rational-valued statistics are generic over [`Scalar`]; use
//! [`ExactRatio`] for exact results and `f64` for quick estimates.
//!
//! ```
//! use permstat::{displacement, ExactRatio, Permutation};
//!
//! let p: Permutation = "2 4 1 3".parse().unwrap();
//! let d: ExactRatio = displacement(&p);
//! assert_eq!(d.to_string(), "3/2");
//! assert_eq!(displacement::<f64>(&p), 1.5);
//! ```

pub mod cycle;
pub mod error;
pub mod extremal;
pub mod oracle;
pub mod perm;
pub mod product;
pub mod sampling;
pub mod scalar;
pub mod stretch;

pub use cycle::{
    classify_jumps, cycle_stat, cycle_to_perm, find_improvement, perm_to_cycle, two_opt,
    CycleWithStart, Direction, Improvement, ImprovementRule, JumpClass, JumpRelation,
};
pub use error::{Error, Result};
pub use extremal::{
    construct_prescribed, count_max_displacement, crossing_block_swap, improve_noncrossing,
    is_crossing, max_displacement, CrossingWitness, PrescribedDisplacement,
};
pub use oracle::{
    brute_argmax, brute_average_displacement, ArgmaxReport, Oracle, StatValue, Statistic,
};
pub use perm::{
    average_displacement_exact, dispersion, displacement, displacement_sum, hamming_distance,
    min_delay, normalized_displacement, spread, transform, Permutation, Transform,
};
pub use product::ProductValue;
pub use sampling::{
    concentration_report, empirical_stats, lipschitz_check, sample_uniform, ConcentrationBound,
    SampleStats,
};
pub use scalar::Scalar;
pub use stretch::{
    is_additive_maximizer, max_additive_stretch, max_multiplicative_stretch, max_product_partition,
    multiplicative_maximizers, stretch_additive, stretch_multiplicative, IntervalFamily,
};

/// Exact arbitrary-precision rational.
pub type ExactRatio = num_rational::BigRational;
/// Arbitrary-precision natural number.
pub type BigNatural = num_bigint::BigUint;
