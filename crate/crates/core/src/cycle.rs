//! n-cycles with a designated beginning and local improvements on them.
//!
//! A permutation `p` corresponds to the cycle `p(1) -> p(2) -> ... -> p(n) ->
//! p(1)` started at `p(1)`. Each arc `a -> succ(a)` is a *jump* of length
//! `|a - succ(a)|`. The product of the consecutive gaps of `p` is the product
//! of all jump lengths except the closing jump `p(n) -> p(1)`, so maximizing
//! the multiplicative stretch is the same as maximizing, over cycles, the
//! largest product obtained by leaving out one jump.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::product::ProductValue;

/// A single n-cycle on `{1..n}` given by its successor map, with a start.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleWithStart {
    successor: Vec<usize>,
    start: usize,
}

impl CycleWithStart {
    /// `successor[i - 1]` is the successor of `i`.
    pub fn new(successor: Vec<usize>, start: usize) -> Result<Self> {
        let n = successor.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if start == 0 || start > n {
            return Err(Error::OutOfRange {
                what: "start",
                value: start.to_string(),
                expected: "1 <= start <= n",
            });
        }
        // Bijection check first, then a single orbit.
        Permutation::new(successor.clone())?;
        let mut steps = 1;
        let mut at = successor[start - 1];
        while at != start {
            at = successor[at - 1];
            steps += 1;
        }
        if steps != n {
            return Err(Error::NotSingleCycle { n });
        }
        Ok(Self { successor, start })
    }

    pub fn len(&self) -> usize {
        self.successor.len()
    }

    pub fn is_empty(&self) -> bool {
        self.successor.is_empty()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    #[inline]
    pub fn next(&self, a: usize) -> usize {
        self.successor[a - 1]
    }

    pub fn successors(&self) -> &[usize] {
        &self.successor
    }

    /// Points in cycle order beginning at the start.
    pub fn order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut at = self.start;
        for _ in 0..self.len() {
            out.push(at);
            at = self.next(at);
        }
        out
    }

    /// `|a - succ(a)|`.
    #[inline]
    pub fn jump_length(&self, a: usize) -> usize {
        a.abs_diff(self.next(a))
    }

    /// Jump lengths indexed by starting point.
    pub fn jump_lengths(&self) -> Vec<usize> {
        (1..=self.len()).map(|a| self.jump_length(a)).collect()
    }

    /// Length of the shortest jump.
    pub fn short_length(&self) -> usize {
        (1..=self.len()).map(|a| self.jump_length(a)).min().unwrap()
    }

    fn endpoints_distinct(&self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.next(a), self.next(b));
        a != b && a != rb && ra != b && ra != rb
    }
}

pub fn perm_to_cycle(p: &Permutation) -> CycleWithStart {
    let n = p.len();
    let img = p.image();
    let mut successor = vec![0; n];
    for k in 0..n {
        successor[img[k] - 1] = img[(k + 1) % n];
    }
    CycleWithStart {
        successor,
        start: img[0],
    }
}

pub fn cycle_to_perm(c: &CycleWithStart) -> Permutation {
    Permutation::from_vec_unchecked(c.order())
}

/// Largest product of all jump lengths but one, under the root `n - 1`.
///
/// Leaving out a shortest jump is optimal, so this is the full product
/// divided by the minimal length. Independent of the start.
pub fn cycle_stat(c: &CycleWithStart) -> ProductValue {
    let n = c.len();
    if n == 1 {
        return ProductValue::integer(1u32, 1);
    }
    let lengths = c.jump_lengths();
    let min = *lengths.iter().min().unwrap();
    let full = lengths.iter().fold(BigUint::from(1u32), |acc, &l| acc * l);
    ProductValue::integer(full / min, (n - 1) as u32)
}

/// Replaces the jumps `a -> succ(a)` and `b -> succ(b)` by `a -> b` and
/// `succ(a) -> succ(b)`, reversing the path from `succ(a)` to `b` so the
/// result is again a single n-cycle. The start is kept.
pub fn two_opt(c: &CycleWithStart, a: usize, b: usize) -> Result<CycleWithStart> {
    let n = c.len();
    if a == 0 || b == 0 || a > n || b > n || !c.endpoints_distinct(a, b) {
        return Err(Error::SharedEndpoints { a, b });
    }
    let (ra, rb) = (c.next(a), c.next(b));
    let mut path = vec![ra];
    while *path.last().unwrap() != b {
        path.push(c.next(*path.last().unwrap()));
    }
    let mut successor = c.successor.clone();
    successor[a - 1] = b;
    for w in path.windows(2) {
        successor[w[1] - 1] = w[0];
    }
    successor[ra - 1] = rb;
    Ok(CycleWithStart {
        successor,
        start: c.start,
    })
}

/// Which of the two queried jumps plays the outer role.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JumpRelation {
    /// The jumps share an endpoint and neither interval contains the other.
    SharedEndpoint,
    /// The closed intervals do not meet; the endpoints are then distinct.
    Disjoint,
    /// One interval contains the other while they share an endpoint.
    Skips { outer: Which },
    /// One interval contains the other and all four endpoints differ.
    Bridges { outer: Which },
    /// Distinct endpoints, overlapping intervals, no containment.
    NontrivialIntersection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Same,
    Opposite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JumpClass {
    pub relation: JumpRelation,
    pub direction: Direction,
    pub first_short: bool,
    pub second_short: bool,
}

fn span(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Classifies the jumps starting at `a` and `b` (`a != b`).
pub fn classify_jumps(c: &CycleWithStart, a: usize, b: usize) -> JumpClass {
    assert_ne!(a, b, "a jump is not compared with itself");
    let (ra, rb) = (c.next(a), c.next(b));
    let (a_lo, a_hi) = span(a, ra);
    let (b_lo, b_hi) = span(b, rb);
    let a_in_b = b_lo <= a_lo && a_hi <= b_hi;
    let b_in_a = a_lo <= b_lo && b_hi <= a_hi;
    let outer = if b_in_a { Which::First } else { Which::Second };
    let relation = if c.endpoints_distinct(a, b) {
        if a_hi < b_lo || b_hi < a_lo {
            JumpRelation::Disjoint
        } else if a_in_b || b_in_a {
            JumpRelation::Bridges { outer }
        } else {
            JumpRelation::NontrivialIntersection
        }
    } else if a_in_b || b_in_a {
        JumpRelation::Skips { outer }
    } else {
        JumpRelation::SharedEndpoint
    };
    let direction = if (a < ra) == (b < rb) {
        Direction::Same
    } else {
        Direction::Opposite
    };
    let short = c.short_length();
    JumpClass {
        relation,
        direction,
        first_short: c.jump_length(a) == short,
        second_short: c.jump_length(b) == short,
    }
}

/// The local-improvement conditions, checked in this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImprovementRule {
    /// Two disjoint jumps in the same direction.
    DisjointSameDirection,
    /// A short jump meets an opposite jump nontrivially.
    ShortCrossesOpposite,
    /// A short jump is disjoint from an opposite jump.
    ShortDisjointOpposite,
    /// Two disjoint opposite jumps, resolved through the short jump.
    DisjointOpposite,
    /// A jump bridges a long opposite jump.
    BridgesLongOpposite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Improvement {
    pub rule: ImprovementRule,
    /// Starting points of the rewired jumps, as passed to [`two_opt`].
    pub jumps: (usize, usize),
    pub cycle: CycleWithStart,
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |a| (a + 1..=n).map(move |b| (a, b)))
}

/// The short jump of a pair that is short and meets `want` against an
/// opposite-direction partner, returned as `(short, other)`.
fn short_against_opposite(
    c: &CycleWithStart,
    a: usize,
    b: usize,
    want: JumpRelation,
) -> Option<(usize, usize)> {
    let class = classify_jumps(c, a, b);
    if class.direction != Direction::Opposite || class.relation != want {
        return None;
    }
    if class.first_short {
        Some((a, b))
    } else if class.second_short {
        Some((b, a))
    } else {
        None
    }
}

fn rule_one(c: &CycleWithStart, a: usize, b: usize) -> bool {
    let class = classify_jumps(c, a, b);
    class.relation == JumpRelation::Disjoint && class.direction == Direction::Same
}

fn rewire(c: &CycleWithStart, rule: ImprovementRule, a: usize, b: usize) -> Improvement {
    Improvement {
        rule,
        jumps: (a, b),
        cycle: two_opt(c, a, b).expect("improvement rules only pair distinct-endpoint jumps"),
    }
}

/// Tries the first three rules on the pairs formed by `short` with `a` and
/// with `b`.
fn reduce_disjoint_opposite(
    c: &CycleWithStart,
    short: usize,
    a: usize,
    b: usize,
) -> Option<Improvement> {
    for other in [a, b] {
        if other == short {
            continue;
        }
        if rule_one(c, short, other) {
            return Some(rewire(
                c,
                ImprovementRule::DisjointSameDirection,
                short,
                other,
            ));
        }
        for (want, rule) in [
            (
                JumpRelation::NontrivialIntersection,
                ImprovementRule::ShortCrossesOpposite,
            ),
            (
                JumpRelation::Disjoint,
                ImprovementRule::ShortDisjointOpposite,
            ),
        ] {
            if let Some((s, o)) = short_against_opposite(c, short, other, want) {
                return Some(rewire(c, rule, s, o));
            }
        }
    }
    None
}

/// Scans jump pairs in lexicographic order for the first applicable
/// improvement rule (in [`ImprovementRule`] order) and returns the rewired
/// cycle, whose [`cycle_stat`] is strictly larger. `None` when no rule fires,
/// which does not by itself make the cycle optimal.
pub fn find_improvement(c: &CycleWithStart) -> Option<Improvement> {
    let n = c.len();
    if n < 4 {
        return None;
    }

    for (a, b) in pairs(n) {
        if rule_one(c, a, b) {
            return Some(rewire(c, ImprovementRule::DisjointSameDirection, a, b));
        }
    }
    for (want, rule) in [
        (
            JumpRelation::NontrivialIntersection,
            ImprovementRule::ShortCrossesOpposite,
        ),
        (
            JumpRelation::Disjoint,
            ImprovementRule::ShortDisjointOpposite,
        ),
    ] {
        for (a, b) in pairs(n) {
            if let Some((s, o)) = short_against_opposite(c, a, b, want) {
                return Some(rewire(c, rule, s, o));
            }
        }
    }
    let short = (1..=n)
        .find(|&k| c.jump_length(k) == c.short_length())
        .unwrap();
    for (a, b) in pairs(n) {
        let class = classify_jumps(c, a, b);
        if class.relation == JumpRelation::Disjoint && class.direction == Direction::Opposite {
            if let Some(found) = reduce_disjoint_opposite(c, short, a, b) {
                return Some(Improvement {
                    rule: ImprovementRule::DisjointOpposite,
                    ..found
                });
            }
        }
    }
    for (a, b) in pairs(n) {
        let class = classify_jumps(c, a, b);
        if class.direction != Direction::Opposite {
            continue;
        }
        if let JumpRelation::Bridges { outer } = class.relation {
            let inner_long = match outer {
                Which::First => !class.second_short,
                Which::Second => !class.first_short,
            };
            if inner_long {
                return Some(rewire(c, ImprovementRule::BridgesLongOpposite, a, b));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn cycle(succ: &[usize], start: usize) -> CycleWithStart {
        CycleWithStart::new(succ.to_vec(), start).unwrap()
    }

    fn sorted(mut v: Vec<usize>) -> Vec<usize> {
        v.sort_unstable();
        v
    }

    #[test]
    fn perm_to_cycle_examples() {
        let c = perm_to_cycle(&perm(&[2, 4, 1, 3]));
        assert_eq!(c, cycle(&[3, 4, 2, 1], 2));
        let c = perm_to_cycle(&Permutation::identity(3));
        assert_eq!(c, cycle(&[2, 3, 1], 1));
        let c = perm_to_cycle(&perm(&[3, 5, 1, 4, 2]));
        assert_eq!(c, cycle(&[4, 3, 5, 2, 1], 3));
    }

    #[test]
    fn cycle_to_perm_examples() {
        assert_eq!(cycle_to_perm(&cycle(&[2, 3, 1], 1)), perm(&[1, 2, 3]));
        assert_eq!(cycle_to_perm(&cycle(&[3, 4, 2, 1], 2)), perm(&[2, 4, 1, 3]));
        assert_eq!(
            cycle_to_perm(&cycle(&[4, 3, 5, 2, 1], 3)),
            perm(&[3, 5, 1, 4, 2])
        );
    }

    #[test]
    fn rejects_non_cycles() {
        assert_eq!(
            CycleWithStart::new(vec![2, 1, 3], 1),
            Err(Error::NotSingleCycle { n: 3 })
        );
        assert!(CycleWithStart::new(vec![2, 2, 1], 1).is_err());
        assert!(CycleWithStart::new(vec![2, 3, 1], 4).is_err());
        assert!(CycleWithStart::new(vec![1], 1).is_ok());
    }

    #[test]
    fn cycle_stat_examples() {
        let c = perm_to_cycle(&perm(&[2, 4, 1, 3]));
        assert_eq!(cycle_stat(&c), ProductValue::integer(12u32, 3));
        assert_eq!(cycle_stat(&cycle(&[1], 1)), ProductValue::integer(1u32, 1));
        assert_eq!(
            cycle_stat(&cycle(&[2, 3, 1], 1)),
            ProductValue::integer(2u32, 2)
        );
    }

    #[test]
    fn two_opt_examples() {
        let c = cycle(&[2, 3, 4, 1], 1);
        let r = two_opt(&c, 1, 3).unwrap();
        assert_eq!(r, cycle(&[3, 4, 2, 1], 1));
        assert_eq!(sorted(c.jump_lengths()), vec![1, 1, 1, 3]);
        assert_eq!(sorted(r.jump_lengths()), vec![1, 2, 2, 3]);
        assert_eq!(
            two_opt(&cycle(&[2, 3, 1], 1), 1, 3),
            Err(Error::SharedEndpoints { a: 1, b: 3 })
        );
    }

    #[test]
    fn classify_examples() {
        let c = cycle(&[2, 3, 4, 1], 1);
        let k = classify_jumps(&c, 1, 3);
        assert_eq!(k.relation, JumpRelation::Disjoint);
        assert_eq!(k.direction, Direction::Same);
        assert!(k.first_short && k.second_short);
        let k = classify_jumps(&c, 4, 2);
        assert_eq!(
            k.relation,
            JumpRelation::Bridges {
                outer: Which::First
            }
        );
        assert_eq!(k.direction, Direction::Opposite);
        assert!(!k.first_short && k.second_short);
        // 1 -> 2 and 2 -> 3 share the point 2 only.
        assert_eq!(
            classify_jumps(&c, 1, 2).relation,
            JumpRelation::SharedEndpoint
        );
        // 4 -> 1 contains 1 -> 2 and shares the point 1.
        assert_eq!(
            classify_jumps(&c, 1, 4).relation,
            JumpRelation::Skips {
                outer: Which::Second
            }
        );
        // 1 -> 3 and 2 -> 4 overlap on [2, 3].
        let c = cycle(&[3, 4, 2, 1], 1);
        let k = classify_jumps(&c, 1, 2);
        assert_eq!(k.relation, JumpRelation::NontrivialIntersection);
        assert_eq!(k.direction, Direction::Same);
    }

    #[test]
    fn find_improvement_examples() {
        let c = cycle(&[2, 3, 4, 1], 1);
        let imp = find_improvement(&c).unwrap();
        assert_eq!(imp.rule, ImprovementRule::DisjointSameDirection);
        assert_eq!(imp.jumps, (1, 3));
        assert_eq!(cycle_stat(&c), ProductValue::integer(3u32, 3));
        assert_eq!(cycle_stat(&imp.cycle), ProductValue::integer(12u32, 3));

        assert!(find_improvement(&perm_to_cycle(&perm(&[2, 4, 1, 3]))).is_none());
        assert!(find_improvement(&cycle(&[2, 1], 1)).is_none());
    }

    #[test]
    fn short_jump_rewiring_gains() {
        // 1 -> 2 is short; 5 -> 3 is disjoint from it and opposite.
        // Cycle 1 -> 2 -> 4 -> 5 -> 3 -> 1.
        let c = cycle(&[2, 4, 1, 5, 3], 1);
        let k = classify_jumps(&c, 1, 5);
        assert_eq!(k.relation, JumpRelation::Disjoint);
        assert_eq!(k.direction, Direction::Opposite);
        assert!(k.first_short);
        assert!(1usize.abs_diff(5) > c.jump_length(5));
        let r = two_opt(&c, 1, 5).unwrap();
        assert!(cycle_stat(&r) > cycle_stat(&c));
    }
}
