#![allow(dead_code)]

use permstat::{ExactRatio, Permutation};

/// All permutations of `1..=n`, built recursively by insertion. Kept separate
/// from the library's lexicographic enumerator.
pub fn all_perms(n: usize) -> Vec<Permutation> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for k in 1..=n {
        let mut next = Vec::with_capacity(out.len() * k);
        for v in &out {
            for pos in 0..=v.len() {
                let mut w = v.clone();
                w.insert(pos, k);
                next.push(w);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|v| Permutation::new(v).unwrap())
        .collect()
}

pub fn q(n: i64, d: i64) -> ExactRatio {
    ExactRatio::new(n.into(), d.into())
}

pub fn perm(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

/// Largest product over all compositions of `s` into `n` positive parts.
pub fn brute_max_product(n: usize, s: usize) -> u128 {
    fn go(parts_left: usize, sum_left: usize) -> u128 {
        if parts_left == 1 {
            return sum_left as u128;
        }
        (1..=sum_left - (parts_left - 1))
            .map(|first| first as u128 * go(parts_left - 1, sum_left - first))
            .max()
            .unwrap()
    }
    go(n, s)
}
