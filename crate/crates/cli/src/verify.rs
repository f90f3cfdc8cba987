use std::collections::BTreeSet;

use anyhow::{bail, Result};
use num_traits::ToPrimitive;
use permstat::extremal::{is_crossing_by_images, noncrossing_witness};
use permstat::oracle::{DEFAULT_LIMIT, HARD_LIMIT};
use permstat::*;
use serde_json::{json, Map, Value};

use crate::report::{perm, Report, Status};

/// A failed check at the smallest `n` where it fails.
struct Counterexample {
    n: usize,
    permutation: Option<Permutation>,
    detail: String,
}

type Check = Result<(), Counterexample>;

fn fail(n: usize, permutation: Option<&Permutation>, detail: String) -> Check {
    Err(Counterexample {
        n,
        permutation: permutation.cloned(),
        detail,
    })
}

/// Smallest permutation in exactly one of the two sorted lists.
fn first_difference(a: &[Permutation], b: &[Permutation]) -> Option<Permutation> {
    let a: BTreeSet<_> = a.iter().collect();
    let b: BTreeSet<_> = b.iter().collect();
    a.symmetric_difference(&b).next().map(|p| (*p).clone())
}

fn same_set(n: usize, what: &str, got: &[Permutation], want: &[Permutation]) -> Check {
    match first_difference(got, want) {
        None => Ok(()),
        Some(p) => fail(
            n,
            Some(&p),
            format!("{what}: sets differ at this permutation"),
        ),
    }
}

fn ratio_max(report: &ArgmaxReport) -> ExactRatio {
    match &report.max {
        StatValue::Ratio(r) => r.clone(),
        StatValue::Product(_) => unreachable!("ratio statistic"),
    }
}

fn product_max(report: &ArgmaxReport) -> ProductValue {
    match &report.max {
        StatValue::Product(p) => p.clone(),
        StatValue::Ratio(_) => unreachable!("product statistic"),
    }
}

fn average_displacement(oracle: &Oracle, n: usize) -> Check {
    let got = oracle.average_displacement(n).map_err(|e| Counterexample {
        n,
        permutation: None,
        detail: e.to_string(),
    })?;
    let want: ExactRatio = average_displacement_exact(n);
    if got != want {
        return fail(
            n,
            None,
            format!("enumerated mean {got}, closed form {want}"),
        );
    }
    Ok(())
}

fn max_displacement_check(oracle: &Oracle, n: usize) -> Check {
    let report = oracle
        .argmax(n, Statistic::Displacement)
        .expect("n within limit");
    let want: ExactRatio = max_displacement(n);
    if ratio_max(&report) != want {
        return fail(
            n,
            report.maximizers.first(),
            format!("maximum {}, closed form {want}", report.max),
        );
    }
    let by_definition = oracle
        .filter(n, |p| noncrossing_witness(p).is_none())
        .expect("n within limit");
    same_set(
        n,
        "argmax vs crossing (definition)",
        &report.maximizers,
        &by_definition,
    )?;
    let by_images = oracle
        .filter(n, is_crossing_by_images)
        .expect("n within limit");
    same_set(
        n,
        "argmax vs crossing (image sets)",
        &report.maximizers,
        &by_images,
    )?;
    let count = count_max_displacement(n);
    if count.to_usize() != Some(report.count) {
        return fail(
            n,
            None,
            format!("{} maximizers, closed form {count}", report.count),
        );
    }
    Ok(())
}

fn additive_stretch(oracle: &Oracle, n: usize) -> Check {
    let report = oracle
        .argmax(n, Statistic::AdditiveStretch)
        .expect("n within limit");
    let want: ExactRatio = max_additive_stretch(n).expect("n >= 2");
    if ratio_max(&report) != want {
        return fail(
            n,
            report.maximizers.first(),
            format!("maximum {}, closed form {want}", report.max),
        );
    }
    let predicate = oracle
        .filter(n, is_additive_maximizer)
        .expect("n within limit");
    same_set(
        n,
        "argmax vs characterization",
        &report.maximizers,
        &predicate,
    )
}

fn multiplicative_stretch(oracle: &Oracle, n: usize) -> Check {
    let report = oracle
        .argmax(n, Statistic::MultiplicativeStretch)
        .expect("n within limit");
    let want = max_multiplicative_stretch(n).expect("n >= 2");
    if product_max(&report) != want {
        return fail(
            n,
            report.maximizers.first(),
            format!("maximum {}, closed form {want}", report.max),
        );
    }
    let built = multiplicative_maximizers(n).expect("n >= 2");
    same_set(
        n,
        "argmax vs constructed maximizers",
        &report.maximizers,
        &built,
    )
}

fn cycle_correspondence(oracle: &Oracle, n: usize) -> Check {
    let perms = oracle
        .argmax(n, Statistic::MultiplicativeStretch)
        .expect("n within limit");
    let cycles = oracle
        .argmax(n, Statistic::CycleStat)
        .expect("n within limit");
    if perms.max != cycles.max {
        return fail(
            n,
            cycles.maximizers.first(),
            format!(
                "max over permutations {}, over cycles {}",
                perms.max, cycles.max
            ),
        );
    }
    Ok(())
}

fn noncrossing_improvement(oracle: &Oracle, n: usize) -> Check {
    let bad = oracle
        .filter(n, |p| {
            let crossing = is_crossing(p).0;
            match improve_noncrossing(p) {
                Ok(r) => crossing || displacement_sum(&r) <= displacement_sum(p),
                Err(Error::AlreadyCrossing) => !crossing,
                Err(_) => true,
            }
        })
        .expect("n within limit");
    match bad.first() {
        None => Ok(()),
        Some(p) => fail(
            n,
            Some(p),
            "not strictly improved, or wrongly rejected".into(),
        ),
    }
}

/// Largest product of `k` positive parts summing to `s`, by dynamic programming.
fn best_product(k: usize, s: usize) -> u128 {
    let mut best = vec![0u128; s + 1];
    for (t, b) in best.iter_mut().enumerate().skip(1) {
        *b = t as u128;
    }
    for _ in 1..k {
        let prev = best.clone();
        best = vec![0; s + 1];
        for t in 0..=s {
            best[t] = (1..t).map(|x| x as u128 * prev[t - x]).max().unwrap_or(0);
        }
    }
    best[s]
}

fn balanced_partition(_: &Oracle, n: usize) -> Check {
    let mut prev = 0u128;
    for s in n..=4 * n {
        let got = max_product_partition(n, s).expect("s >= n");
        let want = best_product(n, s);
        if got.value.to_u128() != Some(want) {
            return fail(
                n,
                None,
                format!("s={s}: balanced {}, optimum {want}", got.value),
            );
        }
        if want <= prev {
            return fail(n, None, format!("s={s}: not strictly increasing"));
        }
        prev = want;
    }
    Ok(())
}

type NamedCheck = (&'static str, usize, fn(&Oracle, usize) -> Check);

const CHECKS: [NamedCheck; 7] = [
    ("average_displacement", 1, average_displacement),
    ("max_displacement", 1, max_displacement_check),
    ("additive_stretch", 2, additive_stretch),
    ("multiplicative_stretch", 2, multiplicative_stretch),
    ("cycle_correspondence", 2, cycle_correspondence),
    ("noncrossing_improvement", 1, noncrossing_improvement),
    ("balanced_partition", 1, balanced_partition),
];

pub fn verify(max_n: usize, allow_large: bool) -> Result<Report> {
    if max_n == 0 || max_n > HARD_LIMIT {
        bail!("invalid --max-n `{max_n}`: must be in 1..={HARD_LIMIT}");
    }
    if max_n > DEFAULT_LIMIT && !allow_large {
        bail!("invalid --max-n `{max_n}`: values above {DEFAULT_LIMIT} need --allow-large");
    }
    let oracle = Oracle::with_limit(max_n)?;
    let mut checks = Map::new();
    let mut counterexamples = Vec::new();
    for (name, from, check) in CHECKS {
        let outcome = (from..=max_n).try_for_each(|n| check(&oracle, n));
        match outcome {
            Ok(()) => {
                checks.insert(name.into(), json!("pass"));
            }
            Err(c) => {
                checks.insert(name.into(), json!("fail"));
                counterexamples.push(json!({
                    "check": name,
                    "n": c.n,
                    "permutation": c.permutation.as_ref().map_or(Value::Null, perm),
                    "detail": c.detail,
                }));
            }
        }
    }
    let mut r = Report::new("verify", max_n);
    r.input("max_n", max_n);
    r.result("checks", checks);
    if !counterexamples.is_empty() {
        r.result("counterexamples", counterexamples);
        r.status = Status::Failed;
    }
    Ok(r)
}
