use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_traits::{Signed, ToPrimitive};
use permstat::cycle::{
    cycle_stat, cycle_to_perm, find_improvement, perm_to_cycle, ImprovementRule,
};
use permstat::sampling::{concentration_report, empirical_stats};
use permstat::stretch::consecutive_gaps;
use permstat::*;
use serde_json::{json, Value};

use crate::cli::{PermInput, Stat};
use crate::report::{perm, product, ratio, Report, Status};

/// Reads a permutation from `--perm` or `--input`. Surrounding brackets are
/// dropped so JSON arrays from other reports are accepted as-is.
pub fn read_perm(input: &PermInput) -> Result<(Permutation, Value)> {
    let (text, echo) = match (&input.perm, &input.input) {
        (Some(p), _) => (p.clone(), json!({ "perm": p })),
        (None, Some(path)) => (
            read_file(path)?,
            json!({ "input": path.display().to_string() }),
        ),
        (None, None) => bail!("one of --perm or --input is required"),
    };
    let trimmed = text.trim().trim_start_matches('[').trim_end_matches(']');
    let p = trimmed
        .parse::<Permutation>()
        .map_err(|e| anyhow!("invalid permutation: {e}"))?;
    Ok((p, echo))
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read `{}`", path.display()))
}

/// Parses a decimal such as `0.25` or a fraction such as `1/4`.
pub fn parse_ratio(s: &str) -> Result<ExactRatio> {
    let bad = || anyhow!("invalid displacement `{s}`: expected a decimal or p/q");
    let t = s.trim();
    if t.contains('/') {
        let r: ExactRatio = t.parse().map_err(|_| bad())?;
        return Ok(r);
    }
    let (negative, digits) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty()
        || !whole
            .chars()
            .chain(frac.chars())
            .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let sign = if negative { "-" } else { "" };
    let numerator = format!("{sign}0{whole}{frac}");
    let denominator = format!("1{}", "0".repeat(frac.len()));
    format!("{numerator}/{denominator}")
        .parse::<ExactRatio>()
        .map_err(|_| bad())
}

fn option<T>(r: permstat::Result<T>, f: impl FnOnce(T) -> Value) -> Value {
    r.map(f).unwrap_or(Value::Null)
}

pub fn metrics(input: &PermInput) -> Result<Report> {
    let (p, echo) = read_perm(input)?;
    let n = p.len();
    let mut r = Report::new("metrics", n);
    r.inputs = echo.as_object().cloned().unwrap_or_default();
    let pairs = IntervalFamily::consecutive_pairs(n);
    let (crossing, witness) = is_crossing(&p);
    r.result("permutation", perm(&p))
        .result("displacement", ratio(&displacement(&p)))
        .result(
            "normalized_displacement",
            ratio(&normalized_displacement(&p)),
        )
        .result(
            "s_plus",
            option(
                pairs
                    .clone()
                    .and_then(|f| stretch_additive::<ExactRatio>(&f, &p)),
                |v| ratio(&v),
            ),
        )
        .result(
            "s_star",
            option(pairs.and_then(|f| stretch_multiplicative(&f, &p)), |v| {
                product(&v)
            }),
        )
        .result("cycle_stat", product(&cycle_stat(&perm_to_cycle(&p))))
        .result("gaps", json!(consecutive_gaps(&p)))
        .result("spread", option(spread(&p), |v| json!(v)))
        .result(
            "dispersion",
            option(dispersion::<ExactRatio>(&p), |v| ratio(&v)),
        )
        .result("min_delay", json!(min_delay(&p)))
        .result("crossing", json!(crossing))
        .result(
            "noncrossing_witness",
            witness.map_or(Value::Null, |w| json!([w.left, w.right])),
        )
        .result("additive_maximizer", json!(is_additive_maximizer(&p)));
    Ok(r)
}

pub fn extremal(n: usize, stat: Stat) -> Result<Report> {
    if n == 0 {
        bail!("invalid --n `0`: must be at least 1");
    }
    let mut r = Report::new("extremal", n);
    r.input("n", n);
    match stat {
        Stat::Disp => {
            r.input("stat", "disp");
            let max: ExactRatio = max_displacement(n);
            let normalized = &max / ExactRatio::from_integer(n.into());
            r.result("max", ratio(&max))
                .result("normalized_max", ratio(&normalized))
                .result("count", count_max_displacement(n).to_string())
                .result("example", perm(&crossing_block_swap(n)));
        }
        Stat::SPlus => {
            r.input("stat", "s-plus");
            let max: ExactRatio = max_additive_stretch(n)?;
            let example = multiplicative_maximizers(n)?
                .into_iter()
                .find(is_additive_maximizer)
                .ok_or_else(|| anyhow!("no additive maximizer among the constructed family"))?;
            r.result("max", ratio(&max))
                .result("example", perm(&example));
        }
        Stat::SStar => {
            r.input("stat", "s-star");
            let max = max_multiplicative_stretch(n)?;
            let maximizers = multiplicative_maximizers(n)?;
            r.result("max", product(&max))
                .result("count", maximizers.len())
                .result(
                    "maximizers",
                    maximizers.iter().map(perm).collect::<Vec<_>>(),
                );
        }
    }
    Ok(r)
}

pub fn construct(n: usize, displacement: &str) -> Result<Report> {
    let d = parse_ratio(displacement)?;
    let built = construct_prescribed(n, &d)
        .map_err(|e| anyhow!("invalid --displacement `{displacement}`: {e}"))?;
    let error = (&built.achieved - &d).abs();
    let mut r = Report::new("construct", n);
    r.input("n", n).input("displacement", ratio(&d));
    r.result("achieved", ratio(&built.achieved))
        .result("error", ratio(&error))
        .result("block", built.block)
        .result("permutation", perm(&built.permutation));
    Ok(r)
}

pub fn sample(n: usize, trials: u64, seed: u64, epsilons: &[f64]) -> Result<Report> {
    if let Some(e) = epsilons.iter().find(|e| !(e.is_finite() && **e > 0.0)) {
        bail!("invalid --epsilons value `{e}`: must be positive");
    }
    let stats = empirical_stats(n, trials, seed, epsilons)?;
    let expected: ExactRatio = average_displacement_exact(n);
    let center = expected.floor().to_integer().to_f64().unwrap_or(f64::MAX);
    let (lo, hi) = (center - 3.0, center + 3.0);
    let rows = concentration_report(&stats);
    let mut r = Report::new("sample", n);
    r.input("n", n)
        .input("trials", trials)
        .input("seed", seed)
        .input("epsilons", json!(epsilons));
    r.result("expected_mean", ratio(&expected))
        .result("mean_exact", ratio(&stats.mean_exact))
        .result("mean", stats.mean)
        .result("median", stats.median)
        .result("std_dev", stats.std_dev())
        .result(
            "window",
            json!({ "lo": lo, "hi": hi, "fraction": stats.fraction_between(lo, hi) }),
        )
        .result(
            "concentration",
            rows.iter()
                .map(|row| {
                    json!({
                        "epsilon": row.epsilon,
                        "empirical": row.empirical,
                        "bound": row.bound,
                        "holds": row.holds(),
                    })
                })
                .collect::<Vec<_>>(),
        )
        .result(
            "histogram",
            stats
                .histogram
                .iter()
                .map(|b| json!({ "lo": b.lo, "hi": b.hi, "count": b.count }))
                .collect::<Vec<_>>(),
        );
    if !rows.iter().all(|row| row.holds()) {
        r.status = Status::Failed;
    }
    r.histogram = Some(stats.histogram);
    Ok(r)
}

fn rule_name(rule: ImprovementRule) -> &'static str {
    match rule {
        ImprovementRule::DisjointSameDirection => "disjoint-same-direction",
        ImprovementRule::ShortCrossesOpposite => "short-crosses-opposite",
        ImprovementRule::ShortDisjointOpposite => "short-disjoint-opposite",
        ImprovementRule::DisjointOpposite => "disjoint-opposite",
        ImprovementRule::BridgesLongOpposite => "bridges-long-opposite",
    }
}

pub fn improve(input: &PermInput, stat: Option<Stat>) -> Result<Report> {
    let (p, echo) = read_perm(input)?;
    let mut r = Report::new("improve", p.len());
    r.inputs = echo.as_object().cloned().unwrap_or_default();
    if let Some(s) = stat {
        r.input("stat", if s == Stat::Disp { "disp" } else { "s-star" });
    }
    if stat == Some(Stat::SPlus) {
        bail!("invalid --stat `s-plus`: improve supports disp and s-star");
    }
    if stat != Some(Stat::SStar) {
        let mut steps = Vec::new();
        let mut current = p.clone();
        loop {
            steps.push(json!({
                "step": steps.len(),
                "permutation": perm(&current),
                "displacement": ratio(&displacement(&current)),
            }));
            match improve_noncrossing(&current) {
                Ok(next) => current = next,
                Err(Error::AlreadyCrossing) => break,
                Err(e) => return Err(e.into()),
            }
        }
        r.result(
            "displacement",
            json!({ "steps": steps, "final": perm(&current) }),
        );
    }
    if stat != Some(Stat::Disp) {
        let mut cycle = perm_to_cycle(&p);
        let mut steps = vec![json!({
            "step": 0,
            "permutation": perm(&cycle_to_perm(&cycle)),
            "cycle_stat": product(&cycle_stat(&cycle)),
        })];
        while let Some(imp) = find_improvement(&cycle) {
            cycle = imp.cycle;
            steps.push(json!({
                "step": steps.len(),
                "rule": rule_name(imp.rule),
                "jumps": [imp.jumps.0, imp.jumps.1],
                "permutation": perm(&cycle_to_perm(&cycle)),
                "cycle_stat": product(&cycle_stat(&cycle)),
            }));
        }
        r.result(
            "cycle",
            json!({ "steps": steps, "final": perm(&cycle_to_perm(&cycle)) }),
        );
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> ExactRatio {
        ExactRatio::new(a.into(), b.into())
    }

    #[test]
    fn ratios_parse() {
        assert_eq!(parse_ratio("1/4").unwrap(), q(1, 4));
        assert_eq!(parse_ratio("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_ratio(".5").unwrap(), q(1, 2));
        assert_eq!(parse_ratio("0").unwrap(), q(0, 1));
        assert_eq!(parse_ratio("-0.1").unwrap(), q(-1, 10));
        for bad in ["", ".", "abc", "1/0x", "1/0", "1e-3", "0.2.5"] {
            assert!(parse_ratio(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn perm_brackets_accepted() {
        let input = PermInput {
            perm: Some("[2,4,1,3]".into()),
            input: None,
        };
        assert_eq!(read_perm(&input).unwrap().0.image(), &[2, 4, 1, 3]);
    }

    #[test]
    fn metrics_example() {
        let input = PermInput {
            perm: Some("2 4 1 3".into()),
            input: None,
        };
        let r = metrics(&input).unwrap();
        let v = &r.results;
        assert_eq!(v["displacement"], "3/2");
        assert_eq!(v["s_plus"], "7/3");
        assert_eq!(v["s_star"], json!({"product": "12", "root": 3}));
        assert_eq!(v["spread"], 3);
        assert_eq!(v["dispersion"], "2/3");
        assert_eq!(v["min_delay"], 1);
        assert_eq!(v["crossing"], false);
    }
}
