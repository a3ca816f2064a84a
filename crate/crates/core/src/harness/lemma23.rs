//! Concentrating clique sizes raises the spectral radius of `K_s ∨ (⋃ K_{nᵢ})`.
//!
//! For parts `n₁ ≥ … ≥ n_t ≥ p` summing to `n - s`, the join with parts
//! `(n - s - p(t-1), p, …, p)` has the largest spectral radius, attained
//! only by that partition.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extremal::{build_general, PartitionSpec};
use crate::report::{Comparator, HarnessReport, Params, Row, Tolerances};
use crate::rng::SplitMix64;
use crate::spectra::rho;

/// Gap below which a non-extremal partition is reported as near-equal.
const NEAR_EQUALITY: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaInstance {
    pub s: usize,
    pub p: usize,
    pub t: usize,
    pub n: usize,
}

impl LemmaInstance {
    fn validate(&self) -> Result<()> {
        let LemmaInstance { s, p, t, n } = *self;
        if s == 0 || p == 0 || t == 0 {
            return Err(Error::invalid(format!("need s, p, t >= 1, got s={s} p={p} t={t}")));
        }
        if n < s || n - s < p * t {
            return Err(Error::invalid(format!(
                "no partition of n - s = {} into {t} parts of size >= {p}",
                n.saturating_sub(s)
            )));
        }
        Ok(())
    }

    fn extremal_parts(&self) -> Vec<usize> {
        let mut parts = vec![self.p; self.t];
        parts[0] = self.n - self.s - self.p * (self.t - 1);
        parts
    }

    fn params(&self) -> Params {
        Params::new().n(self.n).s(self.s)
    }

    fn rho_of(&self, parts: &[usize]) -> Result<f64> {
        let family = build_general(&PartitionSpec {
            s: self.s,
            parts: parts.to_vec(),
        })?;
        rho(&family.graph)
    }
}

/// A uniformly drawn composition of the surplus `n - s - pt` over the `t`
/// parts, sorted descending.
fn sample_parts(inst: &LemmaInstance, rng: &mut SplitMix64) -> Vec<usize> {
    let mut parts = vec![inst.p; inst.t];
    for _ in 0..inst.n - inst.s - inst.p * inst.t {
        parts[rng.below(inst.t)] += 1;
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// All descending partitions of `total` into `t` parts, each in `min..=max`.
fn partitions(total: usize, t: usize, min: usize, max: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, t: usize, min: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if t == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let hi = max.min(rest - min * (t - 1));
        let lo = min.max(rest.div_ceil(t));
        for x in (lo..=hi).rev() {
            cur.push(x);
            go(rest - x, t - 1, min, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if total >= t * min {
        go(total, t, min, max, &mut Vec::new(), &mut out);
    }
    out
}

fn compare_rows(
    inst: &LemmaInstance,
    parts_list: &[Vec<usize>],
    seed: Option<u64>,
    tol: Tolerances,
) -> Result<Vec<Row>> {
    let extremal = inst.extremal_parts();
    let upper = inst.rho_of(&extremal)?;
    let mut params = inst.params();
    if let Some(seed) = seed {
        params = params.seed(seed);
    }
    let witness = |parts: &[usize]| format!("p={} t={} parts={:?}", inst.p, inst.t, parts);
    let rows: Vec<Vec<Row>> = parts_list
        .par_iter()
        .map(|parts| {
            let lhs = inst.rho_of(parts)?;
            let mut out = vec![Row::new("lemma2.3", params, lhs, upper, tol.less_eq()).with_witness(witness(parts))];
            if *parts != extremal && (upper - lhs).abs() <= NEAR_EQUALITY {
                out.push(
                    Row::new("lemma2.3-near-equality", params, lhs, upper, Comparator::Record)
                        .with_witness(witness(parts)),
                );
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut rows: Vec<Row> = rows.into_iter().flatten().collect();
    let same = inst.rho_of(&extremal)?;
    rows.push(Row::new("lemma2.3-equality", params, same, upper, tol.equal()).with_witness(witness(&extremal)));
    Ok(rows)
}

/// `trials` random valid partitions for one `(s, p, t, n)`, plus the
/// equality row for the extremal partition.
pub fn verify_lemma23(s: usize, p: usize, t: usize, n: usize, trials: usize, seed: u64) -> Result<HarnessReport> {
    verify_lemma23_with(LemmaInstance { s, p, t, n }, trials, seed, Tolerances::default())
}

pub fn verify_lemma23_with(inst: LemmaInstance, trials: usize, seed: u64, tol: Tolerances) -> Result<HarnessReport> {
    inst.validate()?;
    let mut rng = SplitMix64::new(seed);
    let parts: Vec<Vec<usize>> = (0..trials).map(|_| sample_parts(&inst, &mut rng)).collect();
    let mut report = HarnessReport::new();
    for row in compare_rows(&inst, &parts, Some(seed), tol)? {
        report.push(row);
    }
    report.sort();
    Ok(report)
}

/// Every valid partition of `n - s` into `t` parts of size at least `p`.
pub fn lemma23_sweep(s: usize, p: usize, t: usize, n: usize, tol: Tolerances) -> Result<HarnessReport> {
    let inst = LemmaInstance { s, p, t, n };
    inst.validate()?;
    let all = partitions(n - s, t, p, n - s);
    let mut report = HarnessReport::new();
    for row in compare_rows(&inst, &all, None, tol)? {
        report.push(row);
    }
    report.sort();
    Ok(report)
}

/// `instances` random `(s, p, t, n)` with `s ≤ 5`, `p ≤ 4`, `t ≤ 6` and a
/// surplus of at most 12, one random partition each.
pub fn lemma23_campaign(instances: usize, seed: u64, tol: Tolerances) -> Result<HarnessReport> {
    let mut rng = SplitMix64::new(seed);
    let mut jobs = Vec::with_capacity(instances);
    for _ in 0..instances {
        let s = 1 + rng.below(5);
        let p = 1 + rng.below(4);
        let t = 1 + rng.below(6);
        let n = s + p * t + rng.below(13);
        let inst = LemmaInstance { s, p, t, n };
        let parts = sample_parts(&inst, &mut rng);
        jobs.push((inst, parts));
    }
    let rows: Vec<Vec<Row>> = jobs
        .par_iter()
        .map(|(inst, parts)| compare_rows(inst, std::slice::from_ref(parts), Some(seed), tol))
        .collect::<Result<_>>()?;
    let mut report = HarnessReport::new();
    for row in rows.into_iter().flatten() {
        report.push(row);
    }
    report.sort();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_enumeration() {
        assert_eq!(partitions(5, 2, 1, 5), vec![vec![4, 1], vec![3, 2]]);
        // p(15 into exactly 5 parts) = 30
        assert_eq!(partitions(15, 5, 1, 15).len(), 30);
        assert!(partitions(3, 2, 2, 3).is_empty());
    }

    #[test]
    fn small_example() {
        let inst = LemmaInstance { s: 2, p: 1, t: 3, n: 9 };
        let lhs = inst.rho_of(&[4, 2, 1]).unwrap();
        let rhs = inst.rho_of(&[5, 1, 1]).unwrap();
        assert!(lhs < rhs);
    }

    #[test]
    fn random_trials_pass() {
        let rep = verify_lemma23(2, 1, 3, 9, 20, 7).unwrap();
        assert!(rep.all_passed());
        assert_eq!(rep.rows_for("lemma2.3").count(), 20);
        assert_eq!(rep.rows_for("lemma2.3-equality").count(), 1);
    }

    #[test]
    fn sampled_parts_are_valid() {
        let inst = LemmaInstance {
            s: 3,
            p: 2,
            t: 4,
            n: 20,
        };
        let mut rng = SplitMix64::new(3);
        for _ in 0..100 {
            let parts = sample_parts(&inst, &mut rng);
            assert_eq!(parts.iter().sum::<usize>(), 17);
            assert!(parts.windows(2).all(|w| w[0] >= w[1]));
            assert!(*parts.last().unwrap() >= 2);
        }
    }

    #[test]
    fn infeasible_instance() {
        assert!(verify_lemma23(3, 2, 5, 12, 1, 0).is_err());
        assert!(verify_lemma23(0, 1, 1, 3, 1, 0).is_err());
    }
}
