//! Acceptance criteria 1 to 9. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{char_poly, cubic_coefficients, grid, grid_families};
use spf_core::graph::{complete, cycle, star};
use spf_core::harness::{
    lemma23_campaign, lemma23_sweep, scan_small, sharpness_probe, theorem_check, verify_proof_inequalities,
    EdgeSchedule,
};
use spf_core::parity::{criterion_check, oracle_check};
use spf_core::report::{HarnessReport, Tolerances};
use spf_core::spectra::{cubic_roots, quotient, rho};
use spf_core::{Graph, VertexSet};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact_identities() -> Outcome {
    let families = grid_families();
    for (name, f, closed) in &families {
        let q = quotient(&f.graph, &f.blocks).map_err(|e| format!("{name}: {e}"))?;
        let m = q
            .integer_matrix()
            .ok_or_else(|| format!("{name}: partition not equitable"))?;
        let det = cubic_coefficients(&char_poly(&m));
        ensure(det == *closed, || {
            format!("{name}: closed form {closed:?} vs determinant {det:?}")
        })?;
    }
    Ok(format!("{} family members", families.len()))
}

fn quotient_consistency() -> Outcome {
    let families = grid_families();
    let mut worst = 0.0f64;
    for (name, f, c) in &families {
        let root = cubic_roots(&spf_core::spectra::CubicPoly::new(
            c[0] as f64,
            c[1] as f64,
            c[2] as f64,
        ))
        .map_err(|e| format!("{name}: {e}"))?[0];
        let r = rho(&f.graph).map_err(|e| format!("{name}: {e}"))?;
        worst = worst.max((root - r).abs());
        ensure((root - r).abs() <= 1e-8, || format!("{name}: root {root} vs rho {r}"))?;
    }
    let gstar = spf_core::extremal::build_extremal(3, 18).map_err(|e| e.to_string())?;
    let r = rho(&gstar.graph).map_err(|e| e.to_string())?;
    ensure((r - 13.2050).abs() < 5e-5, || format!("rho(G*(3,18)) = {r}"))?;
    Ok(format!("max gap {worst:.2e}, rho(G*(3,18)) = {r:.6}"))
}

fn proof_grid() -> Result<HarnessReport, String> {
    let mut all = HarnessReport::new();
    for (d, n) in grid() {
        all.extend(
            verify_proof_inequalities(d, n, None, Tolerances::default()).map_err(|e| format!("({d},{n}): {e}"))?,
        );
    }
    all.sort();
    Ok(all)
}

fn proof_inequalities() -> Outcome {
    let rep = proof_grid()?;
    for id in [
        "eq3.3",
        "eq3.6",
        "eq3.7",
        "eq3.9-identity",
        "eq3.10",
        "eq3.10-h",
        "eq3.11",
        "case1-strict",
        "case3-strict",
    ] {
        ensure(rep.rows_for(id).next().is_some(), || format!("no {id} rows"))?;
    }
    ensure(rep.rows.iter().all(|r| r.audit()), || "row fails its own audit".into())?;
    let failed: Vec<_> = rep.failed().collect();
    ensure(failed.iter().all(|r| r.witness.is_some()), || {
        "failed row without witness".into()
    })?;
    ensure(failed.is_empty(), || {
        format!("{} failed rows, first: {}", failed.len(), failed[0].to_csv())
    })?;
    Ok(format!("{} rows, 0 failed", rep.rows.len()))
}

fn lemma23_reports() -> Result<(HarnessReport, HarnessReport), String> {
    let tol = Tolerances::default();
    let sweep = lemma23_sweep(3, 1, 5, 18, tol).map_err(|e| e.to_string())?;
    let campaign = lemma23_campaign(500, 2023, tol).map_err(|e| e.to_string())?;
    Ok((sweep, campaign))
}

fn lemma23() -> Outcome {
    let (sweep, campaign) = lemma23_reports()?;
    for (label, rep) in [("sweep", &sweep), ("campaign", &campaign)] {
        let failed: Vec<_> = rep.failed().collect();
        ensure(failed.is_empty(), || {
            format!("{label}: {} failed, first {}", failed.len(), failed[0].to_csv())
        })?;
        ensure(rep.rows_for("lemma2.3-equality").next().is_some(), || {
            format!("{label}: no equality row")
        })?;
    }
    let sweep_n = sweep.rows_for("lemma2.3").count();
    ensure(sweep.rows_for("lemma2.3").all(|r| r.witness.is_some()), || {
        "missing partition witness".into()
    })?;
    let random_n = campaign.rows_for("lemma2.3").count();
    ensure(random_n == 500, || format!("{random_n} random instances"))?;
    let near = sweep.rows_for("lemma2.3-near-equality").count() + campaign.rows_for("lemma2.3-near-equality").count();
    Ok(format!(
        "{sweep_n} swept partitions, {random_n} random instances, {near} near-equalities recorded"
    ))
}

/// c(n) = 2^C(n,2) - Σ_{k<n} C(n-1,k-1) c(k) 2^C(n-k,2)
fn connected_census(n: usize) -> u64 {
    let choose = |n: u64, k: u64| (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
    let mut c = vec![0u64; n + 1];
    for m in 1..=n as u64 {
        let mut total = 1u64 << (m * (m - 1) / 2);
        for k in 1..m {
            total -= choose(m - 1, k - 1) * c[k as usize] * (1u64 << ((m - k) * (m - k - 1) / 2));
        }
        c[m as usize] = total;
    }
    c[n]
}

fn agreement_scan() -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| e.to_string())?;
    let rep = pool.install(|| scan_small(6)).map_err(|e| e.to_string())?;
    let mut summary = Vec::new();
    for n in 1..=6 {
        let count_id = format!("scan-n{n}-count");
        let count = rep.rows_for(&count_id).next().ok_or("missing count row")?;
        let census = connected_census(n);
        ensure(count.lhs as u64 == census, || {
            format!("n={n}: scanned {} vs census {census}", count.lhs)
        })?;
        let id = format!("scan-n{n}");
        let row = rep.rows_for(&id).next().ok_or("missing summary row")?;
        ensure(row.passed, || format!("n={n}: {} discrepancies", row.lhs))?;
        summary.push(format!("{census}"));
    }
    ensure(rep.all_passed(), || "discrepancy rows present".into())?;
    Ok(format!(
        "connected graphs per order {}, 0 discrepancies",
        summary.join("/")
    ))
}

fn set(v: &[usize]) -> VertexSet {
    v.iter().copied().collect()
}

fn known_verdicts() -> Outcome {
    let verdicts = |g: &Graph| -> Result<(spf_core::parity::SpfVerdict, spf_core::parity::SpfVerdict), String> {
        Ok((
            criterion_check(g).map_err(|e| e.to_string())?,
            oracle_check(g).map_err(|e| e.to_string())?,
        ))
    };
    let k2 = complete(2).unwrap();
    let (c, o) = verdicts(&k2)?;
    ensure(!c.has_spf && !o.has_spf, || "K2 has a factor".into())?;
    ensure(o.witness == Some(VertexSet::EMPTY), || {
        format!("K2 oracle witness {:?}", o.witness)
    })?;
    ensure(c.witness.is_some_and(|s| s.len() <= 1), || {
        format!("K2 criterion witness {:?}", c.witness)
    })?;

    let c4 = cycle(4).unwrap();
    let (c, o) = verdicts(&c4)?;
    ensure(!c.has_spf && !o.has_spf, || "C4 has a factor".into())?;
    let opposite = |s: Option<VertexSet>| s == Some(set(&[0, 2])) || s == Some(set(&[1, 3]));
    ensure(opposite(c.witness) && opposite(o.witness), || {
        format!("C4 witnesses {:?} {:?}", c.witness, o.witness)
    })?;

    let k13 = star(3).unwrap();
    let (c, o) = verdicts(&k13)?;
    ensure(!c.has_spf && !o.has_spf, || "K_{1,3} has a factor".into())?;

    let k4 = complete(4).unwrap();
    let (c, o) = verdicts(&k4)?;
    ensure(c.has_spf && o.has_spf, || "K4 lacks a factor".into())?;
    Ok("K2, C4, K_{1,3} without; K4 with".into())
}

fn theorem_report() -> Result<HarnessReport, String> {
    theorem_check(3, 18, 1000, 42, EdgeSchedule::default()).map_err(|e| e.to_string())
}

fn theorem() -> Outcome {
    let rep = theorem_report()?;
    let samples = rep.rows_for("theorem-sample").count();
    ensure(samples == 1000, || format!("{samples} sample rows"))?;
    let cx = rep
        .rows_for("theorem-counterexamples")
        .next()
        .ok_or("no counterexample row")?;
    let hit = rep.rows_for("theorem-hit-rate").next().ok_or("no hit-rate row")?;
    ensure(cx.passed, || {
        let first = rep.failed().next().map(|r| r.to_csv()).unwrap_or_default();
        format!("{} counterexamples, first {first}", cx.lhs)
    })?;
    Ok(format!("0 counterexamples, hit rate {}/{}", hit.lhs, hit.rhs))
}

fn sharpness() -> Outcome {
    let rep = sharpness_probe(3, 18).map_err(|e| e.to_string())?;
    let verdict = rep.rows_for("sharpness-criterion").next().ok_or("no verdict row")?;
    let margin = rep.rows_for("sharpness-max-margin").next().ok_or("no margin row")?;
    let cross: Vec<_> = rep.rows_for("sharpness-oracle").collect();
    ensure(
        !cross.is_empty() && cross.iter().all(|r| r.params.n.unwrap() <= 12),
        || "no small cross-checks".into(),
    )?;
    ensure(cross.iter().all(|r| r.passed), || {
        "criterion and oracle disagree on a family member".into()
    })?;
    Ok(format!(
        "G*(3,18) has factor = {}, max margin {} at {}, {} cross-checks agree",
        verdict.lhs == 1.0,
        margin.lhs,
        margin.witness.as_deref().unwrap_or(""),
        cross.len()
    ))
}

fn determinism() -> Outcome {
    let a = (proof_grid()?.to_csv(), lemma23_reports()?, theorem_report()?.to_csv());
    let b = (proof_grid()?.to_csv(), lemma23_reports()?, theorem_report()?.to_csv());
    ensure(a.0 == b.0, || "proof-inequality report differs".into())?;
    ensure(
        a.1 .0.to_csv() == b.1 .0.to_csv() && a.1 .1.to_csv() == b.1 .1.to_csv(),
        || "partition report differs".into(),
    )?;
    ensure(a.2 == b.2, || "theorem report differs".into())?;
    Ok("criteria 3, 4 and 7 byte-identical on rerun".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "1 exact polynomial identities",
            Duration::from_secs(1),
            exact_identities,
        ),
        (
            "2 quotient root equals spectral radius",
            Duration::from_secs(10),
            quotient_consistency,
        ),
        ("3 proof-inequality suite", Duration::from_secs(60), proof_inequalities),
        ("4 clique-concentration suite", Duration::from_secs(300), lemma23),
        (
            "5 criterion-vs-oracle agreement scan",
            Duration::from_secs(600),
            agreement_scan,
        ),
        ("6 known verdicts", Duration::from_secs(1), known_verdicts),
        ("7 randomized theorem check", Duration::from_secs(300), theorem),
        ("8 sharpness probe", Duration::from_secs(120), sharpness),
        ("9 determinism", Duration::from_secs(900), determinism),
    ];
    let mut failures = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > limit => Err(format!("{detail}; took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {name} ({took:.2?}): {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {name} ({took:.2?}): {detail}");
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
