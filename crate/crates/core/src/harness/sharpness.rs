//! Does `G*` itself lack a strong parity factor?
//!
//! The probe measures rather than asserts: every row except the
//! criterion-versus-oracle agreement checks is a [`Comparator::Record`].

use crate::error::{Error, Result};
use crate::extremal::build_extremal;
use crate::parity::{
    criterion_check, max_margin_subset, oracle_check, CRITERION_MAX_ORDER, FACTOR_MAX_EDGES, ORACLE_MAX_ORDER,
};
use crate::report::{Comparator, HarnessReport, Params, Row};

fn bit(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// Rows:
///
/// * `sharpness-criterion`: verdict on `G*(δ, n)` (1 = has a factor) and the
///   failing `S`, if any;
/// * `sharpness-max-margin`: the largest `c(G-S) - (Σ_S d - 2|S| + 1)` and
///   its subset (positive means the criterion fails there);
/// * `sharpness-contradiction`: 1 when `G*` has a factor although the
///   theorem singles it out as the exception;
/// * `sharpness-oracle`: criterion against brute force on `G*(δ, n')` for
///   every `n' ≤ 12` the oracle budget allows.
pub fn sharpness_probe(delta: usize, n: usize) -> Result<HarnessReport> {
    if n > CRITERION_MAX_ORDER {
        return Err(Error::SizeLimit(format!(
            "criterion scan budget is n <= {CRITERION_MAX_ORDER}, got {n}"
        )));
    }
    let family = build_extremal(delta, n)?;
    let g = &family.graph;
    let params = Params::new().delta(delta).n(n);
    let range_note = if family.below_theorem_range {
        " (below n >= 2 delta^2)"
    } else {
        ""
    };
    let mut report = HarnessReport::new();

    let verdict = criterion_check(g)?;
    let failing = verdict
        .witness
        .map(|s| format!("S={s:?}"))
        .unwrap_or_else(|| "S=none".to_string());
    report.push(
        Row::new(
            "sharpness-criterion",
            params,
            bit(verdict.has_spf),
            0.0,
            Comparator::Record,
        )
        .with_witness(format!("{failing}{range_note}")),
    );

    let (s, def) = max_margin_subset(g)?;
    report.push(
        Row::new(
            "sharpness-max-margin",
            params,
            def.margin() as f64,
            0.0,
            Comparator::Record,
        )
        .with_witness(format!(
            "S={s:?} components={} degree_sum={} size={}",
            def.components, def.degree_sum, def.size
        )),
    );
    report.push(
        Row::new(
            "sharpness-contradiction",
            params,
            bit(verdict.has_spf),
            0.0,
            Comparator::Record,
        )
        .with_witness(format!("family {}{range_note}", family.kind.as_str())),
    );

    let first = delta * (delta - 1) + 2;
    let mut cross_checked = 0;
    for m in first..=ORACLE_MAX_ORDER {
        let small = build_extremal(delta, m)?;
        if small.graph.size() > FACTOR_MAX_EDGES {
            break;
        }
        let c = criterion_check(&small.graph)?;
        let o = oracle_check(&small.graph)?;
        let detail = |v: Option<crate::graph::VertexSet>| v.map(|s| format!("{s:?}")).unwrap_or_else(|| "none".into());
        report.push(
            Row::new(
                "sharpness-oracle",
                Params::new().delta(delta).n(m),
                bit(c.has_spf),
                bit(o.has_spf),
                Comparator::Equal { tol: 0.0 },
            )
            .with_witness(format!(
                "criterion S={} oracle X={}",
                detail(c.witness),
                detail(o.witness)
            )),
        );
        cross_checked += 1;
    }
    if cross_checked == 0 {
        report.push(
            Row::new(
                "sharpness-oracle-skipped",
                params,
                first as f64,
                ORACLE_MAX_ORDER as f64,
                Comparator::Record,
            )
            .with_witness("smallest family member exceeds the oracle budget"),
        );
    }
    report.sort();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_member_cross_checks() {
        let rep = sharpness_probe(3, 8).unwrap();
        assert!(rep.all_passed());
        let n8 = rep
            .rows_for("sharpness-oracle")
            .find(|r| r.params.n == Some(8))
            .unwrap();
        assert!(n8.passed);
        assert_eq!(rep.rows_for("sharpness-oracle").count(), 3);
    }

    #[test]
    fn delta_four_skips_oracle() {
        let rep = sharpness_probe(4, 14).unwrap();
        assert_eq!(rep.rows_for("sharpness-oracle-skipped").count(), 1);
    }

    #[test]
    fn budget() {
        assert!(matches!(sharpness_probe(3, 25), Err(Error::SizeLimit(_))));
        assert!(sharpness_probe(3, 7).is_err());
    }
}
