//! Instance checks of every inequality in the spectral bound's case
//! analysis.
//!
//! For a fixed `(δ, n)` the cut size `s` splits into three regimes:
//! `s ≥ δ+1` (compare `G₂` with `G*` through `φ_{B₂}` and `g`), `s = δ`
//! (`G₂` is `G*`), and `s ≤ δ-1` (compare `G₃` with `G*` through `φ_{B₃}`,
//! `h` and `φ'_{B₃}`). Every step of each chain becomes one row. Exact
//! identities compare integers with zero tolerance; numeric inequalities use
//! the configured margins.
//!
//! `η*` is always the largest root of the exact `φ_{B*}`; the graph-side
//! `ρ(G*)` appears only in its own cross-check row.

use crate::error::{Error, Result};
use crate::extremal::{
    bounds, build_case1, build_case3, build_extremal, build_general, case3_min_order, g_poly, h_poly, phi_b2, phi_b3,
    phi_b3_prime_poly, phi_bstar, pivot, IntCubic, PartitionSpec,
};
use crate::graph::{Graph, MAX_ORDER};
use crate::io::to_graph6;
use crate::report::{Comparator, HarnessReport, Params, Row, Tolerances};
use crate::spectra::{cubic_roots, rho};

struct Rows {
    report: HarnessReport,
    tol: Tolerances,
}

impl Rows {
    fn push(&mut self, row: Row, witness: impl FnOnce() -> String) {
        let row = if row.passed { row } else { row.with_witness(witness()) };
        self.report.push(row);
    }

    fn exact(&mut self, id: &str, p: Params, lhs: i128, rhs: i128, witness: impl FnOnce() -> String) {
        let row = Row::new(id, p, lhs as f64, rhs as f64, Comparator::Equal { tol: 0.0 });
        // Integers beyond 2^53 would compare inexactly as floats.
        let row = Row {
            passed: lhs == rhs,
            ..row
        };
        self.push(row, witness);
    }
}

fn phi_witness(name: &str, c: IntCubic) -> String {
    format!("{name}=[{},{},{}]", c.c2, c.c1, c.c0)
}

fn graph_witness(g: &Graph) -> String {
    to_graph6(g).unwrap_or_else(|_| crate::io::to_edge_list(g))
}

/// Near-equal part sizes, each at least `min`, summing to `total`, sorted
/// descending.
pub(crate) fn balanced_parts(total: usize, t: usize, min: usize) -> Option<Vec<usize>> {
    if t == 0 || total < t * min {
        return None;
    }
    let base = total / t;
    let extra = total % t;
    Some((0..t).map(|i| base + usize::from(i < extra)).collect())
}

/// Largest cut size the case analysis allows, `⌊(n-2)/(δ-1)⌋`.
pub fn max_cut_size(delta: usize, n: usize) -> usize {
    n.saturating_sub(2) / (delta - 1)
}

/// Rows for every `s` in `s_range` (default: `1..=⌊(n-2)/(δ-1)⌋`).
pub fn verify_proof_inequalities(
    delta: usize,
    n: usize,
    s_range: Option<(usize, usize)>,
    tol: Tolerances,
) -> Result<HarnessReport> {
    if delta < 3 {
        return Err(Error::invalid(format!("delta must be at least 3, got {delta}")));
    }
    if (n as u128) < 2 * (delta as u128).pow(2) {
        return Err(Error::invalid(format!(
            "need n >= 2 delta^2 = {}, got {n}",
            2 * delta * delta
        )));
    }
    let s_max = max_cut_size(delta, n);
    let (lo, hi) = s_range.unwrap_or((1, s_max));
    if lo == 0 || lo > hi || hi > s_max {
        return Err(Error::invalid(format!(
            "s range {lo}..{hi} must lie within 1..{s_max} for delta = {delta}, n = {n}"
        )));
    }

    let graphs = n <= MAX_ORDER;
    let mut rows = Rows {
        report: HarnessReport::new(),
        tol,
    };
    let base = Params::new().delta(delta).n(n);
    let bstar = phi_bstar(delta, n)?;
    let eta = cubic_roots(&bstar.to_poly())?[0];
    let x0 = pivot(delta, n)?;

    if graphs {
        let gstar = build_extremal(delta, n)?;
        let r = rho(&gstar.graph)?;
        let row = Row::new("gstar-rho", base, r, eta, tol.equal());
        rows.push(row, || phi_witness("phi_Bstar", bstar));
    }
    let row = Row::new("eq3.5", base, x0 as f64, eta, tol.less());
    rows.push(row, || phi_witness("phi_Bstar", bstar));

    if hi > delta {
        case1_common(&mut rows, delta, n)?;
    }
    for s in lo..=hi {
        let p = base.s(s);
        if s > delta {
            case1(&mut rows, p, s, delta, n, eta, bstar, graphs)?;
        } else if s == delta {
            case2(&mut rows, p, delta, n, eta, bstar, graphs)?;
        } else if (n as u128) < case3_min_order(s, delta) {
            // No G₁ with minimum degree δ exists for this s.
            let row = Row::new(
                "case3-vacuous",
                p,
                n as f64,
                case3_min_order(s, delta) as f64,
                Comparator::Record,
            );
            rows.push(row, String::new);
        } else {
            case3(&mut rows, p, s, delta, n, eta, bstar, graphs)?;
        }
    }
    let mut report = rows.report;
    report.sort();
    Ok(report)
}

fn case1_common(rows: &mut Rows, delta: usize, n: usize) -> Result<()> {
    let p = Params::new().delta(delta).n(n);
    let tol = rows.tol;
    let at_min = bounds::g_bound_in_n(delta, 2 * delta * delta)?;
    let fin = bounds::g_bound_final(delta)?;
    let at_n = bounds::g_bound_in_n(delta, n)?;
    rows.exact("eq3.7-final-identity", p, at_min, fin, || format!("delta={delta}"));
    rows.push(
        Row::new("eq3.7-n-bound", p, fin as f64, at_n as f64, tol.less_eq()),
        || format!("(delta-1)g-bound at n: {at_n}"),
    );
    rows.push(Row::new("eq3.7-final", p, fin as f64, 0.0, tol.greater()), || {
        format!("delta={delta}")
    });
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn case1(
    rows: &mut Rows,
    p: Params,
    s: usize,
    delta: usize,
    n: usize,
    eta: f64,
    bstar: IntCubic,
    graphs: bool,
) -> Result<()> {
    let tol = rows.tol;
    let b2 = phi_b2(s, delta, n)?;
    let g = g_poly(s, delta, n)?;
    let x0 = pivot(delta, n)?;
    let w = || phi_witness("phi_B2", b2);
    let [theta1, theta2, _] = cubic_roots(&b2.to_poly())?;

    let interlace = n as f64 - ((delta - 1) * s) as f64 - 2.0;
    rows.push(Row::new("eq3.3", p, theta2, interlace, tol.less_eq()), w);
    let tail = n as f64 - (delta * delta) as f64 - 1.0;
    rows.push(Row::new("eq3.3-tail", p, interlace, tail, tol.less_eq()), w);
    rows.push(Row::new("eq3.5-theta2", p, theta2, eta, tol.less()), w);

    // φ_{B₂} - φ_{B*} = (s - δ) g, coefficientwise.
    let k = s as i64 - delta as i64;
    let diff = [b2.c2 - bstar.c2, b2.c1 - bstar.c1, b2.c0 - bstar.c0];
    let scaled = [k * g.a, k * g.b, k * g.c];
    let worst = diff
        .iter()
        .zip(&scaled)
        .map(|(a, b)| (a - b).unsigned_abs())
        .max()
        .unwrap_or(0);
    rows.exact("eq3.6-identity", p, worst as i128, 0, w);
    rows.push(Row::new("eq3.6", p, b2.eval(eta), 0.0, tol.greater()), w);

    let axis = ((delta - 2) * s + delta * delta + 3 - 3 * delta) as f64 / (2 * (delta - 2)) as f64;
    rows.push(Row::new("eq3.7-axis", p, axis, x0 as f64, tol.less()), w);
    rows.push(
        Row::new("eq3.7-monotone", p, g.eval(eta), g.eval(x0 as f64), tol.greater()),
        w,
    );
    let g_x0 = g.eval_exact(x0)?;
    rows.exact("eq3.7-expand", p, g_x0, bounds::g_at_pivot(s, delta, n)?, w);
    let scaled_g = (delta as i128 - 1) * g_x0;
    let in_n = bounds::g_bound_in_n(delta, n)?;
    rows.push(
        Row::new("eq3.7-s-bound", p, in_n as f64, scaled_g as f64, tol.less_eq()),
        w,
    );
    rows.push(Row::new("eq3.7", p, g.eval(eta), 0.0, tol.greater()), w);

    rows.push(Row::new("case1-chain", p, theta1, eta, tol.less()), w);

    if graphs {
        let g2 = build_case1(s, delta, n)?;
        let r2 = rho(&g2.graph)?;
        rows.push(Row::new("case1-rho", p, r2, theta1, tol.equal()), || {
            graph_witness(&g2.graph)
        });
        rows.push(Row::new("case1-strict", p, r2, eta, tol.less()), || {
            graph_witness(&g2.graph)
        });

        let t = (delta - 2) * s + 2;
        if let Some(parts) = balanced_parts(n - s, t, 1) {
            lemma_chain_rows(rows, p, s, parts, r2, "eq3.2")?;
        }
    }
    Ok(())
}

/// `(3.1)` and one Lemma 2.3 instance (`id`) for the balanced `G₁`.
fn lemma_chain_rows(rows: &mut Rows, p: Params, s: usize, parts: Vec<usize>, upper: f64, id: &str) -> Result<()> {
    let tol = rows.tol;
    let g1 = build_general(&PartitionSpec { s, parts })?;
    let r1 = rho(&g1.graph)?;
    rows.push(Row::new(id, p, r1, upper, tol.less_eq()), || graph_witness(&g1.graph));
    let (u, v) = g1.graph.edges()[0];
    let sub = g1.graph.without_edge(u, v);
    let r = rho(&sub)?;
    rows.push(Row::new("eq3.1", p, r, r1, tol.less()), || graph_witness(&sub));
    Ok(())
}

fn case2(rows: &mut Rows, p: Params, delta: usize, n: usize, eta: f64, bstar: IntCubic, graphs: bool) -> Result<()> {
    let b2 = phi_b2(delta, delta, n)?;
    let worst = b2
        .coefficients()
        .iter()
        .zip(bstar.coefficients())
        .map(|(a, b)| (a - b).unsigned_abs())
        .max()
        .unwrap_or(0);
    rows.exact("case2-identity", p, worst as i128, 0, || phi_witness("phi_B2", b2));
    if graphs {
        let t = (delta - 2) * delta + 2;
        if let Some(parts) = balanced_parts(n - delta, t, 1) {
            lemma_chain_rows(rows, p, delta, parts, eta, "case2-lemma2.3")?;
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn case3(
    rows: &mut Rows,
    p: Params,
    s: usize,
    delta: usize,
    n: usize,
    eta: f64,
    bstar: IntCubic,
    graphs: bool,
) -> Result<()> {
    let tol = rows.tol;
    let b3 = phi_b3(s, delta, n)?;
    let h = h_poly(s, delta, n)?;
    let dphi = phi_b3_prime_poly(s, delta, n)?;
    let x0 = pivot(delta, n)?;
    let min_n = 2 * delta * delta;
    let w = || phi_witness("phi_B3", b3);

    // φ_{B₃} - φ_{B*} = (δ - s) h, coefficientwise.
    let k = delta as i64 - s as i64;
    let diff = [b3.c2 - bstar.c2, b3.c1 - bstar.c1, b3.c0 - bstar.c0];
    let scaled = [k * h.a, k * h.b, k * h.c];
    let worst = diff
        .iter()
        .zip(&scaled)
        .map(|(a, b)| (a - b).unsigned_abs())
        .max()
        .unwrap_or(0);
    rows.exact("eq3.9-identity", p, worst as i128, 0, w);

    if h.a > 0 {
        let axis = -(h.b as f64) / (2.0 * h.a as f64);
        rows.push(Row::new("eq3.9-axis", p, axis, x0 as f64, tol.less()), w);
    } else {
        // s = 1: h is linear.
        rows.push(Row::new("eq3.9-slope", p, h.b as f64, 0.0, tol.greater()), w);
    }
    rows.push(
        Row::new("eq3.9-monotone", p, h.eval(eta), h.eval(x0 as f64), tol.greater()),
        w,
    );
    let h_x0 = h.eval_exact(x0)?;
    rows.exact("eq3.9-expand", p, h_x0, bounds::h_at_pivot(s, delta, n)?, w);

    // h at the pivot as a quadratic A n² + B n + C; its axis is (2δ²-3δ+3-s)/2.
    let (si, di) = (s as i128, delta as i128);
    let lead = (di - 2) * si - di + 3;
    let lin = (di - 2) * si * si - (2 * di.pow(3) - 7 * di * di + 10 * di - 9) * si + 2 * di.pow(3) - 9 * di * di
        + 12 * di
        - 9;
    let axis2 = 2 * di * di - 3 * di + 3 - si;
    rows.exact("eq3.9-n-axis-identity", p, -lin, lead * axis2, w);
    rows.push(Row::new("eq3.9-n-lead", p, lead as f64, 0.0, tol.greater()), w);
    rows.push(
        Row::new("eq3.9-n-axis", p, axis2 as f64 / 2.0, min_n as f64, tol.less()),
        w,
    );
    let at_min = bounds::h_at_pivot(s, delta, min_n)?;
    rows.push(
        Row::new("eq3.9-n-bound", p, at_min as f64, h_x0 as f64, tol.less_eq()),
        w,
    );
    let regrouped = bounds::h_bound_at_min_order(s, delta)?;
    rows.exact("eq3.9-min-order-identity", p, at_min, regrouped, w);
    let fin = bounds::h_bound_final(s, delta)?;
    rows.push(
        Row::new("eq3.9-delta-bound", p, fin as f64, regrouped as f64, tol.less_eq()),
        w,
    );
    rows.push(Row::new("eq3.9-final", p, fin as f64, 0.0, tol.greater()), w);

    rows.push(Row::new("eq3.10-h", p, h.eval(eta), 0.0, tol.greater()), w);
    rows.push(Row::new("eq3.10", p, b3.eval(eta), 0.0, tol.greater()), w);

    let d = b3.derivative();
    let worst = [d.a - dphi.a, d.b - dphi.b, d.c - dphi.c]
        .iter()
        .map(|v| v.unsigned_abs())
        .max()
        .unwrap_or(0);
    rows.exact("eq3.11-derivative-identity", p, worst as i128, 0, w);
    rows.push(
        Row::new("eq3.11-axis", p, -(b3.c2 as f64) / 3.0, x0 as f64, tol.less()),
        w,
    );
    let d_x0 = dphi.eval_exact(x0)?;
    rows.exact("eq3.11-expand", p, d_x0, bounds::phi_b3_prime_at_pivot(s, delta, n)?, w);
    let d_min = bounds::phi_b3_prime_at_pivot(s, delta, min_n)?;
    let d_regrouped = bounds::phi_b3_prime_bound_at_min_order(s, delta)?;
    rows.exact("eq3.11-min-order-identity", p, d_min, d_regrouped, w);
    rows.push(
        Row::new("eq3.11-n-bound", p, d_min as f64, d_x0 as f64, tol.less_eq()),
        w,
    );
    let d_fin = bounds::phi_b3_prime_bound_final(s)?;
    rows.push(
        Row::new("eq3.11-delta-bound", p, d_fin as f64, d_regrouped as f64, tol.less_eq()),
        w,
    );
    rows.push(Row::new("eq3.11-final", p, d_fin as f64, 0.0, tol.greater()), w);
    let span = (eta - x0 as f64).max(1.0);
    for x in [
        x0 as f64 + 1e-3,
        x0 as f64 + 0.25 * span,
        x0 as f64 + 0.5 * span,
        x0 as f64 + span,
        eta,
    ] {
        let row = Row::new("eq3.11", p, dphi.eval(x), 0.0, tol.greater());
        rows.push(row, || format!("{} x={x}", phi_witness("phi_B3", b3)));
    }

    let theta1 = cubic_roots(&b3.to_poly())?[0];
    rows.push(Row::new("case3-chain", p, theta1, eta, tol.less()), w);

    if graphs {
        let g3 = build_case3(s, delta, n)?;
        let r3 = rho(&g3.graph)?;
        rows.push(Row::new("case3-rho", p, r3, theta1, tol.equal()), || {
            graph_witness(&g3.graph)
        });
        rows.push(Row::new("case3-strict", p, r3, eta, tol.less()), || {
            graph_witness(&g3.graph)
        });
        let t = (delta - 2) * s + 2;
        if let Some(parts) = balanced_parts(n - s, t, delta + 1 - s) {
            lemma_chain_rows(rows, p, s, parts, r3, "eq3.8")?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced() {
        assert_eq!(balanced_parts(15, 5, 1), Some(vec![3, 3, 3, 3, 3]));
        assert_eq!(balanced_parts(16, 3, 1), Some(vec![6, 5, 5]));
        assert_eq!(balanced_parts(5, 3, 2), None);
    }

    #[test]
    fn smallest_grid_point_passes() {
        let rep = verify_proof_inequalities(3, 18, None, Tolerances::default()).unwrap();
        for r in &rep.rows {
            assert!(r.passed, "{r:?}");
            assert!(r.audit());
        }
        let theta2 = rep.rows_for("eq3.3").find(|r| r.params.s == Some(4)).unwrap();
        assert!((theta2.lhs - 2.89).abs() < 0.01 && theta2.rhs == 8.0);
        let h = rep.rows_for("eq3.10-h").find(|r| r.params.s == Some(1)).unwrap();
        assert!((h.lhs - 165.87).abs() < 0.01, "{}", h.lhs);
    }

    #[test]
    fn single_s_covers_requested_case() {
        let rep = verify_proof_inequalities(3, 18, Some((2, 2)), Tolerances::default()).unwrap();
        assert!(rep.rows_for("case3-chain").count() == 1);
        assert!(rep.rows_for("case1-chain").next().is_none());
    }

    #[test]
    fn bounds_are_validated() {
        let t = Tolerances::default();
        assert!(verify_proof_inequalities(3, 17, None, t).is_err());
        assert!(verify_proof_inequalities(2, 18, None, t).is_err());
        assert!(verify_proof_inequalities(3, 18, Some((0, 3)), t).is_err());
        assert!(verify_proof_inequalities(3, 18, Some((1, 9)), t).is_err());
    }
}
