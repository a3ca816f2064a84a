//! Test-only oracles, written independently of the library's numerics.

#![allow(dead_code)]

use spf_core::extremal::{self, Family};
use spf_core::Graph;

/// Integer polynomial, coefficients lowest degree first.
pub type Poly = Vec<i128>;

fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        out[i] += v;
    }
    out
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn scale(a: &Poly, k: i128) -> Poly {
    a.iter().map(|v| v * k).collect()
}

/// `det(M)` for a matrix of polynomials, by cofactor expansion along the
/// first row.
fn det(m: &[Vec<Poly>]) -> Poly {
    let r = m.len();
    if r == 1 {
        return m[0][0].clone();
    }
    let mut total: Poly = vec![0];
    for j in 0..r {
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = mul(&m[0][j], &det(&minor));
        total = add(&total, &scale(&term, if j % 2 == 0 { 1 } else { -1 }));
    }
    total
}

/// `det(xI - M)`, coefficients lowest degree first.
pub fn char_poly(m: &[Vec<i64>]) -> Poly {
    let r = m.len();
    let entries: Vec<Vec<Poly>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    if i == j {
                        vec![-(m[i][j] as i128), 1]
                    } else {
                        vec![-(m[i][j] as i128)]
                    }
                })
                .collect()
        })
        .collect();
    let mut p = det(&entries);
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

/// `[c2, c1, c0]` of a monic cubic given lowest degree first.
pub fn cubic_coefficients(p: &Poly) -> [i64; 3] {
    assert_eq!(p.len(), 4, "not a cubic: {p:?}");
    assert_eq!(p[3], 1, "not monic: {p:?}");
    [p[2] as i64, p[1] as i64, p[0] as i64]
}

/// Largest real root of a monic cubic by bisection on `[0, B]`, where
/// `B = 1 + max |cᵢ|` bounds every root. Assumes the largest root is positive.
pub fn bisect_largest_root(c: [i64; 3]) -> f64 {
    let f = |x: f64| ((x + c[0] as f64) * x + c[1] as f64) * x + c[2] as f64;
    let mut hi = 1.0 + c.iter().map(|v| v.unsigned_abs()).max().unwrap() as f64;
    // Walk down until the sign changes, so we bracket the largest root.
    let step = hi / 4096.0;
    let mut lo = hi - step;
    while lo > 0.0 && f(lo) > 0.0 {
        hi = lo;
        lo -= step;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Dense adjacency spectral radius: power iteration on `A + I` with a
/// Rayleigh-quotient estimate, stopped when the estimate stalls. Separate
/// from the library's solver.
pub fn naive_rho(g: &Graph) -> f64 {
    let n = g.order();
    let a: Vec<Vec<f64>> = (0..n)
        .map(|u| (0..n).map(|v| if g.has_edge(u, v) { 1.0 } else { 0.0 }).collect())
        .collect();
    let apply = |x: &[f64]| -> Vec<f64> {
        a.iter()
            .map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum())
            .collect()
    };
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut lambda = f64::NAN;
    for _ in 0..100_000 {
        let ax = apply(&x);
        let next: f64 = x.iter().zip(&ax).map(|(p, q)| p * q).sum();
        if (next - lambda).abs() <= 1e-15 * next.abs().max(1.0) {
            return next;
        }
        lambda = next;
        let y: Vec<f64> = x.iter().zip(&ax).map(|(p, q)| p + q).collect();
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        x = y.into_iter().map(|v| v / norm).collect();
    }
    lambda
}

/// The parameter grid: `δ ∈ {3, 4, 5}`, `n ∈ {2δ², 2δ² + 7}`.
pub fn grid() -> Vec<(usize, usize)> {
    [3usize, 4, 5]
        .iter()
        .flat_map(|&d| [(d, 2 * d * d), (d, 2 * d * d + 7)])
        .collect()
}

/// Cut sizes with `s ≥ δ` and `n ≥ (δ-1)s + 2`.
pub fn case1_cuts(delta: usize, n: usize) -> Vec<usize> {
    (delta..).take_while(|&s| (delta - 1) * s + 2 <= n).collect()
}

/// Cut sizes `1 ≤ s ≤ δ-1` for which `G₃` exists at order `n`.
pub fn case3_cuts(delta: usize, n: usize) -> Vec<usize> {
    (1..delta)
        .filter(|&s| ((delta - 2) * s + 2) * (delta + 1 - s) + s <= n)
        .collect()
}

/// Every family member on the grid with its closed-form cubic.
pub fn grid_families() -> Vec<(String, Family, [i64; 3])> {
    let mut out = Vec::new();
    for (d, n) in grid() {
        let f = extremal::build_extremal(d, n).unwrap();
        let c = extremal::phi_bstar(d, n).unwrap().coefficients();
        out.push((format!("Gstar({d},{n})"), f, c));
        for s in case1_cuts(d, n) {
            let f = extremal::build_case1(s, d, n).unwrap();
            let c = extremal::phi_b2(s, d, n).unwrap().coefficients();
            out.push((format!("G2({s},{d},{n})"), f, c));
        }
        for s in case3_cuts(d, n) {
            let f = extremal::build_case3(s, d, n).unwrap();
            let c = extremal::phi_b3(s, d, n).unwrap().coefficients();
            out.push((format!("G3({s},{d},{n})"), f, c));
        }
    }
    out
}
