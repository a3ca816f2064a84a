//! Adjacency spectral radius, quotient matrices of vertex partitions, and
//! real roots of monic cubics.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph, VertexSet};

/// Default residual tolerance for [`spectral_radius`].
pub const DEFAULT_TOL: f64 = 1e-10;

/// Iteration cap for the power method.
pub const MAX_ITERATIONS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralResult {
    pub value: f64,
    /// `max |(A x - value x)_i|` for the final unit-norm iterate `x`.
    pub residual: f64,
    pub iterations: u64,
}

/// Largest adjacency eigenvalue of `g`.
///
/// Runs power iteration on `A + I` from the all-ones vector separately on
/// every component and returns the maximum. The unit shift keeps bipartite
/// components from oscillating between `ρ` and `-ρ`; it does not move the
/// Perron vector. The loop stops once the residual `‖Ax - λx‖∞` of the
/// Rayleigh quotient `λ` is at most `tol`.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectralResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let mut best = SpectralResult {
        value: 0.0,
        residual: 0.0,
        iterations: 0,
    };
    for comp in g.components() {
        if comp.len() < 2 {
            continue;
        }
        let r = component_radius(g, comp, tol)?;
        best.iterations += r.iterations;
        if r.value > best.value {
            best.value = r.value;
            best.residual = r.residual;
        }
    }
    Ok(best)
}

/// `spectral_radius(g, DEFAULT_TOL).value`.
pub fn rho(g: &Graph) -> Result<f64> {
    spectral_radius(g, DEFAULT_TOL).map(|r| r.value)
}

fn component_radius(g: &Graph, comp: VertexSet, tol: f64) -> Result<SpectralResult> {
    let verts = comp.to_vec();
    let k = verts.len();
    let mut local = [usize::MAX; 64];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i;
    }
    let rows: Vec<Vec<usize>> = verts
        .iter()
        .map(|&v| BitIter(g.rows()[v]).map(|w| local[w]).collect())
        .collect();

    let mut x = vec![1.0 / (k as f64).sqrt(); k];
    let mut y = vec![0.0; k];
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    for it in 1..=MAX_ITERATIONS {
        for (yi, row) in y.iter_mut().zip(&rows) {
            *yi = row.iter().map(|&j| x[j]).sum();
        }
        lambda = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        residual = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (b - lambda * a).abs())
            .fold(0.0, f64::max);
        if residual <= tol {
            return Ok(SpectralResult {
                value: lambda,
                residual,
                iterations: it,
            });
        }
        // x <- (A + I) x, normalised
        let norm = x.iter().zip(&y).map(|(a, b)| (a + b) * (a + b)).sum::<f64>().sqrt();
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = (*xi + yi) / norm;
        }
    }
    Err(Error::NoConvergence {
        best: lambda,
        residual,
        iterations: MAX_ITERATIONS,
    })
}

/// A vertex partition with its quotient (average row sum) matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientDecomposition {
    pub blocks: Vec<VertexSet>,
    /// `edge_counts[i][j] = Σ_{u ∈ V_i} |N(u) ∩ V_j|`.
    pub edge_counts: Vec<Vec<u64>>,
    /// `matrix[i][j] = edge_counts[i][j] / |V_i|`.
    pub matrix: Vec<Vec<f64>>,
    pub equitable: bool,
}

impl QuotientDecomposition {
    /// The quotient matrix with exact integer entries, available when the
    /// partition is equitable.
    pub fn integer_matrix(&self) -> Option<Vec<Vec<i64>>> {
        if !self.equitable {
            return None;
        }
        Some(
            self.edge_counts
                .iter()
                .zip(&self.blocks)
                .map(|(row, b)| row.iter().map(|&c| (c / b.len() as u64) as i64).collect())
                .collect(),
        )
    }

    /// One CSV line per matrix row.
    pub fn to_csv(&self) -> String {
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| crate::report::fmt_num(v))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

pub fn quotient(g: &Graph, blocks: &[VertexSet]) -> Result<QuotientDecomposition> {
    let mut covered = VertexSet::EMPTY;
    for (i, b) in blocks.iter().enumerate() {
        if b.is_empty() {
            return Err(Error::invalid(format!("block {i} is empty")));
        }
        if !b.intersection(covered).is_empty() {
            return Err(Error::invalid(format!("block {i} overlaps an earlier block")));
        }
        covered = covered.union(*b);
    }
    if covered != g.vertices() {
        return Err(Error::invalid("blocks do not cover exactly the vertex set"));
    }

    let mut equitable = true;
    let edge_counts: Vec<Vec<u64>> = blocks
        .iter()
        .map(|bi| {
            blocks
                .iter()
                .map(|bj| {
                    let mut per_vertex = bi.iter().map(|u| g.neighbors(u).intersection(*bj).len());
                    let first = per_vertex.next().unwrap_or(0);
                    let mut total = first as u64;
                    for c in per_vertex {
                        equitable &= c == first;
                        total += c as u64;
                    }
                    total
                })
                .collect()
        })
        .collect();
    let matrix = edge_counts
        .iter()
        .zip(blocks)
        .map(|(row, b)| row.iter().map(|&c| c as f64 / b.len() as f64).collect())
        .collect();
    Ok(QuotientDecomposition {
        blocks: blocks.to_vec(),
        edge_counts,
        matrix,
        equitable,
    })
}

/// Largest real eigenvalue of a small real matrix (at most 8×8), via the
/// real Schur form.
pub fn largest_eigenvalue_small(m: &[Vec<f64>]) -> Result<f64> {
    let r = m.len();
    if r == 0 {
        return Err(Error::invalid("empty matrix"));
    }
    if r > 8 {
        return Err(Error::Unsupported(format!("{r}x{r} matrix (at most 8x8)")));
    }
    if m.iter().any(|row| row.len() != r) {
        return Err(Error::invalid("matrix is not square"));
    }
    let mat = DMatrix::from_fn(r, r, |i, j| m[i][j]);
    let scale = mat.iter().fold(1.0f64, |a, v| a.max(v.abs()));
    let schur = nalgebra::linalg::Schur::try_new(mat, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Domain("Schur iteration did not converge".into()))?;
    let eig = schur.complex_eigenvalues();
    eig.iter()
        .filter(|z| z.im.abs() <= 1e-9 * scale)
        .map(|z| z.re)
        .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v))))
        .ok_or_else(|| Error::Domain("matrix has no real eigenvalue".into()))
}

/// The monic cubic `x³ + c2·x² + c1·x + c0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CubicPoly {
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl CubicPoly {
    pub fn new(c2: f64, c1: f64, c0: f64) -> Self {
        CubicPoly { c2, c1, c0 }
    }

    pub fn eval(&self, x: f64) -> f64 {
        ((x + self.c2) * x + self.c1) * x + self.c0
    }

    pub fn derivative(&self, x: f64) -> f64 {
        (3.0 * x + 2.0 * self.c2) * x + self.c1
    }

    /// Cauchy bound: every root lies strictly below this.
    pub fn upper_bound(&self) -> f64 {
        f64::max(1.0, 1.0 + self.c2.abs() + self.c1.abs() + self.c0.abs())
    }

    fn accepts(&self, r: f64) -> bool {
        self.eval(r).abs() <= 1e-8 * f64::max(1.0, r.abs().powi(3))
    }
}

/// All three roots, sorted descending. Fails with a domain error when the
/// cubic has a complex pair.
pub fn cubic_roots(p: &CubicPoly) -> Result<[f64; 3]> {
    check_finite(p)?;
    let r1 = newton_from_above(p);
    // p(x) = (x - r1)(x² + b x + c)
    let b = p.c2 + r1;
    let c = p.c1 + r1 * b;
    let disc = b * b - 4.0 * c;
    let disc = if disc < 0.0 {
        if -disc <= 1e-10 * f64::max(1.0, b * b) {
            0.0
        } else {
            return Err(Error::Domain(format!(
                "cubic x^3 + ({})x^2 + ({})x + ({}) has a complex root pair",
                p.c2, p.c1, p.c0
            )));
        }
    } else {
        disc
    };
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let (r2, r3) = if q == 0.0 { (0.0, 0.0) } else { (q, c / q) };
    let mut roots = [r1, polish(p, r2), polish(p, r3)];
    roots.sort_by(|a, b| b.total_cmp(a));
    for &r in &roots {
        if !p.accepts(r) {
            return Err(Error::Domain(format!(
                "root {r} of cubic failed the residual check (p = {})",
                p.eval(r)
            )));
        }
    }
    Ok(roots)
}

/// Largest real root; the other two roots may be complex.
pub fn largest_root(p: &CubicPoly) -> Result<f64> {
    check_finite(p)?;
    let r1 = newton_from_above(p);
    let b = p.c2 + r1;
    let c = p.c1 + r1 * b;
    let disc = b * b - 4.0 * c;
    let mut best = r1;
    if disc >= 0.0 {
        let q = -0.5 * (b + b.signum() * disc.sqrt());
        if q != 0.0 {
            best = best.max(polish(p, q)).max(polish(p, c / q));
        } else {
            best = best.max(0.0);
        }
    }
    Ok(best)
}

fn check_finite(p: &CubicPoly) -> Result<()> {
    if [p.c2, p.c1, p.c0].iter().all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err(Error::invalid("cubic coefficients must be finite"))
    }
}

/// Safeguarded Newton starting at the Cauchy bound. Keeps a bracket
/// `[lo, hi]` with `p(lo) < 0 < p(hi)` and bisects whenever a Newton step
/// leaves it.
fn newton_from_above(p: &CubicPoly) -> f64 {
    let mut hi = p.upper_bound();
    let mut lo = -hi;
    let mut x = hi;
    for _ in 0..500 {
        let fx = p.eval(x);
        if fx == 0.0 {
            return x;
        }
        if fx > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let d = p.derivative(x);
        let mut next = if d != 0.0 { x - fx / d } else { f64::NAN };
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 4.0 * f64::EPSILON * f64::max(1.0, x.abs()) {
            return next;
        }
        x = next;
    }
    x
}

fn polish(p: &CubicPoly, mut x: f64) -> f64 {
    for _ in 0..4 {
        let d = p.derivative(x);
        if d == 0.0 {
            break;
        }
        let next = x - p.eval(x) / d;
        if !next.is_finite() || p.eval(next).abs() >= p.eval(x).abs() {
            break;
        }
        x = next;
    }
    x
}
