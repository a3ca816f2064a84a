//! Join-of-cliques families and their quotient polynomials.
//!
//! All families have the shape `K_s ∨ (K_{n_1} ∪ … ∪ K_{n_t})`:
//!
//! | family | `s` | parts |
//! |--------|-----|-------|
//! | `G1`   | any | `n_1 ≥ … ≥ n_t` |
//! | `G2`   | `s ≥ δ` | `n-(δ-1)s-1`, then `(δ-2)s+1` ones |
//! | `G3`   | `1 ≤ s ≤ δ-1` | `n-s-((δ-2)s+1)(δ+1-s)`, then `(δ-2)s+1` parts of size `δ+1-s` |
//! | `Gstar`| `δ` | `n-δ(δ-1)-1`, then `δ(δ-2)+1` ones |
//!
//! Vertices are laid out as the `K_s` block, then the large clique, then
//! the small cliques, so the three-block quotient matrices come out in the
//! same row order as `B₂`, `B₃` and `B*`.
//!
//! Cubic and quadratic coefficients are exact integers; see [`crate::exact`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Ck;
use crate::graph::{complete, disjoint_union, join, Graph, VertexSet};
use crate::spectra::CubicPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FamilyKind {
    #[serde(rename = "G1")]
    General,
    #[serde(rename = "G2")]
    Case1,
    #[serde(rename = "G3")]
    Case3,
    #[serde(rename = "Gstar")]
    Extremal,
}

impl FamilyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::General => "G1",
            FamilyKind::Case1 => "G2",
            FamilyKind::Case3 => "G3",
            FamilyKind::Extremal => "Gstar",
        }
    }
}

/// A constructed family member with its canonical partition.
#[derive(Debug, Clone)]
pub struct Family {
    pub kind: FamilyKind,
    pub delta: Option<usize>,
    pub s: usize,
    pub graph: Graph,
    /// `K_s`, the large clique, then the union of the remaining parts.
    /// For `G1` every part is its own block instead.
    pub blocks: Vec<VertexSet>,
    /// Set when `n < 2δ²`, outside the range the spectral bound speaks about.
    pub below_theorem_range: bool,
}

impl Family {
    pub fn order(&self) -> usize {
        self.graph.order()
    }
}

/// `s` plus the clique sizes `n_1 ≥ n_2 ≥ … ≥ n_t` hanging off `K_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSpec {
    pub s: usize,
    pub parts: Vec<usize>,
}

impl PartitionSpec {
    pub fn order(&self) -> usize {
        self.s + self.parts.iter().sum::<usize>()
    }

    fn validate(&self) -> Result<()> {
        if self.s == 0 {
            return Err(Error::invalid("s must be at least 1"));
        }
        if self.parts.is_empty() {
            return Err(Error::invalid("need at least one part"));
        }
        if self.parts.contains(&0) {
            return Err(Error::invalid("parts must be positive"));
        }
        if self.parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid("parts must be sorted in descending order"));
        }
        Ok(())
    }
}

/// `K_s ∨ (K_{n_1} ∪ … ∪ K_{n_t})`.
pub fn build_general(spec: &PartitionSpec) -> Result<Family> {
    spec.validate()?;
    let mut blocks = vec![VertexSet::range(0, spec.s)];
    let mut at = spec.s;
    for &p in &spec.parts {
        blocks.push(VertexSet::range(at, at + p));
        at += p;
    }
    let graph = join_of_cliques(spec.s, &spec.parts)?;
    Ok(Family {
        kind: FamilyKind::General,
        delta: None,
        s: spec.s,
        graph,
        blocks,
        below_theorem_range: false,
    })
}

fn join_of_cliques(s: usize, parts: &[usize]) -> Result<Graph> {
    if s + parts.iter().sum::<usize>() > crate::graph::MAX_ORDER {
        return Err(Error::invalid(format!(
            "order exceeds the supported maximum {}",
            crate::graph::MAX_ORDER
        )));
    }
    let mut rest = complete(parts[0])?;
    for &p in &parts[1..] {
        rest = disjoint_union(&rest, &complete(p)?)?;
    }
    join(&complete(s)?, &rest)
}

fn three_block_family(
    kind: FamilyKind,
    delta: usize,
    s: usize,
    big: usize,
    copies: usize,
    small: usize,
) -> Result<Family> {
    let mut parts = vec![big];
    parts.extend(std::iter::repeat_n(small, copies));
    // A big clique smaller than the small ones only happens below the
    // builders' preconditions; join_of_cliques does not care about order.
    let graph = join_of_cliques(s, &parts)?;
    let n = graph.order();
    Ok(Family {
        kind,
        delta: Some(delta),
        s,
        graph,
        blocks: vec![
            VertexSet::range(0, s),
            VertexSet::range(s, s + big),
            VertexSet::range(s + big, n),
        ],
        below_theorem_range: (n as u128) < 2 * (delta as u128).pow(2),
    })
}

fn check_delta(delta: usize) -> Result<()> {
    if delta < 3 {
        return Err(Error::invalid(format!("delta must be at least 3, got {delta}")));
    }
    Ok(())
}

/// Checks `δ ≥ 3` and `n ≥ δ(δ-1)+2`.
pub fn check_extremal(delta: usize, n: usize) -> Result<()> {
    check_delta(delta)?;
    let min = (delta as u128) * (delta as u128 - 1) + 2;
    if (n as u128) < min {
        return Err(Error::invalid(format!(
            "G* needs n >= delta(delta-1)+2 = {min}, got n = {n}"
        )));
    }
    Ok(())
}

/// Checks `δ ≥ 3`, `s ≥ δ` and `n ≥ (δ-1)s+2`.
pub fn check_case1(s: usize, delta: usize, n: usize) -> Result<()> {
    check_delta(delta)?;
    if s < delta {
        return Err(Error::invalid(format!("case 1 needs s >= delta, got s = {s}")));
    }
    let min = (delta as u128 - 1) * s as u128 + 2;
    if (n as u128) < min {
        return Err(Error::invalid(format!(
            "case 1 needs n >= (delta-1)s+2 = {min}, got n = {n}"
        )));
    }
    Ok(())
}

/// Checks `δ ≥ 3`, `1 ≤ s ≤ δ-1` and `n ≥ ((δ-2)s+2)(δ+1-s)+s`.
pub fn check_case3(s: usize, delta: usize, n: usize) -> Result<()> {
    check_delta(delta)?;
    if s == 0 || s >= delta {
        return Err(Error::invalid(format!("case 3 needs 1 <= s <= delta-1, got s = {s}")));
    }
    let min = case3_min_order(s, delta);
    if (n as u128) < min {
        return Err(Error::invalid(format!(
            "case 3 needs n >= ((delta-2)s+2)(delta+1-s)+s = {min}, got n = {n}"
        )));
    }
    Ok(())
}

pub(crate) fn case3_min_order(s: usize, delta: usize) -> u128 {
    let (s, d) = (s as u128, delta as u128);
    ((d - 2) * s + 2) * (d + 1 - s) + s
}

/// `G* = K_δ ∨ (K_{n-δ(δ-1)-1} ∪ (δ(δ-2)+1) K_1)`.
pub fn build_extremal(delta: usize, n: usize) -> Result<Family> {
    check_extremal(delta, n)?;
    let big = n - delta * (delta - 1) - 1;
    three_block_family(FamilyKind::Extremal, delta, delta, big, delta * (delta - 2) + 1, 1)
}

/// `G₂ = K_s ∨ (K_{n-(δ-1)s-1} ∪ ((δ-2)s+1) K_1)`.
pub fn build_case1(s: usize, delta: usize, n: usize) -> Result<Family> {
    check_case1(s, delta, n)?;
    let big = n - (delta - 1) * s - 1;
    three_block_family(FamilyKind::Case1, delta, s, big, (delta - 2) * s + 1, 1)
}

/// `G₃ = K_s ∨ (K_{n-s-((δ-2)s+1)(δ+1-s)} ∪ ((δ-2)s+1) K_{δ+1-s})`.
pub fn build_case3(s: usize, delta: usize, n: usize) -> Result<Family> {
    check_case3(s, delta, n)?;
    let copies = (delta - 2) * s + 1;
    let small = delta + 1 - s;
    let big = n - s - copies * small;
    three_block_family(FamilyKind::Case3, delta, s, big, copies, small)
}

/// `x³ + c2 x² + c1 x + c0` with exact integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntCubic {
    pub c2: i64,
    pub c1: i64,
    pub c0: i64,
}

impl IntCubic {
    pub fn to_poly(self) -> CubicPoly {
        CubicPoly::new(self.c2 as f64, self.c1 as f64, self.c0 as f64)
    }

    pub fn coefficients(self) -> [i64; 3] {
        [self.c2, self.c1, self.c0]
    }

    pub fn eval(self, x: f64) -> f64 {
        self.to_poly().eval(x)
    }

    pub fn eval_exact(self, x: i64) -> Result<i128> {
        let x = Ck::from(x);
        (x.pow(3) + Ck::from(self.c2) * x.pow(2) + Ck::from(self.c1) * x + Ck::from(self.c0))
            .get_i128("cubic evaluation")
    }

    /// `3x² + 2 c2 x + c1`.
    pub fn derivative(self) -> IntQuadratic {
        IntQuadratic {
            a: 3,
            b: 2 * self.c2,
            c: self.c1,
        }
    }
}

/// `a x² + b x + c` with exact integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntQuadratic {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl IntQuadratic {
    pub fn eval(self, x: f64) -> f64 {
        (self.a as f64 * x + self.b as f64) * x + self.c as f64
    }

    pub fn eval_exact(self, x: i64) -> Result<i128> {
        let x = Ck::from(x);
        (Ck::from(self.a) * x.pow(2) + Ck::from(self.b) * x + Ck::from(self.c)).get_i128("quadratic evaluation")
    }
}

fn vars(s: usize, delta: usize, n: usize) -> (Ck, Ck, Ck) {
    (Ck::from(s), Ck::from(delta), Ck::from(n))
}

fn cubic(c2: Ck, c1: Ck, c0: Ck, what: &'static str) -> Result<IntCubic> {
    Ok(IntCubic {
        c2: c2.get(what)?,
        c1: c1.get(what)?,
        c0: c0.get(what)?,
    })
}

fn quadratic(a: Ck, b: Ck, c: Ck, what: &'static str) -> Result<IntQuadratic> {
    Ok(IntQuadratic {
        a: a.get(what)?,
        b: b.get(what)?,
        c: c.get(what)?,
    })
}

/// Characteristic polynomial of the quotient matrix of `G*`.
pub fn phi_bstar(delta: usize, n: usize) -> Result<IntCubic> {
    check_delta(delta)?;
    let (_, d, n) = vars(0, delta, n);
    cubic(
        -n + d * (d - 2) + 3,
        -n - d.pow(2) * (d - 2) + d * (d - 3) + 2,
        (d - 2) * d.pow(2) * n + d * n - d.pow(3) * (d - 1) * (d - 2) - d.pow(2) * (3 * d - 5) - 2 * d,
        "phi_Bstar",
    )
}

/// Characteristic polynomial of the quotient matrix of `G₂`.
pub fn phi_b2(s: usize, delta: usize, n: usize) -> Result<IntCubic> {
    check_case1(s, delta, n)?;
    let (s, d, n) = vars(s, delta, n);
    cubic(
        -n + (d - 2) * s + 3,
        -n - (d - 2) * s.pow(2) + (d - 3) * s + 2,
        (d - 2) * s.pow(2) * n + s * n - (d - 1) * (d - 2) * s.pow(3) - (3 * d - 5) * s.pow(2) - 2 * s,
        "phi_B2",
    )
}

/// Characteristic polynomial of the quotient matrix of `G₃`.
pub fn phi_b3(s: usize, delta: usize, n: usize) -> Result<IntCubic> {
    check_case3(s, delta, n)?;
    let (s, d, n) = vars(s, delta, n);
    let c2 = (-d + 2) * s.pow(2) + (d.pow(2) - d - 2) * s - n + 3;
    let c1 = (d.pow(2) - 3 * d + 2) * s.pow(2) - (n + d.pow(3) - 2 * d.pow(2) - 2 * d + 1) * s + d * n
        - n
        - d.pow(2)
        - 2 * d
        + 2;
    let c0 = ((2 - d) * s.pow(3) + (d.pow(2) - d - 3) * s.pow(2) + d * s + d) * n - (d - 2).pow(2) * s.pow(5)
        + (2 * d.pow(3) - 6 * d.pow(2) - d + 10) * s.pow(4)
        - (d.pow(4) - 2 * d.pow(3) - 6 * d.pow(2) + 7 * d + 10) * s.pow(3)
        - (2 * d.pow(3) - d.pow(2) - 5 * d - 5) * s.pow(2)
        - (d.pow(3) - d) * s
        - d.pow(2)
        - 2 * d;
    cubic(c2, c1, c0, "phi_B3")
}

/// `g` with `φ_{B₂}(x) - φ_{B*}(x) = (s - δ) g(x)`.
pub fn g_poly(s: usize, delta: usize, n: usize) -> Result<IntQuadratic> {
    check_case1(s, delta, n)?;
    let (s, d, n) = vars(s, delta, n);
    quadratic(
        d - 2,
        -(d - 2) * s - d.pow(2) + 3 * d - 3,
        (d - 2) * (s + d) * n + n - (d - 1) * (d - 2) * (s.pow(2) + d * s + d.pow(2)) - (3 * d - 5) * (s + d) - 2,
        "g",
    )
}

/// `h` with `φ_{B₃}(x) - φ_{B*}(x) = (δ - s) h(x)`.
pub fn h_poly(s: usize, delta: usize, n: usize) -> Result<IntQuadratic> {
    check_case3(s, delta, n)?;
    let (s, d, n) = vars(s, delta, n);
    quadratic(
        (d - 2) * (s - 1),
        n - d.pow(2) * s + 3 * d * s - 2 * s + d.pow(2) - 4 * d + 1,
        (d.pow(2) - 4 * d + 4) * s.pow(4) - (d.pow(3) - 2 * d.pow(2) - 5 * d + 10) * s.pow(3)
            + (d * n - 2 * n - d.pow(2) - 3 * d + 10) * s.pow(2)
            + (-d * n + 3 * n + d.pow(3) - 4 * d.pow(2) + 5 * d - 5) * s
            - d.pow(2) * n
            + 2 * d * n
            + d.pow(4)
            - 3 * d.pow(3)
            + 5 * d.pow(2)
            - 6 * d,
        "h",
    )
}

/// `φ'_{B₃}` in the expanded form written out alongside `φ_{B₃}`.
pub fn phi_b3_prime_poly(s: usize, delta: usize, n: usize) -> Result<IntQuadratic> {
    check_case3(s, delta, n)?;
    let (s, d, n) = vars(s, delta, n);
    quadratic(
        Ck::new(3),
        2 * ((-d + 2) * s.pow(2) + (d.pow(2) - d - 2) * s - n + 3),
        (d.pow(2) - 3 * d + 2) * s.pow(2) - (n + d.pow(3) - 2 * d.pow(2) - 2 * d + 1) * s + d * n
            - n
            - d.pow(2)
            - 2 * d
            + 2,
        "phi_B3'",
    )
}

pub fn eval_g(s: usize, delta: usize, n: usize, x: f64) -> Result<f64> {
    Ok(g_poly(s, delta, n)?.eval(x))
}

pub fn eval_h(s: usize, delta: usize, n: usize, x: f64) -> Result<f64> {
    Ok(h_poly(s, delta, n)?.eval(x))
}

pub fn eval_phi_b3_prime(s: usize, delta: usize, n: usize, x: f64) -> Result<f64> {
    Ok(phi_b3_prime_poly(s, delta, n)?.eval(x))
}

/// `n - δ(δ-2) - 2`, the spectral radius of the clique `K_{n-δ(δ-2)-1}`
/// inside `G*` and the point every lower bound is anchored at.
pub fn pivot(delta: usize, n: usize) -> Result<i64> {
    let (_, d, n) = vars(0, delta, n);
    (n - d * (d - 2) - 2).get("pivot")
}

/// Closed forms of the intermediate bounds in the two main cases. Each is
/// the expanded polynomial, evaluated exactly.
pub mod bounds {
    use super::*;

    /// `g(n-δ(δ-2)-2)` expanded.
    pub fn g_at_pivot(s: usize, delta: usize, n: usize) -> Result<i128> {
        let (s, d, n) = vars(s, delta, n);
        ((d - 2) * n.pow(2) + (d - 2) * (-2 * d.pow(2) + 4 * d - 3) * n - (d - 1) * (d - 2) * s.pow(2)
            + (-d.pow(2) + d + 1) * s
            + d.pow(5)
            - 6 * d.pow(4)
            + 14 * d.pow(3)
            - 18 * d.pow(2)
            + 13 * d
            - 4)
        .get_i128("g at pivot")
    }

    /// `(δ-1)` times the lower bound for `g(n-δ(δ-2)-2)` obtained from
    /// `s ≤ (n-2)/(δ-1)`.
    pub fn g_bound_in_n(delta: usize, n: usize) -> Result<i128> {
        let (_, d, n) = vars(0, delta, n);
        ((d - 2).pow(2) * n.pow(2) + (-2 * d.pow(4) + 10 * d.pow(3) - 20 * d.pow(2) + 22 * d - 13) * n + d.pow(6)
            - 7 * d.pow(5)
            + 20 * d.pow(4)
            - 32 * d.pow(3)
            + 33 * d.pow(2)
            - 23 * d
            + 10)
            .get_i128("g bound in n")
    }

    /// `(δ-1)` times the final lower bound for `g`, after `n ≥ 2δ²`.
    pub fn g_bound_final(delta: usize) -> Result<i128> {
        let d = Ck::from(delta);
        (d.pow(6) - 3 * d.pow(5) - 4 * d.pow(4) + 12 * d.pow(3) + 7 * d.pow(2) - 23 * d + 10).get_i128("g final bound")
    }

    /// `h(n-δ(δ-2)-2)` expanded as a quadratic in `n`.
    pub fn h_at_pivot(s: usize, delta: usize, n: usize) -> Result<i128> {
        let (s, d, n) = vars(s, delta, n);
        (((d - 2) * s - d + 3) * n.pow(2)
            + ((d - 2) * s.pow(2) - (2 * d.pow(3) - 7 * d.pow(2) + 10 * d - 9) * s + 2 * d.pow(3) - 9 * d.pow(2)
                + 12 * d
                - 9)
                * n
            + (d.pow(2) - 4 * d + 4) * s.pow(4)
            - (d.pow(3) - 2 * d.pow(2) - 5 * d + 10) * s.pow(3)
            - (d.pow(2) + 3 * d - 10) * s.pow(2)
            + (d.pow(5) - 5 * d.pow(4) + 12 * d.pow(3) - 18 * d.pow(2) + 15 * d - 9) * s
            - d.pow(5)
            + 6 * d.pow(4)
            - 13 * d.pow(3)
            + 18 * d.pow(2)
            - 16 * d
            + 6)
        .get_i128("h at pivot")
    }

    /// `h` at the pivot with `n` replaced by `2δ²`, regrouped in `δ`.
    pub fn h_bound_at_min_order(s: usize, delta: usize) -> Result<i128> {
        let (s, d, _) = vars(s, delta, 0);
        (d.pow(3) * ((s - 1) * d.pow(2) + s * d - s.pow(3) + 2 * s.pow(2) - 8 * s + 11)
            + (s.pow(4) + 2 * s.pow(3) - 5 * s.pow(2)) * d.pow(2)
            + (-4 * s.pow(4) + 5 * s.pow(3) - 3 * s.pow(2) + 15 * s - 16) * d
            + 4 * s.pow(4)
            - 10 * s.pow(3)
            + 10 * s.pow(2)
            - 9 * s
            + 6)
        .get_i128("h bound at n = 2 delta^2")
    }

    /// Final lower bound for `h`, after `δ ≥ s+1`.
    pub fn h_bound_final(s: usize, delta: usize) -> Result<i128> {
        let (s, d, _) = vars(s, delta, 0);
        (d.pow(3) * (4 * s.pow(2) - 8 * s + 10) + s.pow(6) + 5 * s.pow(4) - 16 * s.pow(3) + 17 * s.pow(2) - 10 * s - 10)
            .get_i128("h final bound")
    }

    /// `φ'_{B₃}(n-δ(δ-2)-2)` expanded as a quadratic in `n`.
    pub fn phi_b3_prime_at_pivot(s: usize, delta: usize, n: usize) -> Result<i128> {
        let (s, d, n) = vars(s, delta, n);
        (n.pow(2)
            + ((-2 * d + 4) * s.pow(2) + (2 * d.pow(2) - 2 * d - 5) * s - 4 * d.pow(2) + 9 * d - 3) * n
            + (2 * d.pow(3) - 7 * d.pow(2) + 9 * d - 6) * s.pow(2)
            + (-2 * d.pow(4) + 5 * d.pow(3) - 2 * d.pow(2) - 2 * d + 7) * s
            + 3 * d.pow(4)
            - 12 * d.pow(3)
            + 17 * d.pow(2)
            - 14 * d
            + 2)
        .get_i128("phi_B3' at pivot")
    }

    /// `φ'_{B₃}` at the pivot with `n = 2δ²`, regrouped in `δ`.
    pub fn phi_b3_prime_bound_at_min_order(s: usize, delta: usize) -> Result<i128> {
        let (s, d, _) = vars(s, delta, 0);
        (d.pow(2) * ((2 * s - 1) * d.pow(2) + (-2 * s.pow(2) + s + 6) * d + s.pow(2) - 12 * s + 11)
            + (9 * s.pow(2) - 2 * s - 14) * d
            - 6 * s.pow(2)
            + 7 * s
            + 2)
        .get_i128("phi_B3' bound at n = 2 delta^2")
    }

    /// Final lower bound for `φ'_{B₃}` at the pivot.
    pub fn phi_b3_prime_bound_final(s: usize) -> Result<i128> {
        let s = Ck::from(s);
        (3 * s.pow(4) + 10 * s.pow(3) + 10 * s.pow(2) + 18 * s + 4).get_i128("phi_B3' final bound")
    }
}
