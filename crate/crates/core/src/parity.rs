//! Strong parity factors.
//!
//! A graph has a strong parity factor when, for every vertex set `X` of even
//! size, some spanning subgraph `F` has no isolated vertex and its odd-degree
//! vertices are exactly `X`. Two independent deciders live here:
//!
//! * [`criterion_check`] scans every `S ⊆ V(G)` for the deficiency
//!   `c(G - S) > Σ_{v∈S} d(v) - 2|S| + 1`;
//! * [`oracle_check`] tries every even `X` with an exhaustive search for `F`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest order [`criterion_check`] accepts (a full `2^n` subset scan).
pub const CRITERION_MAX_ORDER: usize = 24;
/// Largest order [`oracle_check`] accepts.
pub const ORACLE_MAX_ORDER: usize = 12;
/// Largest edge count the factor search accepts.
pub const FACTOR_MAX_EDGES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Criterion,
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Criterion => "criterion",
            Method::Oracle => "oracle",
        }
    }
}

/// Numbers behind a criterion witness `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Deficiency {
    /// `c(G - S)`, zero when `S = V(G)`.
    pub components: usize,
    /// `Σ_{v∈S} d_G(v)`.
    pub degree_sum: usize,
    /// `|S|`.
    pub size: usize,
}

impl Deficiency {
    pub fn of(g: &Graph, s: VertexSet) -> Self {
        Deficiency {
            components: g.components_within(g.vertices().difference(s)),
            degree_sum: g.degree_sum(s),
            size: s.len(),
        }
    }

    /// `Σd - 2|S| + 1`, the largest component count the criterion allows.
    pub fn allowance(&self) -> i64 {
        self.degree_sum as i64 - 2 * self.size as i64 + 1
    }

    /// `c(G - S) - allowance`; positive means `S` certifies that no strong
    /// parity factor exists.
    pub fn margin(&self) -> i64 {
        self.components as i64 - self.allowance()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpfVerdict {
    pub has_spf: bool,
    pub method: Method,
    /// A violating `S` (criterion) or a demand set `X` with no factor (oracle).
    pub witness: Option<VertexSet>,
    pub detail: Option<Deficiency>,
}

impl SpfVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "has_spf": self.has_spf,
            "method": self.method.as_str(),
            "witness": self.witness.map(|w| w.to_vec()),
            "detail": self.detail,
        })
    }
}

/// A spanning subgraph meeting a parity demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorWitness {
    pub edges: Vec<(usize, usize)>,
    pub degrees: Vec<usize>,
}

/// Decides strong-parity-factor existence by the subset criterion.
///
/// Subsets are visited as ascending bitmasks; the reported witness is the
/// smallest violating mask regardless of how the scan is scheduled.
pub fn criterion_check(g: &Graph) -> Result<SpfVerdict> {
    let n = g.order();
    if n > CRITERION_MAX_ORDER {
        return Err(Error::SizeLimit(format!(
            "criterion scan needs 2^{n} subsets; orders above {CRITERION_MAX_ORDER} need sampling"
        )));
    }
    let violating = |mask: u64| -> bool {
        let s = VertexSet::from_bits(mask);
        let allowance = g.degree_sum(s) as i64 - 2 * s.len() as i64 + 1;
        // c(G - S) <= n - |S|, so there is nothing to count when that already fits.
        if (n - s.len()) as i64 <= allowance {
            return false;
        }
        g.components_within(g.vertices().difference(s)) as i64 > allowance
    };
    let total = 1u64 << n;
    let hit = if n >= 12 {
        (0..total).into_par_iter().find_first(|&m| violating(m))
    } else {
        (0..total).find(|&m| violating(m))
    };
    Ok(match hit {
        Some(mask) => {
            let s = VertexSet::from_bits(mask);
            SpfVerdict {
                has_spf: false,
                method: Method::Criterion,
                witness: Some(s),
                detail: Some(Deficiency::of(g, s)),
            }
        }
        None => SpfVerdict {
            has_spf: true,
            method: Method::Criterion,
            witness: None,
            detail: None,
        },
    })
}

/// The subset maximizing the deficiency margin (smallest mask among ties).
pub fn max_margin_subset(g: &Graph) -> Result<(VertexSet, Deficiency)> {
    let n = g.order();
    if n > CRITERION_MAX_ORDER {
        return Err(Error::SizeLimit(format!(
            "margin scan over 2^{n} subsets exceeds the order limit {CRITERION_MAX_ORDER}"
        )));
    }
    let (mask, _) = (0..1u64 << n)
        .into_par_iter()
        .map(|m| (m, Deficiency::of(g, VertexSet::from_bits(m)).margin()))
        .reduce(
            || (u64::MAX, i64::MIN),
            |a, b| {
                if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) {
                    b
                } else {
                    a
                }
            },
        );
    let s = VertexSet::from_bits(mask);
    Ok((s, Deficiency::of(g, s)))
}

/// Exhaustive search for a spanning subgraph with no isolated vertex whose
/// odd-degree set is exactly `demand`.
///
/// Edges are decided in lexicographic order, including each edge before
/// excluding it. A branch dies as soon as some vertex still needs an edge
/// (wrong parity, or degree zero) but has no undecided edges left.
pub fn find_parity_factor(g: &Graph, demand: VertexSet) -> Result<Option<FactorWitness>> {
    if demand.len() % 2 == 1 {
        return Err(Error::invalid("demand set must have even size"));
    }
    if demand.bits() & !g.vertices().bits() != 0 {
        return Err(Error::invalid("demand set is not a subset of the vertex set"));
    }
    let edges = g.edges();
    if edges.len() > FACTOR_MAX_EDGES {
        return Err(Error::SizeLimit(format!(
            "factor search over {} edges exceeds the limit {FACTOR_MAX_EDGES}",
            edges.len()
        )));
    }
    let n = g.order();
    let mut search = FactorSearch {
        edges: &edges,
        odd: (0..n).map(|v| demand.contains(v)).collect(),
        degree: vec![0; n],
        undecided: g.degrees(),
        chosen: Vec::with_capacity(edges.len()),
    };
    if (0..n).any(|v| search.starved(v)) {
        return Ok(None);
    }
    Ok(search.run(0).then(|| FactorWitness {
        edges: search.chosen.iter().map(|&i| edges[i]).collect(),
        degrees: search.degree.clone(),
    }))
}

struct FactorSearch<'a> {
    edges: &'a [(usize, usize)],
    odd: Vec<bool>,
    degree: Vec<usize>,
    undecided: Vec<usize>,
    chosen: Vec<usize>,
}

impl FactorSearch<'_> {
    fn needs_edge(&self, v: usize) -> bool {
        self.degree[v] == 0 || (self.degree[v] % 2 == 1) != self.odd[v]
    }

    fn starved(&self, v: usize) -> bool {
        self.undecided[v] == 0 && self.needs_edge(v)
    }

    fn run(&mut self, i: usize) -> bool {
        if i == self.edges.len() {
            return true;
        }
        let (u, v) = self.edges[i];
        self.undecided[u] -= 1;
        self.undecided[v] -= 1;

        self.degree[u] += 1;
        self.degree[v] += 1;
        self.chosen.push(i);
        if !self.starved(u) && !self.starved(v) && self.run(i + 1) {
            return true;
        }
        self.chosen.pop();
        self.degree[u] -= 1;
        self.degree[v] -= 1;

        if !self.starved(u) && !self.starved(v) && self.run(i + 1) {
            return true;
        }
        self.undecided[u] += 1;
        self.undecided[v] += 1;
        false
    }
}

/// Checks a claimed factor directly against the definition.
pub fn validate_factor(g: &Graph, demand: VertexSet, f: &FactorWitness) -> std::result::Result<(), String> {
    let n = g.order();
    let mut deg = vec![0usize; n];
    let mut seen = std::collections::BTreeSet::new();
    for &(u, v) in &f.edges {
        if !g.has_edge(u, v) {
            return Err(format!("({u}, {v}) is not an edge of G"));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(format!("({u}, {v}) repeated"));
        }
        deg[u] += 1;
        deg[v] += 1;
    }
    if deg != f.degrees {
        return Err("reported degrees disagree with the edge set".into());
    }
    for (v, &d) in deg.iter().enumerate() {
        if d == 0 {
            return Err(format!("vertex {v} is isolated in F"));
        }
        if (d % 2 == 1) != demand.contains(v) {
            return Err(format!("vertex {v} has degree {d} against demand"));
        }
    }
    Ok(())
}

/// Decides strong-parity-factor existence from the definition, trying
/// every even demand set in ascending bitmask order.
pub fn oracle_check(g: &Graph) -> Result<SpfVerdict> {
    let n = g.order();
    if n > ORACLE_MAX_ORDER {
        return Err(Error::SizeLimit(format!(
            "oracle needs order at most {ORACLE_MAX_ORDER}, got {n}"
        )));
    }
    if g.size() > FACTOR_MAX_EDGES {
        return Err(Error::SizeLimit(format!(
            "oracle needs at most {FACTOR_MAX_EDGES} edges, got {}",
            g.size()
        )));
    }
    let fails = |mask: u64| -> bool { matches!(find_parity_factor(g, VertexSet::from_bits(mask)), Ok(None)) };
    let even = (0..1u64 << n).filter(|m| m.count_ones() % 2 == 0);
    let hit = if n >= 9 {
        even.collect::<Vec<_>>().into_par_iter().find_first(|&m| fails(m))
    } else {
        even.into_iter().find(|&m| fails(m))
    };
    Ok(SpfVerdict {
        has_spf: hit.is_none(),
        method: Method::Oracle,
        witness: hit.map(VertexSet::from_bits),
        detail: None,
    })
}
