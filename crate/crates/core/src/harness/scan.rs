//! Criterion-versus-oracle agreement scans.

use rayon::prelude::*;

use crate::error::{Error, Position, Result};
use crate::graph::Graph;
use crate::io::{parse_graph6, to_graph6};
use crate::parity::{criterion_check, oracle_check, FACTOR_MAX_EDGES, ORACLE_MAX_ORDER};
use crate::report::{Comparator, HarnessReport, Params, Row};

/// Largest order the labeled scan enumerates.
pub const LABELED_MAX_ORDER: usize = 6;

/// Outcome of comparing both deciders on one graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Comparison {
    criterion: bool,
    oracle: bool,
}

fn compare(g: &Graph) -> Result<Comparison> {
    Ok(Comparison {
        criterion: criterion_check(g)?.has_spf,
        oracle: oracle_check(g)?.has_spf,
    })
}

/// Every labeled graph on `n` vertices, as the graph on edge-subset `mask`
/// of the lexicographic pair list.
fn labeled_graph(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    let mut adj = vec![0u64; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    Graph::from_adjacency(adj).expect("labeled graph is simple")
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn bit(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// Compares both deciders on every connected labeled graph with
/// `1 ≤ n ≤ max_n` vertices.
///
/// Per order `n` the report has a `scan-n{n}` row (discrepancy count against
/// zero, with the graph count in the witness), a `scan-n{n}-count` row
/// recording `(connected graphs, graphs with a strong parity factor)`, and
/// one `scan-n{n}-discrepancy` row per disagreement.
pub fn scan_small(max_n: usize) -> Result<HarnessReport> {
    if max_n == 0 || max_n > LABELED_MAX_ORDER {
        return Err(Error::invalid(format!(
            "labeled scan supports 1 <= max_n <= {LABELED_MAX_ORDER}, got {max_n}"
        )));
    }
    let mut report = HarnessReport::new();
    for n in 1..=max_n {
        let pairs = pairs(n);
        let results: Vec<(u64, Comparison)> = (0..1u64 << pairs.len())
            .into_par_iter()
            .filter_map(|mask| {
                let g = labeled_graph(n, &pairs, mask);
                g.is_connected().then(|| compare(&g).map(|c| (mask, c)))
            })
            .collect::<Result<_>>()?;
        let graphs: Vec<(String, Comparison)> = results
            .into_iter()
            .map(|(mask, c)| (to_graph6(&labeled_graph(n, &pairs, mask)).expect("n <= 6"), c))
            .collect();
        summarize(&mut report, &format!("scan-n{n}"), Params::new().n(n), &graphs);
    }
    report.sort();
    Ok(report)
}

fn summarize(report: &mut HarnessReport, id: &str, params: Params, graphs: &[(String, Comparison)]) {
    let with_spf = graphs.iter().filter(|(_, c)| c.criterion).count();
    let mut discrepancies = 0;
    for (g6, c) in graphs {
        if c.criterion != c.oracle {
            discrepancies += 1;
            report.push(
                Row::new(
                    format!("{id}-discrepancy"),
                    params,
                    bit(c.criterion),
                    bit(c.oracle),
                    Comparator::Equal { tol: 0.0 },
                )
                .with_witness(g6.clone()),
            );
        }
    }
    report.push(Row::new(
        format!("{id}-count"),
        params,
        graphs.len() as f64,
        with_spf as f64,
        Comparator::Record,
    ));
    report.push(
        Row::new(id, params, discrepancies as f64, 0.0, Comparator::Equal { tol: 0.0 }).with_witness(format!(
            "graphs={} spf={}",
            graphs.len(),
            with_spf
        )),
    );
}

/// Same comparison over a graph6 stream (one graph per line, order at most
/// 12, at most 32 edges). Disconnected graphs are counted and skipped.
pub fn scan_stream(text: &str) -> Result<HarnessReport> {
    let mut graphs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
        if line.is_empty() {
            continue;
        }
        let g = parse_graph6(line).map_err(|e| match e {
            Error::Parse { position, message } => Error::Parse {
                position: Position::Line(i + 1),
                message: format!("{message} ({position})"),
            },
            other => other,
        })?;
        if g.order() > ORACLE_MAX_ORDER || g.size() > FACTOR_MAX_EDGES {
            return Err(Error::SizeLimit(format!(
                "line {}: stream graphs need order <= {ORACLE_MAX_ORDER} and <= {FACTOR_MAX_EDGES} edges",
                i + 1
            )));
        }
        graphs.push(g);
    }
    let skipped = graphs.iter().filter(|g| !g.is_connected()).count();
    let compared: Vec<(String, Comparison)> = graphs
        .par_iter()
        .filter(|g| g.is_connected())
        .map(|g| Ok((to_graph6(g)?, compare(g)?)))
        .collect::<Result<_>>()?;
    let mut report = HarnessReport::new();
    summarize(&mut report, "scan-stream", Params::new(), &compared);
    report.push(Row::new(
        "scan-stream-skipped",
        Params::new(),
        skipped as f64,
        graphs.len() as f64,
        Comparator::Record,
    ));
    report.sort();
    Ok(report)
}
