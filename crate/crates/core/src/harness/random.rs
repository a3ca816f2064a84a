//! Seeded random connected graphs with a minimum-degree floor.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_ORDER};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomGraphConfig {
    pub n: usize,
    pub min_degree: usize,
    pub edge_probability: f64,
    pub seed: u64,
    /// Start from a random spanning tree so the result is connected.
    pub connected: bool,
}

/// Per-sample edge probability for a campaign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeSchedule {
    Fixed(f64),
    /// Sample `i` uses `lo + (hi - lo) * (i mod steps) / (steps - 1)`.
    Sweep {
        lo: f64,
        hi: f64,
        steps: usize,
    },
}

impl EdgeSchedule {
    pub fn probability(&self, i: usize) -> f64 {
        match *self {
            EdgeSchedule::Fixed(p) => p,
            EdgeSchedule::Sweep { lo, hi, steps } => {
                if steps <= 1 {
                    lo
                } else {
                    lo + (hi - lo) * (i % steps) as f64 / (steps - 1) as f64
                }
            }
        }
    }
}

impl Default for EdgeSchedule {
    fn default() -> Self {
        EdgeSchedule::Sweep {
            lo: 0.5,
            hi: 0.95,
            steps: 10,
        }
    }
}

/// Draws a graph in three deterministic stages:
///
/// 1. a random spanning tree (shuffle the vertices, attach each to a
///    uniformly chosen earlier one), when `connected` is set;
/// 2. every remaining pair `u < v`, in lexicographic order, independently
///    with probability `edge_probability`;
/// 3. each vertex below `min_degree`, in ascending order, gets uniformly
///    chosen new neighbors until it reaches the floor.
pub fn random_graph(config: &RandomGraphConfig) -> Result<Graph> {
    let RandomGraphConfig {
        n,
        min_degree,
        edge_probability: p,
        seed,
        connected,
    } = *config;
    if n == 0 || n > MAX_ORDER {
        return Err(Error::invalid(format!("order must be in 1..={MAX_ORDER}, got {n}")));
    }
    if min_degree >= n && n > 1 || (n == 1 && min_degree > 0) {
        return Err(Error::invalid(format!(
            "minimum degree {min_degree} is impossible on {n} vertices"
        )));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("edge probability {p} outside [0, 1]")));
    }

    let mut rng = SplitMix64::new(seed);
    let mut adj = vec![0u64; n];
    let add = |adj: &mut Vec<u64>, u: usize, v: usize| {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    };

    if connected {
        let mut order: Vec<usize> = (0..n).collect();
        rng.shuffle(&mut order);
        for i in 1..n {
            let parent = order[rng.below(i)];
            add(&mut adj, order[i], parent);
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if adj[u] >> v & 1 == 0 && rng.unit() < p {
                add(&mut adj, u, v);
            }
        }
    }
    for v in 0..n {
        while (adj[v].count_ones() as usize) < min_degree {
            let absent = VertexSet::full(n)
                .difference(VertexSet::from_bits(adj[v]))
                .difference(VertexSet::from_bits(1 << v))
                .to_vec();
            if absent.is_empty() {
                return Err(Error::GenerationExhausted(format!(
                    "vertex {v} cannot reach degree {min_degree}"
                )));
            }
            let w = absent[rng.below(absent.len())];
            add(&mut adj, v, w);
        }
    }
    Graph::from_adjacency(adj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete;

    fn cfg(p: f64, seed: u64) -> RandomGraphConfig {
        RandomGraphConfig {
            n: 18,
            min_degree: 3,
            edge_probability: p,
            seed,
            connected: true,
        }
    }

    #[test]
    fn meets_postconditions() {
        for seed in 0..50 {
            for p in [0.0, 0.1, 0.5] {
                let g = random_graph(&cfg(p, seed)).unwrap();
                assert!(g.is_connected());
                assert!(g.min_degree() >= 3);
            }
        }
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(random_graph(&cfg(0.5, 1)).unwrap(), random_graph(&cfg(0.5, 1)).unwrap());
        assert_ne!(random_graph(&cfg(0.5, 1)).unwrap(), random_graph(&cfg(0.5, 2)).unwrap());
    }

    #[test]
    fn probability_one_is_complete() {
        assert_eq!(random_graph(&cfg(1.0, 9)).unwrap(), complete(18).unwrap());
    }

    #[test]
    fn rejects_impossible_degree() {
        let mut c = cfg(0.5, 1);
        c.min_degree = 18;
        assert!(matches!(random_graph(&c), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn sweep_schedule() {
        let s = EdgeSchedule::Sweep {
            lo: 0.5,
            hi: 1.0,
            steps: 6,
        };
        assert_eq!(s.probability(0), 0.5);
        assert_eq!(s.probability(5), 1.0);
        assert_eq!(s.probability(6), 0.5);
        assert_eq!(EdgeSchedule::Fixed(0.3).probability(99), 0.3);
    }
}
