//! Simple undirected graphs on at most 63 vertices, stored as one `u64`
//! neighbor bitset per vertex.
//!
//! Graphs are immutable values. Every constructor (`complete`, `join`,
//! `disjoint_union`, `delete_vertices`, ...) returns a fresh graph, and the
//! label layout is deterministic: in `join` and `disjoint_union` the left
//! operand keeps labels `0..|G|` and the right operand is shifted by `|G|`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest order a [`Graph`] may have.
pub const MAX_ORDER: usize = 63;

/// A set of vertices of some host graph, as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        VertexSet(low_bits(n))
    }

    /// Vertices `start..end`.
    pub fn range(start: usize, end: usize) -> Self {
        VertexSet(low_bits(end) & !low_bits(start))
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, v: usize) -> bool {
        v < 64 && (self.0 >> v) & 1 == 1
    }

    #[must_use]
    pub const fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1 << v))
    }

    #[must_use]
    pub const fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[must_use]
    pub const fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[must_use]
    pub const fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Members in ascending order.
    pub fn iter(self) -> BitIter {
        BitIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(VertexSet::EMPTY, VertexSet::with)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterator over set bit positions, lowest first.
#[derive(Clone)]
pub struct BitIter(pub(crate) u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for BitIter {}

pub(crate) const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// An undirected simple graph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph `n K_1`.
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Graph { adj: vec![0; n] })
    }

    /// Builds a graph from an edge list. Loops, duplicates and out-of-range
    /// endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        check_order(n)?;
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u}, {v}) out of range for order {n}")));
            }
            if u == v {
                return Err(Error::invalid(format!("loop at vertex {u}")));
            }
            if adj[u] >> v & 1 == 1 {
                return Err(Error::invalid(format!("duplicate edge ({u}, {v})")));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph { adj })
    }

    /// Builds a graph from raw neighbor rows, checking symmetry and loops.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        check_order(n)?;
        let mask = low_bits(n);
        for (u, &row) in adj.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::invalid(format!("row {u} has bits beyond order {n}")));
            }
            if row >> u & 1 == 1 {
                return Err(Error::invalid(format!("loop at vertex {u}")));
            }
            for v in BitIter(row) {
                if adj[v] >> u & 1 == 0 {
                    return Err(Error::invalid(format!("asymmetric pair ({u}, {v})")));
                }
            }
        }
        Ok(Graph { adj })
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < 64 && self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|r| r.count_ones() as usize).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).max().unwrap_or(0)
    }

    /// Sum of degrees over `set`.
    pub fn degree_sum(&self, set: VertexSet) -> usize {
        set.iter().map(|v| self.degree(v)).sum()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for (u, &row) in self.adj.iter().enumerate() {
            for v in BitIter(row & !low_bits(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    /// Number of connected components of the subgraph induced by `alive`.
    /// Returns 0 for an empty `alive` set.
    pub fn components_within(&self, alive: VertexSet) -> usize {
        let mut rest = alive.bits();
        let mut count = 0;
        while rest != 0 {
            let seed = rest & rest.wrapping_neg();
            let mut seen = seed;
            let mut frontier = seed;
            while frontier != 0 {
                let mut next = 0;
                for v in BitIter(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & rest & !seen;
                seen |= frontier;
            }
            rest &= !seen;
            count += 1;
        }
        count
    }

    /// Vertex sets of the connected components, ordered by least vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut rest = self.vertices().bits();
        let mut out = Vec::new();
        while rest != 0 {
            let seed = rest & rest.wrapping_neg();
            let mut seen = seed;
            let mut frontier = seed;
            while frontier != 0 {
                let mut next = 0;
                for v in BitIter(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & rest & !seen;
                seen |= frontier;
            }
            rest &= !seen;
            out.push(VertexSet(seen));
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components_within(self.vertices())
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Induced subgraph on `keep`, relabeled to `0..|keep|` preserving order.
    pub fn induced(&self, keep: VertexSet) -> Result<Graph> {
        let keep = keep.intersection(self.vertices());
        if keep.is_empty() {
            return Err(Error::invalid("induced subgraph would be empty"));
        }
        let labels: Vec<usize> = keep.to_vec();
        let adj = labels
            .iter()
            .map(|&u| {
                labels
                    .iter()
                    .enumerate()
                    .filter(|&(_, &v)| self.adj[u] >> v & 1 == 1)
                    .fold(0u64, |row, (i, _)| row | 1 << i)
            })
            .collect();
        Ok(Graph { adj })
    }

    /// `G - S`.
    pub fn delete_vertices(&self, set: VertexSet) -> Result<Graph> {
        if set.bits() & !self.vertices().bits() != 0 {
            return Err(Error::invalid(format!(
                "vertex set {set:?} not contained in graph of order {}",
                self.order()
            )));
        }
        if set == self.vertices() {
            return Err(Error::invalid("cannot delete every vertex"));
        }
        self.induced(self.vertices().difference(set))
    }

    /// Copy of the graph without edge `(u, v)`.
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut adj = self.adj.clone();
        adj[u] &= !(1 << v);
        adj[v] &= !(1 << u);
        Graph { adj }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.order();
        let mut seen = 0u64;
        for &p in perm {
            if p >= n || seen >> p & 1 == 1 {
                return Err(Error::invalid("not a permutation of the vertex set"));
            }
            seen |= 1 << p;
        }
        if perm.len() != n {
            return Err(Error::invalid("permutation length differs from order"));
        }
        let mut adj = vec![0u64; n];
        for (u, &row) in self.adj.iter().enumerate() {
            adj[perm[u]] = BitIter(row).fold(0, |acc, v| acc | 1 << perm[v]);
        }
        Ok(Graph { adj })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order(), self.edges())
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("graph order must be at least 1"));
    }
    if n > MAX_ORDER {
        return Err(Error::invalid(format!(
            "order {n} exceeds the supported maximum {MAX_ORDER}"
        )));
    }
    Ok(())
}

/// `K_n`.
pub fn complete(n: usize) -> Result<Graph> {
    check_order(n)?;
    let full = low_bits(n);
    Ok(Graph {
        adj: (0..n).map(|v| full & !(1 << v)).collect(),
    })
}

/// `G ∪ H`, with `H` relabeled to start at `|G|`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph> {
    let shift = g.order();
    check_order(shift + h.order())?;
    let mut adj = g.adj.clone();
    adj.extend(h.adj.iter().map(|r| r << shift));
    Ok(Graph { adj })
}

/// `t G`: `t` disjoint copies of `g`.
pub fn copies(t: usize, g: &Graph) -> Result<Graph> {
    if t == 0 {
        return Err(Error::invalid("need at least one copy"));
    }
    (1..t).try_fold(g.clone(), |acc, _| disjoint_union(&acc, g))
}

/// `G ∨ H`: the disjoint union plus every edge between the two sides.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph> {
    let shift = g.order();
    let n = shift + h.order();
    check_order(n)?;
    let left = low_bits(shift);
    let right = low_bits(n) & !left;
    let mut adj = Vec::with_capacity(n);
    adj.extend(g.adj.iter().map(|r| r | right));
    adj.extend(h.adj.iter().map(|r| (r << shift) | left));
    Ok(Graph { adj })
}

/// Cycle `C_n`, `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid("a cycle needs at least 3 vertices"));
    }
    let edges: Vec<_> = (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect();
    Graph::from_edges(n, &edges)
}

/// Path `P_n` on `n` vertices.
pub fn path(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

/// Star `K_{1,m}` with center 0.
pub fn star(m: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..=m).map(|i| (0, i)).collect();
    Graph::from_edges(m + 1, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graphs() {
        let k1 = complete(1).unwrap();
        assert_eq!((k1.order(), k1.size()), (1, 0));
        let k4 = complete(4).unwrap();
        assert_eq!((k4.order(), k4.size()), (4, 6));
        assert_eq!(complete(11).unwrap().min_degree(), 10);
        assert!(complete(0).is_err());
        assert!(complete(64).is_err());
    }

    #[test]
    fn union_and_copies() {
        let k2 = complete(2).unwrap();
        let g = disjoint_union(&k2, &k2).unwrap();
        assert_eq!((g.order(), g.size(), g.component_count()), (4, 2, 2));
        let iso = copies(4, &complete(1).unwrap()).unwrap();
        assert_eq!((iso.order(), iso.size(), iso.component_count()), (4, 0, 4));
        let g = disjoint_union(&complete(3).unwrap(), &complete(1).unwrap()).unwrap();
        assert_eq!(g.min_degree(), 0);
    }

    #[test]
    fn joins() {
        let two = copies(2, &complete(1).unwrap()).unwrap();
        let g = join(&complete(2).unwrap(), &two).unwrap();
        assert_eq!((g.order(), g.size()), (4, 5));
        let k1 = complete(1).unwrap();
        assert_eq!(join(&k1, &k1).unwrap(), complete(2).unwrap());

        let rest = disjoint_union(&complete(11).unwrap(), &copies(4, &complete(1).unwrap()).unwrap()).unwrap();
        let g = join(&complete(3).unwrap(), &rest).unwrap();
        assert_eq!(g.order(), 18);
        assert_eq!(g.min_degree(), 3);
        assert!(g.is_connected());
        let clique = VertexSet::range(0, 3);
        assert_eq!(g.delete_vertices(clique).unwrap().component_count(), 5);
    }

    #[test]
    fn vertex_deletion() {
        let k4 = complete(4).unwrap();
        assert_eq!(
            k4.delete_vertices(VertexSet::from_bits(1)).unwrap(),
            complete(3).unwrap()
        );
        let s = star(3).unwrap();
        let rest = s.delete_vertices(VertexSet::from_bits(1)).unwrap();
        assert_eq!((rest.order(), rest.size()), (3, 0));
        let c4 = cycle(4).unwrap();
        let rest = c4.delete_vertices([0, 2].into_iter().collect()).unwrap();
        assert_eq!((rest.order(), rest.size(), rest.component_count()), (2, 0, 2));
        assert_eq!(c4.delete_vertices(VertexSet::EMPTY).unwrap(), c4);
        assert!(c4.delete_vertices(c4.vertices()).is_err());
        assert!(c4.delete_vertices(VertexSet::from_bits(1 << 4)).is_err());
    }

    #[test]
    fn degree_queries() {
        assert_eq!(complete(6).unwrap().min_degree(), 5);
        assert_eq!(star(4).unwrap().degrees(), vec![4, 1, 1, 1, 1]);
        assert_eq!(complete(5).unwrap().component_count(), 1);
        assert_eq!(Graph::empty(4).unwrap().component_count(), 4);
    }

    #[test]
    fn constructor_validation() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_adjacency(vec![0b10, 0]).is_err());
        assert!(Graph::from_adjacency(vec![0b10, 0b01]).is_ok());
    }

    #[test]
    fn components_within_empty_is_zero() {
        let g = complete(3).unwrap();
        assert_eq!(g.components_within(VertexSet::EMPTY), 0);
    }
}
