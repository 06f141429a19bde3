//! Simple undirected graphs on dense, stable vertex indices.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result, EXHAUSTIVE_CAP};
use crate::rational::ExactRational;

/// A finite simple undirected graph on vertices `0..n`.
///
/// Adjacency is kept symmetric with no loops. Deleting edges never
/// renumbers vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    rows: Vec<FixedBitSet>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Self {
            rows: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.link(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::new(n);
        for v in 1..n {
            g.link(v - 1, v);
        }
        g
    }

    /// The cycle `0-1-...-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut g = Self::path(n);
        g.link(n - 1, 0);
        g
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        let mut g = Self::new(leaves + 1);
        for v in 1..=leaves {
            g.link(0, v);
        }
        g
    }

    /// Outer 5-cycle on 0..5, inner pentagram on 5..10, spokes `i - i+5`.
    pub fn petersen() -> Self {
        let mut g = Self::new(10);
        for i in 0..5 {
            g.link(i, (i + 1) % 5);
            g.link(5 + i, 5 + (i + 2) % 5);
            g.link(i, i + 5);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n() })
        }
    }

    fn link(&mut self, u: usize, v: usize) {
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    /// Inserts `{u, v}`. Re-adding an existing edge is a no-op; loops are
    /// rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Domain(format!("loop at vertex {u}")));
        }
        self.link(u, v);
        Ok(())
    }

    /// Appends a new isolated vertex and returns its index.
    pub fn add_vertex(&mut self) -> usize {
        let n = self.n() + 1;
        for row in &mut self.rows {
            row.grow(n);
        }
        self.rows.push(FixedBitSet::with_capacity(n));
        n - 1
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.rows[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones(..)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].ones()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    /// A copy without the edge `{u, v}`; vertex indices are unchanged.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        let mut g = self.clone();
        g.rows[u].set(v, false);
        g.rows[v].set(u, false);
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    g.link(u, v);
                }
            }
        }
        g
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.edge_count() == n * n.saturating_sub(1) / 2
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components_after_removal(&[]) == 1
    }

    /// Number of connected components of `G - removed` (0 when every vertex
    /// is removed). Works for any `n`.
    pub fn components_after_removal(&self, removed: &[usize]) -> usize {
        let n = self.n();
        let mut gone = FixedBitSet::with_capacity(n);
        for &v in removed {
            if v < n {
                gone.insert(v);
            }
        }
        let mut sets = DisjointSets::new(n);
        for (u, v) in self.edges() {
            if !gone.contains(u) && !gone.contains(v) {
                sets.union(u, v);
            }
        }
        (0..n).filter(|&v| !gone.contains(v) && sets.find(v) == v).count()
    }

    /// Whether deleting `{u, v}` increases the number of components.
    pub fn is_bridge(&self, u: usize, v: usize) -> Result<bool> {
        let without = self.delete_edge(u, v)?;
        Ok(without.components_after_removal(&[]) > self.components_after_removal(&[]))
    }

    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Self::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.link(i, j);
                }
            }
        }
        g
    }

    /// Adjacency rows as 64-bit masks; only for graphs within the
    /// exhaustive-solving cap.
    pub fn masks(&self) -> Result<Vec<u64>> {
        if self.n() > EXHAUSTIVE_CAP {
            return Err(Error::SizeCap(self.n()));
        }
        Ok(self
            .rows
            .iter()
            .map(|row| row.ones().fold(0u64, |m, v| m | 1 << v))
            .collect())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// A removed vertex set together with the component count it leaves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CutsetWitness {
    /// Sorted ascending.
    pub removed: Vec<usize>,
    pub component_count: usize,
    /// `|S| / ω(G - S)`; absent for the empty set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<ExactRational>,
}

impl CutsetWitness {
    pub fn new(mut removed: Vec<usize>, component_count: usize) -> Self {
        removed.sort_unstable();
        removed.dedup();
        let ratio = (!removed.is_empty() && component_count > 0)
            .then(|| ExactRational::frac(removed.len() as u64, component_count as u64));
        Self {
            removed,
            component_count,
            ratio,
        }
    }

    pub fn from_mask(mask: u64, component_count: usize) -> Self {
        Self::new(mask_to_vec(mask), component_count)
    }

    /// Recomputes `ω(G - S)` and checks it against the stored count.
    pub fn is_consistent_with(&self, g: &Graph) -> bool {
        g.components_after_removal(&self.removed) == self.component_count
    }
}

pub(crate) fn mask_to_vec(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}
