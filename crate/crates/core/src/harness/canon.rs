//! Canonical labeling for small graphs and the connected-graph enumerator.
//!
//! Vertices are first split into an ordered partition by colour refinement,
//! which is isomorphism-invariant. The canonical code is the smallest
//! upper-triangle bit string over all orderings that respect the partition.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest `n` the enumerator accepts.
pub const ENUMERATE_MAX: usize = 8;
/// Largest `n` whose code fits in 64 bits.
pub const CANON_MAX: usize = 11;

fn refine(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut colour = vec![0usize; n];
    let mut classes = 1;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = g.neighbors(v).map(|w| colour[w]).collect();
                around.sort_unstable();
                (colour[v], around)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        for v in 0..n {
            colour[v] = distinct.binary_search(&sigs[v]).expect("present");
        }
        if distinct.len() == classes {
            break;
        }
        classes = distinct.len();
    }
    let mut cells = vec![Vec::new(); classes];
    for v in 0..n {
        cells[colour[v]].push(v);
    }
    cells
}

struct Search<'a> {
    g: &'a Graph,
    cell_of_position: Vec<usize>,
    cells: Vec<Vec<usize>>,
    total_bits: u32,
    order: Vec<usize>,
    used: Vec<bool>,
    best: Option<(u64, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, code: u64, bits: u32) {
        let p = self.order.len();
        if p == self.g.n() {
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, self.order.clone()));
            }
            return;
        }
        let cell = self.cell_of_position[p];
        for i in 0..self.cells[cell].len() {
            let v = self.cells[cell][i];
            if self.used[v] {
                continue;
            }
            let mut next = code;
            for &q in &self.order {
                next = next << 1 | self.g.has_edge(q, v) as u64;
            }
            let next_bits = bits + p as u32;
            if let Some((b, _)) = &self.best {
                let prefix = b >> (self.total_bits - next_bits);
                if next > prefix {
                    continue;
                }
            }
            self.used[v] = true;
            self.order.push(v);
            self.run(next, next_bits);
            self.order.pop();
            self.used[v] = false;
        }
    }
}

fn canonical_order(g: &Graph) -> Result<(u64, Vec<usize>)> {
    let n = g.n();
    if n > CANON_MAX {
        return Err(Error::SizeCap(n));
    }
    let cells = refine(g);
    let cell_of_position = cells
        .iter()
        .enumerate()
        .flat_map(|(c, cell)| std::iter::repeat_n(c, cell.len()))
        .collect();
    let mut search = Search {
        g,
        cell_of_position,
        cells,
        total_bits: (n * n.saturating_sub(1) / 2) as u32,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        best: None,
    };
    search.run(0, 0);
    Ok(search.best.expect("at least one ordering"))
}

/// Isomorphism-invariant code; equal codes on equal `n` mean isomorphic.
pub fn canonical_code(g: &Graph) -> Result<u64> {
    Ok(canonical_order(g)?.0)
}

/// The graph relabeled into canonical order.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    let (_, order) = canonical_order(g)?;
    let mut out = Graph::new(g.n());
    for (p, &u) in order.iter().enumerate() {
        for (q, &v) in order.iter().enumerate().take(p) {
            if g.has_edge(u, v) {
                out.add_edge(q, p)?;
            }
        }
    }
    Ok(out)
}

/// One canonical representative per isomorphism class of connected graphs
/// on exactly `n` vertices, sorted by canonical code.
///
/// Every connected graph has a vertex whose removal leaves it connected, so
/// extending each class on `n - 1` vertices by a new vertex with every
/// nonempty neighborhood reaches all classes on `n`.
pub fn enumerate_connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if !(1..=ENUMERATE_MAX).contains(&n) {
        return Err(Error::InvalidParameter(format!("enumeration supports 1 ≤ n ≤ {ENUMERATE_MAX}, got {n}")));
    }
    let mut level = vec![Graph::new(1)];
    for m in 2..=n {
        let found: Vec<(u64, Graph)> = level
            .par_iter()
            .flat_map_iter(|base| {
                (1u64..1 << (m - 1)).map(move |nbhd| {
                    let mut g = base.clone();
                    let x = g.add_vertex();
                    for v in 0..m - 1 {
                        if nbhd >> v & 1 == 1 {
                            g.add_edge(v, x).expect("fresh edge");
                        }
                    }
                    let form = canonical_form(&g).expect("within cap");
                    (canonical_code(&form).expect("within cap"), form)
                })
            })
            .collect();
        let unique: BTreeMap<u64, Graph> = found.into_iter().collect();
        level = unique.into_values().collect();
    }
    Ok(level)
}

/// All connected classes with `n_min ≤ n ≤ n_max`, ordered by `n`.
pub fn enumerate_range(n_min: usize, n_max: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in n_min.max(1)..=n_max {
        out.extend(enumerate_connected_graphs(n)?);
    }
    Ok(out)
}
