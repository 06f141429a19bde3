//! Exact toughness and independence number by exhaustive search.
//!
//! Vertex subsets are 64-bit masks, enumerated by increasing size and, within
//! a size, by increasing mask value. Every reported witness is therefore the
//! first qualifying set in that order: smallest `|S|`, then smallest mask.

use std::cell::Cell;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{CutsetWitness, Graph};
use crate::rational::{ExactRational, ToughnessValue};

/// Optional wall-clock limit, polled from the subset loops.
#[derive(Debug, Default)]
pub struct Budget {
    deadline: Option<Instant>,
    ticks: Cell<u32>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_time_limit(limit: Duration) -> Self {
        Self {
            deadline: Some(Instant::now() + limit),
            ticks: Cell::new(0),
        }
    }

    #[inline]
    fn tick(&self) -> Result<()> {
        let Some(deadline) = self.deadline else {
            return Ok(());
        };
        let t = self.ticks.get().wrapping_add(1);
        self.ticks.set(t);
        if t.is_multiple_of(4096) && Instant::now() >= deadline {
            return Err(Error::Timeout);
        }
        Ok(())
    }
}

/// Adjacency masks for one graph within the exhaustive cap.
pub(crate) struct MaskGraph {
    n: usize,
    adj: Vec<u64>,
    full: u64,
}

impl MaskGraph {
    pub(crate) fn new(g: &Graph) -> Result<Self> {
        if g.n() == 0 {
            return Err(Error::Domain("the graph has no vertices".into()));
        }
        let adj = g.masks()?;
        let n = g.n();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(Self { n, adj, full })
    }

    /// Components of `G - removed` by flood fill over masks.
    #[inline]
    pub(crate) fn components(&self, removed: u64) -> usize {
        let mut left = self.full & !removed;
        let mut count = 0;
        while left != 0 {
            let seed = left & left.wrapping_neg();
            let mut comp = seed;
            let mut frontier = seed;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[v] & left & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            left &= !comp;
            count += 1;
        }
        count
    }

    pub(crate) fn without_edge(&self, u: usize, v: usize) -> Self {
        let mut adj = self.adj.clone();
        adj[u] &= !(1 << v);
        adj[v] &= !(1 << u);
        Self { n: self.n, adj, full: self.full }
    }

    pub(crate) fn is_complete(&self) -> bool {
        (0..self.n).all(|v| self.adj[v] | 1 << v == self.full)
    }
}

/// All `k`-subsets of `0..n` as masks, in increasing numeric order.
pub(crate) fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = if n == 64 { None } else { Some(1u64 << n) };
    let first = match k {
        0 => Some(0),
        _ if k > n => None,
        64 => Some(u64::MAX),
        _ => Some((1u64 << k) - 1),
    };
    std::iter::successors(first, move |&x| {
        if x == 0 {
            return None;
        }
        // Gosper's hack.
        let c = x & x.wrapping_neg();
        let r = x.checked_add(c)?;
        let next = (((r ^ x) >> 2) / c) | r;
        match limit {
            Some(l) if next >= l => None,
            _ => Some(next),
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TToughVerdict {
    Tough,
    /// A cutset with `ω(G - S) > |S| / t`, or `S = ∅` for a disconnected graph.
    NotTough(CutsetWitness),
}

impl TToughVerdict {
    pub fn is_tough(&self) -> bool {
        matches!(self, Self::Tough)
    }

    pub fn violation(&self) -> Option<&CutsetWitness> {
        match self {
            Self::Tough => None,
            Self::NotTough(w) => Some(w),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToughnessResult {
    pub value: ToughnessValue,
    /// A tough set; present exactly when the value is finite.
    pub witness: Option<CutsetWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IndependenceResult {
    pub alpha: usize,
    pub witness_set: Vec<usize>,
}

fn check_positive(t: &ExactRational) -> Result<()> {
    if t.is_zero() {
        return Err(Error::InvalidParameter("t must be positive".into()));
    }
    Ok(())
}

/// Decides `τ(G) ≥ t`.
pub fn is_t_tough(g: &Graph, t: &ExactRational) -> Result<TToughVerdict> {
    is_t_tough_within(g, t, &Budget::unlimited())
}

pub fn is_t_tough_within(g: &Graph, t: &ExactRational, budget: &Budget) -> Result<TToughVerdict> {
    check_positive(t)?;
    let mg = MaskGraph::new(g)?;
    t_tough_masked(&mg, t, budget)
}

pub(crate) fn t_tough_masked(mg: &MaskGraph, t: &ExactRational, budget: &Budget) -> Result<TToughVerdict> {
    let n = mg.n;
    let base = mg.components(0);
    if base != 1 {
        return Ok(TToughVerdict::NotTough(CutsetWitness::new(Vec::new(), base)));
    }
    if mg.is_complete() {
        return Ok(TToughVerdict::Tough);
    }
    // A violation at size k needs ω > k/t, and ω ≤ n - k.
    let allowed_at = |k: usize| -> u64 {
        (BigUint::from(k) * t.denom() / t.numer()).to_u64().unwrap_or(u64::MAX)
    };
    for k in 1..n.saturating_sub(1) {
        let allowed = allowed_at(k).max(1);
        if allowed >= (n - k) as u64 {
            break;
        }
        for mask in subsets_of_size(n, k) {
            budget.tick()?;
            let omega = mg.components(mask);
            if omega as u64 > allowed {
                return Ok(TToughVerdict::NotTough(CutsetWitness::from_mask(mask, omega)));
            }
        }
    }
    Ok(TToughVerdict::Tough)
}

/// First cutset (smallest size, then mask) with `|S| / ω(G - S) = t` exactly.
pub fn find_cutset_with_ratio(g: &Graph, t: &ExactRational, budget: &Budget) -> Result<Option<CutsetWitness>> {
    check_positive(t)?;
    let mg = MaskGraph::new(g)?;
    ratio_cutset_masked(&mg, t, budget)
}

pub(crate) fn ratio_cutset_masked(mg: &MaskGraph, t: &ExactRational, budget: &Budget) -> Result<Option<CutsetWitness>> {
    let Some((a, b)) = t.to_u64_parts() else {
        return Ok(None);
    };
    let n = mg.n as u64;
    // gcd(a, b) = 1, so |S| = k must be a multiple of a, with ω = k·b/a.
    let mut k = a;
    while k + 2 <= n {
        let omega = match (k / a).checked_mul(b) {
            Some(w) if w + k <= n => w,
            _ => break,
        };
        if omega >= 2 {
            for mask in subsets_of_size(mg.n, k as usize) {
                budget.tick()?;
                if mg.components(mask) as u64 == omega {
                    return Ok(Some(CutsetWitness::from_mask(mask, omega as usize)));
                }
            }
        }
        k += a;
    }
    Ok(None)
}

/// `τ(G) = t`, decided as `τ ≥ t` plus a cutset of ratio exactly `t`.
/// Returns that tough set when equality holds.
pub fn toughness_equals(g: &Graph, t: &ExactRational, budget: &Budget) -> Result<Option<CutsetWitness>> {
    check_positive(t)?;
    let mg = MaskGraph::new(g)?;
    if !t_tough_masked(&mg, t, budget)?.is_tough() {
        return Ok(None);
    }
    ratio_cutset_masked(&mg, t, budget)
}

/// `τ(G) = t` via the decision pair `τ ≥ t` and `τ < t + 1/n²`.
///
/// Sound only for connected noncomplete graphs, where two distinct
/// toughness values on `n` vertices differ by more than `1/n²`.
pub fn toughness_equals_via_gap(g: &Graph, t: &ExactRational) -> Result<bool> {
    check_positive(t)?;
    let mg = MaskGraph::new(g)?;
    if mg.components(0) != 1 || mg.is_complete() {
        return Ok(false);
    }
    let n = g.n() as u64;
    let above = t + &ExactRational::frac(1, n * n);
    let budget = Budget::unlimited();
    Ok(t_tough_masked(&mg, t, &budget)?.is_tough() && !t_tough_masked(&mg, &above, &budget)?.is_tough())
}

/// Exact toughness by direct minimization of `|S| / ω(G - S)`.
pub fn toughness(g: &Graph) -> Result<ToughnessResult> {
    toughness_within(g, &Budget::unlimited())
}

pub fn toughness_within(g: &Graph, budget: &Budget) -> Result<ToughnessResult> {
    let mg = MaskGraph::new(g)?;
    if mg.components(0) != 1 {
        return Ok(ToughnessResult {
            value: ToughnessValue::Zero,
            witness: None,
        });
    }
    if mg.is_complete() {
        return Ok(ToughnessResult {
            value: ToughnessValue::Infinite,
            witness: None,
        });
    }
    let n = mg.n;
    // Best ratio so far as (|S|, ω); any cutset beats this sentinel.
    let mut best: (u64, u64) = (n as u64, 1);
    let mut best_mask = 0u64;
    for k in 1..n - 1 {
        // Sets of size ≥ k have ratio ≥ k / (n - k).
        if k as u64 * best.1 >= best.0 * (n - k) as u64 {
            break;
        }
        for mask in subsets_of_size(n, k) {
            budget.tick()?;
            let omega = mg.components(mask) as u64;
            if omega >= 2 && (k as u64) * best.1 < best.0 * omega {
                best = (k as u64, omega);
                best_mask = mask;
            }
        }
    }
    let witness = CutsetWitness::from_mask(best_mask, best.1 as usize);
    Ok(ToughnessResult {
        value: ToughnessValue::Finite(ExactRational::frac(best.0, best.1)),
        witness: Some(witness),
    })
}

/// Toughness recovered from the decision procedure alone: the largest
/// candidate `a/b` with `1 ≤ a, b ≤ n - 1` for which the graph is
/// `a/b`-tough. Independent cross-check for [`toughness`].
pub fn toughness_via_decision(g: &Graph) -> Result<ToughnessResult> {
    let mg = MaskGraph::new(g)?;
    if mg.components(0) != 1 {
        return Err(Error::Domain("toughness_via_decision needs a connected graph".into()));
    }
    if mg.is_complete() {
        return Err(Error::Domain("toughness_via_decision needs a noncomplete graph".into()));
    }
    let n = g.n() as u64;
    let mut candidates: Vec<ExactRational> = (1..n)
        .flat_map(|a| (1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| num_integer::gcd(a, b) == 1)
        .map(|(a, b)| ExactRational::frac(a, b))
        .collect();
    candidates.sort();

    let budget = Budget::unlimited();
    // Toughness is at least the smallest candidate 1/(n-1) for any connected graph.
    let (mut lo, mut hi) = (0usize, candidates.len());
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if t_tough_masked(&mg, &candidates[mid], &budget)?.is_tough() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = candidates.swap_remove(lo);
    let witness = ratio_cutset_masked(&mg, &t, &budget)?
        .ok_or_else(|| Error::Domain(format!("no cutset attains the decided toughness {t}")))?;
    Ok(ToughnessResult {
        value: ToughnessValue::Finite(t),
        witness: Some(witness),
    })
}

/// Exact independence number by branch and bound.
///
/// Branches on a maximum-degree vertex of the remaining candidates
/// (include / exclude); prunes with a greedy clique cover of the candidates,
/// which bounds how many of them an independent set can take.
pub fn independence_number(g: &Graph) -> IndependenceResult {
    let n = g.n();
    let rows: Vec<FixedBitSet> = (0..n)
        .map(|v| {
            let mut row = FixedBitSet::with_capacity(n);
            row.extend(g.neighbors(v));
            row
        })
        .collect();
    let mut search = MisSearch {
        rows: &rows,
        best: Vec::new(),
        current: Vec::new(),
    };
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    search.run(all);
    let mut witness_set = search.best;
    witness_set.sort_unstable();
    IndependenceResult {
        alpha: witness_set.len(),
        witness_set,
    }
}

struct MisSearch<'a> {
    rows: &'a [FixedBitSet],
    best: Vec<usize>,
    current: Vec<usize>,
}

impl MisSearch<'_> {
    fn degree_in(&self, v: usize, cand: &FixedBitSet) -> usize {
        self.rows[v].intersection_count(cand)
    }

    fn run(&mut self, mut cand: FixedBitSet) {
        let depth = self.current.len();
        // A vertex with at most one remaining neighbor is in some maximum
        // independent set of the candidate graph.
        loop {
            let low = cand.ones().find(|&v| self.degree_in(v, &cand) <= 1);
            let Some(v) = low else { break };
            self.current.push(v);
            cand.set(v, false);
            cand.difference_with(&self.rows[v]);
        }
        if cand.is_clear() {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
        } else if self.current.len() + self.clique_cover(&cand) > self.best.len() {
            let v = cand
                .ones()
                .max_by_key(|&v| (self.degree_in(v, &cand), std::cmp::Reverse(v)))
                .expect("nonempty");
            let mut with_v = cand.clone();
            with_v.set(v, false);
            with_v.difference_with(&self.rows[v]);
            self.current.push(v);
            self.run(with_v);
            self.current.pop();

            cand.set(v, false);
            self.run(cand);
        }
        self.current.truncate(depth);
    }

    fn clique_cover(&self, cand: &FixedBitSet) -> usize {
        let mut left = cand.clone();
        let mut cliques = 0;
        while let Some(v) = left.minimum() {
            left.set(v, false);
            let mut extend = left.clone();
            extend.intersect_with(&self.rows[v]);
            while let Some(u) = extend.minimum() {
                left.set(u, false);
                extend.set(u, false);
                extend.intersect_with(&self.rows[u]);
            }
            cliques += 1;
        }
        cliques
    }
}

/// Exhaustive independence number over all `2^n` subsets; the testing
/// oracle for [`independence_number`]. Limited to `n ≤ 30`.
pub fn independence_number_exhaustive(g: &Graph) -> Result<IndependenceResult> {
    let n = g.n();
    if n > 30 {
        return Err(Error::InvalidParameter(format!(
            "exhaustive independence search is limited to 30 vertices, got {n}"
        )));
    }
    let adj = g.masks()?;
    let mut best = 0u64;
    for mask in 0u64..1 << n {
        if mask.count_ones() <= best.count_ones() {
            continue;
        }
        let mut m = mask;
        let mut independent = true;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            if adj[v] & mask != 0 {
                independent = false;
                break;
            }
        }
        if independent {
            best = mask;
        }
    }
    let witness_set = crate::graph::mask_to_vec(best);
    Ok(IndependenceResult {
        alpha: witness_set.len(),
        witness_set,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(a: u64, b: u64) -> ExactRational {
        ExactRational::frac(a, b)
    }

    /// Toughness straight from the definition: every subset, ratio compared
    /// by cross-multiplication, no pruning.
    fn brute_toughness(g: &Graph) -> Option<(u64, u64)> {
        let n = g.n();
        let mut best: Option<(u64, u64)> = None;
        for mask in 0u64..1 << n {
            let removed = crate::graph::mask_to_vec(mask);
            let omega = g.components_after_removal(&removed) as u64;
            if omega < 2 {
                continue;
            }
            let k = removed.len() as u64;
            if best.is_none_or(|(bk, bo)| k * bo < bk * omega) {
                best = Some((k, omega));
            }
        }
        best
    }

    #[test]
    fn subset_enumeration_counts() {
        assert_eq!(subsets_of_size(5, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets_of_size(4, 2).collect::<Vec<_>>(), vec![3, 5, 6, 9, 10, 12]);
        assert_eq!(subsets_of_size(10, 4).count(), 210);
        assert_eq!(subsets_of_size(3, 4).count(), 0);
        assert_eq!(subsets_of_size(64, 63).count(), 64);
        assert_eq!(subsets_of_size(64, 64).collect::<Vec<_>>(), vec![u64::MAX]);
    }

    #[test]
    fn brute_force_oracle_values() {
        // Frozen from the unpruned enumeration above.
        assert_eq!(brute_toughness(&Graph::path(4)), Some((1, 2)));
        assert_eq!(brute_toughness(&Graph::cycle(4)), Some((2, 2)));
        assert_eq!(brute_toughness(&Graph::petersen()), Some((4, 3)));
        assert_eq!(brute_toughness(&Graph::cycle(6)), Some((2, 2)));
        assert_eq!(brute_toughness(&Graph::star(3)), Some((1, 3)));
    }

    #[test]
    fn t_tough_examples() {
        assert!(is_t_tough(&Graph::complete(5), &ExactRational::integer(100)).unwrap().is_tough());
        let c4 = Graph::cycle(4);
        assert!(is_t_tough(&c4, &ExactRational::integer(1)).unwrap().is_tough());
        let v = is_t_tough(&c4, &frac(17, 16)).unwrap();
        let w = v.violation().unwrap();
        assert_eq!(w.removed, vec![0, 2]);
        assert_eq!(w.component_count, 2);

        let two_edges = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let v = is_t_tough(&two_edges, &frac(1, 2)).unwrap();
        assert_eq!(v.violation().unwrap().removed, Vec::<usize>::new());
        assert_eq!(v.violation().unwrap().component_count, 2);
    }

    #[test]
    fn t_tough_errors() {
        assert!(is_t_tough(&Graph::new(0), &frac(1, 1)).is_err());
        assert!(matches!(is_t_tough(&Graph::path(65), &frac(1, 1)), Err(Error::SizeCap(65))));
        assert!(is_t_tough(&Graph::path(3), &ExactRational::zero()).is_err());
    }

    #[test]
    fn t_tough_with_huge_t() {
        let t: ExactRational = "100000000000000000000000".parse().unwrap();
        assert!(!is_t_tough(&Graph::cycle(5), &t).unwrap().is_tough());
        assert!(is_t_tough(&Graph::complete(3), &t).unwrap().is_tough());
        let tiny: ExactRational = "1/100000000000000000000000".parse().unwrap();
        assert!(is_t_tough(&Graph::path(5), &tiny).unwrap().is_tough());
    }

    #[test]
    fn toughness_examples() {
        let r = toughness(&Graph::path(4)).unwrap();
        assert_eq!(r.value, ToughnessValue::Finite(frac(1, 2)));
        let w = r.witness.unwrap();
        assert_eq!(w.removed, vec![1]);
        assert_eq!(w.component_count, 2);

        assert_eq!(toughness(&Graph::petersen()).unwrap().value, ToughnessValue::Finite(frac(4, 3)));
        let k1 = toughness(&Graph::complete(1)).unwrap();
        assert_eq!(k1.value, ToughnessValue::Infinite);
        assert!(k1.witness.is_none());
        assert_eq!(toughness(&Graph::complete(2)).unwrap().value, ToughnessValue::Infinite);
        assert_eq!(toughness(&Graph::new(3)).unwrap().value, ToughnessValue::Zero);
        assert!(toughness(&Graph::new(0)).is_err());
    }

    #[test]
    fn via_decision_examples() {
        let c6 = toughness_via_decision(&Graph::cycle(6)).unwrap();
        assert_eq!(c6.value, ToughnessValue::Finite(frac(1, 1)));
        let star = toughness_via_decision(&Graph::star(3)).unwrap();
        assert_eq!(star.value, ToughnessValue::Finite(frac(1, 3)));
        assert_eq!(star.witness.unwrap().removed, vec![0]);
        assert!(toughness_via_decision(&Graph::complete(4)).is_err());
        assert!(toughness_via_decision(&Graph::new(2)).is_err());
    }

    #[test]
    fn pruned_minimization_matches_definition() {
        let mut graphs = vec![Graph::petersen(), Graph::star(5), Graph::cycle(7)];
        // Every labeled graph on 5 vertices.
        for bits in 0u32..1 << 10 {
            let mut g = Graph::new(5);
            let mut i = 0;
            for u in 0..5 {
                for v in u + 1..5 {
                    if bits >> i & 1 == 1 {
                        g.add_edge(u, v).unwrap();
                    }
                    i += 1;
                }
            }
            graphs.push(g);
        }
        for g in graphs {
            let got = toughness(&g).unwrap().value;
            let expected = match brute_toughness(&g) {
                _ if !g.is_connected() => ToughnessValue::Zero,
                None => ToughnessValue::Infinite,
                Some((k, w)) => ToughnessValue::Finite(frac(k, w)),
            };
            assert_eq!(got, expected, "{g:?}");
        }
    }

    #[test]
    fn equality_paths_agree() {
        for g in [Graph::path(4), Graph::cycle(5), Graph::petersen(), Graph::star(4)] {
            let tau = toughness(&g).unwrap().value.finite().cloned().unwrap();
            for t in [frac(1, 4), frac(1, 2), frac(1, 1), frac(4, 3), frac(3, 2)] {
                let direct = toughness_equals(&g, &t, &Budget::unlimited()).unwrap().is_some();
                assert_eq!(direct, t == tau);
                assert_eq!(toughness_equals_via_gap(&g, &t).unwrap(), t == tau);
            }
        }
    }

    #[test]
    fn budget_expires() {
        let b = Budget::with_time_limit(Duration::ZERO);
        let g = Graph::cycle(40);
        assert!(matches!(is_t_tough_within(&g, &frac(1, 1), &b), Err(Error::Timeout)));
    }

    #[test]
    fn independence_examples() {
        let c5 = independence_number(&Graph::cycle(5));
        assert_eq!(c5.alpha, 2);
        assert_eq!(independence_number_exhaustive(&Graph::cycle(5)).unwrap().alpha, 2);
        for n in 1..7 {
            assert_eq!(independence_number(&Graph::complete(n)).alpha, 1);
        }
        let e7 = independence_number(&Graph::new(7));
        assert_eq!(e7.alpha, 7);
        assert_eq!(e7.witness_set, (0..7).collect::<Vec<_>>());
        assert_eq!(independence_number(&Graph::new(0)).alpha, 0);
        assert_eq!(independence_number(&Graph::petersen()).alpha, 4);
    }

    #[test]
    fn independence_matches_exhaustive() {
        let mut state = 0x9E37_79B9_7F4A_7C15u64;
        for round in 0..200 {
            let n = 1 + round % 16;
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    if state % 100 < 15 + (round as u64 % 5) * 15 {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let fast = independence_number(&g);
            let slow = independence_number_exhaustive(&g).unwrap();
            assert_eq!(fast.alpha, slow.alpha, "{g:?}");
            for (i, &u) in fast.witness_set.iter().enumerate() {
                for &v in &fast.witness_set[i + 1..] {
                    assert!(!g.has_edge(u, v));
                }
            }
        }
    }

    #[test]
    fn independence_beyond_mask_cap() {
        // Disjoint union of 35 edges: alpha = 35 on 70 vertices.
        let g = Graph::from_edges(70, (0..35).map(|i| (2 * i, 2 * i + 1))).unwrap();
        assert_eq!(independence_number(&g).alpha, 35);
        assert_eq!(independence_number(&Graph::cycle(61)).alpha, 30);
    }
}
