//! Decision procedures for minimally t-tough, almost minimally 1-tough and
//! α-critical graphs.
//!
//! `τ(G - e) < t` is always decided with the t-toughness decision on `G - e`;
//! its violating set doubles as the per-edge witness of the certificate.

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{CutsetWitness, Graph};
use crate::rational::ExactRational;
use crate::solver::{self, Budget, MaskGraph, TToughVerdict};

/// Evidence that deleting one edge drops toughness below `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeEvidence {
    Bridge,
    /// `S(e)` with `ω(G-S) ≤ |S|/t < ω((G-e)-S)`; `e` is a bridge of `G - S`.
    /// The stored component count is that of `(G - e) - S`.
    Witness(CutsetWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCertificate {
    pub edge: (usize, usize),
    pub evidence: EdgeEvidence,
}

/// Proof that a graph is minimally `t`-tough, checkable by recomputation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinToughCertificate {
    pub t: ExactRational,
    /// Cutset of ratio exactly `t`, proving `τ ≤ t`.
    pub tough_set: CutsetWitness,
    pub edges: Vec<EdgeCertificate>,
}

impl MinToughCertificate {
    /// Re-derives every clause from scratch using union-find component
    /// counts. It does not re-prove `τ ≥ t`.
    pub fn check(&self, g: &Graph) -> bool {
        let t = &self.t;
        let ts = &self.tough_set;
        let tough_ok = ts.component_count >= 2
            && ts.is_consistent_with(g)
            && ts.ratio.as_ref() == Some(t);
        let mut listed: Vec<_> = self.edges.iter().map(|c| c.edge).collect();
        listed.sort_unstable();
        let all_edges: Vec<_> = g.edges().collect();
        tough_ok && listed == all_edges && self.edges.iter().all(|c| check_edge_evidence(g, t, c.edge, &c.evidence))
    }
}

/// `ω · t ≤ k` for `t = a/b`, i.e. `ω·a ≤ k·b`, exactly.
fn within_ratio(omega: usize, k: usize, t: &ExactRational) -> bool {
    let lhs = t.numer() * num_bigint::BigUint::from(omega);
    let rhs = t.denom() * num_bigint::BigUint::from(k);
    lhs <= rhs
}

fn check_edge_evidence(g: &Graph, t: &ExactRational, (u, v): (usize, usize), evidence: &EdgeEvidence) -> bool {
    let Ok(without) = g.delete_edge(u, v) else {
        return false;
    };
    match evidence {
        EdgeEvidence::Bridge => g.is_bridge(u, v).unwrap_or(false),
        EdgeEvidence::Witness(w) => {
            let s = &w.removed;
            if s.contains(&u) || s.contains(&v) {
                return false;
            }
            let before = g.components_after_removal(s);
            let after = without.components_after_removal(s);
            within_ratio(before, s.len(), t) && !within_ratio(after, s.len(), t) && after == before + 1
        }
    }
}

impl Serialize for MinToughCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct EdgeEntry<'a> {
            edge: [usize; 2],
            bridge: bool,
            witness: &'a [usize],
        }
        let edges: Vec<EdgeEntry> = self
            .edges
            .iter()
            .map(|c| EdgeEntry {
                edge: [c.edge.0, c.edge.1],
                bridge: c.evidence == EdgeEvidence::Bridge,
                witness: match &c.evidence {
                    EdgeEvidence::Bridge => &[],
                    EdgeEvidence::Witness(w) => &w.removed,
                },
            })
            .collect();
        let mut st = serializer.serialize_struct("MinToughCertificate", 3)?;
        st.serialize_field("t", &self.t)?;
        st.serialize_field("toughSet", &self.tough_set.removed)?;
        st.serialize_field("edges", &edges)?;
        st.end()
    }
}

/// Why a graph is not minimally `t`-tough.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinToughFailure {
    Disconnected,
    Complete,
    /// `τ < t`, with a violating cutset.
    NotTough(CutsetWitness),
    /// `τ > t`: t-tough but no cutset has ratio exactly `t`.
    ToughnessAbove,
    /// Deleting this edge keeps the graph t-tough.
    RobustEdge(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinToughVerdict {
    Minimal(MinToughCertificate),
    NotMinimal(MinToughFailure),
}

impl MinToughVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, Self::Minimal(_))
    }

    pub fn certificate(&self) -> Option<&MinToughCertificate> {
        match self {
            Self::Minimal(c) => Some(c),
            Self::NotMinimal(_) => None,
        }
    }
}

pub fn is_minimally_t_tough(g: &Graph, t: &ExactRational) -> Result<MinToughVerdict> {
    is_minimally_t_tough_within(g, t, &Budget::unlimited())
}

pub fn is_minimally_t_tough_within(g: &Graph, t: &ExactRational, budget: &Budget) -> Result<MinToughVerdict> {
    if t.is_zero() {
        return Err(Error::InvalidParameter("t must be positive".into()));
    }
    let mg = MaskGraph::new(g)?;
    let fail = |f| Ok(MinToughVerdict::NotMinimal(f));
    if mg.components(0) != 1 {
        return fail(MinToughFailure::Disconnected);
    }
    if mg.is_complete() {
        return fail(MinToughFailure::Complete);
    }
    if let TToughVerdict::NotTough(w) = solver::t_tough_masked(&mg, t, budget)? {
        return fail(MinToughFailure::NotTough(w));
    }
    let Some(tough_set) = solver::ratio_cutset_masked(&mg, t, budget)? else {
        return fail(MinToughFailure::ToughnessAbove);
    };
    let mut edges = Vec::with_capacity(g.edge_count());
    for (u, v) in g.edges() {
        match edge_evidence_masked(&mg, t, u, v, budget)? {
            Some(evidence) => edges.push(EdgeCertificate { edge: (u, v), evidence }),
            None => return fail(MinToughFailure::RobustEdge(u, v)),
        }
    }
    Ok(MinToughVerdict::Minimal(MinToughCertificate {
        t: t.clone(),
        tough_set,
        edges,
    }))
}

/// `None` when `G - e` is still t-tough.
fn edge_evidence_masked(mg: &MaskGraph, t: &ExactRational, u: usize, v: usize, budget: &Budget) -> Result<Option<EdgeEvidence>> {
    let without = mg.without_edge(u, v);
    if without.components(0) > mg.components(0) {
        return Ok(Some(EdgeEvidence::Bridge));
    }
    Ok(match solver::t_tough_masked(&without, t, budget)? {
        TToughVerdict::Tough => None,
        TToughVerdict::NotTough(w) => Some(EdgeEvidence::Witness(w)),
    })
}

/// The per-edge witness for an edge of a minimally `t`-tough graph.
///
/// The returned set is re-checked against `g`; a failed check means the
/// graph was not minimally `t`-tough.
pub fn edge_witness(g: &Graph, t: &ExactRational, e: (usize, usize)) -> Result<EdgeEvidence> {
    if t.is_zero() {
        return Err(Error::InvalidParameter("t must be positive".into()));
    }
    let (u, v) = e;
    if !g.has_edge(u, v) {
        return Err(Error::NotAnEdge(u, v));
    }
    let mg = MaskGraph::new(g)?;
    let (lo, hi) = (u.min(v), u.max(v));
    match edge_evidence_masked(&mg, t, lo, hi, &Budget::unlimited())? {
        Some(ev) if check_edge_evidence(g, t, (lo, hi), &ev) => Ok(ev),
        _ => Err(Error::WitnessNotFound(lo, hi)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AlmostMinClassification {
    MinimallyOneTough,
    IsK2,
    IsK3,
    NotAlmostMinimal,
}

impl AlmostMinClassification {
    pub fn is_almost_minimal(self) -> bool {
        self != Self::NotAlmostMinimal
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::MinimallyOneTough => "minimally-1-tough",
            Self::IsK2 => "K2",
            Self::IsK3 => "K3",
            Self::NotAlmostMinimal => "not-almost-minimal",
        }
    }
}

/// `τ(G) ≥ 1` and `τ(G - e) < 1` for every edge, tagged by which of the
/// three possible shapes the graph has.
///
/// Edgeless graphs are classified `NotAlmostMinimal`: they meet the
/// definition only vacuously, fit none of the three tags, and behave as
/// non-members in the reductions that consume this class.
pub fn is_almost_minimally_1_tough(g: &Graph) -> Result<AlmostMinClassification> {
    is_almost_minimally_1_tough_within(g, &Budget::unlimited())
}

pub fn is_almost_minimally_1_tough_within(g: &Graph, budget: &Budget) -> Result<AlmostMinClassification> {
    let mg = MaskGraph::new(g)?;
    if g.edge_count() == 0 {
        return Ok(AlmostMinClassification::NotAlmostMinimal);
    }
    let one = ExactRational::integer(1);
    if !solver::t_tough_masked(&mg, &one, budget)?.is_tough() {
        return Ok(AlmostMinClassification::NotAlmostMinimal);
    }
    for (u, v) in g.edges() {
        if edge_evidence_masked(&mg, &one, u, v, budget)?.is_none() {
            return Ok(AlmostMinClassification::NotAlmostMinimal);
        }
    }
    Ok(match (mg.is_complete(), g.n()) {
        (false, _) => AlmostMinClassification::MinimallyOneTough,
        (true, 2) => AlmostMinClassification::IsK2,
        (true, 3) => AlmostMinClassification::IsK3,
        // K_n - e is (n-2)/2-tough, so K_n with n ≥ 4 fails above.
        (true, n) => unreachable!("K_{n} passed the almost-minimal test"),
    })
}

/// Evaluates the three characterizations of almost minimally 1-tough graphs
/// independently and reports whether they agree:
///
/// 1. `τ(G) ≥ 1` and `τ(G - e) < 1` for all edges, by full toughness;
/// 2. 1-tough, and every non-bridge edge has `S` with `ω(G-S) = |S|` and
///    `ω((G-e)-S) = |S| + 1`, by direct search;
/// 3. minimally 1-tough, or `K_2`, or `K_3`.
pub fn check_claim_5_2_equivalence(g: &Graph) -> Result<bool> {
    let n = g.n();
    if n > 20 {
        return Err(Error::InvalidParameter(format!("equivalence check is limited to 20 vertices, got {n}")));
    }
    if g.edge_count() == 0 {
        return Err(Error::Domain("the characterizations only apply to graphs with edges".into()));
    }
    let one = ExactRational::integer(1);
    let one_value = crate::rational::ToughnessValue::Finite(one.clone());

    let first = solver::toughness(g)?.value >= one_value
        && g.edges().try_fold(true, |acc, (u, v)| -> Result<bool> {
            Ok(acc && solver::toughness(&g.delete_edge(u, v)?)?.value < one_value)
        })?;

    let second = solver::is_t_tough(g, &one)?.is_tough()
        && g.edges().try_fold(true, |acc, (u, v)| -> Result<bool> {
            Ok(acc && (g.is_bridge(u, v)? || has_unit_split(g, u, v)?))
        })?;

    let third = is_minimally_t_tough(g, &one)?.holds() || (g.is_complete() && (n == 2 || n == 3));

    Ok(first == second && second == third)
}

fn has_unit_split(g: &Graph, u: usize, v: usize) -> Result<bool> {
    let mg = MaskGraph::new(g)?;
    let without = mg.without_edge(u, v);
    let n = g.n();
    for mask in 0u64..1 << n {
        if mask >> u & 1 == 1 || mask >> v & 1 == 1 {
            continue;
        }
        let k = mask.count_ones() as usize;
        if mg.components(mask) == k && without.components(mask) == k + 1 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `α(G) < k` and `α(G - e) ≥ k` for every edge. Edgeless graphs reduce to
/// `α(G) < k`.
pub fn is_alpha_critical_decision(g: &Graph, k: usize) -> Result<bool> {
    if k < 1 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if solver::independence_number(g).alpha >= k {
        return Ok(false);
    }
    for (u, v) in g.edges() {
        if solver::independence_number(&g.delete_edge(u, v)?).alpha < k {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every edge deletion strictly increases α. Vacuously true for edgeless
/// graphs.
pub fn is_alpha_critical_graph(g: &Graph) -> bool {
    let alpha = solver::independence_number(g).alpha;
    g.edges().all(|(u, v)| {
        let without = g.delete_edge(u, v).expect("edge from edge iterator");
        solver::independence_number(&without).alpha > alpha
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ToughnessValue;

    fn frac(a: u64, b: u64) -> ExactRational {
        ExactRational::frac(a, b)
    }

    /// Definition-level check using full toughness of every `G - e`.
    fn minimal_by_definition(g: &Graph, t: &ExactRational) -> bool {
        let target = ToughnessValue::Finite(t.clone());
        solver::toughness(g).unwrap().value == target
            && g.edges().all(|(u, v)| solver::toughness(&g.delete_edge(u, v).unwrap()).unwrap().value < target)
    }

    #[test]
    fn c4_is_minimally_one_tough() {
        let c4 = Graph::cycle(4);
        let verdict = is_minimally_t_tough(&c4, &frac(1, 1)).unwrap();
        let cert = verdict.certificate().expect("C4 is minimally 1-tough");
        assert!(cert.check(&c4));
        assert_eq!(cert.edges.len(), 4);
        assert_eq!(cert.edges[0].edge, (0, 1));
        assert_eq!(cert.edges[0].evidence, EdgeEvidence::Witness(CutsetWitness::new(vec![2], 2)));
        let w = &cert.tough_set;
        assert_eq!(w.ratio, Some(frac(1, 1)));
        assert!(minimal_by_definition(&c4, &frac(1, 1)));
    }

    #[test]
    fn failure_reasons() {
        let k4 = Graph::complete(4);
        assert_eq!(
            is_minimally_t_tough(&k4, &frac(1, 1)).unwrap(),
            MinToughVerdict::NotMinimal(MinToughFailure::Complete)
        );
        assert_eq!(
            is_minimally_t_tough(&Graph::new(3), &frac(1, 1)).unwrap(),
            MinToughVerdict::NotMinimal(MinToughFailure::Disconnected)
        );
        assert!(matches!(
            is_minimally_t_tough(&Graph::path(4), &frac(1, 1)).unwrap(),
            MinToughVerdict::NotMinimal(MinToughFailure::NotTough(_))
        ));
        assert_eq!(
            is_minimally_t_tough(&Graph::cycle(4), &frac(1, 2)).unwrap(),
            MinToughVerdict::NotMinimal(MinToughFailure::ToughnessAbove)
        );
        // K4 - e has toughness 1 and deleting the opposite edge leaves C4.
        let k4e = k4.delete_edge(0, 1).unwrap();
        assert_eq!(
            is_minimally_t_tough(&k4e, &frac(1, 1)).unwrap(),
            MinToughVerdict::NotMinimal(MinToughFailure::RobustEdge(2, 3))
        );
        assert!(is_minimally_t_tough(&Graph::path(3), &ExactRational::zero()).is_err());
        assert!(is_minimally_t_tough(&Graph::path(70), &frac(1, 2)).is_err());
    }

    #[test]
    fn star_is_minimally_one_third_tough() {
        let star = Graph::star(3);
        let verdict = is_minimally_t_tough(&star, &frac(1, 3)).unwrap();
        let cert = verdict.certificate().unwrap();
        assert!(cert.edges.iter().all(|c| c.evidence == EdgeEvidence::Bridge));
        assert!(cert.check(&star));
    }

    #[test]
    fn certificate_json_shape() {
        let cert = is_minimally_t_tough(&Graph::cycle(4), &frac(1, 1)).unwrap();
        let json = serde_json::to_value(cert.certificate().unwrap()).unwrap();
        assert_eq!(json["t"], "1/1");
        assert_eq!(json["toughSet"], serde_json::json!([0, 2]));
        assert_eq!(json["edges"].as_array().unwrap().len(), 4);
        assert_eq!(json["edges"][0], serde_json::json!({"edge": [0, 1], "bridge": false, "witness": [2]}));

        let star = is_minimally_t_tough(&Graph::star(2), &frac(1, 2)).unwrap();
        let json = serde_json::to_value(star.certificate().unwrap()).unwrap();
        assert_eq!(json["edges"][0], serde_json::json!({"edge": [0, 1], "bridge": true, "witness": []}));
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let c4 = Graph::cycle(4);
        let mut cert = is_minimally_t_tough(&c4, &frac(1, 1)).unwrap().certificate().unwrap().clone();
        cert.edges[0].evidence = EdgeEvidence::Witness(CutsetWitness::new(vec![0], 1));
        assert!(!cert.check(&c4));
        let mut cert2 = is_minimally_t_tough(&c4, &frac(1, 1)).unwrap().certificate().unwrap().clone();
        cert2.edges.pop();
        assert!(!cert2.check(&c4));
    }

    #[test]
    fn edge_witness_examples() {
        let one = frac(1, 1);
        assert_eq!(
            edge_witness(&Graph::cycle(4), &one, (0, 1)).unwrap(),
            EdgeEvidence::Witness(CutsetWitness::new(vec![2], 2))
        );
        for e in [(0, 1), (0, 2), (0, 3)] {
            assert_eq!(edge_witness(&Graph::star(3), &frac(1, 3), e).unwrap(), EdgeEvidence::Bridge);
        }
        // C5 - (0,1) is the path 1-2-3-4-0; removing {2} splits it in two
        // while C5 - {2} stays connected.
        let c5 = Graph::cycle(5);
        assert_eq!(
            edge_witness(&c5, &one, (0, 1)).unwrap(),
            EdgeEvidence::Witness(CutsetWitness::new(vec![2], 2))
        );
        // {2, 4} is another valid witness for the same edge.
        assert!(check_edge_evidence(&c5, &one, (0, 1), &EdgeEvidence::Witness(CutsetWitness::new(vec![2, 4], 3))));

        assert!(matches!(edge_witness(&c5, &one, (0, 2)), Err(Error::NotAnEdge(0, 2))));
        let k4e = Graph::complete(4).delete_edge(0, 1).unwrap();
        assert!(matches!(edge_witness(&k4e, &one, (2, 3)), Err(Error::WitnessNotFound(2, 3))));
    }

    #[test]
    fn almost_minimal_examples() {
        use AlmostMinClassification::*;
        assert_eq!(is_almost_minimally_1_tough(&Graph::complete(3)).unwrap(), IsK3);
        assert_eq!(is_almost_minimally_1_tough(&Graph::complete(2)).unwrap(), IsK2);
        assert_eq!(is_almost_minimally_1_tough(&Graph::cycle(5)).unwrap(), MinimallyOneTough);
        assert_eq!(is_almost_minimally_1_tough(&Graph::complete(4)).unwrap(), NotAlmostMinimal);
        assert_eq!(is_almost_minimally_1_tough(&Graph::path(3)).unwrap(), NotAlmostMinimal);
        assert_eq!(is_almost_minimally_1_tough(&Graph::complete(1)).unwrap(), NotAlmostMinimal);
        // K4 - e keeps toughness 1, which is why K4 is excluded.
        let k4e = Graph::complete(4).delete_edge(0, 1).unwrap();
        assert_eq!(solver::toughness(&k4e).unwrap().value, ToughnessValue::Finite(frac(1, 1)));
    }

    #[test]
    fn claim_equivalence_examples() {
        assert!(check_claim_5_2_equivalence(&Graph::complete(3)).unwrap());
        assert!(check_claim_5_2_equivalence(&Graph::path(3)).unwrap());
        assert!(check_claim_5_2_equivalence(&Graph::cycle(5)).unwrap());
        assert!(check_claim_5_2_equivalence(&Graph::complete(1)).is_err());
        assert!(check_claim_5_2_equivalence(&Graph::path(21)).is_err());
    }

    #[test]
    fn alpha_critical_decision_examples() {
        let c5 = Graph::cycle(5);
        assert!(is_alpha_critical_decision(&c5, 3).unwrap());
        assert!(!is_alpha_critical_decision(&c5, 2).unwrap());
        assert!(is_alpha_critical_decision(&Graph::complete(4), 2).unwrap());
        assert!(is_alpha_critical_decision(&c5, 0).is_err());
        assert!(is_alpha_critical_decision(&Graph::new(3), 4).unwrap());
        assert!(!is_alpha_critical_decision(&Graph::new(3), 3).unwrap());
    }

    #[test]
    fn alpha_critical_graph_examples() {
        assert!(is_alpha_critical_graph(&Graph::cycle(7)));
        assert!(!is_alpha_critical_graph(&Graph::cycle(6)));
        for n in 1..=5 {
            assert!(is_alpha_critical_graph(&Graph::complete(n)));
        }
        assert!(is_alpha_critical_graph(&Graph::new(4)));
        assert!(!is_alpha_critical_graph(&Graph::path(4)));
        assert!(is_alpha_critical_graph(&Graph::path(2)));
    }
}
