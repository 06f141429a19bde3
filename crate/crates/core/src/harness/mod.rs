//! Exhaustive sweeps over small connected graphs that check each reduction
//! and structural fact case by case, collected into deterministic reports.
//!
//! A case is one host graph together with one parameter choice. Cases that
//! fall outside a check's hypotheses, exceed the vertex cap or run out of
//! time are reported as skipped with a reason, never dropped.

mod canon;
mod report;

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gadgets::{self, HPrime};
use crate::graph::Graph;
use crate::io::{read_graph6_stream, to_graph6};
use crate::rational::{ExactRational, ToughnessValue};
use crate::recognizers::{self, AlmostMinClassification};
use crate::solver::{self, Budget};

pub use canon::{
    canonical_code, canonical_form, enumerate_connected_graphs, enumerate_range, CANON_MAX, ENUMERATE_MAX,
};
pub use report::{CaseRecord, Outcome, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphSource {
    /// Connected graphs with `n_min ≤ n ≤ n_max`, one per isomorphism class.
    Enumerate { n_min: usize, n_max: usize },
    Graphs(Vec<Graph>),
    Graph6File(PathBuf),
}

impl GraphSource {
    pub fn up_to(n_max: usize) -> Self {
        Self::Enumerate { n_min: 1, n_max }
    }

    pub fn exactly(n: usize) -> Self {
        Self::Enumerate { n_min: n, n_max: n }
    }

    pub fn load(&self) -> Result<Vec<Graph>> {
        match self {
            Self::Enumerate { n_min, n_max } => {
                if *n_max > ENUMERATE_MAX {
                    return Err(Error::InvalidParameter(format!(
                        "enumeration supports n ≤ {ENUMERATE_MAX}, got {n_max}"
                    )));
                }
                enumerate_range(*n_min, *n_max)
            }
            Self::Graphs(gs) => Ok(gs.clone()),
            Self::Graph6File(path) => read_graph6_stream(BufReader::new(File::open(path)?)),
        }
    }

    fn describe(&self) -> String {
        match self {
            Self::Enumerate { n_min, n_max } => format!("enumerate {n_min}..={n_max}"),
            Self::Graphs(gs) => format!("{} listed graphs", gs.len()),
            Self::Graph6File(path) => format!("graph6 file {}", path.display()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Gadgets larger than this are skipped.
    pub max_vertices: usize,
    /// Per-case time budget; cases that exceed it are skipped.
    pub time_budget: Option<Duration>,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_vertices: 24,
            time_budget: None,
        }
    }
}

impl Limits {
    fn budget(&self) -> Budget {
        match self.time_budget {
            Some(d) => Budget::with_time_limit(d),
            None => Budget::unlimited(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    ReductionMin1Tough { alphas: Vec<usize> },
    ReductionMinTTough { t: usize, alphas: Vec<usize> },
    ReductionOneOverB { b: usize },
    ReductionAOverB { a: usize, b: usize },
    LemmaGAlphaTough { t: usize, alphas: Vec<usize> },
    BlowupAlphaCritical { size_min: usize, size_max: usize },
    Structural,
}

impl Check {
    pub const NAMES: [&'static str; 7] = [
        "reduction-min1tough",
        "reduction-min-t-tough",
        "reduction-one-over-b",
        "reduction-a-over-b",
        "lemma-g-alpha-tough",
        "blowup-alpha-critical",
        "structural",
    ];

    pub fn name(&self) -> &'static str {
        let i = match self {
            Self::ReductionMin1Tough { .. } => 0,
            Self::ReductionMinTTough { .. } => 1,
            Self::ReductionOneOverB { .. } => 2,
            Self::ReductionAOverB { .. } => 3,
            Self::LemmaGAlphaTough { .. } => 4,
            Self::BlowupAlphaCritical { .. } => 5,
            Self::Structural => 6,
        };
        Self::NAMES[i]
    }

    fn parameters(&self) -> BTreeMap<String, String> {
        let list = |xs: &[usize]| xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let pairs: Vec<(&str, String)> = match self {
            Self::ReductionMin1Tough { alphas } => vec![("alpha", list(alphas))],
            Self::ReductionMinTTough { t, alphas } | Self::LemmaGAlphaTough { t, alphas } => {
                vec![("t", t.to_string()), ("alpha", list(alphas))]
            }
            Self::ReductionOneOverB { b } => vec![("b", b.to_string())],
            Self::ReductionAOverB { a, b } => vec![("a", a.to_string()), ("b", b.to_string())],
            Self::BlowupAlphaCritical { size_min, size_max } => {
                vec![("sizeMin", size_min.to_string()), ("sizeMax", size_max.to_string())]
            }
            Self::Structural => vec![],
        };
        pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        match self {
            Self::ReductionMin1Tough { alphas }
            | Self::ReductionMinTTough { alphas, .. }
            | Self::LemmaGAlphaTough { alphas, .. }
                if alphas.is_empty() || alphas.contains(&0) =>
            {
                bad("alpha values must be a nonempty list of positive integers".into())
            }
            Self::ReductionMinTTough { t: 0, .. } | Self::LemmaGAlphaTough { t: 0, .. } => {
                bad("t must be a positive integer".into())
            }
            Self::ReductionOneOverB { b } if *b < 2 => bad(format!("b must be at least 2, got {b}")),
            Self::ReductionAOverB { a, b } if *a == 0 || *b < 2 * a || num_integer::gcd(*a, *b) != 1 => {
                bad(format!("need coprime a ≥ 1 and b ≥ 2a, got a={a}, b={b}"))
            }
            Self::BlowupAlphaCritical { size_min, size_max } if *size_min == 0 || size_min > size_max => {
                bad(format!("need 1 ≤ sizeMin ≤ sizeMax, got {size_min}..={size_max}"))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSpec {
    pub source: GraphSource,
    pub check: Check,
    pub limits: Limits,
}

/// Runs every case of `spec` on the current rayon pool.
pub fn run(spec: &SweepSpec) -> Result<VerificationReport> {
    let start = Instant::now();
    spec.check.validate()?;
    let graphs = spec.source.load()?;
    let limits = &spec.limits;

    let mut extra = BTreeMap::new();
    let cases: Vec<CaseRecord> = match &spec.check {
        Check::ReductionMin1Tough { alphas } => per_param(&graphs, alphas, |g, &a| case_reduction_min1tough(g, a, limits)),
        Check::ReductionMinTTough { t, alphas } => {
            per_param(&graphs, alphas, |g, &a| case_reduction_min_t_tough(g, *t, a, limits))
        }
        Check::ReductionOneOverB { b } => per_param(&graphs, &[*b], |g, &b| case_reduction_one_over_b(g, b, limits)),
        Check::ReductionAOverB { a, b } => {
            let hp = gadgets::build_h_prime(*a, *b)?;
            per_param(&graphs, &[()], |g, _| case_reduction_a_over_b(g, &hp, *a, *b, limits))
        }
        Check::LemmaGAlphaTough { t, alphas } => {
            per_param(&graphs, alphas, |g, &a| case_lemma_g_alpha_tough(g, *t, a, limits))
        }
        Check::BlowupAlphaCritical { size_min, size_max } => graphs
            .par_iter()
            .flat_map_iter(|g| blowup_cases(g, *size_min..=*size_max, limits))
            .collect(),
        Check::Structural => {
            let mut cases: Vec<CaseRecord> =
                graphs.par_iter().flat_map_iter(|g| structural_cases(g, limits)).collect();
            let mut by_n: BTreeMap<usize, Vec<&Graph>> = BTreeMap::new();
            for g in &graphs {
                by_n.entry(g.n()).or_default().push(g);
            }
            cases.extend(by_n.iter().map(|(&n, gs)| gap_case(n, gs)));
            for t in ["1", "1/2"] {
                let found = cases
                    .iter()
                    .filter(|c| c.params == format!("invariant=certificate,t={t}") && c.lhs == Some(true))
                    .count();
                extra.insert(format!("minimallyTough(t={t})"), found);
            }
            cases
        }
    };

    let mut parameters = spec.check.parameters();
    parameters.insert("source".into(), spec.source.describe());
    parameters.insert("maxVertices".into(), limits.max_vertices.to_string());
    if let Some(d) = limits.time_budget {
        parameters.insert("timeBudgetMs".into(), d.as_millis().to_string());
    }
    let mut report = VerificationReport::assemble(spec.check.name(), parameters, cases, start.elapsed().as_millis());
    report.stats.extend(extra);
    Ok(report)
}

fn per_param<P: Sync>(graphs: &[Graph], params: &[P], case: impl Fn(&Graph, &P) -> CaseRecord + Sync) -> Vec<CaseRecord> {
    graphs
        .par_iter()
        .flat_map_iter(|g| params.iter().map(|p| case(g, p)).collect::<Vec<_>>())
        .collect()
}

pub fn verify_reduction_min1tough(source: GraphSource, alphas: &[usize], limits: Limits) -> Result<VerificationReport> {
    run(&SweepSpec {
        source,
        check: Check::ReductionMin1Tough { alphas: alphas.to_vec() },
        limits,
    })
}

pub fn verify_reduction_min_t_tough(
    t: usize,
    source: GraphSource,
    alphas: &[usize],
    limits: Limits,
) -> Result<VerificationReport> {
    run(&SweepSpec {
        source,
        check: Check::ReductionMinTTough { t, alphas: alphas.to_vec() },
        limits,
    })
}

pub fn verify_reduction_one_over_b(b: usize, source: GraphSource, limits: Limits) -> Result<VerificationReport> {
    run(&SweepSpec {
        source,
        check: Check::ReductionOneOverB { b },
        limits,
    })
}

pub fn verify_reduction_a_over_b(a: usize, b: usize, source: GraphSource, limits: Limits) -> Result<VerificationReport> {
    run(&SweepSpec {
        source,
        check: Check::ReductionAOverB { a, b },
        limits,
    })
}

pub fn verify_lemma_g_alpha_tough(
    t: usize,
    source: GraphSource,
    alphas: &[usize],
    limits: Limits,
) -> Result<VerificationReport> {
    run(&SweepSpec {
        source,
        check: Check::LemmaGAlphaTough { t, alphas: alphas.to_vec() },
        limits,
    })
}

pub fn verify_blowup_alpha_critical(
    source: GraphSource,
    size_min: usize,
    size_max: usize,
    limits: Limits,
) -> Result<VerificationReport> {
    run(&SweepSpec {
        source,
        check: Check::BlowupAlphaCritical { size_min, size_max },
        limits,
    })
}

pub fn verify_structural_invariants(source: GraphSource, limits: Limits) -> Result<VerificationReport> {
    run(&SweepSpec {
        source,
        check: Check::Structural,
        limits,
    })
}

fn key(g: &Graph) -> String {
    to_graph6(g).unwrap_or_else(|_| format!("n={}", g.n()))
}

/// Maps a timeout to a skip and any other error to a failure.
fn settle(graph: &str, params: &str, outcome: Result<CaseRecord>) -> CaseRecord {
    match outcome {
        Ok(record) => record,
        Err(Error::Timeout) => CaseRecord::skip(graph, params, "time budget exceeded"),
        Err(e) => CaseRecord::new(graph, params, Outcome::Fail).with_detail(format!("error: {e}")),
    }
}

/// The reductions need a connected host with at least one edge; `K_1`
/// would make the gadgets acquire leaves the constructions do not expect.
fn host_skip(g: &Graph, graph: &str, params: &str) -> Option<CaseRecord> {
    if !g.is_connected() {
        Some(CaseRecord::skip(graph, params, "host is not connected"))
    } else if g.edge_count() == 0 {
        Some(CaseRecord::skip(graph, params, "host has no edges"))
    } else {
        None
    }
}

fn cap_skip(size: usize, limits: &Limits, graph: &str, params: &str) -> Option<CaseRecord> {
    (size > limits.max_vertices).then(|| {
        CaseRecord::skip(graph, params, format!("gadget has {size} vertices, cap is {}", limits.max_vertices))
    })
}

/// `α`-critical with `α(G) = α`, against `G_α` minimally 1-tough.
pub fn case_reduction_min1tough(g: &Graph, alpha: usize, limits: &Limits) -> CaseRecord {
    let (graph, params) = (key(g), format!("alpha={alpha}"));
    if let Some(skip) = host_skip(g, &graph, &params).or_else(|| cap_skip(2 * g.n() * alpha + alpha, limits, &graph, &params)) {
        return skip;
    }
    let outcome = (|| {
        let lhs = solver::independence_number(g).alpha == alpha && recognizers::is_alpha_critical_graph(g);
        let gadget = gadgets::build_g_alpha(g, alpha)?;
        let rhs = recognizers::is_minimally_t_tough_within(&gadget.graph, &ExactRational::integer(1), &limits.budget())?;
        Ok(CaseRecord::biconditional(&graph, &params, lhs, rhs.holds()))
    })();
    settle(&graph, &params, outcome)
}

/// `α`-critical with `α(G) = α`, against `G_{t,α}` minimally `t`-tough.
pub fn case_reduction_min_t_tough(g: &Graph, t: usize, alpha: usize, limits: &Limits) -> CaseRecord {
    let (graph, params) = (key(g), format!("t={t},alpha={alpha}"));
    let size = 2 * g.n() * t * alpha + t * alpha;
    if let Some(skip) = host_skip(g, &graph, &params).or_else(|| cap_skip(size, limits, &graph, &params)) {
        return skip;
    }
    if g.n() < t {
        return CaseRecord::skip(&graph, &params, format!("host has fewer than t={t} vertices"));
    }
    let outcome = (|| {
        let lhs = solver::independence_number(g).alpha == alpha && recognizers::is_alpha_critical_graph(g);
        let gadget = gadgets::build_g_t_alpha(g, t, alpha)?;
        let rhs = recognizers::is_minimally_t_tough_within(&gadget.graph, &ExactRational::integer(t as u64), &limits.budget())?;
        Ok(CaseRecord::biconditional(&graph, &params, lhs, rhs.holds()))
    })();
    settle(&graph, &params, outcome)
}

fn almost_minimal(g: &Graph, budget: &Budget) -> Result<bool> {
    Ok(recognizers::is_almost_minimally_1_tough_within(g, budget)? != AlmostMinClassification::NotAlmostMinimal)
}

/// Almost minimally 1-tough, against `b - 1` pendants per vertex giving a
/// minimally `1/b`-tough graph.
pub fn case_reduction_one_over_b(g: &Graph, b: usize, limits: &Limits) -> CaseRecord {
    let (graph, params) = (key(g), format!("b={b}"));
    if let Some(skip) = host_skip(g, &graph, &params).or_else(|| cap_skip(g.n() * b, limits, &graph, &params)) {
        return skip;
    }
    let outcome = (|| {
        let budget = limits.budget();
        let lhs = almost_minimal(g, &budget)?;
        let gadget = gadgets::attach_pendants(g, b)?;
        let rhs = recognizers::is_minimally_t_tough_within(&gadget.graph, &ExactRational::frac(1, b as u64), &budget)?;
        Ok(CaseRecord::biconditional(&graph, &params, lhs, rhs.holds()))
    })();
    settle(&graph, &params, outcome)
}

/// Almost minimally 1-tough, against `G ⊕_v H'_{a/b}` minimally `a/b`-tough.
pub fn case_reduction_a_over_b(g: &Graph, hp: &HPrime, a: usize, b: usize, limits: &Limits) -> CaseRecord {
    let (graph, params) = (key(g), format!("a={a},b={b}"));
    let size = g.n() * (hp.gadget.graph.n() - 1);
    if let Some(skip) = host_skip(g, &graph, &params).or_else(|| cap_skip(size, limits, &graph, &params)) {
        return skip;
    }
    let outcome = (|| {
        let budget = limits.budget();
        let lhs = almost_minimal(g, &budget)?;
        let glued = gadgets::glue_with(g, hp)?;
        let rhs = recognizers::is_minimally_t_tough_within(&glued.graph, &ExactRational::frac(a as u64, b as u64), &budget)?;
        Ok(CaseRecord::biconditional(&graph, &params, lhs, rhs.holds()))
    })();
    settle(&graph, &params, outcome)
}

/// `α(G) ≤ α` implies the gadget is `t`-tough. Hosts failing the
/// hypothesis are skipped.
pub fn case_lemma_g_alpha_tough(g: &Graph, t: usize, alpha: usize, limits: &Limits) -> CaseRecord {
    let (graph, params) = (key(g), format!("t={t},alpha={alpha}"));
    let size = 2 * g.n() * t * alpha + t * alpha;
    if let Some(skip) = host_skip(g, &graph, &params).or_else(|| cap_skip(size, limits, &graph, &params)) {
        return skip;
    }
    if g.n() < t {
        return CaseRecord::skip(&graph, &params, format!("host has fewer than t={t} vertices"));
    }
    let host_alpha = solver::independence_number(g).alpha;
    if host_alpha > alpha {
        return CaseRecord::skip(&graph, &params, format!("hypothesis fails: α(G)={host_alpha} > {alpha}"));
    }
    let outcome = (|| {
        let gadget = if t == 1 {
            gadgets::build_g_alpha(g, alpha)?
        } else {
            gadgets::build_g_t_alpha(g, t, alpha)?
        };
        let verdict = solver::is_t_tough_within(&gadget.graph, &ExactRational::integer(t as u64), &limits.budget())?;
        let record = match verdict.violation() {
            None => CaseRecord::new(&graph, &params, Outcome::Pass),
            Some(w) => CaseRecord::new(&graph, &params, Outcome::Fail)
                .with_detail(format!("violating set {:?} leaves {} components", w.removed, w.component_count)),
        };
        Ok(record)
    })();
    settle(&graph, &params, outcome)
}

/// Every clique blow-up of an α-critical base stays α-critical.
pub fn blowup_cases(g: &Graph, sizes: std::ops::RangeInclusive<usize>, limits: &Limits) -> Vec<CaseRecord> {
    let graph = key(g);
    if !recognizers::is_alpha_critical_graph(g) {
        return vec![CaseRecord::skip(&graph, "", "base is not α-critical")];
    }
    let mut out = Vec::new();
    for v in 0..g.n() {
        for size in sizes.clone() {
            let params = format!("vertex={v},size={size}");
            let result_n = g.n() + size - 1;
            if let Some(skip) = cap_skip(result_n, limits, &graph, &params) {
                out.push(skip);
                continue;
            }
            let outcome = gadgets::blow_up(g, v, size).map(|blown| {
                let outcome = if recognizers::is_alpha_critical_graph(&blown) { Outcome::Pass } else { Outcome::Fail };
                CaseRecord::new(&graph, &params, outcome)
            });
            out.push(settle(&graph, &params, outcome));
        }
    }
    out
}

/// Per-graph structural checks: oracle agreement, the range of toughness
/// values, certificates for minimally 1- and 1/2-tough graphs, and the
/// agreement of the almost-minimal characterizations.
pub fn structural_cases(g: &Graph, limits: &Limits) -> Vec<CaseRecord> {
    let graph = key(g);
    let mut out = Vec::new();

    let params = "invariant=oracle";
    out.push(if g.is_connected() && !g.is_complete() {
        let outcome = (|| {
            let direct = solver::toughness_within(g, &limits.budget())?;
            let decided = solver::toughness_via_decision(g)?;
            let agree = direct.value == decided.value
                && decided.witness.as_ref().is_some_and(|w| w.is_consistent_with(g) && ToughnessValue::Finite(w.ratio.clone().expect("cutset")) == decided.value);
            let record = if agree {
                CaseRecord::new(&graph, params, Outcome::Pass)
            } else {
                CaseRecord::new(&graph, params, Outcome::Fail)
                    .with_detail(format!("direct {} vs decision {}", direct.value, decided.value))
            };
            Ok(record)
        })();
        settle(&graph, params, outcome)
    } else {
        CaseRecord::skip(&graph, params, "toughness is 0 or inf; the decision search needs a finite value")
    });

    let params = "invariant=bounds";
    let outcome = (|| {
        let result = solver::toughness_within(g, &limits.budget())?;
        let n = g.n() as u64;
        let ok = match (&result.value, &result.witness) {
            (ToughnessValue::Infinite, _) => g.is_complete(),
            (ToughnessValue::Zero, _) => !g.is_connected(),
            (ToughnessValue::Finite(t), Some(w)) => {
                let (a, b) = t.to_u64_parts().expect("small");
                let (s, c) = (w.removed.len() as u64, w.component_count as u64);
                (1..n).contains(&a)
                    && (1..n).contains(&b)
                    && (1..n).contains(&s)
                    && (1..n).contains(&c)
                    && ExactRational::frac(s, c) == *t
                    && w.is_consistent_with(g)
            }
            (ToughnessValue::Finite(_), None) => false,
        };
        let outcome = if ok { Outcome::Pass } else { Outcome::Fail };
        Ok(CaseRecord::new(&graph, params, outcome).with_detail(format!("tau={}", result.value)))
    })();
    out.push(settle(&graph, params, outcome));

    for (label, t) in [("1", ExactRational::integer(1)), ("1/2", ExactRational::frac(1, 2))] {
        let params = format!("invariant=certificate,t={label}");
        let outcome = (|| {
            if g.n() == 0 || !g.is_connected() {
                return Ok(CaseRecord::skip(&graph, &params, "not connected"));
            }
            let verdict = recognizers::is_minimally_t_tough_within(g, &t, &limits.budget())?;
            let mut record = match verdict.certificate() {
                Some(cert) if cert.check(g) => CaseRecord::new(&graph, &params, Outcome::Pass),
                Some(_) => CaseRecord::new(&graph, &params, Outcome::Fail).with_detail("certificate does not check"),
                None => CaseRecord::new(&graph, &params, Outcome::Pass).with_detail("not minimal"),
            };
            record.lhs = Some(verdict.holds());
            Ok(record)
        })();
        out.push(settle(&graph, &params, outcome));
    }

    let params = "invariant=almost-minimal";
    out.push(if g.edge_count() == 0 {
        CaseRecord::skip(&graph, params, "no edges")
    } else {
        let outcome = recognizers::check_claim_5_2_equivalence(g).map(|agree| {
            CaseRecord::new(&graph, params, if agree { Outcome::Pass } else { Outcome::Fail })
        });
        settle(&graph, params, outcome)
    });
    out
}

/// Distinct toughness values of connected noncomplete `n`-vertex graphs
/// differ by more than `1/n²`.
pub fn gap_case(n: usize, graphs: &[&Graph]) -> CaseRecord {
    let (graph, params) = (format!("n={n}"), "invariant=gap");
    let outcome = (|| {
        let mut values = Vec::new();
        for g in graphs {
            if g.is_connected() && !g.is_complete() {
                if let ToughnessValue::Finite(t) = solver::toughness(g)?.value {
                    values.push(t);
                }
            }
        }
        values.sort();
        values.dedup();
        let gap = ExactRational::frac(1, (n * n) as u64);
        let bad = values.windows(2).find(|w| &w[0] + &gap >= w[1]);
        let record = match bad {
            None => CaseRecord::new(&graph, params, Outcome::Pass)
                .with_detail(format!("{} distinct values", values.len())),
            Some(w) => CaseRecord::new(&graph, params, Outcome::Fail).with_detail(format!("{} and {} are too close", w[0], w[1])),
        };
        Ok(record)
    })();
    settle(&graph, params, outcome)
}
