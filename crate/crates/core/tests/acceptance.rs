//! Acceptance suite: one line per criterion, each run at its stated limits.
//! Exits nonzero if any criterion fails or runs over its time limit.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use mintough::gadgets;
use mintough::harness::{self, CaseRecord, GraphSource, Limits, Outcome, VerificationReport};
use mintough::io::{parse_graph6, to_graph6};
use mintough::recognizers::is_minimally_t_tough;
use mintough::solver::{toughness, toughness_via_decision};
use mintough::{ExactRational, Graph, ToughnessValue};

type Verdict = Result<String, String>;

fn frac(a: u64, b: u64) -> ExactRational {
    ExactRational::frac(a, b)
}

fn expect_report(r: &VerificationReport, passed: usize, skipped: usize) -> Verdict {
    let line = r.summary_line();
    if r.failed == 0 && r.passed == passed && r.skipped == skipped {
        Ok(line)
    } else {
        Err(format!("{line}; expected passed={passed} skipped={skipped}; failures {:?}", r.failures))
    }
}

fn oracle_equivalence() -> Verdict {
    let graphs: Vec<Graph> = harness::enumerate_range(1, 6)
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(|g| !g.is_complete())
        .collect();
    let mut mismatches = Vec::new();
    for g in &graphs {
        let direct = toughness(g).map_err(|e| e.to_string())?;
        let decided = toughness_via_decision(g).map_err(|e| e.to_string())?;
        if direct.value != decided.value {
            mismatches.push(to_graph6(g).unwrap());
        }
    }
    if graphs.len() != 137 {
        return Err(format!("expected 137 connected noncomplete graphs, found {}", graphs.len()));
    }
    if mismatches.is_empty() {
        Ok(format!("{} graphs, 0 mismatches", graphs.len()))
    } else {
        Err(format!("mismatches: {mismatches:?}"))
    }
}

fn known_values() -> Verdict {
    let mut cases: Vec<(String, Graph, ExactRational)> = vec![
        ("P4".into(), Graph::path(4), frac(1, 2)),
        ("Petersen".into(), Graph::petersen(), frac(4, 3)),
    ];
    cases.extend((4..=8).map(|n| (format!("C{n}"), Graph::cycle(n), frac(1, 1))));
    cases.extend((1..=5).map(|b| (format!("K1,{b}"), Graph::star(b), frac(1, b as u64))));
    for b in 2..=7u64 {
        for a in 1..=b / 2 {
            if num_integer::gcd(a, b) == 1 {
                let h = gadgets::build_h(a as usize, b as usize).map_err(|e| e.to_string())?;
                cases.push((format!("H{a}/{b}"), h.graph, frac(a, b)));
            }
        }
    }
    for (name, g, expected) in &cases {
        let got = toughness(g).map_err(|e| e.to_string())?.value;
        // K_{1,1} = K_2 is complete.
        let expected = if name == "K1,1" { ToughnessValue::Infinite } else { ToughnessValue::Finite(expected.clone()) };
        if got != expected {
            return Err(format!("{name}: expected {expected}, got {got}"));
        }
    }
    Ok(format!("{} exact values", cases.len()))
}

type Verdicts = Vec<(String, String, Option<bool>, Option<bool>, Outcome)>;

fn verdicts(r: &VerificationReport) -> Verdicts {
    r.cases
        .iter()
        .map(|c: &CaseRecord| {
            let alpha = c.params.rsplit("alpha=").next().unwrap_or_default().to_string();
            (c.graph.clone(), alpha, c.lhs, c.rhs, c.outcome)
        })
        .collect()
}

fn reduction_min1tough(shared: &mut BTreeMap<&'static str, VerificationReport>) -> Verdict {
    let r = harness::verify_reduction_min1tough(GraphSource::up_to(4), &[1, 2], Limits::default())
        .map_err(|e| e.to_string())?;
    let line = expect_report(&r, 18, 2)?;
    shared.insert("min1tough", r);
    Ok(line)
}

fn reduction_min1tough_c5() -> Verdict {
    let r = harness::verify_reduction_min1tough(GraphSource::Graphs(vec![Graph::cycle(5)]), &[2], Limits::default())
        .map_err(|e| e.to_string())?;
    let case = &r.cases[0];
    if case.outcome == Outcome::Pass && case.lhs == Some(true) && case.rhs == Some(true) {
        Ok("C5 alpha=2: both sides true on 22 vertices".into())
    } else {
        Err(format!("{case:?}"))
    }
}

fn reduction_min_t_tough(shared: &BTreeMap<&'static str, VerificationReport>) -> Verdict {
    let r = harness::verify_reduction_min_t_tough(2, GraphSource::exactly(3), &[1], Limits::default())
        .map_err(|e| e.to_string())?;
    let line = expect_report(&r, 2, 0)?;
    let t1 = harness::verify_reduction_min_t_tough(1, GraphSource::up_to(4), &[1, 2], Limits::default())
        .map_err(|e| e.to_string())?;
    let base = shared.get("min1tough").ok_or("criterion 3 report missing")?;
    if verdicts(&t1) != verdicts(base) {
        return Err("t=1 verdicts differ from the G_alpha sweep".into());
    }
    Ok(format!("{line}; t=1 verdicts match on {} cases", t1.total_graphs))
}

fn reduction_one_over_b() -> Verdict {
    let mut lines = Vec::new();
    for b in [2, 3] {
        let r = harness::verify_reduction_one_over_b(b, GraphSource::up_to(5), Limits::default())
            .map_err(|e| e.to_string())?;
        lines.push(format!("b={b} {}", expect_report(&r, 30, 1)?));
    }
    Ok(lines.join("; "))
}

fn reduction_a_over_b() -> Verdict {
    let mut lines = Vec::new();
    for (a, b, n_max, passed) in [(1, 3, 5, 30), (2, 5, 4, 9)] {
        let r = harness::verify_reduction_a_over_b(a, b, GraphSource::up_to(n_max), Limits::default())
            .map_err(|e| e.to_string())?;
        lines.push(format!("{a}/{b} {}", expect_report(&r, passed, 1)?));
    }
    Ok(lines.join("; "))
}

fn structural(n_max: usize) -> Verdict {
    let r = harness::verify_structural_invariants(GraphSource::up_to(n_max), Limits::default())
        .map_err(|e| e.to_string())?;
    if r.failed == 0 {
        Ok(format!("{} {:?}", r.summary_line(), r.stats))
    } else {
        Err(format!("failures {:?}", r.failures))
    }
}

fn blowup() -> Verdict {
    let limits = Limits {
        max_vertices: 9,
        ..Limits::default()
    };
    let r = harness::verify_blowup_alpha_critical(GraphSource::Graphs(vec![Graph::cycle(5), Graph::cycle(7)]), 2, 3, limits)
        .map_err(|e| e.to_string())?;
    expect_report(&r, 24, 0)
}

fn format_fidelity() -> Verdict {
    let mut count = 0;
    for n in 0..=6usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        for mask in 0u64..1 << pairs.len() {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            let g = Graph::from_edges(n, edges).unwrap();
            let s = to_graph6(&g).map_err(|e| e.to_string())?;
            let back = parse_graph6(&s).map_err(|e| e.to_string())?;
            if back != g || to_graph6(&back).unwrap() != s {
                return Err(format!("round trip failed for {s}"));
            }
            count += 1;
        }
    }
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let lines = fs::read_to_string(data.join("networkx.g6")).map_err(|e| e.to_string())?;
    let edges = fs::read_to_string(data.join("networkx_edges.txt")).map_err(|e| e.to_string())?;
    let mut external = 0;
    for (line, expected) in lines.lines().zip(edges.lines()) {
        let g = parse_graph6(line).map_err(|e| format!("{line}: {e}"))?;
        let mut parts = expected.split_whitespace();
        let n: usize = parts.next().unwrap().parse().unwrap();
        let want: Vec<(usize, usize)> = parts
            .map(|p| {
                let (u, v) = p.split_once('-').unwrap();
                (u.parse().unwrap(), v.parse().unwrap())
            })
            .collect();
        if g.n() != n || g.edges().collect::<Vec<_>>() != want {
            return Err(format!("{line}: decoded graph differs from the reference edge list"));
        }
        if to_graph6(&g).map_err(|e| e.to_string())? != line {
            return Err(format!("{line}: re-encoding is not byte-exact"));
        }
        external += 1;
    }
    if external != 100 {
        return Err(format!("expected 100 external lines, read {external}"));
    }
    Ok(format!("{count} labeled graphs and {external} external lines"))
}

fn h_prime_postconditions() -> Verdict {
    let mut checked = Vec::new();
    for b in 2..=7usize {
        for a in 1..=b / 2 {
            if num_integer::gcd(a, b) != 1 {
                continue;
            }
            let hp = gadgets::build_h_prime(a, b).map_err(|e| format!("{a}/{b}: {e}"))?;
            let g = &hp.gadget.graph;
            let t = frac(a as u64, b as u64);
            if !is_minimally_t_tough(g, &t).map_err(|e| e.to_string())?.holds() {
                return Err(format!("{a}/{b}: not minimally tough"));
            }
            let labels = &hp.gadget.labeling;
            if labels.vertices_of("W").into_iter().any(|w| g.degree(w) != 1) {
                return Err(format!("{a}/{b}: a W vertex lost degree 1"));
            }
            let v = labels.vertices_of("V");
            if frac(v.len() as u64, g.components_after_removal(&v) as u64) != t {
                return Err(format!("{a}/{b}: V does not have ratio exactly {t}"));
            }
            checked.push(format!("{a}/{b}"));
        }
    }
    Ok(format!("{} pairs: {}", checked.len(), checked.join(" ")))
}

fn main() -> ExitCode {
    let mut shared = BTreeMap::new();
    let mut all_ok = true;
    let mut report = |id: &str, limit_secs: u64, run: &mut dyn FnMut() -> Verdict| {
        let start = Instant::now();
        let verdict = run();
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(limit_secs);
        let (ok, detail) = match verdict {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; over the {limit_secs} s limit")),
            Err(e) => (false, e),
        };
        all_ok &= ok;
        println!(
            "criterion {id:<4} {} [{:.2} s / {limit_secs} s] {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    };

    report("1", 10, &mut oracle_equivalence);
    report("2", 10, &mut known_values);
    report("3", 15 * 60, &mut || reduction_min1tough(&mut shared));
    report("3s", 30 * 60, &mut reduction_min1tough_c5);
    report("4", 60, &mut || reduction_min_t_tough(&shared));
    report("5", 5 * 60, &mut reduction_one_over_b);
    report("6", 20 * 60, &mut reduction_a_over_b);
    report("7", 60, &mut || structural(5));
    report("7s", 15 * 60, &mut || structural(6));
    report("8", 60, &mut blowup);
    report("9", 1, &mut format_fidelity);
    report("10", 2 * 60, &mut h_prime_postconditions);

    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
