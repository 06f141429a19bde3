use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

/// One checked `(graph, parameters)` pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CaseRecord {
    /// graph6 of the host graph, or an aggregate key such as `n=5`.
    pub graph: String,
    pub params: String,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CaseRecord {
    pub fn new(graph: impl Into<String>, params: impl Into<String>, outcome: Outcome) -> Self {
        Self {
            graph: graph.into(),
            params: params.into(),
            outcome,
            lhs: None,
            rhs: None,
            detail: None,
        }
    }

    pub fn skip(graph: impl Into<String>, params: impl Into<String>, reason: impl Into<String>) -> Self {
        Self::new(graph, params, Outcome::Skip).with_detail(reason)
    }

    /// Pass exactly when both sides agree.
    pub fn biconditional(graph: impl Into<String>, params: impl Into<String>, lhs: bool, rhs: bool) -> Self {
        let outcome = if lhs == rhs { Outcome::Pass } else { Outcome::Fail };
        Self {
            lhs: Some(lhs),
            rhs: Some(rhs),
            ..Self::new(graph, params, outcome)
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub check_name: String,
    pub parameters: BTreeMap<String, String>,
    pub total_graphs: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// graph6 and parameters of every failing case, replayable via the CLI.
    pub failures: Vec<CaseRecord>,
    pub skipped_cases: Vec<CaseRecord>,
    pub stats: BTreeMap<String, usize>,
    pub cases: Vec<CaseRecord>,
    pub wall_time_ms: u128,
}

impl VerificationReport {
    pub(crate) fn assemble(
        check_name: &str,
        parameters: BTreeMap<String, String>,
        mut cases: Vec<CaseRecord>,
        wall_time_ms: u128,
    ) -> Self {
        cases.sort_by(|a, b| (&a.graph, &a.params).cmp(&(&b.graph, &b.params)));
        let count = |o: Outcome| cases.iter().filter(|c| c.outcome == o).count();
        let mut stats = BTreeMap::new();
        for c in &cases {
            let key = match (c.lhs, c.rhs) {
                (Some(true), Some(true)) => "bothTrue",
                (Some(false), Some(false)) => "bothFalse",
                (Some(_), Some(_)) => "disagree",
                _ => continue,
            };
            *stats.entry(key.to_string()).or_insert(0) += 1;
        }
        let filter = |o: Outcome| cases.iter().filter(|c| c.outcome == o).cloned().collect();
        Self {
            check_name: check_name.to_string(),
            parameters,
            total_graphs: cases.len(),
            passed: count(Outcome::Pass),
            failed: count(Outcome::Fail),
            skipped: count(Outcome::Skip),
            failures: filter(Outcome::Fail),
            skipped_cases: filter(Outcome::Skip),
            stats,
            cases,
            wall_time_ms,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// JSON without `wallTimeMs`; identical across runs of the same sweep.
    pub fn to_deterministic_json(&self) -> Result<String> {
        let mut value = serde_json::to_value(self)?;
        if let Some(obj) = value.as_object_mut() {
            obj.remove("wallTimeMs");
        }
        Ok(serde_json::to_string_pretty(&value)?)
    }

    /// One CSV row per case.
    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        #[derive(Serialize)]
        struct Row<'a> {
            graph: &'a str,
            params: &'a str,
            outcome: Outcome,
            lhs: Option<bool>,
            rhs: Option<bool>,
            detail: Option<&'a str>,
        }
        for c in &self.cases {
            writer.serialize(Row {
                graph: &c.graph,
                params: &c.params,
                outcome: c.outcome,
                lhs: c.lhs,
                rhs: c.rhs,
                detail: c.detail.as_deref(),
            })?;
        }
        writer.flush()?;
        Ok(())
    }

    /// `name: passed=.. failed=.. skipped=.. total=..`
    pub fn summary_line(&self) -> String {
        format!(
            "{}: passed={} failed={} skipped={} total={}",
            self.check_name, self.passed, self.failed, self.skipped, self.total_graphs
        )
    }
}
