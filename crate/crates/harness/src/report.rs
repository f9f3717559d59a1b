//! Verification reports.

use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub instance: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma_id: String,
    pub max_n: usize,
    pub seed: u64,
    pub instances_checked: u64,
    pub counterexamples: Vec<Counterexample>,
    /// Some instance ran out of search budget, so a clean report does not
    /// mean the family was fully checked.
    pub budget_exhausted: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Serialize)]
struct Timed<'a> {
    #[serde(flatten)]
    report: &'a LemmaReport,
    elapsed_ms: u128,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && !self.budget_exhausted
    }

    pub fn verdict(&self) -> &'static str {
        if !self.counterexamples.is_empty() {
            "fail"
        } else if self.budget_exhausted {
            "unverified"
        } else {
            "pass"
        }
    }

    /// One JSON line. Timing is left out unless asked for, so that equal
    /// runs give equal bytes.
    pub fn to_json_line(&self, with_elapsed: bool) -> String {
        if with_elapsed {
            serde_json::to_string(&Timed {
                report: self,
                elapsed_ms: self.elapsed.as_millis(),
            })
        } else {
            serde_json::to_string(self)
        }
        .expect("reports serialize")
    }
}

/// A plain-text table, one row per report.
pub fn summary_table(reports: &[LemmaReport]) -> String {
    let width = reports.iter().map(|r| r.lemma_id.len()).max().unwrap_or(5).max(5);
    let mut s = String::new();
    writeln!(s, "{:<width$}  {:>5}  {:>10}  {:>7}  verdict", "lemma", "max_n", "instances", "counter").unwrap();
    for r in reports {
        writeln!(
            s,
            "{:<width$}  {:>5}  {:>10}  {:>7}  {}",
            r.lemma_id,
            r.max_n,
            r.instances_checked,
            r.counterexamples.len(),
            r.verdict()
        )
        .unwrap();
    }
    s
}
