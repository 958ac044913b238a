//! Replays the generation arguments as machine-checked assertions.
//!
//! Every check is exact: an equality in the group (decided by the action
//! oracle), an integer order, a coset-enumeration index, a matrix identity or
//! a mod-2 identity. Checks carry stable ids such as `n6.lemY.x2`.

mod checker;
mod sampling;
mod suites;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::todd_coxeter::Limits;

pub use sampling::verify_sampling;
pub use suites::{
    verify_lemma_y, verify_lemma_z, verify_main_even, verify_n4, verify_odd, verify_presentation,
    verify_prop22, verify_section3, verify_sigma2,
};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Overflow,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Overflow => "overflow",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub statement: String,
    pub status: Status,
    pub witness: Option<String>,
    pub millis: u64,
    /// Puncture count the check ran at; decides whether an overflow is tolerated.
    #[serde(skip)]
    pub n: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Overall {
    Pass,
    Fail,
    /// Only tolerated enumeration overflows (at n > 6) kept the report from passing.
    OverflowOnly,
}

impl Overall {
    pub fn exit_code(self) -> i32 {
        match self {
            Overall::Pass => 0,
            Overall::Fail => 1,
            Overall::OverflowOnly => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(mut checks: Vec<CheckResult>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        Report { version: REPORT_VERSION, checks }
    }

    pub fn overall(&self) -> Overall {
        let mut overflow = false;
        for c in &self.checks {
            match c.status {
                Status::Fail => return Overall::Fail,
                Status::Overflow if c.n.is_some_and(|n| n > 6) => overflow = true,
                Status::Overflow => return Overall::Fail,
                Status::Pass | Status::Skipped => {}
            }
        }
        if overflow {
            Overall::OverflowOnly
        } else {
            Overall::Pass
        }
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn get(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Aligned table for terminals, followed by a one-line summary.
    pub fn to_human(&self) -> String {
        let id_w = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(2).max(2);
        let st_w = self.checks.iter().map(|c| c.statement.chars().count()).max().unwrap_or(9).max(9);
        let mut out = String::new();
        let _ = writeln!(out, "{:<8} {:<id_w$} {:<st_w$} {:>8}  WITNESS", "STATUS", "ID", "STATEMENT", "MS");
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{:<8} {:<id_w$} {:<st_w$} {:>8}  {}",
                c.status.as_str(),
                c.id,
                c.statement,
                c.millis,
                c.witness.as_deref().unwrap_or("-"),
            );
        }
        let _ = writeln!(
            out,
            "{} checks: {} pass, {} fail, {} overflow, {} skipped",
            self.checks.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Overflow),
            self.count(Status::Skipped),
        );
        out
    }
}

#[derive(Clone, Debug)]
pub struct HarnessConfig {
    pub limits: Limits,
    /// Order search cap; `None` means `4n`.
    pub order_cap: Option<u32>,
    pub image_guard: usize,
    /// Seed for the random-pair sampling suite.
    pub seed: u64,
    pub sample_pairs: usize,
    /// Maximum word length for the optional search of an `a,b`-word equal to
    /// `t a0`; `None` skips the search.
    pub witness_search: Option<usize>,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            limits: Limits::default(),
            order_cap: None,
            image_guard: crate::action::DEFAULT_IMAGE_GUARD,
            seed: 0x5eed,
            sample_pairs: 200,
            witness_search: None,
        }
    }
}

impl HarnessConfig {
    pub fn order_cap(&self, n: u32) -> u32 {
        self.order_cap.unwrap_or(4 * n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Presentation,
    Prop22,
    Section3,
    LemmaY,
    LemmaZ,
    Main,
    Odd,
    N4,
    Sigma2,
    Sampling,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Presentation,
        Suite::Prop22,
        Suite::Section3,
        Suite::LemmaY,
        Suite::LemmaZ,
        Suite::Main,
        Suite::Odd,
        Suite::N4,
        Suite::Sigma2,
        Suite::Sampling,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Presentation => "presentation",
            Suite::Prop22 => "prop22",
            Suite::Section3 => "section3",
            Suite::LemmaY => "lemma-y",
            Suite::LemmaZ => "lemma-z",
            Suite::Main => "main",
            Suite::Odd => "odd",
            Suite::N4 => "n4",
            Suite::Sigma2 => "sigma2",
            Suite::Sampling => "sampling",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s)
    }

    /// Suites that do not depend on a puncture count.
    pub fn is_n_independent(self) -> bool {
        matches!(self, Suite::N4 | Suite::Sigma2)
    }

    /// Whether the suite's precondition on `n` holds.
    pub fn applies_to(self, n: u32) -> bool {
        match self {
            Suite::Presentation | Suite::Sampling => n >= 3,
            Suite::Prop22 | Suite::Section3 => n >= 4,
            Suite::LemmaY | Suite::LemmaZ | Suite::Main => n >= 6 && n.is_multiple_of(2),
            Suite::Odd => n >= 5 && n % 2 == 1,
            Suite::N4 | Suite::Sigma2 => true,
        }
    }

    pub fn precondition(self) -> &'static str {
        match self {
            Suite::Presentation | Suite::Sampling => "n >= 3",
            Suite::Prop22 | Suite::Section3 => "n >= 4",
            Suite::LemmaY | Suite::LemmaZ | Suite::Main => "even n >= 6",
            Suite::Odd => "odd n >= 5",
            Suite::N4 | Suite::Sigma2 => "none",
        }
    }

    /// Runs the suite at `n` (ignored for n-independent suites).
    pub fn run(self, n: u32, cfg: &HarnessConfig) -> crate::Result<Vec<CheckResult>> {
        match self {
            Suite::Presentation => verify_presentation(n, cfg),
            Suite::Prop22 => verify_prop22(n, cfg),
            Suite::Section3 => verify_section3(n, cfg),
            Suite::LemmaY => verify_lemma_y(n, cfg),
            Suite::LemmaZ => verify_lemma_z(n, cfg),
            Suite::Main => verify_main_even(n, cfg),
            Suite::Odd => verify_odd(n, cfg),
            Suite::N4 => verify_n4(cfg),
            Suite::Sigma2 => verify_sigma2(cfg),
            Suite::Sampling => verify_sampling(n, cfg),
        }
    }
}

/// Runs every applicable suite for each `n`, plus the n-independent suites
/// once, and sorts the results by id.
pub fn full_report(n_list: &[u32], cfg: &HarnessConfig) -> crate::Result<Report> {
    let ns: BTreeSet<u32> = n_list.iter().copied().collect();
    let mut checks = Vec::new();
    for &n in &ns {
        for suite in Suite::ALL.into_iter().filter(|s| !s.is_n_independent()) {
            if suite.applies_to(n) {
                checks.extend(suite.run(n, cfg)?);
            }
        }
    }
    checks.extend(verify_n4(cfg)?);
    checks.extend(verify_sigma2(cfg)?);
    Ok(Report::new(checks))
}
