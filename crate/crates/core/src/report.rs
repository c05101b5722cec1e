//! Structured verification outcomes with JSON and CSV serialization.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::field::FieldCtx;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    pub count: u64,
    pub millis: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub t: u32,
    pub k: u32,
    pub m: u32,
    pub modulus_hex: String,
    /// Text form of the linearized polynomial, for the generalized theorem.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linearized: Option<String>,
    pub checks: Vec<CheckResult>,
    pub overall: bool,
    pub seed: u64,
}

/// Result of a single sub-check: it fails exactly when a counterexample is
/// present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub counterexample: Option<String>,
    pub count: u64,
}

impl Outcome {
    pub fn pass(count: u64) -> Self {
        Self {
            counterexample: None,
            count,
        }
    }

    pub fn fail(count: u64, counterexample: impl Into<String>) -> Self {
        Self {
            counterexample: Some(counterexample.into()),
            count,
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

pub const CSV_HEADER: &str = "theorem,t,k,overall,millis";

impl VerificationReport {
    pub fn new(theorem: &str, ctx: &FieldCtx, seed: u64) -> Self {
        let tower = ctx.tower_params();
        Self {
            theorem: theorem.to_string(),
            t: tower.map_or(0, |tw| tw.t),
            k: tower.map_or(0, |tw| tw.k),
            m: ctx.degree(),
            modulus_hex: ctx.modulus().to_hex(),
            linearized: None,
            checks: Vec::new(),
            overall: true,
            seed,
        }
    }

    /// Run `f`, time it and append the result.
    pub fn run(&mut self, name: &str, f: impl FnOnce() -> Outcome) -> bool {
        let start = Instant::now();
        let outcome = f();
        let millis = start.elapsed().as_millis() as u64;
        let passed = outcome.passed();
        self.checks.push(CheckResult {
            name: name.to_string(),
            status: if passed { CheckStatus::Pass } else { CheckStatus::Fail },
            counterexample: outcome.counterexample,
            count: outcome.count,
            millis,
        });
        self.overall &= passed;
        passed
    }

    /// As [`run`](Self::run) for a fallible check; errors propagate and
    /// record nothing.
    pub fn try_run<E>(
        &mut self,
        name: &str,
        f: impl FnOnce() -> Result<Outcome, E>,
    ) -> Result<bool, E> {
        let start = Instant::now();
        let outcome = f()?;
        let elapsed = start.elapsed();
        let passed = self.run(name, || outcome);
        if let Some(last) = self.checks.last_mut() {
            last.millis = elapsed.as_millis() as u64;
        }
        Ok(passed)
    }

    pub fn skip(&mut self, name: &str) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            status: CheckStatus::Skipped,
            counterexample: None,
            count: 0,
            millis: 0,
        });
        self.overall = false;
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Whether a hypothesis of the theorem (rather than its conclusion)
    /// failed.
    pub fn hypothesis_failed(&self) -> bool {
        self.checks
            .iter()
            .any(|c| c.name.starts_with("hypothesis_") && c.status == CheckStatus::Fail)
    }

    pub fn total_millis(&self) -> u64 {
        self.checks.iter().map(|c| c.millis).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.theorem,
            self.t,
            self.k,
            self.overall,
            self.total_millis()
        )
    }

    /// One line per check.
    pub fn text_lines(&self) -> Vec<String> {
        let mut lines = vec![format!(
            "{} t={} k={} m={} modulus={}{}",
            self.theorem,
            self.t,
            self.k,
            self.m,
            self.modulus_hex,
            self.linearized
                .as_deref()
                .map(|l| format!(" L={l}"))
                .unwrap_or_default()
        )];
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
            };
            let mut line = format!("  {status} {:<24} count={} {}ms", c.name, c.count, c.millis);
            if let Some(ce) = &c.counterexample {
                line.push_str(&format!(" counterexample: {ce}"));
            }
            lines.push(line);
        }
        lines.push(format!(
            "  overall: {}",
            if self.overall { "PASS" } else { "FAIL" }
        ));
        lines
    }
}
