//! Structured verification results: per-check residuals, tolerances, and
//! verdicts, with JSON export.

use crate::precision::PrecisionContext;
use rug::Float;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Pass,
    Fail,
    /// Measured and reported, but not asserted.
    Info,
    /// The check does not apply to this family or configuration.
    NotApplicable,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Info => "info",
            Verdict::NotApplicable => "n/a",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub residual: Option<Float>,
    pub tolerance: Option<Float>,
    pub verdict: Verdict,
    pub detail: Option<String>,
}

impl CheckResult {
    /// Pass iff `residual <= tolerance`.
    pub fn pass_fail(name: impl Into<String>, residual: Float, tolerance: Float) -> Self {
        let verdict = if residual <= tolerance {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        CheckResult {
            name: name.into(),
            residual: Some(residual),
            tolerance: Some(tolerance),
            verdict,
            detail: None,
        }
    }

    pub fn info(name: impl Into<String>, residual: Option<Float>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            residual,
            tolerance: None,
            verdict: Verdict::Info,
            detail: Some(detail.into()),
        }
    }

    /// Pass/fail on a boolean condition with no numeric residual.
    pub fn boolean(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            residual: None,
            tolerance: None,
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            detail: Some(detail.into()),
        }
    }

    pub fn not_applicable(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            residual: None,
            tolerance: None,
            verdict: Verdict::NotApplicable,
            detail: Some(detail.into()),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport { checks: Vec::new() }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    /// True when no check failed (informational and n/a entries are fine).
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn failed_names(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| c.verdict == Verdict::Fail)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn to_json(&self, ctx: &PrecisionContext) -> serde_json::Value {
        let fmt = |f: &Option<Float>| -> serde_json::Value {
            match f {
                Some(v) => serde_json::Value::String(ctx.format_float(v)),
                None => serde_json::Value::Null,
            }
        };
        let checks: Vec<serde_json::Value> = self
            .checks
            .iter()
            .map(|c| {
                serde_json::json!({
                    "name": c.name,
                    "residual": fmt(&c.residual),
                    "tolerance": fmt(&c.tolerance),
                    "verdict": c.verdict.name(),
                    "detail": c.detail,
                })
            })
            .collect();
        serde_json::json!({
            "all_passed": self.all_passed(),
            "checks": checks,
        })
    }

    /// One human-readable line per check.
    pub fn summary_lines(&self, ctx: &PrecisionContext) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                let res = c
                    .residual
                    .as_ref()
                    .map(|r| format!(" residual={:.3e}", r.to_f64()))
                    .unwrap_or_default();
                let tol = c
                    .tolerance
                    .as_ref()
                    .map(|t| format!(" tol={:.3e}", t.to_f64()))
                    .unwrap_or_default();
                let _ = ctx;
                format!("[{}] {}{res}{tol}", c.verdict.name(), c.name)
            })
            .collect()
    }
}
