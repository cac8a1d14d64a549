//! Outcomes of pointwise identity checks.
//!
//! Every identity is verified by evaluating both sides on explicit probes.
//! A probe that needed data beyond the declared truncation cutoffs is
//! inconclusive and reported as skipped — never as a pass or a failure.

use crate::graded::{EvalCtx, GradedSpace, Vector};

/// Result of one identity evaluated on one probe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeOutcome {
    Pass,
    Fail { lhs: Vector, rhs: Vector },
    /// The evaluation touched components beyond the declared cutoffs;
    /// equality cannot be decided from the given data.
    Skipped { reasons: Vec<String> },
}

impl ProbeOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, ProbeOutcome::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, ProbeOutcome::Fail { .. })
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self, ProbeOutcome::Skipped { .. })
    }
}

/// Decide an outcome from both sides and the evaluation context: a marked
/// context always wins (inconclusive), otherwise exact comparison.
pub fn conclude(lhs: Vector, rhs: Vector, ctx: &EvalCtx) -> ProbeOutcome {
    if ctx.is_truncated() {
        ProbeOutcome::Skipped { reasons: ctx.reasons().to_vec() }
    } else if lhs == rhs {
        ProbeOutcome::Pass
    } else {
        ProbeOutcome::Fail { lhs, rhs }
    }
}

/// One named identity evaluated on one described probe.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    /// Stable identity tag, e.g. `associativity`, `leibniz`, `a-infinity`.
    pub identity: &'static str,
    /// Human-readable probe description (basis names).
    pub probe: String,
    pub outcome: ProbeOutcome,
}

/// Aggregate counts over a batch of checks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckSummary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl CheckSummary {
    pub fn of(checks: &[IdentityCheck]) -> CheckSummary {
        let mut s = CheckSummary::default();
        for c in checks {
            match &c.outcome {
                ProbeOutcome::Pass => s.passed += 1,
                ProbeOutcome::Fail { .. } => s.failed += 1,
                ProbeOutcome::Skipped { .. } => s.skipped += 1,
            }
        }
        s
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.passed > 0
    }
}

/// Render a probe tuple using basis names, e.g. `(x,t | y)`.
pub fn describe_probe(space: &GradedSpace, groups: &[&[u32]]) -> String {
    let parts: Vec<String> = groups
        .iter()
        .map(|g| {
            g.iter()
                .map(|&i| space.name(i).to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    format!("({})", parts.join(" | "))
}
