pub mod dmc;
pub mod dpc;
pub mod fme;
pub mod lattice;
pub mod replay;
pub mod verify;

use zchan_core::verify::{FailureKind, SuiteReport};

use crate::output::Verdict;

/// Verdict for a suite report: its failure kind when any check fails.
pub fn suite_verdict(report: &SuiteReport) -> Verdict {
    if report.pass {
        return Verdict::Pass;
    }
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    let msg = format!("{} suite failed: {}", report.suite, failed.join("; "));
    match report.failure_kind {
        FailureKind::Oracle => Verdict::Oracle(msg),
        FailureKind::Statistical => Verdict::Statistical(msg),
    }
}
