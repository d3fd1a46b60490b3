use serde_json::json;
use zchan_core::verify::{run_suite, SUITES};

use super::suite_verdict;
use crate::output::{json_bytes, CmdResult, Run, Verdict};
use crate::{Cli, VerifyArgs};

pub fn run(cli: &Cli, a: &VerifyArgs, args: &[String]) -> CmdResult {
    let seed = cli.seed.unwrap_or(0);
    let mut run = Run::new("verify", args);
    let names: Vec<&str> = if a.suite == "all" { SUITES.to_vec() } else { vec![a.suite.as_str()] };
    let mut reports = Vec::new();
    let mut verdict = Verdict::Pass;
    for name in names {
        let report = run_suite(name, seed)?;
        verdict = verdict.and(suite_verdict(&report));
        reports.push(report);
    }
    run.config(json!({ "suite": a.suite }), &[seed]);
    let body = if reports.len() == 1 { json_bytes(&reports[0])? } else { json_bytes(&reports)? };
    run.emit(a.out.as_deref(), &body)?;
    run.finish(cli.manifest.as_deref(), &verdict)?;
    Ok(verdict)
}
