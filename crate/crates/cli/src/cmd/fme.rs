use serde_json::json;
use zchan_core::polyproj::{project, AnySystem};

use crate::output::{json_bytes, CmdResult, Run, Verdict};
use crate::{Cli, FmeArgs};

pub fn run(cli: &Cli, a: &FmeArgs, args: &[String]) -> CmdResult {
    let mut run = Run::new("fme", args);
    let sys = AnySystem::from_json(&run.input_json(&a.input)?)?;
    let keep: Vec<&str> = a.keep.iter().map(String::as_str).collect();
    let projected = match &sys {
        AnySystem::Float(s) => AnySystem::Float(project(s, &keep)?),
        AnySystem::Rational(s) => AnySystem::Rational(project(s, &keep)?),
    };
    run.config(json!({ "input": a.input.display().to_string(), "keep": a.keep }), &[cli.seed.unwrap_or(0)]);
    run.emit(a.out.as_deref(), &json_bytes(&projected.to_json())?)?;
    run.finish(cli.manifest.as_deref(), &Verdict::Pass)?;
    Ok(Verdict::Pass)
}
