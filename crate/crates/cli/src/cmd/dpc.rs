use serde_json::json;
use zchan_core::gauss_dpc::{dpc_region_union, grid, sweep_csv, ChannelSpec, DetForm, HULL_TOL};
use zchan_core::verify::{det_channel_suite, lemma1_channel_suite, q_channel_suite};

use super::suite_verdict;
use crate::output::{json_bytes, CmdResult, InputError, Run, Verdict};
use crate::svg::slice_plot;
use crate::{Cli, DpcArgs, DpcCheck};

pub fn run(cli: &Cli, a: &DpcArgs, args: &[String]) -> CmdResult {
    let seed = cli.seed.unwrap_or(0);
    let mut run = Run::new("gauss-dpc", args);
    let spec: ChannelSpec = serde_json::from_value(run.input_json(&a.channel)?)
        .map_err(|e| InputError(format!("{} is not a channel description: {e}", a.channel.display())))?;
    let channel = spec.resolve()?;
    let ch = channel.standard;
    if a.xi_grid == 0 || a.gamma_grid == 0 {
        return Err(InputError("grid sizes must be positive".into()));
    }
    if !a.gamma_min.is_finite() || !a.gamma_max.is_finite() || a.gamma_min > a.gamma_max {
        return Err(InputError(format!("gamma range [{}, {}] is empty", a.gamma_min, a.gamma_max)));
    }
    let xi = grid(0.0, 1.0, a.xi_grid);
    let gamma = grid(a.gamma_min, a.gamma_max, a.gamma_grid);
    let form = if a.literal_det { DetForm::Literal } else { DetForm::Corrected };
    run.config(
        json!({
            "channel": channel,
            "xi_grid": a.xi_grid,
            "gamma_grid": a.gamma_grid,
            "gamma_range": [a.gamma_min, a.gamma_max],
            "det_form": format!("{form:?}").to_lowercase(),
            "verify": a.verify.map(|v| format!("{v:?}").to_lowercase()),
            "q_sweep": a.q_sweep,
            "svg_levels": a.svg_levels,
        }),
        &[seed],
    );

    let union = dpc_region_union(&ch, &xi, &gamma, form)?;
    let dir = &a.out_dir;
    let file = |name: &str| dir.join(format!("{}_{name}", a.prefix));
    run.write(&file("sweep.csv"), sweep_csv(&union.points).as_bytes())?;
    let hull = json!({ "coords": ["R11", "R21", "R22"], "tolerance": HULL_TOL, "vertices": union.hull });
    run.write(&file("hull.json"), &json_bytes(&hull)?)?;
    if let Some(svg) = &a.svg {
        run.write(svg, slice_plot(&union.points, a.svg_levels).as_bytes())?;
    }

    let mut verdict = Verdict::Pass;
    let mut reports = Vec::new();
    match a.verify {
        Some(DpcCheck::Lemma1) => reports.push(("lemma1.json", lemma1_channel_suite(&ch, &xi)?)),
        Some(DpcCheck::Det) => reports.push(("det.json", det_channel_suite(&ch, &xi, &gamma)?)),
        None => {}
    }
    if a.q_sweep {
        reports.push(("q_sweep.json", q_channel_suite(&ch, &xi, &gamma)?));
    }
    for (name, report) in reports {
        run.write(&file(name), &json_bytes(&report)?)?;
        verdict = verdict.and(suite_verdict(&report));
    }
    let manifest = cli.manifest.clone().unwrap_or_else(|| file("manifest.json"));
    run.finish(Some(&manifest), &verdict)?;
    Ok(verdict)
}
