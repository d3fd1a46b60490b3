use serde_json::json;
use zchan_core::dmc_regions::{compare_fme, theorem1_region, theorem2_region, theorem3_outer, DVariant};
use zchan_core::polyproj::VERTEX_TOL;
use zchan_core::prob::{random_joint_distribution_with, Alphabets, GenOptions, JointDistribution};

use crate::output::{json_bytes, CmdResult, InputError, Run, Verdict};
use crate::{Cli, DVariantArg, DmcArgs};

pub fn run(cli: &Cli, a: &DmcArgs, args: &[String]) -> CmdResult {
    let seed = cli.seed.unwrap_or(0);
    let mut run = Run::new("dmc-region", args);
    let dist = match (&a.dist, a.random) {
        (Some(path), _) => JointDistribution::from_json(&run.input_json(path)?)?,
        (None, Some(n)) => {
            let opts = GenOptions { identity_u1: a.theorem == 2, degraded: a.theorem == 2 };
            random_joint_distribution_with(seed, Alphabets::uniform(n)?, opts)?
        }
        (None, None) => return Err(InputError("one of --dist or --random is required".into())),
    };
    if a.fme_check && a.theorem != 1 {
        return Err(InputError("--fme-check applies to --theorem 1 only".into()));
    }
    let variant = match a.d_variant {
        DVariantArg::Literal => DVariant::Literal,
        DVariantArg::Combined => DVariant::Combined,
    };
    let region = match a.theorem {
        1 => theorem1_region(&dist, variant),
        2 => theorem2_region(&dist)?,
        _ => theorem3_outer(&dist),
    };
    run.config(
        json!({
            "dist": a.dist.as_ref().map(|p| p.display().to_string()),
            "random_alphabet": a.random,
            "theorem": a.theorem,
            "d_variant": format!("{:?}", a.d_variant).to_lowercase(),
            "fme_check": a.fme_check,
            "tolerance": VERTEX_TOL,
        }),
        &[seed],
    );
    run.emit(a.out.as_deref(), &json_bytes(&region.to_json()?)?)?;

    let mut verdict = Verdict::Pass;
    if a.fme_check {
        let cmp = compare_fme(&dist, VERTEX_TOL)?;
        let matched = match variant {
            DVariant::Literal => cmp.matches_literal,
            DVariant::Combined => cmp.matches_combined,
        };
        let report = json!({
            "variant": format!("{:?}", a.d_variant).to_lowercase(),
            "tolerance": VERTEX_TOL,
            "outcome": { "D": cmp.matches_literal, "D'": cmp.matches_combined },
            "comparison": cmp,
        });
        let path = a.fme_report.clone().or_else(|| a.out.as_ref().map(|p| p.with_extension("fme.json")));
        run.emit(path.as_deref(), &json_bytes(&report)?)?;
        if !matched {
            verdict = Verdict::Oracle(format!(
                "projected split-rate region differs from the closed form with the {} third bound \
                 (D matches: {}, D' matches: {})",
                format!("{:?}", a.d_variant).to_lowercase(),
                cmp.matches_literal,
                cmp.matches_combined
            ));
        }
    }
    run.finish(cli.manifest.as_deref(), &verdict)?;
    Ok(verdict)
}
