use std::path::Path;

use serde_json::{json, Map, Value};
use zchan_core::gauss_dpc::grid;
use zchan_core::lattice_sim::{
    frontier_csv, optimal_alphas, region_union, simulate_decoder1, simulate_decoder2, LatticeConfig,
};

use crate::output::{json_bytes, CmdResult, InputError, Run, Verdict};
use crate::{Cli, LatticeRegionArgs, LatticeSimArgs};

const FIELDS: [&str; 12] = ["P1", "P2", "N1", "N2", "Q", "a", "rho", "alpha0", "alpha1", "alpha2", "samples", "seed"];
const SECTIONS: [&str; 6] = ["variances", "correlations", "uniformity", "identities", "residuals", "diagnostics"];

/// Config file contents: the scheme parameters and an optional list of
/// output sections.
struct LoadedConfig {
    cfg: LatticeConfig,
    stats: Option<Vec<String>>,
}

/// Reads a config file, filling absent scaling factors with their optimum
/// for the given decoder. `--seed` overrides the file seed.
fn load(run: &mut Run, path: Option<&Path>, decoder: u8, seed: Option<u64>) -> Result<LoadedConfig, InputError> {
    let mut obj = match path {
        Some(p) => match run.input_json(p)? {
            Value::Object(m) => m,
            _ => return Err(InputError(format!("{} must hold a JSON object", p.display()))),
        },
        None => Map::new(),
    };
    let stats = match obj.remove("stats") {
        None => None,
        Some(v) => {
            let list: Vec<String> = serde_json::from_value(v)
                .map_err(|_| InputError("\"stats\" must be a list of section names".into()))?;
            if let Some(bad) = list.iter().find(|s| !SECTIONS.contains(&s.as_str())) {
                return Err(InputError(format!("unknown stats section {bad:?}; expected one of {}", SECTIONS.join(", "))));
            }
            Some(list)
        }
    };
    if let Some(bad) = obj.keys().find(|k| !FIELDS.contains(&k.as_str())) {
        return Err(InputError(format!("unknown lattice config field {bad:?}")));
    }
    let given = |k: &str| obj.contains_key(k);
    let (has0, has1, has2) = (given("alpha0"), given("alpha1"), given("alpha2"));
    let mut cfg: LatticeConfig = serde_json::from_value(Value::Object(obj.clone()))
        .map_err(|e| InputError(format!("invalid lattice config: {e}")))?;
    let o = optimal_alphas(&cfg);
    if !has0 {
        cfg.alpha0 = if decoder == 1 { o.alpha0_opt1 } else { o.alpha0_opt2 };
    }
    if !has1 {
        cfg.alpha1 = o.alpha1_opt;
    }
    if !has2 {
        cfg.alpha2 = o.alpha2_opt;
    }
    cfg.seed = seed.unwrap_or(cfg.seed);
    cfg.validate()?;
    Ok(LoadedConfig { cfg, stats })
}

pub fn region(cli: &Cli, a: &LatticeRegionArgs, args: &[String]) -> CmdResult {
    let mut run = Run::new("lattice region", args);
    let loaded = load(&mut run, a.config.as_deref(), 2, cli.seed)?;
    if a.rho_grid == 0 || a.alpha0_grid == 0 {
        return Err(InputError("grid sizes must be positive".into()));
    }
    let union = region_union(&loaded.cfg, &grid(0.0, 1.0, a.rho_grid), &grid(0.0, 1.0, a.alpha0_grid))?;
    run.config(
        json!({ "config": loaded.cfg, "rho_grid": a.rho_grid, "alpha0_grid": a.alpha0_grid }),
        &[loaded.cfg.seed],
    );
    run.emit(a.out.as_deref(), frontier_csv(&union.frontier).as_bytes())?;
    run.finish(cli.manifest.as_deref(), &Verdict::Pass)?;
    Ok(Verdict::Pass)
}

pub fn sim(cli: &Cli, a: &LatticeSimArgs, args: &[String]) -> CmdResult {
    let mut run = Run::new("lattice sim", args);
    let mut loaded = load(&mut run, a.config.as_deref(), a.decoder, cli.seed)?;
    if let Some(n) = a.samples {
        loaded.cfg.samples = n;
    }
    let cfg = loaded.cfg;
    let stats = if a.decoder == 1 { simulate_decoder1(&cfg)? } else { simulate_decoder2(&cfg)? };
    let pass = stats.pass();
    let Value::Object(mut body) = serde_json::to_value(&stats)? else {
        unreachable!("stats serialize to an object")
    };
    let mut out = Map::new();
    out.insert("config".into(), serde_json::to_value(cfg)?);
    for key in ["decoder", "samples", "seed", "band", "shaping_gap_bits"] {
        if let Some(v) = body.remove(key) {
            out.insert(key.into(), v);
        }
    }
    let wanted = |s: &str| loaded.stats.as_ref().is_none_or(|l| l.iter().any(|x| x == s));
    for section in SECTIONS {
        if !wanted(section) {
            continue;
        }
        if section == "residuals" {
            for key in ["residual_fraction", "stage_b_residual_fraction"] {
                out.insert(key.into(), body.remove(key).unwrap_or(Value::Null));
            }
        } else if let Some(v) = body.remove(section) {
            out.insert(section.into(), v);
        }
    }
    out.insert("pass".into(), Value::Bool(pass));
    run.config(json!({ "decoder": a.decoder, "config": cfg, "stats": loaded.stats }), &[cfg.seed]);
    run.emit(a.out.as_deref(), &json_bytes(&Value::Object(out))?)?;
    let verdict = if pass {
        Verdict::Pass
    } else {
        let failed: Vec<String> = stats
            .variances
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.clone())
            .chain(stats.correlations.iter().chain(&stats.identities).filter(|c| !c.pass).map(|c| c.name.clone()))
            .chain(stats.uniformity.iter().filter(|c| !c.pass).map(|c| c.name.clone()))
            .collect();
        Verdict::Statistical(format!("decoder {} checks failed: {}", a.decoder, failed.join(", ")))
    };
    run.finish(cli.manifest.as_deref(), &verdict)?;
    Ok(verdict)
}
