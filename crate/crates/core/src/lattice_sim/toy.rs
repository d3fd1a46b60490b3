use serde::Serialize;

use super::config::LatticeConfig;
use super::lattice::mod_lattice;
use super::rng::{Stream, StreamReader};
use crate::error::{Error, Result};

/// Symbol error rate of one decoding stage.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageSer {
    pub stage: String,
    pub spacing: f64,
    pub noise_std: f64,
    /// Constellation spacing in units of the predicted noise deviation.
    pub spacing_over_std: f64,
    pub ser: f64,
    /// Set when the spacing is below one noise deviation.
    pub warning: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToyDecodeReport {
    pub constellation_size: usize,
    pub samples: u64,
    pub stages: Vec<StageSer>,
}

/// Index of the constellation point nearest to `y`, cyclically in the cell.
fn nearest(y: f64, delta: f64, k: usize) -> usize {
    let step = delta / k as f64;
    let idx = ((y + 0.5 * delta) / step - 0.5).round();
    (idx.rem_euclid(k as f64)) as usize
}

fn point(i: usize, delta: f64, k: usize) -> f64 {
    -0.5 * delta + (i as f64 + 0.5) * delta / k as f64
}

/// Sends points of a `k`-point constellation in each Voronoi cell through
/// the two second-receiver stages and counts wrong nearest-point decisions.
pub fn toy_decode_demo(cfg: &LatticeConfig, k: usize) -> Result<ToyDecodeReport> {
    cfg.validate()?;
    if k == 0 {
        return Err(Error::input("constellation size must be positive"));
    }
    if cfg.rho <= 0.0 || cfg.rho >= 1.0 {
        return Err(Error::input("toy decoding needs 0 < rho < 1"));
    }
    let delta = cfg.deltas();
    let [s0, _, s2] = cfg.second_moments();
    let (al0, al2) = (cfg.alpha0, cfg.alpha2);
    let (al0b, al2b) = (1.0 - al0, 1.0 - al2);
    let sd = [
        (al0b * al0b * s0 + al0 * al0 * (s2 + cfg.n2)).sqrt(),
        (al2b * al2b * s2 + al2 * al2 * cfg.n2).sqrt(),
    ];
    let r = |s| StreamReader::new(cfg.seed, s, 0);
    let (mut rs, mut rz, mut rd0, mut rd2, mut rv0, mut rv2) =
        (r(Stream::S), r(Stream::Z2), r(Stream::D0), r(Stream::D2), r(Stream::V0), r(Stream::V2));
    let mut errors = [0u64; 2];
    for _ in 0..cfg.samples {
        let s = cfg.q.sqrt() * rs.normal();
        let z2 = cfg.n2.sqrt() * rz.normal();
        let d0 = delta[0] * (rd0.uniform() - 0.5);
        let d2 = delta[2] * (rd2.uniform() - 0.5);
        let i0 = ((rv0.uniform() * k as f64) as usize).min(k - 1);
        let i2 = ((rv2.uniform() * k as f64) as usize).min(k - 1);
        let (v0, v2) = (point(i0, delta[0], k), point(i2, delta[2], k));
        let u = mod_lattice(v0 - al0 * s + d0, delta[0]);
        let u2 = mod_lattice(v2 - al2 * al0b * s + d2, delta[2]);
        let y2 = u + u2 + s + z2;
        let stage1 = mod_lattice(al0 * y2 - d0, delta[0]);
        let z02e = -al0b * u + al0 * (u2 + z2);
        let stage2 = mod_lattice(al2 * (al0b * y2 + z02e) - d2, delta[2]);
        errors[0] += (nearest(stage1, delta[0], k) != i0) as u64;
        errors[1] += (nearest(stage2, delta[2], k) != i2) as u64;
    }
    let stages = ["decoder2_stage1", "decoder2_stage2"]
        .iter()
        .enumerate()
        .map(|(j, name)| {
            let dl = if j == 0 { delta[0] } else { delta[2] };
            let spacing = dl / k as f64;
            StageSer {
                stage: name.to_string(),
                spacing,
                noise_std: sd[j],
                spacing_over_std: spacing / sd[j],
                ser: errors[j] as f64 / cfg.samples as f64,
                warning: spacing < sd[j],
            }
        })
        .collect();
    Ok(ToyDecodeReport { constellation_size: k, samples: cfg.samples, stages })
}
