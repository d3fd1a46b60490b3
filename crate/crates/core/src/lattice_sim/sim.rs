use serde::Serialize;

use super::bounds::shaping_gap_bits;
use super::config::LatticeConfig;
use super::lattice::mod_lattice;
use super::rng::{Stream, StreamReader};
use super::stats::{ks_uniform, BoundCheck, KsCheck, Moments, RatioCheck};
use crate::error::{Error, Result};
use crate::par::{self, Exec};

pub const MIN_SAMPLES: u64 = 10_000;
/// Samples per accumulation block; partial sums are folded in block order.
pub const BLOCK: u64 = 4096;
pub const IDENTITY_TOL: f64 = 1e-12;
pub const KS_SIGNIFICANCE: f64 = 1e-3;

/// Empirical statistics of one simulation run with their predictions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticeRunStats {
    pub decoder: u8,
    pub samples: u64,
    pub seed: u64,
    /// Relative half-width of the variance-ratio acceptance band.
    pub band: f64,
    pub variances: Vec<RatioCheck>,
    pub correlations: Vec<BoundCheck>,
    pub uniformity: Vec<KsCheck>,
    /// Largest per-sample deviation of each algebraic identity.
    pub identities: Vec<BoundCheck>,
    /// Share of the first-stage noise variance due to the state residual.
    pub residual_fraction: Option<f64>,
    /// Share of the second-stage noise variance due to the state residual.
    pub stage_b_residual_fraction: Option<f64>,
    /// Reported only; not part of the pass verdict.
    pub diagnostics: Vec<RatioCheck>,
    pub shaping_gap_bits: f64,
}

impl LatticeRunStats {
    pub fn pass(&self) -> bool {
        self.variances.iter().all(|c| c.pass)
            && self.correlations.iter().all(|c| c.pass)
            && self.uniformity.iter().all(|c| c.pass)
            && self.identities.iter().all(|c| c.pass)
    }
}

/// `10/√n`, i.e. 5 standard errors with kurtosis factor 2.
pub fn variance_band(samples: u64) -> f64 {
    10.0 / (samples as f64).sqrt()
}

struct Draws {
    s: StreamReader,
    z1: StreamReader,
    z2: StreamReader,
    d: [StreamReader; 3],
    v: [StreamReader; 3],
}

impl Draws {
    fn at(seed: u64, start: u64) -> Self {
        let r = |s| StreamReader::new(seed, s, start);
        Draws {
            s: r(Stream::S),
            z1: r(Stream::Z1),
            z2: r(Stream::Z2),
            d: [r(Stream::D0), r(Stream::D1), r(Stream::D2)],
            v: [r(Stream::V0), r(Stream::V1), r(Stream::V2)],
        }
    }
}

/// Per-sample values shared by both decoders.
struct Sample {
    s: f64,
    z1: f64,
    z2: f64,
    d: [f64; 3],
    v: [f64; 3],
}

impl Sample {
    fn draw(dr: &mut Draws, cfg: &LatticeConfig, delta: &[f64; 3]) -> Self {
        let cell = |r: &mut StreamReader, dl: f64| dl * (r.uniform() - 0.5);
        Sample {
            s: cfg.q.sqrt() * dr.s.normal(),
            z1: cfg.n1.sqrt() * dr.z1.normal(),
            z2: cfg.n2.sqrt() * dr.z2.normal(),
            d: [cell(&mut dr.d[0], delta[0]), cell(&mut dr.d[1], delta[1]), cell(&mut dr.d[2], delta[2])],
            v: [cell(&mut dr.v[0], delta[0]), cell(&mut dr.v[1], delta[1]), cell(&mut dr.v[2], delta[2])],
        }
    }
}

struct BlockOut {
    moments: Moments,
    uniform: Vec<Vec<f64>>,
    identity: Vec<f64>,
}

/// Runs `body` over fixed-size blocks and folds the results in order.
/// `body` returns tracked values (last one is the correlation reference),
/// values to test for uniformity, and identity errors.
fn run_blocks<F>(cfg: &LatticeConfig, k: usize, n_uniform: usize, n_id: usize, exec: Exec, body: F) -> BlockOut
where
    F: Fn(&mut Draws, &mut Vec<f64>, &mut Vec<f64>, &mut Vec<f64>) + Sync + Send,
{
    let nblocks = cfg.samples.div_ceil(BLOCK);
    let blocks = par::map_range(exec, nblocks as usize, |b| {
        let start = b as u64 * BLOCK;
        let len = BLOCK.min(cfg.samples - start);
        let mut dr = Draws::at(cfg.seed, start);
        let mut out = BlockOut {
            moments: Moments::new(k),
            uniform: vec![Vec::with_capacity(len as usize); n_uniform],
            identity: vec![0.0; n_id],
        };
        let (mut tracked, mut unif, mut ids) = (Vec::with_capacity(k), Vec::new(), Vec::new());
        for _ in 0..len {
            tracked.clear();
            unif.clear();
            ids.clear();
            body(&mut dr, &mut tracked, &mut unif, &mut ids);
            out.moments.push(&tracked, tracked[k - 1]);
            for (dst, &x) in out.uniform.iter_mut().zip(&unif) {
                dst.push(x);
            }
            for (m, &e) in out.identity.iter_mut().zip(&ids) {
                *m = m.max(e);
            }
        }
        out
    });
    let mut total = BlockOut {
        moments: Moments::new(k),
        uniform: vec![Vec::with_capacity(cfg.samples as usize); n_uniform],
        identity: vec![0.0; n_id],
    };
    for b in blocks {
        total.moments.merge(&b.moments);
        for (dst, src) in total.uniform.iter_mut().zip(b.uniform) {
            dst.extend(src);
        }
        for (m, e) in total.identity.iter_mut().zip(b.identity) {
            *m = m.max(e);
        }
    }
    total
}

fn check_preconditions(cfg: &LatticeConfig) -> Result<[f64; 3]> {
    cfg.validate()?;
    if cfg.samples < MIN_SAMPLES {
        return Err(Error::input(format!("samples = {} below the minimum {MIN_SAMPLES}", cfg.samples)));
    }
    if cfg.rho <= 0.0 || cfg.rho >= 1.0 {
        return Err(Error::input("simulation needs 0 < rho < 1 so that both lattices carry power"));
    }
    Ok(cfg.deltas())
}

fn circ(x: f64, delta: f64) -> f64 {
    mod_lattice(x, delta).abs()
}

fn uniformity(name: &str, values: &mut [f64], delta: f64) -> KsCheck {
    let (statistic, p_value) = ks_uniform(values, -0.5 * delta, 0.5 * delta);
    KsCheck { name: name.into(), statistic, p_value, significance: KS_SIGNIFICANCE, pass: p_value > KS_SIGNIFICANCE }
}

/// Successive decoding at the second receiver.
pub fn simulate_decoder2(cfg: &LatticeConfig) -> Result<LatticeRunStats> {
    simulate_decoder2_with(cfg, Exec::Auto)
}

pub fn simulate_decoder2_with(cfg: &LatticeConfig, exec: Exec) -> Result<LatticeRunStats> {
    let delta = check_preconditions(cfg)?;
    let (al0, al2) = (cfg.alpha0, cfg.alpha2);
    let (al0b, al2b) = (1.0 - al0, 1.0 - al2);
    // tracked: U, U2, Z02e, stage-2 noise, S
    let mut out = run_blocks(cfg, 5, 2, 2, exec, |dr, tr, un, ids| {
        let x = Sample::draw(dr, cfg, &delta);
        let u = mod_lattice(x.v[0] - al0 * x.s + x.d[0], delta[0]);
        let u2 = mod_lattice(x.v[2] - al2 * al0b * x.s + x.d[2], delta[2]);
        let y2 = u + u2 + x.s + x.z2;
        let stage1 = mod_lattice(al0 * y2 - x.d[0], delta[0]);
        let z02e = -al0b * u + al0 * (u2 + x.z2);
        let stage2 = mod_lattice(al2 * (al0b * y2 + z02e) - x.d[2], delta[2]);
        let e2 = -al2b * u2 + al2 * x.z2;
        tr.extend([u, u2, z02e, e2, x.s]);
        un.extend([u, u2]);
        ids.extend([circ(stage1 - x.v[0] - z02e, delta[0]), circ(stage2 - x.v[2] - e2, delta[2])]);
    });
    let m = &out.moments;
    let [s0, _, s2] = cfg.second_moments();
    let band = variance_band(cfg.samples);
    let n = cfg.samples as f64;
    let corr_bound = 4.0 / n.sqrt();
    let variances = vec![
        RatioCheck::new("var_U", s0, m.variance(0), band),
        RatioCheck::new("var_U2", s2, m.variance(1), band),
        RatioCheck::new("var_Z02e", al0b * al0b * s0 + al0 * al0 * (s2 + cfg.n2), m.variance(2), band),
        RatioCheck::new("var_stage2_noise", al2b * al2b * s2 + al2 * al2 * cfg.n2, m.variance(3), band),
    ];
    let correlations = if cfg.q > 0.0 {
        vec![
            BoundCheck::below("corr_U_S", m.corr_with(0, 4), corr_bound),
            BoundCheck::below("corr_U2_S", m.corr_with(1, 4), corr_bound),
            BoundCheck::below("corr_Z02e_S", m.corr_with(2, 4), corr_bound),
        ]
    } else {
        Vec::new()
    };
    let uniformity = vec![
        uniformity("U", &mut out.uniform[0], delta[0]),
        uniformity("U2", &mut out.uniform[1], delta[2]),
    ];
    let identities = vec![
        BoundCheck::below("stage1_identity", out.identity[0], IDENTITY_TOL),
        BoundCheck::below("stage2_identity", out.identity[1], IDENTITY_TOL),
    ];
    let diagnostics = vec![
        RatioCheck::new("second_moment_U", s0, m.second_moment(0), band),
        RatioCheck::new("second_moment_U2", s2, m.second_moment(1), band),
    ];
    Ok(LatticeRunStats {
        decoder: 2,
        samples: cfg.samples,
        seed: cfg.seed,
        band,
        variances,
        correlations,
        uniformity,
        identities,
        residual_fraction: None,
        stage_b_residual_fraction: None,
        diagnostics,
        shaping_gap_bits: shaping_gap_bits(),
    })
}

/// Predicted variances of the two first-receiver stages.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Decoder1Prediction {
    /// `ᾱ0²ρP2 + α0²(ρ̄P2 + N1/a² + Q/a²)`.
    pub stage_a: f64,
    /// `α0²Q/a²`.
    pub stage_a_residual: f64,
    /// `ᾱ1²P1 + α1²(a²ρ̄P2 + N1) + α1²(1 + ᾱ0(a-1))²Q`.
    pub stage_b: f64,
    /// `α1²(1 + ᾱ0(a-1))²Q`.
    pub stage_b_residual: f64,
    /// Stage-B prediction with the residual taken as `α1²Q/a²`.
    pub stage_b_inverse_square: f64,
}

pub fn decoder1_prediction(cfg: &LatticeConfig) -> Decoder1Prediction {
    let [s0, s1, s2] = cfg.second_moments();
    let (a, q) = (cfg.a, cfg.q);
    let (al0, al1) = (cfg.alpha0, cfg.alpha1);
    let (al0b, al1b) = (1.0 - al0, 1.0 - al1);
    let stage_a_residual = al0 * al0 * q / (a * a);
    let stage_a = al0b * al0b * s0 + al0 * al0 * (s2 + cfg.n1 / (a * a)) + stage_a_residual;
    let c = 1.0 + al0b * (a - 1.0);
    let stage_b_residual = al1 * al1 * c * c * q;
    let clean_b = al1b * al1b * s1 + al1 * al1 * (a * a * s2 + cfg.n1);
    Decoder1Prediction {
        stage_a,
        stage_a_residual,
        stage_b: clean_b + stage_b_residual,
        stage_b_residual,
        stage_b_inverse_square: clean_b + al1 * al1 * q / (a * a),
    }
}

/// Successive surrogate at the first receiver: stage A decodes V0 with W
/// removed by a genie, stage B decodes V1.
pub fn simulate_decoder1(cfg: &LatticeConfig) -> Result<LatticeRunStats> {
    simulate_decoder1_with(cfg, Exec::Auto)
}

pub fn simulate_decoder1_with(cfg: &LatticeConfig, exec: Exec) -> Result<LatticeRunStats> {
    let delta = check_preconditions(cfg)?;
    if cfg.a == 0.0 {
        return Err(Error::input("decoder 1 needs a nonzero crossover gain a"));
    }
    if cfg.p1 <= 0.0 {
        return Err(Error::input("decoder 1 needs P1 > 0"));
    }
    let a = cfg.a;
    let (al0, al1, al2) = (cfg.alpha0, cfg.alpha1, cfg.alpha2);
    let (al0b, al1b) = (1.0 - al0, 1.0 - al1);
    let c = 1.0 + al0b * (a - 1.0);
    // tracked: U, W, U2, e0, e1, S
    let mut out = run_blocks(cfg, 6, 3, 2, exec, |dr, tr, un, ids| {
        let x = Sample::draw(dr, cfg, &delta);
        let u = mod_lattice(x.v[0] - al0 * x.s + x.d[0], delta[0]);
        let w = mod_lattice(x.v[1] - al1 * al0b * x.s + x.d[1], delta[1]);
        let u2 = mod_lattice(x.v[2] - al2 * al0b * x.s + x.d[2], delta[2]);
        let y1 = w + a * (u + u2) + (1.0 + a) * x.s + x.z1;
        let t0 = mod_lattice(al0 / a * (y1 - w) - x.d[0], delta[0]);
        let e0 = -al0b * u + al0 * (u2 + x.z1 / a) + al0 / a * x.s;
        let r = al0b * (y1 - w) / a + e0;
        let r_prime = w / a + r;
        let t1 = mod_lattice(al1 * a * r_prime - x.d[1], delta[1]);
        let e1 = -al1b * w + al1 * (a * u2 + x.z1) + al1 * c * x.s;
        tr.extend([u, w, u2, e0, e1, x.s]);
        un.extend([u, w, u2]);
        ids.extend([circ(t0 - x.v[0] - e0, delta[0]), circ(t1 - x.v[1] - e1, delta[1])]);
    });
    let m = &out.moments;
    let [s0, s1, s2] = cfg.second_moments();
    let pred = decoder1_prediction(cfg);
    let band = variance_band(cfg.samples);
    let corr_bound = 4.0 / (cfg.samples as f64).sqrt();
    let variances = vec![
        RatioCheck::new("var_U", s0, m.variance(0), band),
        RatioCheck::new("var_W", s1, m.variance(1), band),
        RatioCheck::new("var_U2", s2, m.variance(2), band),
        RatioCheck::new("var_stageA_noise", pred.stage_a, m.variance(3), band),
        RatioCheck::new("var_stageB_noise", pred.stage_b, m.variance(4), band),
    ];
    let correlations = if cfg.q > 0.0 {
        vec![
            BoundCheck::below("corr_U_S", m.corr_with(0, 5), corr_bound),
            BoundCheck::below("corr_W_S", m.corr_with(1, 5), corr_bound),
            BoundCheck::below("corr_U2_S", m.corr_with(2, 5), corr_bound),
        ]
    } else {
        Vec::new()
    };
    let uniformity = vec![
        uniformity("U", &mut out.uniform[0], delta[0]),
        uniformity("W", &mut out.uniform[1], delta[1]),
        uniformity("U2", &mut out.uniform[2], delta[2]),
    ];
    let identities = vec![
        BoundCheck::below("stageA_identity", out.identity[0], IDENTITY_TOL),
        BoundCheck::below("stageB_identity", out.identity[1], IDENTITY_TOL),
    ];
    let diagnostics = vec![
        RatioCheck::new("var_stageB_noise_inverse_square_residual", pred.stage_b_inverse_square, m.variance(4), band),
        RatioCheck::new("second_moment_U", s0, m.second_moment(0), band),
        RatioCheck::new("second_moment_W", s1, m.second_moment(1), band),
        RatioCheck::new("second_moment_U2", s2, m.second_moment(2), band),
    ];
    Ok(LatticeRunStats {
        decoder: 1,
        samples: cfg.samples,
        seed: cfg.seed,
        band,
        variances,
        correlations,
        uniformity,
        identities,
        residual_fraction: Some(pred.stage_a_residual / pred.stage_a),
        stage_b_residual_fraction: Some(pred.stage_b_residual / pred.stage_b),
        diagnostics,
        shaping_gap_bits: shaping_gap_bits(),
    })
}
