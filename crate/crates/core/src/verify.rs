//! Self-check suites over parameter grids and random instances. Each suite
//! returns a report with named checks and free-form findings.

use nalgebra::Matrix3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dmc_regions::compare_fme;
use crate::error::{Error, Result};
use crate::gauss_dpc::{
    build_covariance, dpc_bounds_with, grid, lemma1_residuals, logdet_second_receiver, DetForm, DpcParams,
    StandardChannel,
};
use crate::lattice_sim::{optimal_alphas, simulate_decoder1, simulate_decoder2, theorem5_bounds, LatticeConfig};
use crate::par::{self, Exec};
use crate::polyproj::VERTEX_TOL;
use crate::prob::{random_joint_distribution, Alphabets};

pub const SUITES: [&str; 6] = ["lemma1", "q-invariance", "det", "fme", "lattice-formulas", "lattice-mc"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    /// `"<="` or `">="`.
    pub relation: &'static str,
    pub pass: bool,
}

impl Check {
    pub fn at_most(name: &str, value: f64, bound: f64) -> Self {
        Check { name: name.into(), value, bound, relation: "<=", pass: value <= bound }
    }

    pub fn at_least(name: &str, value: f64, bound: f64) -> Self {
        Check { name: name.into(), value, bound, relation: ">=", pass: value >= bound }
    }
}

/// Kind of failure a suite reports, used for exit-code selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FailureKind {
    Oracle,
    Statistical,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub checks: Vec<Check>,
    pub findings: Vec<String>,
    pub failure_kind: FailureKind,
    pub pass: bool,
}

impl SuiteReport {
    fn new(suite: &str, cases: usize, checks: Vec<Check>, findings: Vec<String>, kind: FailureKind) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        SuiteReport { suite: suite.into(), cases, checks, findings, failure_kind: kind, pass }
    }
}

/// Runs a suite by name; `seed` selects the random instances where a
/// suite draws any.
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    match name {
        "lemma1" => lemma1_suite(Exec::Auto),
        "q-invariance" => q_invariance_suite(20, seed),
        "det" => det_suite(10, 20, seed),
        "fme" => fme_suite(100, seed),
        "lattice-formulas" => lattice_formula_suite(),
        "lattice-mc" => lattice_mc_suite(1_000_000, seed),
        _ => Err(Error::input(format!("unknown suite {name:?}; expected one of {}", SUITES.join(", ")))),
    }
}

/// Random standard-form channel with moderate gains and powers.
pub fn random_channel(rng: &mut ChaCha8Rng) -> StandardChannel {
    StandardChannel {
        a: rng.gen_range(0.2..3.0),
        a1: rng.gen_range(0.5..4.0),
        a2: rng.gen_range(0.5..2.0),
        p1: rng.gen_range(0.1..10.0),
        p2: rng.gen_range(0.1..10.0),
        q: rng.gen_range(0.1..10.0),
    }
}

/// Grid points `(P1, P2, a, Q, ξ)` with `a1 = 1 + a`, `a2 = 1`.
pub fn lemma1_grid() -> Vec<(StandardChannel, f64)> {
    let mut out = Vec::with_capacity(9000);
    for p1 in 1..=10 {
        for p2 in 1..=10 {
            for a in 1..=10 {
                for q in [0.1, 1.0, 10.0] {
                    for xi in [0.0, 0.3, 1.0] {
                        let (a, p1, p2) = (a as f64, p1 as f64, p2 as f64);
                        out.push((StandardChannel { a, a1: 1.0 + a, a2: 1.0, p1, p2, q }, xi));
                    }
                }
            }
        }
    }
    out
}

/// Orthogonality residuals and information gaps with Costa coefficients,
/// plus sensitivity of the first gap to a ±0.1 change in α.
pub fn lemma1_suite(exec: Exec) -> Result<SuiteReport> {
    let points = lemma1_grid();
    let rows = par::map_slice(exec, &points, |(ch, xi)| -> Result<[f64; 4]> {
        let p = DpcParams::costa(ch, *xi, 0.0)?;
        let r = lemma1_residuals(ch, &p)?;
        let gap = r.mi_gaps.iter().fold(0.0f64, |m, g| m.max(g.abs()));
        let mut min_perturbed = f64::INFINITY;
        if ch.q >= 0.1 && *xi >= 0.3 {
            for d in [-0.1, 0.1] {
                let bad = DpcParams { alpha: p.alpha + d, ..p };
                min_perturbed = min_perturbed.min(lemma1_residuals(ch, &bad)?.mi_gaps[0]);
            }
        }
        Ok([r.r_u.abs(), r.r_w.abs(), gap, min_perturbed])
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let max = |i: usize| rows.iter().fold(0.0f64, |m, r| m.max(r[i]));
    let min_perturbed = rows.iter().fold(f64::INFINITY, |m, r| m.min(r[3]));
    let checks = vec![
        Check::at_most("max |r_u|", max(0), 1e-12),
        Check::at_most("max |r_w|", max(1), 1e-12),
        Check::at_most("max information gap", max(2), 1e-9),
        Check::at_least("min gap with alpha perturbed by 0.1", min_perturbed, 1e-6),
    ];
    Ok(SuiteReport::new("lemma1", points.len(), checks, Vec::new(), FailureKind::Oracle))
}

/// First-receiver bounds compared bit for bit across Q ∈ {0, 1, 100}.
pub fn q_invariance_suite(channels: usize, seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = 0usize;
    let mut cases = 0usize;
    for _ in 0..channels {
        let base = random_channel(&mut rng);
        for xi in grid(0.0, 1.0, 11) {
            let mut first: Option<[u64; 3]> = None;
            for q in [0.0, 1.0, 100.0] {
                let ch = StandardChannel { q, ..base };
                let b = dpc_bounds_with(&ch, &DpcParams::costa(&ch, xi, 0.0)?, DetForm::Corrected)?;
                let bits = [b.b61.to_bits(), b.b62.to_bits(), b.b63.to_bits()];
                match first {
                    None => first = Some(bits),
                    Some(f) if f != bits => mismatches += 1,
                    Some(_) => {}
                }
            }
            cases += 1;
        }
    }
    let checks = vec![Check::at_most("bitwise mismatches", mismatches as f64, 0.0)];
    Ok(SuiteReport::new("q-invariance", cases, checks, Vec::new(), FailureKind::Oracle))
}

fn condition_number(m: &Matrix3<f64>) -> f64 {
    let ev = m.symmetric_eigenvalues();
    let (lo, hi) = (ev.min(), ev.max());
    if lo <= 0.0 {
        f64::INFINITY
    } else {
        hi / lo
    }
}

#[derive(Debug, Default)]
struct DetTally {
    lit_max: f64,
    cor_max: f64,
    lit_fail: usize,
    cases: usize,
    skipped: usize,
}

impl DetTally {
    fn add(&mut self, ch: &StandardChannel, xi: f64, gamma: f64) -> Result<()> {
        let p = DpcParams::costa(ch, xi, gamma)?;
        let model = build_covariance(ch, &p)?;
        let idx = ["Y2", "U", "U2"].map(|s| model.index_of(s).expect("model variable"));
        let m = Matrix3::from_fn(|i, j| model.matrix()[(idx[i], idx[j])]);
        if condition_number(&m) >= 1e8 {
            self.skipped += 1;
            return Ok(());
        }
        self.cases += 1;
        let (t64, t65) = logdet_second_receiver(ch, &p)?;
        let c = dpc_bounds_with(ch, &p, DetForm::Corrected)?;
        self.cor_max = self.cor_max.max((c.b64 - t64).abs()).max((c.b65 - t65).abs());
        match dpc_bounds_with(ch, &p, DetForm::Literal) {
            Ok(l) => {
                let d = (l.b64 - t64).abs().max((l.b65 - t65).abs());
                self.lit_max = self.lit_max.max(d);
                if d > 1e-9 {
                    self.lit_fail += 1;
                }
            }
            Err(Error::Numerical(_)) => self.lit_fail += 1,
            Err(e) => return Err(e),
        }
        Ok(())
    }

    fn report(self) -> SuiteReport {
        let DetTally { lit_max, cor_max, lit_fail, cases, skipped } = self;
        let mut findings = Vec::new();
        if lit_fail > 0 {
            findings.push(format!(
                "closed form with alpha in the (Y2,U2) entry disagrees with log-det at {lit_fail}/{cases} points \
                 (max |diff| {lit_max:.3e} where defined); with gamma in that entry max |diff| is {cor_max:.3e}"
            ));
        }
        if skipped > 0 {
            findings.push(format!("{skipped} ill-conditioned points (condition number >= 1e8) skipped"));
        }
        let checks = vec![
            Check::at_most("points where the literal form disagrees", lit_fail as f64, 0.0),
            Check::at_most("max |literal - logdet| where defined", lit_max, 1e-9),
        ];
        let mut report = SuiteReport::new("det", cases, checks, findings, FailureKind::Oracle);
        report.findings.push(format!("corrected form max |diff| = {cor_max:.3e}"));
        report
    }
}

/// Closed-form second-receiver bounds in both matrix forms against the
/// log-det evaluation on the covariance model.
pub fn det_suite(channels: usize, n: usize, seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = DetTally::default();
    for _ in 0..channels {
        let ch = random_channel(&mut rng);
        for xi in grid(0.0, 1.0, n) {
            for gamma in grid(-2.0, 2.0, n) {
                tally.add(&ch, xi, gamma)?;
            }
        }
    }
    Ok(tally.report())
}

/// The determinant check on one channel over the given grids.
pub fn det_channel_suite(ch: &StandardChannel, xi_grid: &[f64], gamma_grid: &[f64]) -> Result<SuiteReport> {
    let mut tally = DetTally::default();
    for &xi in xi_grid {
        for &gamma in gamma_grid {
            tally.add(ch, xi, gamma)?;
        }
    }
    Ok(tally.report())
}

/// Orthogonality residuals and information gaps on one channel over a ξ grid.
pub fn lemma1_channel_suite(ch: &StandardChannel, xi_grid: &[f64]) -> Result<SuiteReport> {
    let (mut ru, mut rw, mut gap) = (0.0f64, 0.0f64, 0.0f64);
    for &xi in xi_grid {
        let r = lemma1_residuals(ch, &DpcParams::costa(ch, xi, 0.0)?)?;
        ru = ru.max(r.r_u.abs());
        rw = rw.max(r.r_w.abs());
        gap = r.mi_gaps.iter().fold(gap, |m, g| m.max(g.abs()));
    }
    let checks = vec![
        Check::at_most("max |r_u|", ru, 1e-12),
        Check::at_most("max |r_w|", rw, 1e-12),
        Check::at_most("max information gap", gap, 1e-9),
    ];
    Ok(SuiteReport::new("lemma1", xi_grid.len(), checks, Vec::new(), FailureKind::Oracle))
}

/// First-receiver bound columns on one channel compared bit for bit across
/// Q ∈ {0, 1, 100}.
pub fn q_channel_suite(ch: &StandardChannel, xi_grid: &[f64], gamma_grid: &[f64]) -> Result<SuiteReport> {
    let mut mismatches = 0usize;
    for &xi in xi_grid {
        for &gamma in gamma_grid {
            let cols = [0.0, 1.0, 100.0]
                .iter()
                .map(|&q| {
                    let c = StandardChannel { q, ..*ch };
                    let b = dpc_bounds_with(&c, &DpcParams::costa(&c, xi, gamma)?, DetForm::Corrected)?;
                    Ok([b.b61.to_bits(), b.b62.to_bits(), b.b63.to_bits()])
                })
                .collect::<Result<Vec<_>>>()?;
            if cols.iter().any(|c| *c != cols[0]) {
                mismatches += 1;
            }
        }
    }
    let checks = vec![Check::at_most("bitwise mismatches", mismatches as f64, 0.0)];
    Ok(SuiteReport::new("q-invariance", xi_grid.len() * gamma_grid.len(), checks, Vec::new(), FailureKind::Oracle))
}

/// Counts of the projected split-rate system agreeing with the two
/// closed-form variants over random binary distributions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FmeTally {
    pub instances: usize,
    /// Instances whose projection has a vertex other than the origin.
    pub nontrivial: usize,
    pub combined: usize,
    pub literal: usize,
    pub combined_nontrivial: usize,
}

pub fn fme_tally(instances: usize, first_seed: u64, alphabets: Alphabets) -> Result<FmeTally> {
    let rows = par::map_range(Exec::Auto, instances, |i| -> Result<(bool, bool, bool)> {
        let d = random_joint_distribution(first_seed + i as u64, alphabets)?;
        let c = compare_fme(&d, VERTEX_TOL)?;
        let nontrivial = c
            .projected_vertices
            .as_ref()
            .is_some_and(|v| v.iter().any(|p| p.iter().any(|x| x.abs() > VERTEX_TOL)));
        Ok((nontrivial, c.matches_combined, c.matches_literal))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let count = |f: &dyn Fn(&(bool, bool, bool)) -> bool| rows.iter().filter(|r| f(r)).count();
    Ok(FmeTally {
        instances,
        nontrivial: count(&|r| r.0),
        combined: count(&|r| r.1),
        literal: count(&|r| r.2),
        combined_nontrivial: count(&|r| r.0 && r.1),
    })
}

pub fn fme_suite(instances: usize, first_seed: u64) -> Result<SuiteReport> {
    let t = fme_tally(instances, first_seed, Alphabets::uniform(2)?)?;
    let findings = vec![
        format!("{} of {} projections have a vertex besides the origin", t.nontrivial, t.instances),
        format!("{} of those nontrivial projections match the D' closed form", t.combined_nontrivial),
        format!("literal D matches {} of {}", t.literal, t.instances),
    ];
    let checks = vec![Check::at_least("instances matching D'", t.combined as f64, t.instances as f64)];
    Ok(SuiteReport::new("fme", t.instances, checks, findings, FailureKind::Oracle))
}

/// Configurations exercised by the lattice formula checks.
pub fn lattice_formula_configs() -> Vec<LatticeConfig> {
    let d = LatticeConfig::default();
    vec![
        d,
        LatticeConfig { a: 1.0, rho: 0.3, ..d },
        LatticeConfig { p1: 5.0, p2: 3.0, n1: 2.0, n2: 0.5, a: 0.7, rho: 0.8, ..d },
        LatticeConfig { a: 100.0, q: 10.0, rho: 0.6, ..d },
    ]
}

type Setter = fn(&mut LatticeConfig, f64);
type Pick = fn(&crate::lattice_sim::Theorem5Bounds) -> f64;

/// Index of the largest value, first on ties.
fn argmax(values: &[f64]) -> usize {
    values.iter().enumerate().fold(0, |best, (i, v)| if *v > values[best] { i } else { best })
}

/// Closed-form rates at optimal scalings and grid optimality of each scaling.
pub fn lattice_formula_suite() -> Result<SuiteReport> {
    let mut identity = 0.0f64;
    let mut grid_dev = 0.0f64;
    let alphas = grid(0.0, 1.0, 1001);
    let configs = lattice_formula_configs();
    for base in &configs {
        let o = optimal_alphas(base);
        let (rp, rbp) = (base.rho * base.p2, base.rho_bar() * base.p2);
        let a_sq = base.a * base.a;
        let hl = |x: f64| 0.5 * (1.0 + x).log2();
        let at = |f: &dyn Fn(&mut LatticeConfig)| -> Result<_> {
            let mut c = *base;
            f(&mut c);
            theorem5_bounds(&c)
        };
        let a2 = at(&|c| c.alpha0 = o.alpha0_opt2)?.a2;
        let r22 = at(&|c| c.alpha2 = o.alpha2_opt)?.r22;
        let a1 = at(&|c| c.alpha0 = o.alpha0_opt1)?.a1;
        let r11 = at(&|c| c.alpha1 = o.alpha1_opt)?.r11_alpha1;
        for (got, want) in [
            (a2, hl(rp / (rbp + base.n2))),
            (r22, hl(rbp / base.n2)),
            (a1, hl(a_sq * rp / (a_sq * rbp + base.n1))),
            (r11, hl(base.p1 / (a_sq * rbp + base.n1))),
        ] {
            identity = identity.max((got - want).abs());
        }
        let sweeps: [(f64, Setter, Pick); 4] = [
            (o.alpha0_opt1, |c, v| c.alpha0 = v, |b| b.a1),
            (o.alpha0_opt2, |c, v| c.alpha0 = v, |b| b.a2),
            (o.alpha1_opt, |c, v| c.alpha1 = v, |b| b.r11_alpha1),
            (o.alpha2_opt, |c, v| c.alpha2 = v, |b| b.r22),
        ];
        for (opt, set, pick) in sweeps {
            let vals = alphas
                .iter()
                .map(|&v| {
                    let mut c = *base;
                    set(&mut c, v);
                    theorem5_bounds(&c).map(|b| pick(&b))
                })
                .collect::<Result<Vec<_>>>()?;
            grid_dev = grid_dev.max((alphas[argmax(&vals)] - opt).abs());
        }
    }
    let checks = vec![
        Check::at_most("max |closed form - rate at optimal alpha|", identity, 1e-12),
        Check::at_most("max |grid argmax - optimal alpha|", grid_dev, 1.0 / 1000.0 + 1e-12),
    ];
    Ok(SuiteReport::new("lattice-formulas", configs.len(), checks, Vec::new(), FailureKind::Oracle))
}

/// Configurations run by the Monte Carlo suite: decoder 2 at the defaults,
/// decoder 1 at the defaults with the first-receiver α0, and decoder 1 at
/// a = 100, Q = 10.
pub fn lattice_mc_configs(samples: u64, seed: u64) -> Vec<(u8, LatticeConfig)> {
    let d = LatticeConfig { samples, seed, ..LatticeConfig::default() };
    let first = |c: LatticeConfig| LatticeConfig { alpha0: optimal_alphas(&c).alpha0_opt1, ..c };
    let strong = LatticeConfig { a: 100.0, q: 10.0, ..d };
    let strong = LatticeConfig { alpha1: optimal_alphas(&strong).alpha1_opt, ..strong };
    vec![(2, d), (1, first(d)), (1, first(strong))]
}

pub fn lattice_mc_suite(samples: u64, seed: u64) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let mut findings = Vec::new();
    let configs = lattice_mc_configs(samples, seed);
    for (k, (decoder, cfg)) in configs.iter().enumerate() {
        let stats = if *decoder == 2 { simulate_decoder2(cfg)? } else { simulate_decoder1(cfg)? };
        let tag = format!("run{k} decoder{decoder} a={} Q={}", cfg.a, cfg.q);
        for r in &stats.variances {
            checks.push(Check::at_most(&format!("{tag} |{} ratio - 1|", r.name), (r.ratio - 1.0).abs(), stats.band));
        }
        for c in stats.correlations.iter().chain(&stats.identities) {
            checks.push(Check::at_most(&format!("{tag} |{}|", c.name), c.value.abs(), c.bound));
        }
        for u in &stats.uniformity {
            checks.push(Check::at_least(&format!("{tag} KS p-value {}", u.name), u.p_value, u.significance));
        }
        if let Some(f) = stats.residual_fraction {
            if cfg.a >= 100.0 {
                checks.push(Check::at_most(&format!("{tag} stage-A residual fraction"), f, 1e-3));
            } else {
                findings.push(format!("{tag} stage-A residual fraction {f:.3e}"));
            }
        }
        for r in stats.diagnostics.iter().filter(|r| r.name.contains("inverse_square")) {
            findings.push(format!("{tag} {} ratio {:.4}", r.name, r.ratio));
        }
    }
    Ok(SuiteReport::new("lattice-mc", configs.len(), checks, findings, FailureKind::Statistical))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_size() {
        assert_eq!(lemma1_grid().len(), 9000);
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", 0).is_err());
    }

    #[test]
    fn argmax_first_on_ties() {
        assert_eq!(argmax(&[1.0, 3.0, 3.0, 2.0]), 1);
    }
}
