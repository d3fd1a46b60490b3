use serde::Serialize;

use super::config::LatticeConfig;
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::polyproj::pareto_front;

/// ½·log2(2πe/12): rate loss of a scalar lattice against a good
/// high-dimensional one.
pub fn shaping_gap_bits() -> f64 {
    0.5 * (2.0 * std::f64::consts::PI * std::f64::consts::E / 12.0).log2()
}

fn half_log2_ratio(num: f64, den: f64) -> f64 {
    if num <= 0.0 {
        return 0.0;
    }
    (0.5 * (num / den).log2()).max(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Theorem5Bounds {
    /// First-receiver limit on R21.
    pub a1: f64,
    /// Second-receiver limit on R21.
    pub a2: f64,
    /// `½log(1 + P1/(a²ρ̄P2 + N1))`.
    pub r11: f64,
    /// `½log(P1/(ᾱ1²P1 + α1²(a²ρ̄P2 + N1)))` at the configured α1.
    pub r11_alpha1: f64,
    pub r22: f64,
    pub shaping_gap: f64,
}

/// Rate bounds of the lattice scheme, negative logs clamped at 0.
pub fn theorem5_bounds(cfg: &LatticeConfig) -> Result<Theorem5Bounds> {
    cfg.validate()?;
    let (rp, rbp) = (cfg.rho * cfg.p2, cfg.rho_bar() * cfg.p2);
    let a_sq = cfg.a * cfg.a;
    let (al0, al0b) = (cfg.alpha0, 1.0 - cfg.alpha0);
    let (al1, al1b) = (cfg.alpha1, 1.0 - cfg.alpha1);
    let (al2, al2b) = (cfg.alpha2, 1.0 - cfg.alpha2);
    Ok(Theorem5Bounds {
        a1: half_log2_ratio(a_sq * rp, al0b * al0b * a_sq * rp + al0 * al0 * (a_sq * rbp + cfg.n1)),
        a2: half_log2_ratio(rp, al0b * al0b * rp + al0 * al0 * (rbp + cfg.n2)),
        r11: (0.5 * (1.0 + cfg.p1 / (a_sq * rbp + cfg.n1)).log2()).max(0.0),
        r11_alpha1: half_log2_ratio(cfg.p1, al1b * al1b * cfg.p1 + al1 * al1 * (a_sq * rbp + cfg.n1)),
        r22: half_log2_ratio(rbp, al2b * al2b * rbp + al2 * al2 * cfg.n2),
        shaping_gap: shaping_gap_bits(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimalAlphas {
    pub alpha0_opt1: f64,
    pub alpha0_opt2: f64,
    pub alpha1_opt: f64,
    pub alpha2_opt: f64,
}

/// MMSE scalings maximizing A1, A2, the α1 form of R11, and R22.
pub fn optimal_alphas(cfg: &LatticeConfig) -> OptimalAlphas {
    let (rp, rbp) = (cfg.rho * cfg.p2, cfg.rho_bar() * cfg.p2);
    let a_sq = cfg.a * cfg.a;
    let ratio = |num: f64, den: f64| if num == 0.0 { 0.0 } else { num / den };
    OptimalAlphas {
        alpha0_opt1: ratio(a_sq * rp, a_sq * cfg.p2 + cfg.n1),
        alpha0_opt2: ratio(rp, cfg.p2 + cfg.n2),
        alpha1_opt: ratio(cfg.p1, cfg.p1 + a_sq * rbp + cfg.n1),
        alpha2_opt: ratio(rbp, rbp + cfg.n2),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticePoint {
    pub rho: f64,
    pub alpha0: f64,
    /// (R11, R21, R22) corner of the rate box.
    pub rates: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticeUnion {
    pub points: Vec<LatticePoint>,
    pub frontier: Vec<LatticePoint>,
}

/// Rate-box corners over the (ρ, α0) grid with α1, α2 at their optimum.
pub fn region_union(template: &LatticeConfig, rho_grid: &[f64], alpha0_grid: &[f64]) -> Result<LatticeUnion> {
    region_union_with(template, rho_grid, alpha0_grid, Exec::Auto)
}

pub fn region_union_with(
    template: &LatticeConfig,
    rho_grid: &[f64],
    alpha0_grid: &[f64],
    exec: Exec,
) -> Result<LatticeUnion> {
    if let Some(v) = rho_grid.iter().chain(alpha0_grid).find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(Error::input(format!("grid value {v} outside [0, 1]")));
    }
    let na = alpha0_grid.len();
    let points = par::map_range(exec, rho_grid.len() * na, |k| -> Result<LatticePoint> {
        let (rho, alpha0) = (rho_grid[k / na], alpha0_grid[k % na]);
        let mut cfg = LatticeConfig { rho, alpha0, ..*template };
        let o = optimal_alphas(&cfg);
        cfg.alpha1 = o.alpha1_opt;
        cfg.alpha2 = o.alpha2_opt;
        let b = theorem5_bounds(&cfg)?;
        Ok(LatticePoint { rho, alpha0, rates: [b.r11, b.a1.min(b.a2), b.r22] })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let rates: Vec<Vec<f64>> = points.iter().map(|p| p.rates.to_vec()).collect();
    let front = pareto_front(&rates);
    let frontier = points
        .iter()
        .filter(|p| front.iter().any(|f| f[..] == p.rates[..]))
        .copied()
        .collect::<Vec<_>>();
    Ok(LatticeUnion { points, frontier: dedup_rates(frontier) })
}

fn dedup_rates(points: Vec<LatticePoint>) -> Vec<LatticePoint> {
    let mut out: Vec<LatticePoint> = Vec::new();
    for p in points {
        if !out.iter().any(|q| q.rates == p.rates) {
            out.push(p);
        }
    }
    out
}

/// Frontier as CSV with header `rho,alpha0,R11,R21,R22`.
pub fn frontier_csv(points: &[LatticePoint]) -> String {
    let mut out = String::from("rho,alpha0,R11,R21,R22\n");
    for p in points {
        out.push_str(&format!("{},{},{},{},{}\n", p.rho, p.alpha0, p.rates[0], p.rates[1], p.rates[2]));
    }
    out
}
