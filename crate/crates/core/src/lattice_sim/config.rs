use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scalar-lattice scheme parameters for
/// `Y1 = X1 + aX2 + (1+a)S + Z1`, `Y2 = X2 + S + Z2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LatticeConfig {
    #[serde(rename = "P1")]
    pub p1: f64,
    #[serde(rename = "P2")]
    pub p2: f64,
    #[serde(rename = "N1")]
    pub n1: f64,
    #[serde(rename = "N2")]
    pub n2: f64,
    #[serde(rename = "Q")]
    pub q: f64,
    pub a: f64,
    pub rho: f64,
    pub alpha0: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub samples: u64,
    pub seed: u64,
}

impl Default for LatticeConfig {
    /// P1 = 1, P2 = 2, N1 = N2 = 1, Q = 1, a = 10, ρ = 0.5 with the
    /// second-receiver-optimal α0 and optimal α1, α2.
    fn default() -> Self {
        let base = LatticeConfig {
            p1: 1.0,
            p2: 2.0,
            n1: 1.0,
            n2: 1.0,
            q: 1.0,
            a: 10.0,
            rho: 0.5,
            alpha0: 0.0,
            alpha1: 0.0,
            alpha2: 0.0,
            samples: 1_000_000,
            seed: 0,
        };
        let o = super::optimal_alphas(&base);
        LatticeConfig { alpha0: o.alpha0_opt2, alpha1: o.alpha1_opt, alpha2: o.alpha2_opt, ..base }
    }
}

impl LatticeConfig {
    pub fn rho_bar(&self) -> f64 {
        1.0 - self.rho
    }

    /// Second moments (σ0², σ1², σ2²) = (ρP2, P1, ρ̄P2).
    pub fn second_moments(&self) -> [f64; 3] {
        [self.rho * self.p2, self.p1, self.rho_bar() * self.p2]
    }

    /// Scalar lattice steps Δi = √(12 σi²).
    pub fn deltas(&self) -> [f64; 3] {
        self.second_moments().map(|s| (12.0 * s).sqrt())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::validation("lattice config", msg));
        for (name, v) in [("P1", self.p1), ("P2", self.p2), ("Q", self.q)] {
            if !v.is_finite() || v < 0.0 {
                return bad(format!("{name} = {v} must be finite and nonnegative"));
            }
        }
        for (name, v) in [("N1", self.n1), ("N2", self.n2)] {
            if !v.is_finite() || v <= 0.0 {
                return bad(format!("{name} = {v} must be finite and positive"));
            }
        }
        if !self.a.is_finite() {
            return bad(format!("a = {} must be finite", self.a));
        }
        for (name, v) in [("rho", self.rho), ("alpha0", self.alpha0), ("alpha1", self.alpha1), ("alpha2", self.alpha2)] {
            if !(0.0..=1.0).contains(&v) {
                return bad(format!("{name} = {v} outside [0, 1]"));
            }
        }
        Ok(())
    }
}
