use nalgebra::DMatrix;
use serde::Serialize;

use super::channel::StandardChannel;
use crate::error::{Error, Result};
use crate::prob::{gaussian_mutual_information, CovarianceModel};

/// Power split and auxiliary coefficients of the dirty-paper construction
/// `U = Ũ + αS`, `W = W̃ + βS`, `U2 = Ũ2 + γS`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DpcParams {
    pub xi: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl DpcParams {
    /// Costa coefficients for `xi` with a free `gamma`.
    pub fn costa(ch: &StandardChannel, xi: f64, gamma: f64) -> Result<Self> {
        let (alpha, beta) = costa_coefficients(ch, xi)?;
        Ok(DpcParams { xi, alpha, beta, gamma })
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.xi) {
            return Err(Error::validation("dpc parameters", format!("xi = {} outside [0, 1]", self.xi)));
        }
        if ![self.alpha, self.beta, self.gamma].iter().all(|v| v.is_finite()) {
            return Err(Error::validation("dpc parameters", "alpha, beta, gamma must be finite"));
        }
        Ok(())
    }
}

/// `T = X1 + a X2 + Z1` variance, i.e. `1 + P1 + a²P2`.
fn t_variance(ch: &StandardChannel) -> f64 {
    1.0 + ch.p1 + ch.a * ch.a * ch.p2
}

/// (α, β) cancelling the state at the first receiver.
pub fn costa_coefficients(ch: &StandardChannel, xi: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&xi) {
        return Err(Error::validation("dpc parameters", format!("xi = {xi} outside [0, 1]")));
    }
    let vt = t_variance(ch);
    Ok((ch.a * ch.a1 * (xi * ch.p2).sqrt() / vt, ch.a1 * ch.p1.sqrt() / vt))
}

/// Names of the covariance model, base variables first.
pub const MODEL_NAMES: [&str; 13] = ["Ut", "Wt", "U2t", "S", "Z1", "Z2", "U", "W", "U2", "X1", "X2", "Y1", "Y2"];

/// Jointly Gaussian model of base and derived variables.
pub fn build_covariance(ch: &StandardChannel, p: &DpcParams) -> Result<CovarianceModel> {
    ch.validate()?;
    p.validate()?;
    let sx = (p.xi * ch.p2).sqrt();
    let sxb = ((1.0 - p.xi) * ch.p2).sqrt();
    let sp1 = ch.p1.sqrt();
    // Each row expresses a variable in the base (Ut, Wt, U2t, S, Z1, Z2).
    let x1 = [0.0, sp1, 0.0, 0.0, 0.0, 0.0];
    let x2 = [sx, 0.0, sxb, 0.0, 0.0, 0.0];
    let mut l = vec![
        [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
        [1.0, 0.0, 0.0, p.alpha, 0.0, 0.0],
        [0.0, 1.0, 0.0, p.beta, 0.0, 0.0],
        [0.0, 0.0, 1.0, p.gamma, 0.0, 0.0],
        x1,
        x2,
    ];
    let mut y1 = [0.0; 6];
    let mut y2 = [0.0; 6];
    for k in 0..6 {
        y1[k] = x1[k] + ch.a * x2[k];
        y2[k] = x2[k];
    }
    y1[3] += ch.a1;
    y1[4] += 1.0;
    y2[3] += ch.a2;
    y2[5] += 1.0;
    l.push(y1);
    l.push(y2);

    let var = [1.0, 1.0, 1.0, ch.q, 1.0, 1.0];
    let n = l.len();
    let cov = DMatrix::from_fn(n, n, |i, j| (0..6).map(|k| l[i][k] * l[j][k] * var[k]).sum());
    CovarianceModel::new(MODEL_NAMES.iter().map(|s| s.to_string()).collect(), cov)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lemma1Report {
    /// `E[ψu T]`, scaled by `a1` when `a1 = 0`.
    pub r_u: f64,
    /// `E[ψw T]`, scaled by `a1` when `a1 = 0`.
    pub r_w: f64,
    /// `I(UW;Y1,S) - I(UW;Y1)`, `I(U;Y1,S|W) - I(U;Y1|W)`, `I(W;Y1,S|U) - I(W;Y1|U)`.
    pub mi_gaps: [f64; 3],
}

/// Orthogonality residuals of `ψu = Ũ - (α/a1)T`, `ψw = W̃ - (β/a1)T` and the
/// three state-information gaps at the first receiver.
pub fn lemma1_residuals(ch: &StandardChannel, p: &DpcParams) -> Result<Lemma1Report> {
    let model = build_covariance(ch, p)?;
    let vt = t_variance(ch);
    let cov_ut = ch.a * (p.xi * ch.p2).sqrt();
    let cov_wt = ch.p1.sqrt();
    let (r_u, r_w) = if ch.a1 != 0.0 {
        (cov_ut - p.alpha / ch.a1 * vt, cov_wt - p.beta / ch.a1 * vt)
    } else {
        (-p.alpha * vt, -p.beta * vt)
    };
    let mi = |a: &[&str], b: &[&str], c: &[&str]| gaussian_mutual_information(&model, a, b, c);
    let mi_gaps = [
        mi(&["U", "W"], &["Y1", "S"], &[])? - mi(&["U", "W"], &["Y1"], &[])?,
        mi(&["U"], &["Y1", "S"], &["W"])? - mi(&["U"], &["Y1"], &["W"])?,
        mi(&["W"], &["Y1", "S"], &["U"])? - mi(&["W"], &["Y1"], &["U"])?,
    ];
    Ok(Lemma1Report { r_u, r_w, mi_gaps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(p1: f64, p2: f64, a: f64, a1: f64, q: f64) -> StandardChannel {
        StandardChannel { a, a1, a2: 1.0, p1, p2, q }
    }

    #[test]
    fn costa_values() {
        let c = ch(2.0, 3.0, 1.0, 1.0, 1.0);
        let (al, be) = costa_coefficients(&c, 1.0).unwrap();
        assert!((al - 3f64.sqrt() / 6.0).abs() < 1e-15);
        assert!((be - 2f64.sqrt() / 6.0).abs() < 1e-15);
        assert_eq!(costa_coefficients(&c, 0.0).unwrap().0, 0.0);
        assert_eq!(costa_coefficients(&ch(0.0, 3.0, 1.0, 1.0, 1.0), 0.5).unwrap().1, 0.0);
        assert!(costa_coefficients(&c, 1.5).is_err());
    }

    #[test]
    fn covariance_entries() {
        let c = ch(2.0, 3.0, 0.8, 1.8, 2.0);
        let p = DpcParams::costa(&c, 0.4, 0.3).unwrap();
        let m = build_covariance(&c, &p).unwrap();
        assert!((m.covariance("X2", "X2").unwrap() - 3.0).abs() < 1e-12);
        assert!((m.covariance("Y2", "Y2").unwrap() - (3.0 + 2.0 + 1.0)).abs() < 1e-12);
        assert!((m.covariance("U", "S").unwrap() - p.alpha * 2.0).abs() < 1e-12);
    }

    #[test]
    fn lemma_holds_and_breaks() {
        let c = ch(2.0, 3.0, 1.0, 1.0, 1.0);
        let p = DpcParams::costa(&c, 1.0, 0.0).unwrap();
        let r = lemma1_residuals(&c, &p).unwrap();
        assert!(r.r_u.abs() < 1e-12 && r.r_w.abs() < 1e-12);
        assert!(r.mi_gaps.iter().all(|g| g.abs() < 1e-9), "{r:?}");
        let bad = DpcParams { alpha: p.alpha + 0.1, ..p };
        let r = lemma1_residuals(&c, &bad).unwrap();
        assert!(r.r_u.abs() > 0.01 && r.mi_gaps[0] > 1e-6);
    }

    #[test]
    fn no_state_no_gap() {
        let c = ch(2.0, 3.0, 1.0, 1.0, 0.0);
        let p = DpcParams { xi: 0.5, alpha: 0.7, beta: -0.3, gamma: 0.0 };
        let r = lemma1_residuals(&c, &p).unwrap();
        assert!(r.mi_gaps.iter().all(|g| g.abs() < 1e-9), "{r:?}");
    }
}
