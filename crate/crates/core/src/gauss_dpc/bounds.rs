use serde::Serialize;

use super::channel::StandardChannel;
use super::model::{build_covariance, DpcParams};
use crate::dmc_regions::RateRegion;
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::polyproj::down_closed_hull;
use crate::prob::gaussian_mutual_information;

/// Which off-diagonal the 3×3 matrix of the second-receiver bounds uses in
/// its (Y2, U2) entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum DetForm {
    /// `√(ξ̄P2) + α a2 Q`. Not a covariance matrix in general.
    Literal,
    /// `√(ξ̄P2) + γ a2 Q`, the actual covariance of Y2 and U2.
    #[default]
    Corrected,
}

/// Right-hand sides of the five Gaussian bounds, unclamped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DpcBounds {
    pub b61: f64,
    pub b62: f64,
    pub b63: f64,
    pub b64: f64,
    pub b65: f64,
}

impl DpcBounds {
    pub fn as_array(&self) -> [f64; 5] {
        [self.b61, self.b62, self.b63, self.b64, self.b65]
    }
}

fn half_log2(x: f64) -> f64 {
    0.5 * x.log2()
}

fn det2(m: &[[f64; 2]; 2]) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn positive_det(det: f64, what: &str, matrix: String) -> Result<f64> {
    if det.is_finite() && det > 0.0 {
        Ok(det)
    } else {
        Err(Error::Numerical(format!("{what} determinant {det} is not positive for matrix {matrix}")))
    }
}

/// The five bounds from the closed-form expressions.
pub fn dpc_bounds(ch: &StandardChannel, p: &DpcParams) -> Result<DpcBounds> {
    dpc_bounds_with(ch, p, DetForm::Literal)
}

pub fn dpc_bounds_with(ch: &StandardChannel, p: &DpcParams, form: DetForm) -> Result<DpcBounds> {
    ch.validate()?;
    p.validate()?;
    let (a2, q) = (ch.a2, ch.q);
    let xi_b = 1.0 - p.xi;
    let a_sq = ch.a * ch.a;
    let inter = a_sq * xi_b * ch.p2 + 1.0;
    let b61 = half_log2(1.0 + (ch.p1 + a_sq * p.xi * ch.p2) / inter);
    let b62 = half_log2(1.0 + a_sq * p.xi * ch.p2 / inter);
    let b63 = half_log2(1.0 + ch.p1 / inter);

    let vy = ch.p2 + a2 * a2 * q + 1.0;
    let c_yu = (p.xi * ch.p2).sqrt() + p.alpha * a2 * q;
    let coef = match form {
        DetForm::Literal => p.alpha,
        DetForm::Corrected => p.gamma,
    };
    let c_yu2 = (xi_b * ch.p2).sqrt() + coef * a2 * q;
    let c_uu2 = p.alpha * p.gamma * q;
    let m3 = [
        [vy, c_yu, c_yu2],
        [c_yu, 1.0 + p.alpha * p.alpha * q, c_uu2],
        [c_yu2, c_uu2, 1.0 + p.gamma * p.gamma * q],
    ];
    let m2 = [[vy, c_yu], [c_yu, 1.0 + p.alpha * p.alpha * q]];
    let d3 = positive_det(det3(&m3), "3x3", format!("{m3:?}"))?;
    let d2 = positive_det(det2(&m2), "2x2", format!("{m2:?}"))?;
    Ok(DpcBounds { b61, b62, b63, b64: half_log2(vy / d3), b65: half_log2(d2 / d3) })
}

/// `b64` and `b65` recomputed as `I(UU2;Y2) - I(UU2;S)` and
/// `I(U2;Y2|U) - I(U2;S|U)` on the covariance model.
pub fn logdet_second_receiver(ch: &StandardChannel, p: &DpcParams) -> Result<(f64, f64)> {
    let m = build_covariance(ch, p)?;
    let mi = |a: &[&str], b: &[&str], c: &[&str]| gaussian_mutual_information(&m, a, b, c);
    let b64 = mi(&["U", "U2"], &["Y2"], &[])? - mi(&["U", "U2"], &["S"], &[])?;
    let b65 = mi(&["U2"], &["Y2"], &["U"])? - mi(&["U2"], &["S"], &["U"])?;
    Ok((b64, b65))
}

/// Region with halfspaces R11+R21 ≤ b61, R21 ≤ b62, R11 ≤ b63,
/// R21+R22 ≤ b64, R22 ≤ b65, each clamped at 0, using the corrected
/// 3×3 matrix.
pub fn dpc_region(ch: &StandardChannel, p: &DpcParams) -> Result<RateRegion> {
    dpc_region_with(ch, p, DetForm::Corrected)
}

pub fn dpc_region_with(ch: &StandardChannel, p: &DpcParams, form: DetForm) -> Result<RateRegion> {
    Ok(region_from_bounds(&dpc_bounds_with(ch, p, form)?))
}

pub fn region_from_bounds(b: &DpcBounds) -> RateRegion {
    let mut r = RateRegion::nonnegative(&crate::dmc_regions::RATE_COORDS);
    r.bound(&[1.0, 1.0, 0.0], b.b61, "R11+R21");
    r.bound(&[0.0, 1.0, 0.0], b.b62, "R21");
    r.bound(&[1.0, 0.0, 0.0], b.b63, "R11");
    r.bound(&[0.0, 1.0, 1.0], b.b64, "R21+R22");
    r.bound(&[0.0, 0.0, 1.0], b.b65, "R22");
    r
}

/// One grid point of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DpcPoint {
    pub xi: f64,
    pub gamma: f64,
    pub params: DpcParams,
    pub bounds: DpcBounds,
    pub vertices: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DpcUnion {
    /// Row-major over (xi, gamma).
    pub points: Vec<DpcPoint>,
    /// Generators of the down-closed convex hull of all region vertices.
    pub hull: Vec<Vec<f64>>,
}

/// `n` evenly spaced values from `lo` to `hi` inclusive.
pub fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

pub const HULL_TOL: f64 = 1e-12;

/// Sweeps Costa-coefficient regions over the (ξ, γ) grid.
pub fn dpc_region_union(ch: &StandardChannel, xi_grid: &[f64], gamma_grid: &[f64], form: DetForm) -> Result<DpcUnion> {
    dpc_region_union_with(ch, xi_grid, gamma_grid, form, Exec::Auto)
}

pub fn dpc_region_union_with(
    ch: &StandardChannel,
    xi_grid: &[f64],
    gamma_grid: &[f64],
    form: DetForm,
    exec: Exec,
) -> Result<DpcUnion> {
    if xi_grid.is_empty() || gamma_grid.is_empty() {
        return Err(Error::input("xi and gamma grids must be nonempty"));
    }
    if let Some(x) = xi_grid.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        return Err(Error::input(format!("xi grid value {x} outside [0, 1]")));
    }
    if let Some(g) = gamma_grid.iter().find(|g| !g.is_finite()) {
        return Err(Error::input(format!("gamma grid value {g} is not finite")));
    }
    let ng = gamma_grid.len();
    let points = par::map_range(exec, xi_grid.len() * ng, |k| -> Result<DpcPoint> {
        let (xi, gamma) = (xi_grid[k / ng], gamma_grid[k % ng]);
        let params = DpcParams::costa(ch, xi, gamma)?;
        let bounds = dpc_bounds_with(ch, &params, form)?;
        let vertices = region_from_bounds(&bounds).vertices()?;
        Ok(DpcPoint { xi, gamma, params, bounds, vertices })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let cloud: Vec<Vec<f64>> = points.iter().flat_map(|p| p.vertices.iter().cloned()).collect();
    let hull = down_closed_hull(&cloud, HULL_TOL)?;
    Ok(DpcUnion { points, hull })
}

/// Per-point bounds as CSV with header `xi,gamma,b61,b62,b63,b64,b65`.
pub fn sweep_csv(points: &[DpcPoint]) -> String {
    let mut out = String::from("xi,gamma,b61,b62,b63,b64,b65\n");
    for p in points {
        let b = p.bounds;
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            p.xi, p.gamma, b.b61, b.b62, b.b63, b.b64, b.b65
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(q: f64) -> StandardChannel {
        StandardChannel { a: 1.0, a1: 2.0, a2: 1.0, p1: 1.0, p2: 1.0, q }
    }

    #[test]
    fn first_receiver_arithmetic() {
        let ch = unit(1.0);
        let p = DpcParams::costa(&ch, 1.0, 0.0).unwrap();
        let b = dpc_bounds(&ch, &p).unwrap();
        assert!((b.b63 - 0.5).abs() < 1e-15);
        assert!((b.b62 - 0.5).abs() < 1e-15);
        assert!((b.b61 - 0.5 * 3f64.log2()).abs() < 1e-15);
        let p0 = DpcParams::costa(&ch, 0.0, 0.0).unwrap();
        assert_eq!(dpc_bounds(&ch, &p0).unwrap().b62, 0.0);
    }

    #[test]
    fn corrected_form_matches_logdet() {
        let ch = StandardChannel { a: 0.6, a1: 1.6, a2: 1.2, p1: 2.0, p2: 3.0, q: 2.0 };
        let p = DpcParams::costa(&ch, 0.4, -0.7).unwrap();
        let b = dpc_bounds_with(&ch, &p, DetForm::Corrected).unwrap();
        let (l64, l65) = logdet_second_receiver(&ch, &p).unwrap();
        assert!((b.b64 - l64).abs() < 1e-9 && (b.b65 - l65).abs() < 1e-9);
        // The literal form coincides when γ = α.
        let p = DpcParams { gamma: p.alpha, ..p };
        let b = dpc_bounds(&ch, &p).unwrap();
        let (l64, _) = logdet_second_receiver(&ch, &p).unwrap();
        assert!((b.b64 - l64).abs() < 1e-9);
    }

    #[test]
    fn literal_matrix_can_be_indefinite() {
        let ch = unit(1.0);
        let p = DpcParams::costa(&ch, 1.0, -1.0).unwrap();
        assert!(matches!(dpc_bounds(&ch, &p), Err(Error::Numerical(_))));
        assert!(dpc_bounds_with(&ch, &p, DetForm::Corrected).is_ok());
    }

    #[test]
    fn union_single_point_and_grid() {
        let ch = unit(1.0);
        let u = dpc_region_union(&ch, &[1.0], &[0.0], DetForm::Corrected).unwrap();
        let p = DpcParams::costa(&ch, 1.0, 0.0).unwrap();
        assert_eq!(u.points[0].vertices, dpc_region(&ch, &p).unwrap().vertices().unwrap());
        assert_eq!(grid(-2.0, 2.0, 41)[20], 0.0);
        assert!(dpc_region_union(&ch, &[1.5], &[0.0], DetForm::Corrected).is_err());
    }

    #[test]
    fn csv_header_and_rows() {
        let ch = unit(1.0);
        let u = dpc_region_union(&ch, &grid(0.0, 1.0, 3), &grid(-1.0, 1.0, 2), DetForm::Corrected).unwrap();
        let csv = sweep_csv(&u.points);
        assert!(csv.starts_with("xi,gamma,b61,b62,b63,b64,b65\n"));
        assert_eq!(csv.lines().count(), 7);
    }
}
