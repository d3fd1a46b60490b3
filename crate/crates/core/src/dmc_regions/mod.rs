//! Rate regions of the discrete memoryless Z channel with state, evaluated
//! for a fixed joint distribution.

mod region;

pub use region::{region_contains, Halfspace, RateRegion};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyproj::{project, LinearSystem, Rational, Row, Scalar};
use crate::prob::{JointDistribution, Var, VarSet};

use Var::{S, U, U1, U2, W, Y1, Y2};

pub const RATE_COORDS: [&str; 3] = ["R11", "R21", "R22"];
pub const SPLIT_VARS: [&str; 7] = ["R11", "R21c", "R21p", "R22c", "R22p", "R21", "R22"];

fn mi(d: &JointDistribution, a: impl Into<VarSet>, b: impl Into<VarSet>, c: impl Into<VarSet>) -> f64 {
    d.mutual_information(a.into(), b.into(), c.into())
        .expect("fixed disjoint variable sets")
}

/// `I(a;Y|c) - I(a;S|c)`.
fn gp(d: &JointDistribution, a: impl Into<VarSet> + Copy, y: Var, c: impl Into<VarSet> + Copy) -> f64 {
    mi(d, a, y, c) - mi(d, a, S, c)
}

/// Right-hand sides of the split-rate inequalities, indexed 15..=21.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SplitRateBounds {
    pub i15: f64,
    pub i16: f64,
    pub i17: f64,
    pub i18: f64,
    pub i19: f64,
    pub i20: f64,
    pub i21: f64,
    /// I(W;S), I(U;S), I(U1;S|U), I(U2;S|U).
    pub binning: [f64; 4],
}

impl SplitRateBounds {
    pub fn from_dist(d: &JointDistribution) -> Self {
        SplitRateBounds {
            i15: gp(d, W | U | U1, Y1, VarSet::EMPTY),
            i16: gp(d, U | U1, Y1, W),
            i17: gp(d, W | U1, Y1, U),
            i18: gp(d, U1, Y1, W | U),
            i19: gp(d, W, Y1, U | U1),
            i20: gp(d, U | U2, Y2, VarSet::EMPTY),
            i21: gp(d, U2, Y2, U),
            binning: [mi(d, W, S, VarSet::EMPTY), mi(d, U, S, VarSet::EMPTY), mi(d, U1, S, U), mi(d, U2, S, U)],
        }
    }

    pub fn as_array(&self) -> [f64; 7] {
        [self.i15, self.i16, self.i17, self.i18, self.i19, self.i20, self.i21]
    }

    /// The seven bounds with negative values replaced by 0.
    pub fn clamped(&self) -> [f64; 7] {
        self.as_array().map(|x| x.max(0.0))
    }
}

/// The five Theorem 1 constants plus `d_prime = I15 + I21`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Theorem1Bounds {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub d_prime: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DVariant {
    /// `D = I(WU1;Y1) + I(U2;Y2|U) - I(WU1;S) - I(U2;S|U)`.
    #[default]
    Literal,
    /// `D' = I15 + I21`.
    Combined,
}

pub fn theorem1_bounds(d: &JointDistribution) -> Theorem1Bounds {
    let s = SplitRateBounds::from_dist(d);
    Theorem1Bounds {
        a: gp(d, W, Y1, U | U1),
        b: gp(d, U1, Y1, W | U) + gp(d, U | U2, Y2, VarSet::EMPTY),
        c: gp(d, U | U1, Y1, W) + gp(d, U2, Y2, U),
        d: gp(d, W | U1, Y1, VarSet::EMPTY) + gp(d, U2, Y2, U),
        e: gp(d, W | U1, Y1, U) + gp(d, U | U2, Y2, VarSet::EMPTY),
        d_prime: s.i15 + s.i21,
    }
}

pub fn theorem1_region_from_bounds(t: &Theorem1Bounds, variant: DVariant) -> RateRegion {
    let (d, d_label) = match variant {
        DVariant::Literal => (t.d, "min(D,E)"),
        DVariant::Combined => (t.d_prime, "min(D',E)"),
    };
    let mut r = RateRegion::nonnegative(&RATE_COORDS);
    r.bound(&[1.0, 0.0, 0.0], t.a, "A");
    r.bound(&[0.0, 1.0, 1.0], t.b.min(t.c), "min(B,C)");
    r.bound(&[1.0, 1.0, 1.0], d.min(t.e), d_label);
    r
}

pub fn theorem1_region(d: &JointDistribution, variant: DVariant) -> RateRegion {
    theorem1_region_from_bounds(&theorem1_bounds(d), variant)
}

/// Split-rate system over [`SPLIT_VARS`] from explicit right-hand sides:
/// seven bounds, the two rate couplings as inequality pairs and
/// nonnegativity of the five split rates. Right-hand sides are not clamped.
pub fn split_rate_system_from<T: Scalar>(rhs: &[T; 7]) -> LinearSystem<T> {
    let z = T::zero;
    let o = T::one;
    let m = || -T::one();
    // R11, R21c, R21p, R22c, R22p, R21, R22
    let bounds = [
        [o(), o(), o(), o(), z(), z(), z()],
        [z(), o(), o(), o(), z(), z(), z()],
        [o(), z(), o(), z(), z(), z(), z()],
        [z(), z(), o(), z(), z(), z(), z()],
        [o(), z(), z(), z(), z(), z(), z()],
        [z(), o(), z(), o(), o(), z(), z()],
        [z(), z(), z(), z(), o(), z(), z()],
    ];
    let mut rows: Vec<Row<T>> = bounds
        .into_iter()
        .zip(rhs.iter())
        .map(|(a, b)| Row::le(a.to_vec(), b.clone()))
        .collect();
    let couple21 = [z(), o(), o(), z(), z(), m(), z()];
    let couple22 = [z(), z(), z(), o(), o(), z(), m()];
    for c in [couple21, couple22] {
        let neg: Vec<T> = c.iter().map(|x| -x.clone()).collect();
        rows.push(Row::le(c.to_vec(), z()));
        rows.push(Row::le(neg, z()));
    }
    for i in 0..5 {
        let mut a = vec![z(); 7];
        a[i] = m();
        rows.push(Row::le(a, z()));
    }
    LinearSystem::from_rows(SPLIT_VARS.iter().map(|s| s.to_string()).collect(), rows)
}

/// Split-rate system of a distribution, each bound clamped at 0.
pub fn split_rate_system(d: &JointDistribution) -> LinearSystem<f64> {
    split_rate_system_from(&SplitRateBounds::from_dist(d).clamped())
}

/// Exact-rational Fourier–Motzkin projection of the clamped split-rate
/// system onto (R11, R21, R22). `None` when the system has no solution.
pub fn project_split_rates(bounds: &SplitRateBounds) -> Result<Option<LinearSystem<Rational>>> {
    let rhs = bounds.clamped().map(<Rational as Scalar>::from_f64);
    match project(&split_rate_system_from(&rhs), &RATE_COORDS) {
        Ok(p) => Ok(Some(p)),
        Err(Error::Infeasible) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Outcome of checking the projection against both Theorem 1 variants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FmeComparison {
    pub bounds: Theorem1Bounds,
    pub split: SplitRateBounds,
    /// `None` when the split-rate system is infeasible.
    pub projected_vertices: Option<Vec<Vec<f64>>>,
    pub combined_vertices: Vec<Vec<f64>>,
    pub literal_vertices: Vec<Vec<f64>>,
    pub matches_combined: bool,
    pub matches_literal: bool,
}

pub fn compare_fme(d: &JointDistribution, tol: f64) -> Result<FmeComparison> {
    use crate::polyproj::{enumerate_vertices, same_vertices};
    let split = SplitRateBounds::from_dist(d);
    let bounds = theorem1_bounds(d);
    let projected_vertices = match project_split_rates(&split)? {
        Some(p) => Some(
            enumerate_vertices(&p)?
                .into_iter()
                .map(|v| v.iter().map(Scalar::to_f64).collect())
                .collect::<Vec<Vec<f64>>>(),
        ),
        None => None,
    };
    let combined_vertices = theorem1_region_from_bounds(&bounds, DVariant::Combined).vertices()?;
    let literal_vertices = theorem1_region_from_bounds(&bounds, DVariant::Literal).vertices()?;
    let cmp = |v: &[Vec<f64>]| projected_vertices.as_ref().is_some_and(|p| same_vertices(p, v, tol));
    Ok(FmeComparison {
        matches_combined: cmp(&combined_vertices),
        matches_literal: cmp(&literal_vertices),
        bounds,
        split,
        projected_vertices,
        combined_vertices,
        literal_vertices,
    })
}

/// Degraded-channel region; needs U1 to copy U.
pub fn theorem2_region(d: &JointDistribution) -> Result<RateRegion> {
    if !d.u1_is_identity() {
        return Err(Error::Precondition(
            "theorem 2 requires p(u1|u,s) to be the identity map with |U1| = |U|".into(),
        ));
    }
    let mut r = RateRegion::nonnegative(&RATE_COORDS);
    r.bound(&[1.0, 1.0, 0.0], gp(d, U | W, Y1, VarSet::EMPTY), "R11+R21");
    r.bound(&[0.0, 1.0, 0.0], gp(d, U, Y1, W), "R21");
    r.bound(&[1.0, 0.0, 0.0], gp(d, W, Y1, U), "R11");
    r.bound(&[0.0, 1.0, 1.0], gp(d, U | U2, Y2, VarSet::EMPTY), "R21+R22");
    r.bound(&[0.0, 0.0, 1.0], gp(d, U2, Y2, U), "R22");
    Ok(r)
}

/// Outer bound for the degraded channel.
pub fn theorem3_outer(d: &JointDistribution) -> RateRegion {
    let mut r = RateRegion::nonnegative(&RATE_COORDS);
    r.bound(&[1.0, 1.0, 0.0], mi(d, U | W, Y1, VarSet::EMPTY) - mi(d, W, S, VarSet::EMPTY), "R11+R21");
    r.bound(&[0.0, 1.0, 0.0], mi(d, U, Y1, W | S), "R21");
    r.bound(&[0.0, 1.0, 1.0], gp(d, U | U2, Y2, VarSet::EMPTY), "R21+R22");
    r.bound(&[0.0, 0.0, 1.0], gp(d, U2, Y2, U), "R22");
    r
}

fn require_degenerate(d: &JointDistribution, vars: &[Var], what: &str) -> Result<()> {
    match vars.iter().find(|v| !d.is_degenerate(**v)) {
        Some(v) => Err(Error::Precondition(format!("{what} requires {v} to be degenerate"))),
        None => Ok(()),
    }
}

/// Multiple-access special case (U and U2 constant), coordinates (R1, R2).
pub fn mac_reduction(d: &JointDistribution) -> Result<RateRegion> {
    require_degenerate(d, &[U, U2], "the MAC reduction")?;
    let mut r = RateRegion::nonnegative(&["R1", "R2"]);
    r.bound(&[1.0, 0.0], gp(d, W, Y1, U1), "R1");
    r.bound(&[0.0, 1.0], gp(d, U1, Y1, W), "R2");
    r.bound(&[1.0, 1.0], gp(d, W | U1, Y1, VarSet::EMPTY), "R1+R2");
    Ok(r)
}

/// Degraded broadcast special case (W and U2 constant), coordinates (R1, R2).
pub fn bc_reduction(d: &JointDistribution) -> Result<RateRegion> {
    require_degenerate(d, &[W, U2], "the BC reduction")?;
    let mut r = RateRegion::nonnegative(&["R1", "R2"]);
    r.bound(&[1.0, 0.0], gp(d, U1, Y1, U), "R1");
    r.bound(&[0.0, 1.0], gp(d, U, Y2, VarSet::EMPTY), "R2");
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constants(a: f64, b: f64, c: f64, d: f64, e: f64) -> Theorem1Bounds {
        Theorem1Bounds { a, b, c, d, e, d_prime: d }
    }

    #[test]
    fn theorem1_assembly() {
        let r = theorem1_region_from_bounds(&constants(0.9, 2.4, 2.2, 2.7, 3.0), DVariant::Literal);
        assert_eq!(r.rhs("A"), Some(0.9));
        assert_eq!(r.rhs("min(B,C)"), Some(2.2));
        assert_eq!(r.rhs("min(D,E)"), Some(2.7));
        assert_eq!(r.halfspaces().len(), 6);
    }

    #[test]
    fn negative_constants_collapse_to_origin() {
        let r = theorem1_region_from_bounds(&constants(-1.0, -2.0, -0.1, -3.0, -0.5), DVariant::Literal);
        assert_eq!(r.vertices().unwrap(), vec![vec![0.0; 3]]);
    }

    #[test]
    fn split_system_shape() {
        let s = split_rate_system_from(&[1.0; 7]);
        assert_eq!(s.rows().len(), 16);
        assert_eq!(s.vars().len(), 7);
    }
}
