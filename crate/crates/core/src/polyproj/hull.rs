use super::simplex::{maximize_nonneg, LpOutcome};
use super::system::{Relation, Row};
use crate::error::Result;
use crate::par::{self, Exec};

/// True when `p >= q` in every coordinate.
fn dominates(p: &[f64], q: &[f64]) -> bool {
    p.iter().zip(q).all(|(a, b)| a >= b)
}

/// Points not weakly dominated by another point, in input order. Among
/// equal points the first is kept.
pub fn pareto_front(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let keep = par::map_range(Exec::Auto, points.len(), |i| {
        !points.iter().enumerate().any(|(j, q)| {
            j != i && dominates(q, &points[i]) && (q != &points[i] || j < i)
        })
    });
    points.iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p.clone()).collect()
}

/// Whether some convex combination of `points` dominates `v` within `tol`.
pub fn convex_dominates(points: &[Vec<f64>], v: &[f64], tol: f64) -> Result<bool> {
    if points.is_empty() {
        return Ok(false);
    }
    let m = points.len();
    let mut rows = Vec::with_capacity(v.len() + 1);
    for (k, vk) in v.iter().enumerate() {
        rows.push(Row::le(points.iter().map(|p| -p[k]).collect(), -(vk - tol)));
    }
    rows.push(Row { coeffs: vec![1.0; m], rel: Relation::Eq, rhs: 1.0 });
    Ok(!matches!(maximize_nonneg(&vec![0.0; m], &rows)?, LpOutcome::Infeasible))
}

/// Generators of the down-closed convex hull of a nonnegative point cloud:
/// the Pareto points that no convex combination of the others dominates.
pub fn down_closed_hull(points: &[Vec<f64>], tol: f64) -> Result<Vec<Vec<f64>>> {
    let front = pareto_front(points);
    let redundant = par::map_range(Exec::Auto, front.len(), |i| {
        let others: Vec<Vec<f64>> = front
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        convex_dominates(&others, &front[i], -tol)
    });
    let mut out = Vec::new();
    for (p, r) in front.into_iter().zip(redundant) {
        if !r? {
            out.push(p);
        }
    }
    Ok(out)
}
