use super::scalar::Scalar;
use super::simplex::{maximize, LpOutcome};
use super::system::{LinearSystem, Row};
use crate::error::{Error, Result};
use crate::par::{self, Exec};

const MAX_DIM: usize = 4;
pub const VERTEX_TOL: f64 = 1e-9;

/// Solves the square system by Gaussian elimination; `None` if singular.
fn solve<T: Scalar>(rows: &[&Row<T>]) -> Option<Vec<T>> {
    let n = rows.len();
    let mut m: Vec<Vec<T>> = rows
        .iter()
        .map(|r| {
            let mut v = r.coeffs.clone();
            v.push(r.rhs.clone());
            v
        })
        .collect();
    for col in 0..n {
        let p = (col..n).max_by(|&a, &b| m[a][col].abs().partial_cmp(&m[b][col].abs()).unwrap())?;
        if m[p][col].is_zero_tol() {
            return None;
        }
        m.swap(col, p);
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = m[r][col].clone() / m[col][col].clone();
            if f.is_zero_tol() {
                continue;
            }
            let pivot = m[col].clone();
            for (x, p) in m[r].iter_mut().zip(&pivot).skip(col) {
                *x = x.clone() - f.clone() * p.clone();
            }
        }
    }
    Some((0..n).map(|i| m[i][n].clone() / m[i][i].clone()).collect())
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > m {
        return out;
    }
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + m - k) else { break };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// Checks boundedness by maximizing ±x_j; returns the first recession ray found.
fn check_bounded<T: Scalar>(sys: &LinearSystem<T>, rows: &[Row<T>]) -> Result<bool> {
    let n = sys.vars().len();
    for j in 0..n {
        for sign in [T::one(), -T::one()] {
            let mut c = vec![T::zero(); n];
            c[j] = sign;
            match maximize(&c, rows)? {
                LpOutcome::Infeasible => return Ok(false),
                LpOutcome::Optimal { .. } => {}
                LpOutcome::Unbounded { ray } => {
                    let direction = sys.vars().iter().cloned().zip(ray.iter().map(Scalar::to_f64)).collect();
                    return Err(Error::Unbounded { direction });
                }
            }
        }
    }
    Ok(true)
}

/// Vertices of a bounded polytope in at most four variables, deduplicated at
/// 1e-9 and sorted lexicographically. An empty polytope has no vertices.
pub fn enumerate_vertices<T: Scalar>(sys: &LinearSystem<T>) -> Result<Vec<Vec<T>>> {
    let n = sys.vars().len();
    if n == 0 || n > MAX_DIM {
        return Err(Error::Precondition(format!(
            "vertex enumeration supports 1 to {MAX_DIM} variables, got {n}"
        )));
    }
    let rows = sys.expanded();
    if !check_bounded(sys, &rows)? {
        return Ok(Vec::new());
    }
    let tol = T::eps() * T::from_f64(100.0);
    let subsets = combinations(rows.len(), n);
    let candidates = par::map_slice(Exec::Auto, &subsets, |subset| {
        let active: Vec<&Row<T>> = subset.iter().map(|&i| &rows[i]).collect();
        let x = solve(&active)?;
        rows.iter()
            .all(|r| r.dot(&x) <= r.rhs.clone() + tol.clone())
            .then_some(x)
    });
    let mut out: Vec<Vec<T>> = Vec::new();
    for x in candidates.into_iter().flatten() {
        let dup = out.iter().any(|v| {
            v.iter().zip(&x).all(|(a, b)| (a.to_f64() - b.to_f64()).abs() <= VERTEX_TOL)
        });
        if !dup {
            out.push(x);
        }
    }
    out.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(p, q)| p.partial_cmp(q).unwrap_or(std::cmp::Ordering::Equal))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(out)
}

/// Compares two vertex lists (each sorted) within `tol`.
pub fn same_vertices(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> bool {
    let covered = |p: &[Vec<f64>], q: &[Vec<f64>]| {
        p.iter().all(|x| q.iter().any(|y| x.iter().zip(y).all(|(u, v)| (u - v).abs() <= tol)))
    };
    covered(a, b) && covered(b, a)
}
