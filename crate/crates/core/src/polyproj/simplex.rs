//! Dense two-phase simplex with Bland's rule over free variables.

use super::scalar::Scalar;
use super::system::{Relation, Row};
use crate::error::{Error, Result};

const MAX_PIVOTS: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<T> {
    Optimal { value: T, x: Vec<T> },
    Infeasible,
    /// Direction along which the objective grows without bound.
    Unbounded { ray: Vec<T> },
}

struct Tableau<T> {
    /// Constraint rows; last entry is the right-hand side.
    rows: Vec<Vec<T>>,
    /// Reduced costs; last entry is minus the objective value.
    obj: Vec<T>,
    basis: Vec<usize>,
    width: usize,
}

enum Step<T> {
    Done,
    Unbounded(Vec<T>),
}

impl<T: Scalar> Tableau<T> {
    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v = v.clone() / p.clone();
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero_tol() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                *v = v.clone() - f.clone() * pv.clone();
            }
        }
        if !self.obj[col].is_zero_tol() {
            let f = self.obj[col].clone();
            for (v, pv) in self.obj.iter_mut().zip(&prow) {
                *v = v.clone() - f.clone() * pv.clone();
            }
        }
        self.basis[r] = col;
    }

    /// Runs Bland-rule pivots over columns `< allowed`.
    fn run(&mut self, allowed: usize) -> Result<Step<T>> {
        for _ in 0..MAX_PIVOTS {
            let Some(col) = (0..allowed).find(|&j| self.obj[j].is_pos()) else {
                return Ok(Step::Done);
            };
            let mut best: Option<(usize, T)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_pos() {
                    continue;
                }
                let ratio = row[self.width].clone() / row[col].clone();
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br && !(br.clone() - ratio.clone()).is_zero_tol()
                            || (br.clone() - ratio.clone()).is_zero_tol() && self.basis[i] < self.basis[*bi]
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, col),
                None => {
                    let mut dir = vec![T::zero(); self.width];
                    dir[col] = T::one();
                    for (i, row) in self.rows.iter().enumerate() {
                        dir[self.basis[i]] = -row[col].clone();
                    }
                    return Ok(Step::Unbounded(dir));
                }
            }
        }
        Err(Error::Numerical(format!("simplex did not terminate within {MAX_PIVOTS} pivots")))
    }

    fn set_objective(&mut self, c: &[T]) {
        self.obj = vec![T::zero(); self.width + 1];
        self.obj[..c.len()].clone_from_slice(c);
        for (i, row) in self.rows.iter().enumerate() {
            let cb = self.obj[self.basis[i]].clone();
            if cb.is_zero_tol() {
                continue;
            }
            for (v, rv) in self.obj.iter_mut().zip(row) {
                *v = v.clone() - cb.clone() * rv.clone();
            }
        }
    }
}

/// Maximizes `c·x` subject to `rows`, with `x` unrestricted in sign.
pub fn maximize<T: Scalar>(c: &[T], rows: &[Row<T>]) -> Result<LpOutcome<T>> {
    solve(c, rows, true)
}

/// Maximizes `c·x` subject to `rows` and `x >= 0`.
pub fn maximize_nonneg<T: Scalar>(c: &[T], rows: &[Row<T>]) -> Result<LpOutcome<T>> {
    solve(c, rows, false)
}

fn solve<T: Scalar>(c: &[T], rows: &[Row<T>], free: bool) -> Result<LpOutcome<T>> {
    let n = c.len();
    // Column block for x- when variables are free; empty otherwise.
    let nm = if free { n } else { 0 };
    let m = rows.len();
    let n_slack = rows.iter().filter(|r| r.rel == Relation::Le).count();
    // Columns: x+ (n), x- (nm), slacks, artificials.
    let needs_art: Vec<bool> = rows
        .iter()
        .map(|r| r.rel == Relation::Eq || r.rhs.is_neg())
        .collect();
    let n_art = needs_art.iter().filter(|&&b| b).count();
    let art0 = n + nm + n_slack;
    let width = art0 + n_art;

    let mut tab = Tableau { rows: Vec::with_capacity(m), obj: Vec::new(), basis: Vec::with_capacity(m), width };
    let (mut s, mut a) = (n + nm, art0);
    for (r, &art) in rows.iter().zip(&needs_art) {
        let sign = if r.rhs.is_neg() { -T::one() } else { T::one() };
        let mut row = vec![T::zero(); width + 1];
        for (j, cj) in r.coeffs.iter().enumerate() {
            row[j] = sign.clone() * cj.clone();
            if free {
                row[n + j] = -(sign.clone() * cj.clone());
            }
        }
        row[width] = sign.clone() * r.rhs.clone();
        let slack = (r.rel == Relation::Le).then(|| {
            row[s] = sign.clone();
            s += 1;
            s - 1
        });
        if art {
            row[a] = T::one();
            tab.basis.push(a);
            a += 1;
        } else {
            tab.basis.push(slack.expect("inequality row has a slack"));
        }
        tab.rows.push(row);
    }

    if n_art > 0 {
        let mut c1 = vec![T::zero(); width];
        for v in &mut c1[art0..] {
            *v = -T::one();
        }
        tab.set_objective(&c1);
        tab.run(width)?;
        let value = tab.obj[width].clone();
        let tol = T::eps() * T::from_f64(100.0);
        if value > tol {
            return Ok(LpOutcome::Infeasible);
        }
        // Drive remaining artificials out of the basis where possible.
        for i in 0..m {
            if tab.basis[i] < art0 {
                continue;
            }
            if let Some(col) = (0..art0).find(|&j| !tab.rows[i][j].is_zero_tol()) {
                tab.pivot(i, col);
            }
        }
    }

    let mut c2 = vec![T::zero(); width];
    c2[..n].clone_from_slice(c);
    for j in 0..nm {
        c2[n + j] = -c[j].clone();
    }
    tab.set_objective(&c2);
    let signed = |v: &[T], j: usize| if free { v[j].clone() - v[n + j].clone() } else { v[j].clone() };
    match tab.run(art0)? {
        Step::Unbounded(dir) => {
            let ray = (0..n).map(|j| signed(&dir, j)).collect();
            Ok(LpOutcome::Unbounded { ray })
        }
        Step::Done => {
            let mut full = vec![T::zero(); width];
            for (i, &b) in tab.basis.iter().enumerate() {
                full[b] = tab.rows[i][width].clone();
            }
            let x: Vec<T> = (0..n).map(|j| signed(&full, j)).collect();
            let value = c
                .iter()
                .zip(&x)
                .fold(T::zero(), |acc, (cj, xj)| acc + cj.clone() * xj.clone());
            Ok(LpOutcome::Optimal { value, x })
        }
    }
}

pub fn is_feasible<T: Scalar>(n: usize, rows: &[Row<T>]) -> Result<bool> {
    let c = vec![T::zero(); n];
    Ok(!matches!(maximize(&c, rows)?, LpOutcome::Infeasible))
}
