use super::scalar::Scalar;
use super::simplex::{is_feasible, maximize, LpOutcome};
use super::system::{LinearSystem, Relation, Row};
use crate::error::{Error, Result};
use crate::par::{self, Exec};

/// Row count above which `project` prunes redundant rows between eliminations.
const PRUNE_THRESHOLD: usize = 64;

fn combine<T: Scalar>(pos: &Row<T>, neg: &Row<T>, k: usize) -> Row<T> {
    let (lp, ln) = (pos.coeffs[k].clone(), -neg.coeffs[k].clone());
    let coeffs = pos
        .coeffs
        .iter()
        .zip(&neg.coeffs)
        .enumerate()
        .filter(|(j, _)| *j != k)
        .map(|(_, (p, n))| ln.clone() * p.clone() + lp.clone() * n.clone())
        .collect();
    let rhs = ln * pos.rhs.clone() + lp * neg.rhs.clone();
    Row::le(coeffs, rhs).normalized()
}

fn drop_column<T: Scalar>(row: &Row<T>, k: usize) -> Row<T> {
    let mut coeffs = row.coeffs.clone();
    coeffs.remove(k);
    Row { coeffs, rel: row.rel, rhs: row.rhs.clone() }
}

fn is_tautology<T: Scalar>(row: &Row<T>) -> bool {
    row.is_trivial() && row.rel == Relation::Le && !row.rhs.is_neg()
}

fn sign_counts<T: Scalar>(rows: &[Row<T>], k: usize) -> (usize, usize) {
    rows.iter().fold((0, 0), |(p, n), r| {
        let c = &r.coeffs[k];
        (p + c.is_pos() as usize, n + c.is_neg() as usize)
    })
}

/// Eliminates `victim` by Fourier–Motzkin combination.
///
/// Rows free of the victim are kept (equalities stay equalities); the rest are
/// expanded to inequalities and every positive/negative pair is combined.
/// All-zero rows that hold trivially are dropped, contradictions are kept.
pub fn fme_eliminate<T: Scalar>(sys: &LinearSystem<T>, victim: &str) -> Result<LinearSystem<T>> {
    fme_eliminate_with(sys, victim, Exec::Auto)
}

pub fn fme_eliminate_with<T: Scalar>(sys: &LinearSystem<T>, victim: &str, exec: Exec) -> Result<LinearSystem<T>> {
    let k = sys.var_index(victim)?;
    let mut out = Vec::new();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for row in sys.rows() {
        if row.coeffs[k].is_zero_tol() {
            out.push(drop_column(row, k));
            continue;
        }
        let le = LinearSystem::from_rows(sys.vars().to_vec(), vec![row.clone()]).expanded();
        for r in le {
            if r.coeffs[k].is_pos() {
                pos.push(r);
            } else {
                neg.push(r);
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (0..pos.len()).flat_map(|i| (0..neg.len()).map(move |j| (i, j))).collect();
    out.extend(par::map_slice(exec, &pairs, |&(i, j)| combine(&pos[i], &neg[j], k)));
    out.retain(|r| !is_tautology(r));

    let mut vars = sys.vars().to_vec();
    vars.remove(k);
    Ok(LinearSystem::from_rows(vars, out))
}

/// Drops rows implied by the others, keeping equalities.
///
/// A row `a·x <= b` is removed when the LP maximum of `a·x` over the remaining
/// rows is at most `b + tol`.
pub fn remove_redundant<T: Scalar>(sys: &LinearSystem<T>, tol: &T) -> Result<LinearSystem<T>> {
    let n = sys.vars().len();
    let mut rows: Vec<Row<T>> = sys.rows().iter().filter(|r| !is_tautology(r)).cloned().collect();
    if !is_feasible(n, &rows)? {
        return Err(Error::Infeasible);
    }
    let mut i = 0;
    while i < rows.len() {
        if rows[i].rel == Relation::Eq {
            i += 1;
            continue;
        }
        let target = rows[i].clone();
        let others: Vec<Row<T>> = rows
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, r)| r.clone())
            .collect();
        let redundant = match maximize(&target.coeffs, &others)? {
            LpOutcome::Optimal { value, .. } => value <= target.rhs.clone() + tol.clone(),
            LpOutcome::Unbounded { .. } => false,
            LpOutcome::Infeasible => return Err(Error::Infeasible),
        };
        if redundant {
            rows.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(LinearSystem::from_rows(sys.vars().to_vec(), rows))
}

/// Removes duplicate inequality rows after normalization, keeping the
/// tightest right-hand side for each direction.
fn dedup_parallel<T: Scalar>(sys: &LinearSystem<T>) -> LinearSystem<T> {
    let mut out: Vec<Row<T>> = Vec::new();
    for row in sys.rows() {
        let row = if row.rel == Relation::Le { row.normalized() } else { row.clone() };
        let same = out.iter_mut().find(|r| {
            r.rel == Relation::Le
                && row.rel == Relation::Le
                && r.coeffs.iter().zip(&row.coeffs).all(|(a, b)| (a.clone() - b.clone()).is_zero_tol())
        });
        match same {
            Some(r) if row.rhs < r.rhs => r.rhs = row.rhs,
            Some(_) => {}
            None => out.push(row),
        }
    }
    LinearSystem::from_rows(sys.vars().to_vec(), out)
}

/// Projects onto the variables in `keep` (order as in `sys`).
///
/// Eliminates the remaining variables one at a time, always picking the one
/// with the fewest positive×negative pairs (declaration order breaks ties),
/// then removes redundant rows.
pub fn project<T: Scalar>(sys: &LinearSystem<T>, keep: &[&str]) -> Result<LinearSystem<T>> {
    project_with(sys, keep, Exec::Auto)
}

pub fn project_with<T: Scalar>(sys: &LinearSystem<T>, keep: &[&str], exec: Exec) -> Result<LinearSystem<T>> {
    for k in keep {
        sys.var_index(k)?;
    }
    let tol = T::eps() * T::from_f64(100.0);
    let mut cur = dedup_parallel(sys);
    loop {
        let expanded = cur.expanded();
        let victim = cur
            .vars()
            .iter()
            .enumerate()
            .filter(|(_, v)| !keep.contains(&v.as_str()))
            .map(|(k, v)| {
                let (p, n) = sign_counts(&expanded, k);
                (p * n, v.clone())
            })
            .min_by_key(|(cost, _)| *cost);
        let Some((_, victim)) = victim else { break };
        cur = dedup_parallel(&fme_eliminate_with(&cur, &victim, exec)?);
        if cur.rows().len() > PRUNE_THRESHOLD {
            cur = remove_redundant(&cur, &tol)?;
        }
    }
    remove_redundant(&cur, &tol)
}
