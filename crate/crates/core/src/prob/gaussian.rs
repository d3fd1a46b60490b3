use nalgebra::{DMatrix, SymmetricEigen};

use super::{clamp_round_off, LogBase};
use crate::error::{Error, Result};

const SYMMETRY_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;
const JITTER: f64 = 1e-12;

/// Zero-mean jointly Gaussian vector described by its covariance.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceModel {
    names: Vec<String>,
    cov: DMatrix<f64>,
}

impl CovarianceModel {
    /// Symmetrises `cov` and clamps eigenvalues in `[-1e-10, 0)` to zero;
    /// anything more indefinite is rejected.
    pub fn new(names: Vec<String>, cov: DMatrix<f64>) -> Result<Self> {
        let n = names.len();
        if cov.nrows() != n || cov.ncols() != n {
            return Err(Error::input(format!(
                "covariance is {}x{} but {} names were given",
                cov.nrows(),
                cov.ncols(),
                n
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::input(format!("duplicate variable name {name:?}")));
            }
        }
        if cov.iter().any(|x| !x.is_finite()) {
            return Err(Error::input("covariance has non-finite entries"));
        }
        let asym = (&cov - cov.transpose()).abs().max();
        if asym > SYMMETRY_TOL {
            return Err(Error::validation(
                "symmetry",
                format!("covariance asymmetric by {asym:e}"),
            ));
        }
        let sym = (&cov + cov.transpose()) * 0.5;
        let eig = SymmetricEigen::new(sym.clone());
        let min = eig.eigenvalues.min();
        let cov = if min >= 0.0 {
            sym
        } else if min >= -PSD_TOL {
            let clamped = eig.eigenvalues.map(|l| l.max(0.0));
            let v = &eig.eigenvectors;
            let rebuilt = v * DMatrix::from_diagonal(&clamped) * v.transpose();
            (&rebuilt + rebuilt.transpose()) * 0.5
        } else {
            return Err(Error::validation(
                "positive semidefinite",
                format!("covariance has eigenvalue {min:e}"),
            ));
        };
        Ok(CovarianceModel { names, cov })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.cov
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::input(format!("unknown Gaussian variable {name:?}")))
    }

    pub fn covariance(&self, a: &str, b: &str) -> Result<f64> {
        Ok(self.cov[(self.index_of(a)?, self.index_of(b)?)])
    }

    fn indices(&self, names: &[&str]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.index_of(n)).collect()
    }
}

/// I(a; b | c) in bits, via Schur complements of the covariance.
pub fn gaussian_mutual_information(
    model: &CovarianceModel,
    a: &[&str],
    b: &[&str],
    c: &[&str],
) -> Result<f64> {
    gaussian_mutual_information_in(model, a, b, c, LogBase::Bits)
}

pub fn gaussian_mutual_information_in(
    model: &CovarianceModel,
    a: &[&str],
    b: &[&str],
    c: &[&str],
    base: LogBase,
) -> Result<f64> {
    let ia = model.indices(a)?;
    let ib = model.indices(b)?;
    let ic = model.indices(c)?;
    let mut all: Vec<usize> = ia.iter().chain(&ib).chain(&ic).copied().collect();
    all.sort_unstable();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::input("Gaussian mutual information sets must be disjoint"));
    }
    if ia.is_empty() || ib.is_empty() {
        return Ok(0.0);
    }
    let x: Vec<usize> = ia.iter().chain(&ib).copied().collect();
    let cond = conditional_covariance(model, &x, &ic)?;
    let na = ia.len();
    let nx = x.len();
    let ld_a = log_det(&cond.view((0, 0), (na, na)).into_owned(), model)?;
    let ld_b = log_det(&cond.view((na, na), (nx - na, nx - na)).into_owned(), model)?;
    let ld_ab = log_det(&cond, model)?;
    let nats = 0.5 * (ld_a + ld_b - ld_ab);
    Ok(clamp_round_off(base.from_nats(nats), 1e-9))
}

/// Σ_xx − Σ_xc Σ_cc⁻¹ Σ_cx, with the diagonal jitter applied first.
fn conditional_covariance(model: &CovarianceModel, x: &[usize], c: &[usize]) -> Result<DMatrix<f64>> {
    let sub = |rows: &[usize], cols: &[usize]| {
        DMatrix::from_fn(rows.len(), cols.len(), |i, j| {
            let v = model.cov[(rows[i], cols[j])];
            if rows[i] == cols[j] {
                v + JITTER
            } else {
                v
            }
        })
    };
    let sxx = sub(x, x);
    if c.is_empty() {
        return Ok(sxx);
    }
    let scc = sub(c, c);
    let sxc = sub(x, c);
    let chol = scc
        .clone()
        .cholesky()
        .ok_or_else(|| singular(&scc, model))?;
    let solved = chol.solve(&sxc.transpose());
    let out = sxx - &sxc * solved;
    Ok((&out + out.transpose()) * 0.5)
}

fn log_det(m: &DMatrix<f64>, model: &CovarianceModel) -> Result<f64> {
    let chol = m.clone().cholesky().ok_or_else(|| singular(m, model))?;
    Ok(2.0 * chol.l_dirty().diagonal().iter().map(|d| d.ln()).sum::<f64>())
}

fn singular(m: &DMatrix<f64>, model: &CovarianceModel) -> Error {
    let eig = SymmetricEigen::new(m.clone());
    let (lo, hi) = (eig.eigenvalues.min(), eig.eigenvalues.max());
    Error::Numerical(format!(
        "conditional covariance ({}x{}) over model [{}] is singular beyond jitter: \
         eigenvalues in [{lo:e}, {hi:e}], condition number {:e}",
        m.nrows(),
        m.ncols(),
        model.names.join(","),
        hi / lo.abs().max(f64::MIN_POSITIVE)
    ))
}
