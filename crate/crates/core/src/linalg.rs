// Small dense-matrix helpers shared across modules.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) type CMat = DMatrix<Complex64>;
pub(crate) type CVec = DVector<Complex64>;

pub(crate) fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

pub(crate) fn min_hermitian_eigenvalue(m: &CMat) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    let eig = nalgebra::SymmetricEigen::new(m.clone());
    eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

pub(crate) fn max_hermitian_eigenvalue(m: &CMat) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    let eig = nalgebra::SymmetricEigen::new(m.clone());
    eig.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

pub(crate) fn max_asymmetry(m: &CMat) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for k in i..m.ncols() {
            worst = worst.max((m[(i, k)] - m[(k, i)].conj()).norm());
        }
    }
    worst
}

/// Lower Cholesky factor `L` with `m = L Lᴴ`.
pub(crate) fn cholesky_lower(m: &CMat) -> Result<CMat> {
    Ok(checked_cholesky(m)?.l())
}

// The complex factorization takes complex square roots of the pivots, so an
// indefinite matrix still "succeeds" with an imaginary pivot; reject those here.
fn checked_cholesky(m: &CMat) -> Result<nalgebra::Cholesky<Complex64, nalgebra::Dyn>> {
    let chol = nalgebra::Cholesky::new(m.clone()).ok_or(Error::NotPositiveDefinite)?;
    let ok = chol.l_dirty().diagonal().iter().all(|d| d.re > 0.0 && d.im.abs() <= 1e-12 * d.re);
    if ok { Ok(chol) } else { Err(Error::NotPositiveDefinite) }
}

/// Solves `m x = b` for Hermitian positive-definite `m`.
pub(crate) fn hpd_solve(m: &CMat, b: &CVec) -> Result<CVec> {
    Ok(checked_cholesky(m)?.solve(b))
}

/// `X = B L^{-H}`, i.e. the solution of `X Lᴴ = B`.
pub(crate) fn right_solve_lower_adjoint(b: &CMat, l: &CMat) -> Result<CMat> {
    let bh = b.adjoint();
    let xh = l
        .solve_lower_triangular(&bh)
        .ok_or_else(|| Error::Solver("singular triangular factor".into()))?;
    Ok(xh.adjoint())
}

pub(crate) fn singular_values(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let svd = m.clone().svd(false, false);
    let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub(crate) fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Block-diagonal matrix with the given blocks.
pub(crate) fn block_diag(blocks: &[&CMat]) -> CMat {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMat::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        out.view_mut((off, off), (b.nrows(), b.ncols())).copy_from(*b);
        off += b.nrows();
    }
    out
}
