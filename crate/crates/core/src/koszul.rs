//! Koszul complex of `(M_{z₁} − λ₁, M_{z₂} − λ₂)` on graded polynomial windows, and
//! Gleason's problem.
//!
//! The stages are `W₀ = P(N₁−1, N₂−1)`, `W₁ = P(N₁−1, N₂) ⊕ P(N₁, N₂−1)` and
//! `W₂ = P(N₁, N₂)`, where `P(a, b)` is the span of monomials of bidegree `≤ (a, b)`.
//! With these caps multiplication by `z_j − λ_j` never leaves the next stage, so the
//! finite complex
//!
//! ```text
//! 0 → W₀ --B₂--> W₁ --B₁--> W₂ → 0,   B₂h = ((z₂−λ₂)h, −(z₁−λ₁)h),   B₁(h₁, h₂) = (z₁−λ₁)h₁ + (z₂−λ₂)h₂
//! ```
//!
//! is exact linear algebra. Ranks are measured after a Cholesky congruence with each
//! stage's Gram matrix, so singular values are those of the maps between the
//! `D(μ₁, μ₂)`-normed spaces.

use num_complex::Complex64;

use crate::bipoly::{Axis, BiPoly};
use crate::error::{Error, Result};
use crate::gram::{GramMatrix, MonomialBasis, gram_matrix};
use crate::linalg::{self, CMat, CVec, czero};
use crate::measure::CircleMeasure;

pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// Matrix of `h ↦ (z_axis − λ) h` from `from` into the larger basis `to`.
pub fn linear_factor_matrix(from: MonomialBasis, to: MonomialBasis, axis: Axis, lambda: Complex64) -> CMat {
    let mut out = CMat::from_element(to.len(), from.len(), czero());
    for (i, (m, n)) in from.pairs().enumerate() {
        let (p, q) = match axis {
            Axis::Z1 => (m + 1, n),
            Axis::Z2 => (m, n + 1),
        };
        assert!(to.contains(p, q), "({p}, {q}) does not fit the target basis");
        out[(to.index(p, q), i)] += Complex64::new(1.0, 0.0);
        out[(to.index(m, n), i)] -= lambda;
    }
    out
}

#[derive(Debug, Clone)]
pub struct KoszulStage {
    pub lambda: (Complex64, Complex64),
    pub w0: MonomialBasis,
    pub w1a: MonomialBasis,
    pub w1b: MonomialBasis,
    pub w2: MonomialBasis,
    /// `W₀ → W₁`.
    pub b2: CMat,
    /// `W₁ → W₂`.
    pub b1: CMat,
    metric0: CMat,
    metric1: CMat,
    metric2: CMat,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cohomology {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    pub rank_b2: usize,
    pub rank_b1: usize,
    /// Smallest singular value counted as nonzero, over both maps.
    pub sigma_min_used: f64,
    /// Largest singular value treated as zero, over both maps (0 if none).
    pub sigma_max_dropped: f64,
}

impl Cohomology {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.h0, self.h1, self.h2)
    }

    /// Euler characteristic `h₀ − h₁ + h₂`.
    pub fn index(&self) -> i64 {
        self.h0 as i64 - self.h1 as i64 + self.h2 as i64
    }
}

/// Assembles the graded Koszul complex at `λ` for `D(μ₁, μ₂)`.
pub fn koszul_build(
    mu1: &CircleMeasure,
    mu2: &CircleMeasure,
    n1: usize,
    n2: usize,
    lambda: (Complex64, Complex64),
) -> Result<KoszulStage> {
    if n1 < 2 || n2 < 2 {
        return Err(Error::BasisTooSmall { need1: 2, need2: 2, have1: n1, have2: n2 });
    }
    let w0 = MonomialBasis::new(n1 - 1, n2 - 1);
    let w1a = MonomialBasis::new(n1 - 1, n2);
    let w1b = MonomialBasis::new(n1, n2 - 1);
    let w2 = MonomialBasis::new(n1, n2);

    let mut b2 = CMat::from_element(w1a.len() + w1b.len(), w0.len(), czero());
    b2.rows_mut(0, w1a.len()).copy_from(&linear_factor_matrix(w0, w1a, Axis::Z2, lambda.1));
    b2.rows_mut(w1a.len(), w1b.len())
        .copy_from(&(-linear_factor_matrix(w0, w1b, Axis::Z1, lambda.0)));

    let mut b1 = CMat::from_element(w2.len(), w1a.len() + w1b.len(), czero());
    b1.columns_mut(0, w1a.len()).copy_from(&linear_factor_matrix(w1a, w2, Axis::Z1, lambda.0));
    b1.columns_mut(w1a.len(), w1b.len()).copy_from(&linear_factor_matrix(w1b, w2, Axis::Z2, lambda.1));

    let composite = linalg::max_abs(&(&b1 * &b2));
    if composite > 1e-14 {
        return Err(Error::Solver(format!("B₁B₂ ≠ 0 (max entry {composite:e})")));
    }

    let metric = |b: MonomialBasis| gram_matrix(mu1, mu2, b).map(|g| g.metric());
    let g1a = metric(w1a)?;
    let g1b = metric(w1b)?;
    Ok(KoszulStage {
        lambda,
        w0,
        w1a,
        w1b,
        w2,
        b2,
        b1,
        metric0: metric(w0)?,
        metric1: linalg::block_diag(&[&g1a, &g1b]),
        metric2: metric(w2)?,
    })
}

struct RankInfo {
    rank: usize,
    smallest_kept: f64,
    largest_dropped: f64,
}

fn guarded_rank(sv: &[f64], rank_tol: f64) -> Result<RankInfo> {
    let sigma_max = sv.first().copied().unwrap_or(0.0);
    let threshold = rank_tol * sigma_max;
    for &s in sv {
        if s > threshold / 10.0 && s < threshold * 10.0 {
            return Err(Error::RankAmbiguous { sigma: s, threshold });
        }
    }
    let rank = sv.iter().filter(|&&s| s > threshold).count();
    Ok(RankInfo {
        rank,
        smallest_kept: sv.get(rank.wrapping_sub(1)).copied().unwrap_or(f64::INFINITY),
        largest_dropped: sv.get(rank).copied().unwrap_or(0.0),
    })
}

/// `Lₜᴴ B Lₛ^{-H}` where `metric = L Lᴴ`: the map between the weighted spaces written
/// in orthonormal coordinates.
fn weighted(b: &CMat, source_metric: &CMat, target_metric: &CMat) -> Result<CMat> {
    let ls = linalg::cholesky_lower(source_metric)?;
    let lt = linalg::cholesky_lower(target_metric)?;
    let right = linalg::right_solve_lower_adjoint(b, &ls)?;
    Ok(lt.adjoint() * right)
}

impl KoszulStage {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.w0.len(), self.w1a.len() + self.w1b.len(), self.w2.len())
    }

    /// `(h₀, h₁, h₂) = (dim ker B₂, dim ker B₁ − rank B₂, dim W₂ − rank B₁)`, with
    /// numerical ranks relative to `rank_tol · σ_max` in the Gram-weighted metric.
    pub fn cohomology_dims(&self, rank_tol: f64) -> Result<Cohomology> {
        let (d0, d1, d2) = self.dims();
        let wb2 = weighted(&self.b2, &self.metric0, &self.metric1)?;
        let wb1 = weighted(&self.b1, &self.metric1, &self.metric2)?;
        let r2 = guarded_rank(&linalg::singular_values(&wb2), rank_tol)?;
        let r1 = guarded_rank(&linalg::singular_values(&wb1), rank_tol)?;
        let ker_b1 = d1 - r1.rank;
        if ker_b1 < r2.rank {
            return Err(Error::Solver("rank B₂ exceeds dim ker B₁; complex is not exact".into()));
        }
        Ok(Cohomology {
            h0: d0 - r2.rank,
            h1: ker_b1 - r2.rank,
            h2: d2 - r1.rank,
            rank_b2: r2.rank,
            rank_b1: r1.rank,
            sigma_min_used: r2.smallest_kept.min(r1.smallest_kept),
            sigma_max_dropped: r2.largest_dropped.max(r1.largest_dropped),
        })
    }

    pub fn fredholm_index(&self, rank_tol: f64) -> Result<i64> {
        Ok(self.cohomology_dims(rank_tol)?.index())
    }

    /// Coefficient vector in `W₁` of the pair `(h₁, h₂)`.
    pub fn w1_vector(&self, h1: &BiPoly, h2: &BiPoly) -> Result<CVec> {
        let a = self.w1a.coefficients(h1)?;
        let b = self.w1b.coefficients(h2)?;
        Ok(CVec::from_iterator(a.len() + b.len(), a.iter().chain(b.iter()).copied()))
    }

    /// Least-squares `k` with `B₂ k ≈ w`, and the residual `‖B₂ k − w‖`.
    pub fn preimage(&self, w: &CVec) -> Result<(BiPoly, f64)> {
        let svd = self.b2.clone().svd(true, true);
        let eps = 1e-12 * svd.singular_values.max();
        let k = svd.solve(w, eps).map_err(|e| Error::Solver(e.to_string()))?;
        let residual = (&self.b2 * &k - w).norm();
        Ok((self.w0.to_poly(&k), residual))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GleasonMode {
    /// Divide first in `z₁`, then the remaining slice in `z₂`.
    SuccessiveDivision,
    /// Minimize `‖g₁‖² + ‖g₂‖²` in the Gram norm subject to the exact constraint.
    MinNorm,
}

#[derive(Debug, Clone)]
pub struct GleasonSolution {
    pub g1: BiPoly,
    pub g2: BiPoly,
    /// Gram norm of `f − f(λ) − (z₁−λ₁)g₁ − (z₂−λ₂)g₂`.
    pub residual: f64,
    /// `‖g₁‖²_G + ‖g₂‖²_G`.
    pub objective: f64,
}

/// Solves `f − f(λ) = (z₁ − λ₁) g₁ + (z₂ − λ₂) g₂` with `g₁, g₂` in the basis of `g`.
pub fn gleason_solve(g: &GramMatrix, f: &BiPoly, lambda: (Complex64, Complex64), mode: GleasonMode) -> Result<GleasonSolution> {
    if !(lambda.0.norm() < 1.0 && lambda.1.norm() < 1.0) {
        return Err(Error::Domain(format!("Gleason point must lie in the open bidisc, got {lambda:?}")));
    }
    let basis = g.basis();
    basis.coefficients(f)?;
    let enlarged = MonomialBasis::new(basis.n1 + 1, basis.n2 + 1);
    let f_lambda = f.eval(lambda.0, lambda.1);
    let target = f - &BiPoly::constant(f_lambda);

    let (g1, g2) = match mode {
        GleasonMode::SuccessiveDivision => {
            let (g1, g2) = f.gleason_split(lambda);
            (g1.embed(basis.n1, basis.n2)?, g2.embed(basis.n1, basis.n2)?)
        }
        GleasonMode::MinNorm => {
            let n = basis.len();
            let mut c = CMat::from_element(enlarged.len(), 2 * n, czero());
            c.columns_mut(0, n).copy_from(&linear_factor_matrix(basis, enlarged, Axis::Z1, lambda.0));
            c.columns_mut(n, n).copy_from(&linear_factor_matrix(basis, enlarged, Axis::Z2, lambda.1));
            let d = enlarged.coefficients(&target)?;
            let metric = g.metric();
            let l = linalg::cholesky_lower(&linalg::block_diag(&[&metric, &metric]))?;
            // x = L^{-H} y turns the objective into ‖y‖²; take the minimum-norm y.
            let a = linalg::right_solve_lower_adjoint(&c, &l)?;
            let svd = a.svd(true, true);
            let eps = 1e-12 * svd.singular_values.max();
            let y = svd.solve(&d, eps).map_err(|e| Error::Solver(e.to_string()))?;
            let x = l
                .adjoint()
                .solve_upper_triangular(&y)
                .ok_or_else(|| Error::Solver("singular Cholesky factor".into()))?;
            let x1 = CVec::from_iterator(n, x.rows(0, n).iter().copied());
            let x2 = CVec::from_iterator(n, x.rows(n, n).iter().copied());
            (basis.to_poly(&x1), basis.to_poly(&x2))
        }
    };

    let violation = &(&target - &g1.mul_linear(Axis::Z1, lambda.0)) - &g2.mul_linear(Axis::Z2, lambda.1);
    let big = g.with_basis(enlarged)?;
    let residual = big.norm_sq(&violation)?.max(0.0).sqrt();
    let objective = g.norm_sq(&g1)? + g.norm_sq(&g2)?;
    Ok(GleasonSolution { g1, g2, residual, objective })
}
