//! Gram matrices of monomials in `D(μ₁, μ₂)`, assembled from circle moments.
//!
//! Convention: `G[i][k] = ⟨e_i, e_k⟩` where `e_i` is the `i`-th basis monomial, and the
//! inner product is linear in the first slot. For coefficient vectors `a`, `b`,
//! `⟨f, g⟩ = Σ a_i conj(b_k) G[i][k] = bᴴ Gᵀ a`.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, CVec, czero};
use crate::measure::{CircleMeasure, MomentSequence};
use crate::report::fmt_f64;

/// Rectangular monomial family `z₁^m z₂^n`, `0 ≤ m ≤ N₁`, `0 ≤ n ≤ N₂`, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonomialBasis {
    pub n1: usize,
    pub n2: usize,
}

impl MonomialBasis {
    pub fn new(n1: usize, n2: usize) -> Self {
        Self { n1, n2 }
    }

    pub fn len(&self) -> usize {
        (self.n1 + 1) * (self.n2 + 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index(&self, m: usize, n: usize) -> usize {
        debug_assert!(m <= self.n1 && n <= self.n2);
        m * (self.n2 + 1) + n
    }

    pub fn pair(&self, i: usize) -> (usize, usize) {
        (i / (self.n2 + 1), i % (self.n2 + 1))
    }

    pub fn contains(&self, m: usize, n: usize) -> bool {
        m <= self.n1 && n <= self.n2
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).map(|i| self.pair(i))
    }

    /// Coefficient vector of `f` in this basis.
    pub fn coefficients(&self, f: &BiPoly) -> Result<CVec> {
        let (b1, b2) = f.bidegree();
        if b1 > self.n1 || b2 > self.n2 {
            return Err(Error::BasisTooSmall { need1: b1, need2: b2, have1: self.n1, have2: self.n2 });
        }
        Ok(CVec::from_iterator(self.len(), self.pairs().map(|(m, n)| f.coeff(m, n))))
    }

    pub fn to_poly(&self, v: &CVec) -> BiPoly {
        BiPoly::from_fn(self.n1, self.n2, |m, n| v[self.index(m, n)])
    }
}

/// `⟨z₁^m z₂^n, z₁^p z₂^q⟩` in `D(μ₁, μ₂)`.
pub fn gram_entry(mu1: &CircleMeasure, mu2: &CircleMeasure, (m, n): (usize, usize), (p, q): (usize, usize)) -> Complex64 {
    gram_entry_with(&|j| mu1.moment(j), &|j| mu2.moment(j), (m, n), (p, q))
}

fn gram_entry_with(
    mom1: &dyn Fn(i64) -> Complex64,
    mom2: &dyn Fn(i64) -> Complex64,
    (m, n): (usize, usize),
    (p, q): (usize, usize),
) -> Complex64 {
    match (m == p, n == q) {
        (false, false) => czero(),
        (true, false) => {
            let k = n.min(q);
            // exact zero (not 0·μ̂) keeps structural zeros bitwise clean
            if k == 0 { czero() } else { mom2(q as i64 - n as i64) * k as f64 }
        }
        (false, true) => {
            let k = m.min(p);
            if k == 0 { czero() } else { mom1(p as i64 - m as i64) * k as f64 }
        }
        (true, true) => {
            let mut d = Complex64::new(1.0, 0.0);
            if m > 0 {
                d += mom1(0) * m as f64;
            }
            if n > 0 {
                d += mom2(0) * n as f64;
            }
            d
        }
    }
}

#[derive(Debug, Clone)]
pub struct GramMatrix {
    basis: MonomialBasis,
    entries: CMat,
    measures: Option<(CircleMeasure, CircleMeasure)>,
}

fn moment_table(mu: &CircleMeasure, big_n: usize) -> Vec<Complex64> {
    let big_n = big_n as i64;
    (-big_n..=big_n).map(|j| mu.moment(j)).collect()
}

/// Assembles the Gram matrix of `basis` in `D(μ₁, μ₂)` and checks it is Hermitian
/// positive definite.
pub fn gram_matrix(mu1: &CircleMeasure, mu2: &CircleMeasure, basis: MonomialBasis) -> Result<GramMatrix> {
    let t1 = moment_table(mu1, basis.n1);
    let t2 = moment_table(mu2, basis.n2);
    let (o1, o2) = (basis.n1 as i64, basis.n2 as i64);
    let mom1 = |j: i64| t1[(j + o1) as usize];
    let mom2 = |j: i64| t2[(j + o2) as usize];
    let len = basis.len();
    let entries = DMatrix::from_fn(len, len, |i, k| gram_entry_with(&mom1, &mom2, basis.pair(i), basis.pair(k)));
    let g = GramMatrix::from_entries(basis, entries)?;
    Ok(GramMatrix { measures: Some((mu1.clone(), mu2.clone())), ..g })
}

impl GramMatrix {
    /// Wraps raw entries after checking Hermitian symmetry and positive definiteness.
    pub fn from_entries(basis: MonomialBasis, entries: CMat) -> Result<Self> {
        if entries.nrows() != basis.len() || entries.ncols() != basis.len() {
            return Err(Error::Input(format!(
                "Gram entries are {}×{}, basis needs {}",
                entries.nrows(),
                entries.ncols(),
                basis.len()
            )));
        }
        let asym = linalg::max_asymmetry(&entries);
        if asym > 1e-12 * (1.0 + linalg::max_abs(&entries)) {
            return Err(Error::NotHermitian(asym));
        }
        linalg::cholesky_lower(&entries)?;
        Ok(Self { basis, entries, measures: None })
    }

    pub fn basis(&self) -> MonomialBasis {
        self.basis
    }

    pub fn entries(&self) -> &CMat {
        &self.entries
    }

    pub fn measures(&self) -> Option<(&CircleMeasure, &CircleMeasure)> {
        self.measures.as_ref().map(|(a, b)| (a, b))
    }

    pub fn entry(&self, (m, n): (usize, usize), (p, q): (usize, usize)) -> Complex64 {
        self.entries[(self.basis.index(m, n), self.basis.index(p, q))]
    }

    /// `Gᵀ`, the Hermitian matrix `M` with `⟨x, y⟩ = yᴴ M x`.
    pub fn metric(&self) -> CMat {
        self.entries.transpose()
    }

    /// Spectral norm (largest eigenvalue).
    pub fn norm(&self) -> f64 {
        linalg::max_hermitian_eigenvalue(&self.entries)
    }

    /// Smallest eigenvalue of `G − I`; nonnegative when the space norm dominates the Hardy norm.
    pub fn hardy_excess_min_eig(&self) -> f64 {
        let n = self.entries.nrows();
        linalg::min_hermitian_eigenvalue(&(&self.entries - CMat::identity(n, n)))
    }

    /// Gram matrix of a larger (or smaller) rectangular basis for the same measures.
    pub fn with_basis(&self, basis: MonomialBasis) -> Result<GramMatrix> {
        let (mu1, mu2) = self
            .measures()
            .ok_or_else(|| Error::Input("Gram matrix has no measure provenance".into()))?;
        gram_matrix(mu1, mu2, basis)
    }

    /// Sesquilinear form on coefficient vectors.
    pub fn form(&self, a: &CVec, b: &CVec) -> Complex64 {
        let gb = &self.entries * b.map(|z| z.conj());
        a.dot(&gb)
    }

    pub fn inner_product(&self, f: &BiPoly, g: &BiPoly) -> Result<Complex64> {
        let a = self.basis.coefficients(f)?;
        let b = self.basis.coefficients(g)?;
        Ok(self.form(&a, &b))
    }

    pub fn norm_sq(&self, f: &BiPoly) -> Result<f64> {
        let a = self.basis.coefficients(f)?;
        Ok(self.form(&a, &a).re)
    }

    /// Coefficients `c` of the truncated kernel `κ_w = Σ c_β z^β`, defined by
    /// `⟨z^α, κ_w⟩ = w^α` for every basis monomial `α`.
    pub fn kernel_coeffs(&self, w: (Complex64, Complex64)) -> Result<CVec> {
        if !(w.0.norm() < 1.0 && w.1.norm() < 1.0) {
            return Err(Error::Domain(format!("kernel point must lie in the open bidisc, got {w:?}")));
        }
        let rhs = CVec::from_iterator(
            self.basis.len(),
            self.basis.pairs().map(|(m, n)| w.0.powu(m as u32) * w.1.powu(n as u32)),
        );
        // (G conj(c))_α = w^α
        let conj_c = linalg::hpd_solve(&self.entries, &rhs)?;
        Ok(conj_c.map(|z| z.conj()))
    }

    /// Reads the circle moments back off the Gram entries.
    ///
    /// `μ̂₁(d)` for `1 ≤ d ≤ N₁−1` is averaged over `G[(m,n)][(m+d,n)] / m`, and `μ̂₁(0)`
    /// over `(G[(m,0)][(m,0)] − 1) / m`; symmetrically for `μ₂`. The consistency residual
    /// is the largest deviation of an individual estimate from its average.
    pub fn recover_moments(&self) -> Result<RecoveredMoments> {
        let b = self.basis;
        if b.n1 < 2 || b.n2 < 2 {
            return Err(Error::BasisTooSmall { need1: 2, need2: 2, have1: b.n1, have2: b.n2 });
        }
        let mut residual = 0.0f64;
        let mut recover = |axis_len: usize, other_len: usize, entry: &dyn Fn(usize, usize, usize) -> Complex64| {
            let mut values = Vec::with_capacity(axis_len);
            let mut diag = Vec::new();
            for m in 1..=axis_len {
                diag.push((entry(m, 0, m) - 1.0) / m as f64);
            }
            values.push(average(&diag, &mut residual));
            for d in 1..axis_len {
                let mut est = Vec::new();
                for m in 1..=(axis_len - d) {
                    for n in 0..=other_len {
                        est.push(entry(m, n, m + d) / m as f64);
                    }
                }
                values.push(average(&est, &mut residual));
            }
            values
        };
        let v1 = recover(b.n1, b.n2, &|m, n, p| self.entry((m, n), (p, n)));
        let v2 = recover(b.n2, b.n1, &|n, m, q| self.entry((m, n), (m, q)));
        Ok(RecoveredMoments {
            mu1: MomentSequence::new(v1)?,
            mu2: MomentSequence::new(v2)?,
            consistency_residual: residual,
        })
    }

    /// `{"basis":{"n1":..,"n2":..},"entries":[[re,im],…]}`, row-major.
    pub fn to_json(&self) -> String {
        let mut s = String::new();
        write!(s, "{{\"basis\":{{\"n1\":{},\"n2\":{}}},\"entries\":[", self.basis.n1, self.basis.n2).unwrap();
        let len = self.basis.len();
        for i in 0..len {
            for k in 0..len {
                let z = self.entries[(i, k)];
                if i + k > 0 {
                    s.push(',');
                }
                write!(s, "[{},{}]", fmt_f64(z.re), fmt_f64(z.im)).unwrap();
            }
        }
        s.push_str("]}");
        s
    }

    /// CSV rows `m,n,p,q,re,im` for the nonzero entries.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("m,n,p,q,re,im\n");
        for i in 0..self.basis.len() {
            for k in 0..self.basis.len() {
                let z = self.entries[(i, k)];
                if z != czero() {
                    let (m, n) = self.basis.pair(i);
                    let (p, q) = self.basis.pair(k);
                    writeln!(s, "{m},{n},{p},{q},{},{}", fmt_f64(z.re), fmt_f64(z.im)).unwrap();
                }
            }
        }
        s
    }
}

fn average(est: &[Complex64], residual: &mut f64) -> Complex64 {
    let mean = est.iter().sum::<Complex64>() / est.len() as f64;
    for e in est {
        *residual = residual.max((e - mean).norm());
    }
    mean
}

#[derive(Debug, Clone)]
pub struct RecoveredMoments {
    pub mu1: MomentSequence,
    pub mu2: MomentSequence,
    pub consistency_residual: f64,
}

/// `‖p‖² + k ∫_{T²}|p|² dμ₁ dθ + l ∫_{T²}|p|² dθ dμ₂`, the torus integrals expanded in moments.
pub fn richter_rhs(mu1: &CircleMeasure, mu2: &CircleMeasure, p: &BiPoly, k: usize, l: usize) -> Result<f64> {
    let (b1, b2) = p.bidegree();
    let g = gram_matrix(mu1, mu2, MonomialBasis::new(b1, b2))?;
    let base = g.norm_sq(p)?;
    Ok(base + k as f64 * torus_moment_sum(mu1, p, crate::Axis::Z1) + l as f64 * torus_moment_sum(mu2, p, crate::Axis::Z2))
}

/// `∫_{T²} |p|² dμ dθ` with `μ` acting on the given axis, expanded in the moments of `μ`.
pub fn torus_moment_sum(mu: &CircleMeasure, p: &BiPoly, axis: crate::Axis) -> f64 {
    let (b1, b2) = p.bidegree();
    let mut acc = czero();
    match axis {
        crate::Axis::Z1 => {
            for n in 0..=b2 {
                for m in 0..=b1 {
                    for pp in 0..=b1 {
                        acc += p.coeff(m, n) * p.coeff(pp, n).conj() * mu.moment(pp as i64 - m as i64);
                    }
                }
            }
        }
        crate::Axis::Z2 => {
            for m in 0..=b1 {
                for n in 0..=b2 {
                    for qq in 0..=b2 {
                        acc += p.coeff(m, n) * p.coeff(m, qq).conj() * mu.moment(qq as i64 - n as i64);
                    }
                }
            }
        }
    }
    acc.re
}
