//! The coordinate multiplication pair `(M_{z₁}, M_{z₂})` on a truncated monomial basis.
//!
//! Truncation clips the top degree, so operator identities involving adjoints are only
//! claimed on *windows* `W(a, b) = {(m, n): m ≤ N₁−a, n ≤ N₂−b}` where no clipping
//! occurs. All adjoint identities are evaluated as Gram quadratic forms
//! `⟨X e_α, Y e_β⟩ = (Xᵀ G conj(Y))[α][β]`, never through `G⁻¹`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::bipoly::Axis;
use crate::error::{Error, Result};
use crate::gram::{GramMatrix, MonomialBasis, gram_matrix};
use crate::linalg::{self, CMat, CVec, czero};
use crate::measure::CircleMeasure;

#[derive(Debug, Clone)]
pub struct TruncatedPair {
    basis: MonomialBasis,
    a1: CMat,
    a2: CMat,
    gram: GramMatrix,
    gram_norm: f64,
}

/// Matrix of `z^α ↦ z^{α+shift}` on `basis`, with columns that leave the basis set to zero.
pub fn shift_matrix(basis: MonomialBasis, axis: Axis) -> CMat {
    let len = basis.len();
    let mut a = DMatrix::from_element(len, len, czero());
    for (i, (m, n)) in basis.pairs().enumerate() {
        let (p, q) = match axis {
            Axis::Z1 => (m + 1, n),
            Axis::Z2 => (m, n + 1),
        };
        if basis.contains(p, q) {
            a[(basis.index(p, q), i)] = Complex64::new(1.0, 0.0);
        }
    }
    a
}

/// `(Xᵀ G conj(Y))`, whose `(α, β)` entry is `⟨X e_α, Y e_β⟩`.
fn gram_form(g: &CMat, x: &CMat, y: &CMat) -> CMat {
    x.transpose() * g * y.map(|z| z.conj())
}

/// Builds the multiplication pair on the `(N₁, N₂)` monomial basis of `D(μ₁, μ₂)`.
pub fn build_pair(mu1: &CircleMeasure, mu2: &CircleMeasure, n1: usize, n2: usize) -> Result<TruncatedPair> {
    if n1 < 2 || n2 < 2 {
        return Err(Error::BasisTooSmall { need1: 2, need2: 2, have1: n1, have2: n2 });
    }
    TruncatedPair::from_gram(gram_matrix(mu1, mu2, MonomialBasis::new(n1, n2))?)
}

impl TruncatedPair {
    pub fn from_gram(gram: GramMatrix) -> Result<Self> {
        let basis = gram.basis();
        let a1 = shift_matrix(basis, Axis::Z1);
        let a2 = shift_matrix(basis, Axis::Z2);
        let comm = &a1 * &a2 - &a2 * &a1;
        if linalg::max_abs(&comm) != 0.0 {
            return Err(Error::Input("shift matrices do not commute".into()));
        }
        let gram_norm = gram.norm();
        Ok(Self { basis, a1, a2, gram, gram_norm })
    }

    pub fn basis(&self) -> MonomialBasis {
        self.basis
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    /// Spectral norm of the Gram matrix; the scale for residual tolerances.
    pub fn gram_norm(&self) -> f64 {
        self.gram_norm
    }

    pub fn shift(&self, axis: Axis) -> &CMat {
        match axis {
            Axis::Z1 => &self.a1,
            Axis::Z2 => &self.a2,
        }
    }

    /// Basis indices of `W(a, b)`.
    pub fn window(&self, a: usize, b: usize) -> Result<Vec<usize>> {
        let bs = self.basis;
        if a > bs.n1 || b > bs.n2 {
            return Err(Error::WindowEmpty(format!("W({a}, {b}) on basis ({}, {})", bs.n1, bs.n2)));
        }
        Ok(bs.pairs().enumerate().filter(|(_, (m, n))| *m + a <= bs.n1 && *n + b <= bs.n2).map(|(i, _)| i).collect())
    }

    fn form(&self, x: &CMat, y: &CMat) -> CMat {
        gram_form(self.gram.entries(), x, y)
    }

    /// `max |R(u, v)|` over basis vectors of `W(2, 2)` for
    /// `R = I − T_i*T_i − T_j*T_j + T_j*T_i*T_iT_j` as a Gram quadratic form.
    pub fn toral_residual(&self, i: Axis, j: Axis) -> Result<f64> {
        if self.basis.n1 < 2 || self.basis.n2 < 2 {
            return Err(Error::WindowEmpty("toral residual needs N₁, N₂ ≥ 2".into()));
        }
        let window = self.window(2, 2)?;
        let ti = self.shift(i);
        let tj = self.shift(j);
        let tij = ti * tj;
        let r = self.gram.entries() - self.form(ti, ti) - self.form(tj, tj) + self.form(&tij, &tij);
        Ok(max_on_window(&r, &window))
    }

    /// `max |⟨A₁ᵏA₂ˡu, A₁ᵏA₂ˡv⟩ − k⟨A₁u, A₁v⟩ − l⟨A₂u, A₂v⟩ + (k+l−1)⟨u, v⟩|` over `W(k, l)`.
    pub fn moment_identity_residual(&self, k: usize, l: usize) -> Result<f64> {
        let window = self.window(k, l)?;
        let n = self.basis.len();
        let mut power = CMat::identity(n, n);
        for _ in 0..k {
            power = &self.a1 * power;
        }
        for _ in 0..l {
            power = &self.a2 * power;
        }
        let g = self.gram.entries();
        let r = self.form(&power, &power) - self.form(&self.a1, &self.a1) * Complex64::new(k as f64, 0.0)
            - self.form(&self.a2, &self.a2) * Complex64::new(l as f64, 0.0)
            + g * Complex64::new(k as f64 + l as f64 - 1.0, 0.0);
        Ok(max_on_window(&r, &window))
    }

    /// `max |⟨z^α, z^β⟩|` over pairs with `α_i = 0 ≠ β_i` for some `i`. The span of `1`
    /// is wandering exactly when this is zero.
    pub fn wandering_check(&self) -> f64 {
        let b = self.basis;
        let mut worst = 0.0f64;
        for (i, alpha) in b.pairs().enumerate() {
            for (k, beta) in b.pairs().enumerate() {
                let disjoint = (alpha.0 == 0 && beta.0 != 0) || (alpha.1 == 0 && beta.1 != 0);
                if disjoint {
                    worst = worst.max(self.gram.entries()[(i, k)].norm());
                }
            }
        }
        worst
    }

    /// `max |⟨v, A_j u⟩|` for `v` a pure power of the other variable and `u` in the
    /// window where `A_j` does not clip. Zero means those powers lie in `ker A_j*`.
    pub fn adjoint_kernel_check(&self, axis: Axis) -> f64 {
        let b = self.basis;
        let window = match axis {
            Axis::Z1 => self.window(1, 0),
            Axis::Z2 => self.window(0, 1),
        }
        .unwrap_or_default();
        let pure: Vec<usize> = match axis {
            Axis::Z1 => (0..=b.n2).map(|n| b.index(0, n)).collect(),
            Axis::Z2 => (0..=b.n1).map(|m| b.index(m, 0)).collect(),
        };
        let a = self.shift(axis);
        let g = self.gram.entries();
        let mut worst = 0.0f64;
        for &v in &pure {
            for &u in &window {
                // A_j e_u is a single basis vector inside the window
                let target = (0..b.len()).find(|&r| a[(r, u)] != czero()).expect("window column is nonzero");
                worst = worst.max((g[(v, target)] * a[(target, u)].conj()).norm());
            }
        }
        worst
    }
}

fn max_on_window(r: &CMat, window: &[usize]) -> f64 {
    let mut worst = 0.0f64;
    for &i in window {
        for &k in window {
            worst = worst.max(r[(i, k)].norm());
        }
    }
    worst
}

/// One-variable orbit data `⟨z₁^m, z₁^p⟩` and `⟨z₂^n, z₂^q⟩` read off a Gram matrix.
pub fn restrict_orbit(g: &GramMatrix) -> (CMat, CMat) {
    let b = g.basis();
    let d1 = DMatrix::from_fn(b.n1 + 1, b.n1 + 1, |m, p| g.entry((m, 0), (p, 0)));
    let d2 = DMatrix::from_fn(b.n2 + 1, b.n2 + 1, |n, q| g.entry((0, n), (0, q)));
    (d1, d2)
}

/// Full orbit Gram `⟨T₁^m T₂^n f₀, T₁^p T₂^q f₀⟩` from the one-variable data, by the
/// four-case table (0 off both diagonals; one-variable data on one; diagonal sums).
pub fn reconstruct_gram_from_orbit(data1: &CMat, data2: &CMat) -> Result<CMat> {
    for (name, d) in [("first", data1), ("second", data2)] {
        if d.nrows() == 0 || d.nrows() != d.ncols() {
            return Err(Error::Input(format!("{name} orbit matrix must be square and nonempty")));
        }
        let asym = linalg::max_asymmetry(d);
        if asym > 1e-12 * (1.0 + linalg::max_abs(d)) {
            return Err(Error::NotHermitian(asym));
        }
    }
    let f1 = data1[(0, 0)].re;
    let f2 = data2[(0, 0)].re;
    if (f1 - f2).abs() > 1e-12 {
        return Err(Error::InconsistentNormalization(f1, f2));
    }
    let basis = MonomialBasis::new(data1.nrows() - 1, data2.nrows() - 1);
    Ok(DMatrix::from_fn(basis.len(), basis.len(), |i, k| {
        let (m, n) = basis.pair(i);
        let (p, q) = basis.pair(k);
        match (m == p, n == q) {
            (false, false) => czero(),
            (true, false) => data2[(n, q)],
            (false, true) => data1[(m, p)],
            (true, true) => data1[(m, m)] + data2[(n, n)] - data1[(0, 0)],
        }
    }))
}

/// A commuting pair with a candidate cyclic vector, in an explicit inner product.
#[derive(Debug, Clone)]
pub struct ModelInput {
    pub t1: CMat,
    pub t2: CMat,
    pub f0: CVec,
    /// `G[i][k] = ⟨e_i, e_k⟩`; `None` is the Euclidean inner product.
    pub gram: Option<CMat>,
}

#[derive(Debug, Clone)]
pub struct ModelOptions {
    pub tol: f64,
    /// Coordinate indices on which the toral 2-isometry identity is claimed.
    pub window: Vec<usize>,
    /// Largest power of each operator applied to `f₀`.
    pub orbit_depth: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelItem {
    pub check: String,
    pub max_violation: f64,
    pub tolerance: f64,
    /// `None` when the hypothesis has no finite-dimensional witness.
    pub pass: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelReport {
    pub items: Vec<ModelItem>,
}

impl ModelReport {
    pub fn item(&self, name: &str) -> Option<&ModelItem> {
        self.items.iter().find(|i| i.check == name)
    }

    /// True when every evaluated item passes.
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass != Some(false))
    }
}

pub const CHECK_COMMUTATOR: &str = "commutator";
pub const CHECK_KERNEL_T1: &str = "f0 in ker T1*";
pub const CHECK_KERNEL_T2: &str = "f0 in ker T2*";
pub const CHECK_CYCLIC: &str = "cyclicity";
pub const CHECK_WANDERING_1: &str = "orbit orthogonality (T1 powers)";
pub const CHECK_WANDERING_2: &str = "orbit orthogonality (T2 powers)";
pub const CHECK_TORAL: &str = "toral 2-isometry on window";
pub const CHECK_ANALYTIC: &str = "analyticity";

/// Checks the finite-dimensional hypotheses of the model theorem for a user pair:
/// commutation, `f₀ ∈ ker T*`, cyclicity of `f₀`, the two orbit orthogonality
/// conditions, and the toral 2-isometry identity on a caller-declared window.
/// Analyticity has no witness on a truncation and is reported as not evaluated.
pub fn verify_model_hypotheses(input: &ModelInput, opts: &ModelOptions) -> Result<ModelReport> {
    let n = input.t1.nrows();
    if input.t1.shape() != (n, n) || input.t2.shape() != (n, n) || input.f0.len() != n {
        return Err(Error::Input("T1, T2 must be square of the size of f0".into()));
    }
    let g = match &input.gram {
        Some(g) if g.shape() == (n, n) => g.clone(),
        Some(_) => return Err(Error::Input("Gram size does not match the operators".into())),
        None => CMat::identity(n, n),
    };
    let metric = g.transpose();
    let inner = |x: &CVec, y: &CVec| -> Complex64 { x.dot(&(&g * y.map(|z| z.conj()))) };
    let tol = opts.tol;
    let item = |check: &str, v: f64| ModelItem { check: check.into(), max_violation: v, tolerance: tol, pass: Some(v <= tol) };
    let mut items = Vec::new();

    let comm = &input.t1 * &input.t2 - &input.t2 * &input.t1;
    items.push(item(CHECK_COMMUTATOR, linalg::max_abs(&comm)));

    // T* y = M⁻¹ Tᴴ M y with M = Gᵀ
    let mf0 = &metric * &input.f0;
    for (name, t) in [(CHECK_KERNEL_T1, &input.t1), (CHECK_KERNEL_T2, &input.t2)] {
        let v = linalg::hpd_solve(&metric, &(t.adjoint() * &mf0))?;
        items.push(item(name, inner(&v, &v).re.max(0.0).sqrt()));
    }

    let depth = opts.orbit_depth;
    let mut orbit: Vec<Vec<CVec>> = Vec::with_capacity(depth + 1);
    let mut row = input.f0.clone();
    for _ in 0..=depth {
        let mut cols = Vec::with_capacity(depth + 1);
        let mut v = row.clone();
        for _ in 0..=depth {
            cols.push(v.clone());
            v = &input.t2 * v;
        }
        orbit.push(cols);
        row = &input.t1 * row;
    }
    let flat: Vec<&CVec> = orbit.iter().flatten().collect();
    let span = CMat::from_columns(&flat.iter().map(|v| (*v).clone()).collect::<Vec<_>>());
    let sv = linalg::singular_values(&span);
    let thr = sv.first().copied().unwrap_or(0.0) * 1e-10;
    let rank = sv.iter().filter(|&&s| s > thr).count();
    items.push(item(CHECK_CYCLIC, (n - rank) as f64));

    let mut w1 = 0.0f64;
    let mut w2 = 0.0f64;
    for a in 0..=depth {
        for p in 0..=depth {
            for q in 0..=depth {
                if q >= 1 {
                    w1 = w1.max(inner(&orbit[a][0], &orbit[p][q]).norm());
                }
                if p >= 1 {
                    w2 = w2.max(inner(&orbit[0][a], &orbit[p][q]).norm());
                }
            }
        }
    }
    items.push(item(CHECK_WANDERING_1, w1));
    items.push(item(CHECK_WANDERING_2, w2));

    let mut toral = 0.0f64;
    for (ti, tj) in [(&input.t1, &input.t1), (&input.t1, &input.t2), (&input.t2, &input.t2)] {
        let tij = ti * tj;
        let r = &g - gram_form(&g, ti, ti) - gram_form(&g, tj, tj) + gram_form(&g, &tij, &tij);
        if opts.window.iter().any(|&i| i >= n) {
            return Err(Error::Input("window index out of range".into()));
        }
        toral = toral.max(max_on_window(&r, &opts.window));
    }
    items.push(item(CHECK_TORAL, toral));

    items.push(ModelItem { check: CHECK_ANALYTIC.into(), max_violation: f64::NAN, tolerance: tol, pass: None });
    Ok(ModelReport { items })
}
