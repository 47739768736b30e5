//! Dense bivariate complex polynomials `f(z₁, z₂) = Σ a_{m,n} z₁^m z₂^n`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Z1,
    Z2,
}

impl Axis {
    pub fn from_index(j: usize) -> Result<Self> {
        match j {
            1 => Ok(Axis::Z1),
            2 => Ok(Axis::Z2),
            _ => Err(Error::Input(format!("axis must be 1 or 2, got {j}"))),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Axis::Z1 => 1,
            Axis::Z2 => 2,
        }
    }

    pub fn other(self) -> Self {
        match self {
            Axis::Z1 => Axis::Z2,
            Axis::Z2 => Axis::Z1,
        }
    }
}

/// Coefficients live on a dense `(d₁+1) × (d₂+1)` grid, row-major in `m`.
/// Trailing zero rows/columns are allowed; [`BiPoly::bidegree`] reports the trimmed bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BiPoly {
    d1: usize,
    d2: usize,
    coeffs: Vec<Complex64>,
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

impl BiPoly {
    pub fn new(d1: usize, d2: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != (d1 + 1) * (d2 + 1) {
            return Err(Error::InvalidPolynomial(format!(
                "grid ({d1}, {d2}) needs {} coefficients, got {}",
                (d1 + 1) * (d2 + 1),
                coeffs.len()
            )));
        }
        Ok(Self { d1, d2, coeffs })
    }

    pub fn zeros(d1: usize, d2: usize) -> Self {
        Self { d1, d2, coeffs: vec![zero(); (d1 + 1) * (d2 + 1)] }
    }

    pub fn constant(c: Complex64) -> Self {
        Self { d1: 0, d2: 0, coeffs: vec![c] }
    }

    pub fn monomial(m: usize, n: usize, c: Complex64) -> Self {
        let mut p = Self::zeros(m, n);
        p.set(m, n, c);
        p
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(d1: usize, d2: usize, mut f: F) -> Self {
        let mut coeffs = Vec::with_capacity((d1 + 1) * (d2 + 1));
        for m in 0..=d1 {
            for n in 0..=d2 {
                coeffs.push(f(m, n));
            }
        }
        Self { d1, d2, coeffs }
    }

    /// Coefficients drawn uniformly from the complex unit square `[0,1) × [0,1)i`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, d1: usize, d2: usize) -> Self {
        Self::from_fn(d1, d2, |_, _| Complex64::new(rng.random::<f64>(), rng.random::<f64>()))
    }

    /// Declared grid bounds `(d₁, d₂)`.
    pub fn grid(&self) -> (usize, usize) {
        (self.d1, self.d2)
    }

    /// Smallest `(d₁, d₂)` such that every nonzero coefficient fits; `(0, 0)` for zero.
    pub fn bidegree(&self) -> (usize, usize) {
        let mut b = (0, 0);
        for m in 0..=self.d1 {
            for n in 0..=self.d2 {
                if self.coeff(m, n) != zero() {
                    b.0 = b.0.max(m);
                    b.1 = b.1.max(n);
                }
            }
        }
        b
    }

    pub fn coeff(&self, m: usize, n: usize) -> Complex64 {
        if m <= self.d1 && n <= self.d2 {
            self.coeffs[m * (self.d2 + 1) + n]
        } else {
            zero()
        }
    }

    /// Panics if `(m, n)` is outside the grid.
    pub fn set(&mut self, m: usize, n: usize, c: Complex64) {
        assert!(m <= self.d1 && n <= self.d2, "({m}, {n}) outside grid ({}, {})", self.d1, self.d2);
        self.coeffs[m * (self.d2 + 1) + n] = c;
    }

    fn add_at(&mut self, m: usize, n: usize, c: Complex64) {
        self.coeffs[m * (self.d2 + 1) + n] += c;
    }

    /// Iterator over `((m, n), a_{m,n})` on the grid.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), Complex64)> + '_ {
        let w = self.d2 + 1;
        self.coeffs.iter().enumerate().map(move |(i, c)| ((i / w, i % w), *c))
    }

    /// Copy on a grid of at least `(d1, d2)`; errors if nonzero terms would be dropped.
    pub fn embed(&self, d1: usize, d2: usize) -> Result<Self> {
        let (b1, b2) = self.bidegree();
        if b1 > d1 || b2 > d2 {
            return Err(Error::BasisTooSmall { need1: b1, need2: b2, have1: d1, have2: d2 });
        }
        Ok(Self::from_fn(d1, d2, |m, n| self.coeff(m, n)))
    }

    /// Copy on the trimmed grid.
    pub fn trimmed(&self) -> Self {
        let (b1, b2) = self.bidegree();
        Self::from_fn(b1, b2, |m, n| self.coeff(m, n))
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficient difference, treating coefficients outside either grid as zero.
    pub fn max_coeff_diff(&self, other: &BiPoly) -> f64 {
        let d1 = self.d1.max(other.d1);
        let d2 = self.d2.max(other.d2);
        let mut worst = 0.0f64;
        for m in 0..=d1 {
            for n in 0..=d2 {
                worst = worst.max((self.coeff(m, n) - other.coeff(m, n)).norm());
            }
        }
        worst
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { d1: self.d1, d2: self.d2, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Horner in `z₂` for each row, then Horner in `z₁`.
    pub fn eval(&self, z1: Complex64, z2: Complex64) -> Complex64 {
        let mut acc = zero();
        for m in (0..=self.d1).rev() {
            let mut row = zero();
            for n in (0..=self.d2).rev() {
                row = row * z2 + self.coeff(m, n);
            }
            acc = acc * z1 + row;
        }
        acc
    }

    pub fn partial(&self, axis: Axis) -> Self {
        match axis {
            Axis::Z1 => {
                let d1 = self.d1.saturating_sub(1);
                Self::from_fn(d1, self.d2, |m, n| self.coeff(m + 1, n) * (m + 1) as f64)
            }
            Axis::Z2 => {
                let d2 = self.d2.saturating_sub(1);
                Self::from_fn(self.d1, d2, |m, n| self.coeff(m, n + 1) * (n + 1) as f64)
            }
        }
    }

    /// `‖f‖²_{H²(D²)} = Σ |a_{m,n}|²`.
    pub fn hardy_norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `Σ_{m,n} |a_{m,n}|² r^{2n}`: the θ-averaged squared H²(D) norm of the slices
    /// `z₁ ↦ f(z₁, r e^{iθ})`.
    pub fn slice_profile(&self, r: f64) -> Result<f64> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::Domain(format!("slice profile needs 0 < r < 1, got {r}")));
        }
        let r2 = r * r;
        Ok(self.terms().map(|((_, n), a)| a.norm_sqr() * r2.powi(n as i32)).sum())
    }

    /// Substitutes `z_axis = λ`; the result is constant in that variable.
    pub fn slice(&self, axis: Axis, lambda: Complex64) -> Self {
        match axis {
            Axis::Z1 => {
                let mut out = Self::zeros(0, self.d2);
                for n in 0..=self.d2 {
                    let mut acc = zero();
                    for m in (0..=self.d1).rev() {
                        acc = acc * lambda + self.coeff(m, n);
                    }
                    out.set(0, n, acc);
                }
                out
            }
            Axis::Z2 => {
                let mut out = Self::zeros(self.d1, 0);
                for m in 0..=self.d1 {
                    let mut acc = zero();
                    for n in (0..=self.d2).rev() {
                        acc = acc * lambda + self.coeff(m, n);
                    }
                    out.set(m, 0, acc);
                }
                out
            }
        }
    }

    /// Synthetic division of every cross-section by `z_axis − λ`.
    /// Returns the quotient and the remainder (the slice at `z_axis = λ`).
    pub fn synthetic_divide(&self, axis: Axis, lambda: Complex64) -> (Self, Self) {
        match axis {
            Axis::Z1 => {
                let mut q = Self::zeros(self.d1.saturating_sub(1), self.d2);
                let mut rem = Self::zeros(0, self.d2);
                for n in 0..=self.d2 {
                    let mut carry = zero();
                    for m in (0..=self.d1).rev() {
                        carry = carry * lambda + self.coeff(m, n);
                        if m > 0 {
                            q.set(m - 1, n, carry);
                        }
                    }
                    rem.set(0, n, carry);
                }
                (q, rem)
            }
            Axis::Z2 => {
                let mut q = Self::zeros(self.d1, self.d2.saturating_sub(1));
                let mut rem = Self::zeros(self.d1, 0);
                for m in 0..=self.d1 {
                    let mut carry = zero();
                    for n in (0..=self.d2).rev() {
                        carry = carry * lambda + self.coeff(m, n);
                        if n > 0 {
                            q.set(m, n - 1, carry);
                        }
                    }
                    rem.set(m, 0, carry);
                }
                (q, rem)
            }
        }
    }

    /// `f / (z_axis − λ)`, provided the slice `f|_{z_axis = λ}` vanishes up to
    /// `tol · (1 + max|a|)`.
    pub fn divide_slice(&self, axis: Axis, lambda: Complex64, tol: f64) -> Result<Self> {
        let (q, rem) = self.synthetic_divide(axis, lambda);
        let residual = rem.max_abs_coeff();
        if residual > tol * (1.0 + self.max_abs_coeff()) {
            return Err(Error::SliceNotVanishing(residual));
        }
        Ok(q)
    }

    /// Splits `f = f(λ) + (z₁ − λ₁) g₁ + (z₂ − λ₂) g₂` by dividing first in `z₁`, then
    /// dividing the remaining slice `f(λ₁, ·)` in `z₂`.
    pub fn gleason_split(&self, lambda: (Complex64, Complex64)) -> (Self, Self) {
        let (g1, slice) = self.synthetic_divide(Axis::Z1, lambda.0);
        let (g2, _) = slice.synthetic_divide(Axis::Z2, lambda.1);
        (g1, g2)
    }

    /// `(z_axis − λ) · f`.
    pub fn mul_linear(&self, axis: Axis, lambda: Complex64) -> Self {
        let (e1, e2) = match axis {
            Axis::Z1 => (1, 0),
            Axis::Z2 => (0, 1),
        };
        let mut out = Self::zeros(self.d1 + e1, self.d2 + e2);
        for ((m, n), a) in self.terms() {
            out.add_at(m + e1, n + e2, a);
            out.add_at(m, n, -lambda * a);
        }
        out
    }

    /// `z₁^k z₂^l · f`.
    pub fn shift(&self, k: usize, l: usize) -> Self {
        let mut out = Self::zeros(self.d1 + k, self.d2 + l);
        for ((m, n), a) in self.terms() {
            out.set(m + k, n + l, a);
        }
        out
    }

    pub fn to_spec(&self) -> PolySpec {
        PolySpec {
            deg: [self.d1, self.d2],
            coeffs: (0..=self.d1)
                .map(|m| (0..=self.d2).map(|n| [self.coeff(m, n).re, self.coeff(m, n).im]).collect())
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: PolySpec = serde_json::from_str(text)?;
        spec.build()
    }
}

/// JSON form: `{"deg":[d1,d2],"coeffs":[[[re,im], …], …]}`, row-major in `m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolySpec {
    pub deg: [usize; 2],
    pub coeffs: Vec<Vec<[f64; 2]>>,
}

impl PolySpec {
    pub fn build(&self) -> Result<BiPoly> {
        let [d1, d2] = self.deg;
        if self.coeffs.len() != d1 + 1 || self.coeffs.iter().any(|row| row.len() != d2 + 1) {
            return Err(Error::InvalidPolynomial(format!(
                "coefficient grid does not match deg [{d1}, {d2}]"
            )));
        }
        let flat = self
            .coeffs
            .iter()
            .flat_map(|row| row.iter().map(|[re, im]| Complex64::new(*re, *im)))
            .collect();
        BiPoly::new(d1, d2, flat)
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        BiPoly::from_fn(self.d1.max(rhs.d1), self.d2.max(rhs.d2), |m, n| self.coeff(m, n) + rhs.coeff(m, n))
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        BiPoly::from_fn(self.d1.max(rhs.d1), self.d2.max(rhs.d2), |m, n| self.coeff(m, n) - rhs.coeff(m, n))
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zeros(self.d1 + rhs.d1, self.d2 + rhs.d2);
        for ((m, n), a) in self.terms() {
            if a == zero() {
                continue;
            }
            for ((p, q), b) in rhs.terms() {
                out.add_at(m + p, n + q, a * b);
            }
        }
        out
    }
}
