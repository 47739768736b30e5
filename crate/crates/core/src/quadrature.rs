//! Quadrature oracle: Dirichlet integrals and `D(μ₁, μ₂)` inner products computed from
//! the defining area/circle integrals, independently of the moment formula used by
//! [`crate::gram`].
//!
//! Polynomials are evaluated on the distinguished boundary (`r = 1`): the sup over
//! `r < 1` in the Dirichlet integral is a monotone limit, and polynomials are continuous
//! on the closed bidisc. Area integrals use normalized measure (`2ρ dρ dφ/2π`); circle
//! integrals use normalized arc length.
//!
//! For continuous measure parts the disc integral of `z^a z̄^b P_μ(z)` is taken with
//! Gauss–Legendre in `ρ` and the trapezoid rule in `φ`. Atoms make the Poisson weight
//! singular at the boundary, so for them the geometric series of `1/|z − ζ₀|²` is
//! integrated termwise, which reduces to the telescoping series
//! `ζ₀^{a−b} Σ_s [1/(s+1) − 1/(s+2)]` over `s ≥ max(a, b)`. It is truncated after
//! `atom_series_terms` terms and a tail bound is reported.

use std::f64::consts::TAU;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

use crate::bipoly::{Axis, BiPoly};
use crate::error::{Error, Result};
use crate::measure::{CircleMeasure, MeasurePart};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadSpec {
    /// Gauss–Legendre nodes on `[0, 1]`.
    pub radial_nodes: usize,
    /// Trapezoid nodes on `[0, 2π)`.
    pub angular_nodes: usize,
    pub atom_series_terms: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self { radial_nodes: 64, angular_nodes: 256, atom_series_terms: 1_000_000 }
    }
}

impl QuadSpec {
    /// Checks the rule is exact for polynomials of bidegree up to `degree` against
    /// densities of trigonometric degree `trig_degree`.
    pub fn validate(&self, degree: usize, trig_degree: usize) -> Result<()> {
        let relevant = degree.max(trig_degree);
        if self.angular_nodes < 4 * relevant + 4 {
            return Err(Error::InvalidQuadSpec(format!(
                "angular_nodes = {} < 4·{relevant} + 4",
                self.angular_nodes
            )));
        }
        // radial integrand ρ^{a+b+|j|+1} with a, b < degree
        let radial_degree = 2 * degree.saturating_sub(1) + trig_degree + 1;
        if self.radial_nodes < radial_degree + 2 {
            return Err(Error::InvalidQuadSpec(format!(
                "radial_nodes = {} < {radial_degree} + 2",
                self.radial_nodes
            )));
        }
        if self.atom_series_terms == 0 {
            return Err(Error::InvalidQuadSpec("atom_series_terms must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadValue<T> {
    pub value: T,
    /// Bound on the truncation error of the atomic series (0 without atoms).
    pub tail_bound: f64,
}

/// `(1/L) Σ_l f(2πl/L)`; exact for `e^{ikθ}` with `|k| < L`.
pub fn trapezoid_circle<F: FnMut(f64) -> Complex64>(nodes: usize, mut f: F) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for l in 0..nodes {
        acc += f(TAU * l as f64 / nodes as f64);
    }
    acc / nodes as f64
}

/// Neumaier-compensated sum of the truncated telescoping series
/// `Σ_{s=0}^{S−1} [1/(n₀+s+1) − 1/(n₀+s+2)]`, summed from the small end.
fn atom_series(n0: usize, terms: usize) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for s in (0..terms).rev() {
        let k = (n0 + s) as f64;
        let term = 1.0 / (k + 1.0) - 1.0 / (k + 2.0);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// `D[a][b] = ∫_D z^a z̄^b P_μ(z) dA(z)` for `a, b ≤ k_max`.
#[derive(Debug, Clone)]
struct DiscTable {
    size: usize,
    values: Vec<Complex64>,
    tails: Vec<f64>,
}

impl DiscTable {
    fn build(mu: &CircleMeasure, k_max: usize, spec: &QuadSpec, rule: &GaussLegendre) -> Self {
        let size = k_max + 1;
        let mut values = vec![Complex64::new(0.0, 0.0); size * size];
        let mut tails = vec![0.0; size * size];

        let smooth: Vec<&MeasurePart> = mu.parts().iter().filter(|p| !p.is_atomic()).collect();
        if !smooth.is_empty() {
            let angular = spec.angular_nodes;
            for &(x, w) in rule.as_node_weight_pairs() {
                let rho = 0.5 * (x + 1.0);
                let radial_weight = 0.5 * w * 2.0 * rho;
                let powers: Vec<f64> = (0..=2 * k_max).map(|e| rho.powi(e as i32)).collect();
                for l in 0..angular {
                    let phi = TAU * l as f64 / angular as f64;
                    let z = Complex64::from_polar(rho, phi);
                    let weight: f64 = smooth.iter().map(|p| p.poisson(z)).sum::<f64>() * radial_weight / angular as f64;
                    let phases: Vec<Complex64> = (0..2 * size).map(|d| Complex64::cis((d as f64 - k_max as f64) * phi)).collect();
                    for a in 0..size {
                        for b in 0..size {
                            let phase = phases[a + k_max - b];
                            values[a * size + b] += phase * (powers[a + b] * weight);
                        }
                    }
                }
            }
        }

        let atoms: Vec<_> = mu
            .parts()
            .iter()
            .filter_map(|p| match p {
                MeasurePart::Atoms(a) => Some(a.iter()),
                _ => None,
            })
            .flatten()
            .collect();
        if !atoms.is_empty() {
            let series: Vec<f64> = (0..size).map(|n0| atom_series(n0, spec.atom_series_terms)).collect();
            let tail_per_mass = 1.0 / spec.atom_series_terms as f64;
            for atom in &atoms {
                let zeta = Complex64::cis(atom.angle);
                for a in 0..size {
                    for b in 0..size {
                        let phase = if a >= b { zeta.powu((a - b) as u32) } else { zeta.conj().powu((b - a) as u32) };
                        values[a * size + b] += phase * (atom.mass * series[a.max(b)]);
                        tails[a * size + b] += atom.mass * tail_per_mass;
                    }
                }
            }
        }
        Self { size, values, tails }
    }

    fn get(&self, a: usize, b: usize) -> (Complex64, f64) {
        (self.values[a * self.size + b], self.tails[a * self.size + b])
    }
}

/// Precomputed disc tables for a measure pair, reusable across many polynomials of
/// bidegree at most `(max_degree, max_degree)`.
#[derive(Debug, Clone)]
pub struct QuadOracle {
    spec: QuadSpec,
    max_degree: usize,
    disc1: DiscTable,
    disc2: DiscTable,
}

impl QuadOracle {
    pub fn new(mu1: &CircleMeasure, mu2: &CircleMeasure, spec: QuadSpec, max_degree: usize) -> Result<Self> {
        spec.validate(max_degree, mu1.trig_degree().max(mu2.trig_degree()))?;
        let rule = GaussLegendre::new(NonZeroUsize::new(spec.radial_nodes).expect("validated"));
        let k_max = max_degree.saturating_sub(1);
        Ok(Self {
            spec,
            max_degree,
            disc1: DiscTable::build(mu1, k_max, &spec, &rule),
            disc2: DiscTable::build(mu2, k_max, &spec, &rule),
        })
    }

    fn check_degree(&self, f: &BiPoly) -> Result<()> {
        let (b1, b2) = f.bidegree();
        if b1 > self.max_degree || b2 > self.max_degree {
            return Err(Error::BasisTooSmall { need1: b1, need2: b2, have1: self.max_degree, have2: self.max_degree });
        }
        Ok(())
    }

    /// `∫_T ∫_D ∂_j f · conj(∂_j g) · P_{μ_j} dA dθ` with the free variable on the boundary.
    fn dirichlet_term(&self, f: &BiPoly, g: &BiPoly, axis: Axis) -> (Complex64, f64) {
        let df = f.partial(axis);
        let dg = g.partial(axis);
        let table = match axis {
            Axis::Z1 => &self.disc1,
            Axis::Z2 => &self.disc2,
        };
        let k = table.size;
        let l = self.spec.angular_nodes;
        // boundary-variable profiles: F_a(ζ) = Σ_n (∂f)_{a,n} ζ^n for the disc power a
        let profile = |p: &BiPoly, a: usize, zeta: Complex64| -> Complex64 {
            let (d1, d2) = p.grid();
            let mut acc = Complex64::new(0.0, 0.0);
            match axis {
                Axis::Z1 => {
                    for n in (0..=d2).rev() {
                        acc = acc * zeta + p.coeff(a, n);
                    }
                }
                Axis::Z2 => {
                    for m in (0..=d1).rev() {
                        acc = acc * zeta + p.coeff(m, a);
                    }
                }
            }
            acc
        };
        let nodes: Vec<Complex64> = (0..l).map(|t| Complex64::cis(TAU * t as f64 / l as f64)).collect();
        let fv: Vec<Vec<Complex64>> = (0..k).map(|a| nodes.iter().map(|&z| profile(&df, a, z)).collect()).collect();
        let gv: Vec<Vec<Complex64>> = (0..k).map(|b| nodes.iter().map(|&z| profile(&dg, b, z)).collect()).collect();
        let mut value = Complex64::new(0.0, 0.0);
        let mut tail = 0.0;
        for a in 0..k {
            for b in 0..k {
                let theta: Complex64 =
                    fv[a].iter().zip(&gv[b]).map(|(x, y)| x * y.conj()).sum::<Complex64>() / l as f64;
                if theta == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let (d, t) = table.get(a, b);
                value += d * theta;
                tail += t * theta.norm();
            }
        }
        (value, tail)
    }

    pub fn inner_product(&self, f: &BiPoly, g: &BiPoly) -> Result<QuadValue<Complex64>> {
        self.check_degree(f)?;
        self.check_degree(g)?;
        let hardy: Complex64 = f
            .terms()
            .map(|((m, n), a)| a * g.coeff(m, n).conj())
            .sum();
        let (v1, t1) = self.dirichlet_term(f, g, Axis::Z1);
        let (v2, t2) = self.dirichlet_term(f, g, Axis::Z2);
        Ok(QuadValue { value: hardy + v1 + v2, tail_bound: t1 + t2 })
    }

    pub fn dirichlet_integral(&self, f: &BiPoly) -> Result<QuadValue<f64>> {
        self.check_degree(f)?;
        let (v1, t1) = self.dirichlet_term(f, f, Axis::Z1);
        let (v2, t2) = self.dirichlet_term(f, f, Axis::Z2);
        Ok(QuadValue { value: v1.re + v2.re, tail_bound: t1 + t2 })
    }
}

fn poly_degree(f: &BiPoly) -> usize {
    let (b1, b2) = f.bidegree();
    b1.max(b2)
}

/// `D_{μ₁,μ₂}(f)` by quadrature.
pub fn dirichlet_integral_quad(mu1: &CircleMeasure, mu2: &CircleMeasure, f: &BiPoly, spec: QuadSpec) -> Result<QuadValue<f64>> {
    QuadOracle::new(mu1, mu2, spec, poly_degree(f))?.dirichlet_integral(f)
}

/// `⟨f, g⟩_{D(μ₁,μ₂)}` by quadrature (Hardy part from coefficients, Dirichlet parts integrated).
pub fn inner_product_quad(
    mu1: &CircleMeasure,
    mu2: &CircleMeasure,
    f: &BiPoly,
    g: &BiPoly,
    spec: QuadSpec,
) -> Result<QuadValue<Complex64>> {
    QuadOracle::new(mu1, mu2, spec, poly_degree(f).max(poly_degree(g)))?.inner_product(f, g)
}

/// `∫_{T²} |p|² dμ dθ` with `μ` on the chosen axis and normalized arc length on the other.
pub fn torus_integral_quad(mu: &CircleMeasure, p: &BiPoly, axis: Axis, spec: QuadSpec) -> Result<f64> {
    spec.validate(poly_degree(p), mu.trig_degree())?;
    let rule = mu.circle_rule(spec.angular_nodes);
    let l = spec.angular_nodes;
    let mut acc = 0.0;
    for (eta, w) in rule {
        let zeta = Complex64::cis(eta);
        let inner = trapezoid_circle(l, |theta| {
            let other = Complex64::cis(theta);
            let v = match axis {
                Axis::Z1 => p.eval(zeta, other),
                Axis::Z2 => p.eval(other, zeta),
            };
            Complex64::new(v.norm_sqr(), 0.0)
        });
        acc += w * inner.re;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gram::gram_entry;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn mono(m: usize, n: usize) -> BiPoly {
        BiPoly::monomial(m, n, c(1.0, 0.0))
    }

    #[test]
    fn trapezoid_is_exact_on_characters() {
        let l = 256;
        for k in 1..(l as i64 / 2) {
            let v = trapezoid_circle(l, |t| Complex64::cis(k as f64 * t));
            assert!(v.norm() < 1e-14, "k={k}: {v}");
        }
        assert!((trapezoid_circle(l, |_| c(1.0, 0.0)) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn series_telescopes() {
        // partial sum of a telescoping series: 1/(n0+1) − 1/(n0+S+1)
        for n0 in 0..5 {
            let s = atom_series(n0, 1000);
            let exact = 1.0 / (n0 as f64 + 1.0) - 1.0 / (n0 as f64 + 1001.0);
            assert!((s - exact).abs() < 1e-16);
        }
    }

    #[test]
    fn dirichlet_examples() {
        let spec = QuadSpec::default();
        let leb = CircleMeasure::lebesgue(1.0).unwrap();
        let atom = CircleMeasure::atom(0.0, 1.0).unwrap();
        let zero = CircleMeasure::zero();
        let v = dirichlet_integral_quad(&leb, &atom, &mono(1, 0), spec).unwrap();
        assert!((v.value - 1.0).abs() < 1e-13);
        let v = dirichlet_integral_quad(&leb, &atom, &BiPoly::constant(c(3.0, 1.0)), spec).unwrap();
        assert_eq!(v.value, 0.0);
        let v = dirichlet_integral_quad(&zero, &leb, &mono(0, 2), spec).unwrap();
        assert!((v.value - 2.0).abs() < 1e-13);
    }

    #[test]
    fn inner_product_examples() {
        let spec = QuadSpec::default();
        let leb = CircleMeasure::lebesgue(1.0).unwrap();
        let atom = CircleMeasure::atom(0.0, 1.0).unwrap();
        let v = inner_product_quad(&leb, &leb, &mono(1, 0), &mono(0, 1), spec).unwrap();
        assert!(v.value.norm() < 1e-14);
        let v = inner_product_quad(&atom, &leb, &mono(2, 0), &mono(3, 0), spec).unwrap();
        let exact = gram_entry(&atom, &leb, (2, 0), (3, 0));
        assert_eq!(exact, c(2.0, 0.0));
        assert!((v.value - exact).norm() <= v.tail_bound.max(1e-5));
        assert!(v.tail_bound > 0.0);
        let f = &mono(2, 1) + &mono(0, 3);
        let d = dirichlet_integral_quad(&leb, &atom, &f, spec).unwrap();
        let ip = inner_product_quad(&leb, &atom, &f, &f, spec).unwrap();
        assert!((ip.value.re - (d.value + f.hardy_norm_sq())).abs() < 1e-12);
    }

    #[test]
    fn torus_examples() {
        let spec = QuadSpec::default();
        let trig = CircleMeasure::trig_density(&[c(1.0, 0.0), c(0.4, 0.0)]).unwrap();
        let atom = CircleMeasure::atom(0.0, 1.0).unwrap();
        let one = BiPoly::constant(c(1.0, 0.0));
        assert!((torus_integral_quad(&trig, &one, Axis::Z1, spec).unwrap() - 1.0).abs() < 1e-14);
        assert!((torus_integral_quad(&trig, &mono(0, 1), Axis::Z1, spec).unwrap() - 1.0).abs() < 1e-14);
        assert!((torus_integral_quad(&atom, &mono(1, 0), Axis::Z1, spec).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn spec_validation() {
        let tight = QuadSpec { radial_nodes: 4, angular_nodes: 8, atom_series_terms: 10 };
        assert!(tight.validate(1, 0).is_ok());
        assert!(tight.validate(3, 0).is_err());
        let zero_terms = QuadSpec { atom_series_terms: 0, ..QuadSpec::default() };
        assert!(zero_terms.validate(2, 0).is_err());
    }
}
