//! Finite positive measures on the unit circle in closed form.
//!
//! Three families are supported (normalized Lebesgue measure, finitely many atoms, and
//! nonnegative trigonometric-polynomial densities) together with finite mixtures of them.
//! Moments `μ̂(j) = ∫ ζ^{−j} dμ(ζ)` and Poisson integrals are exact.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// Atoms whose angles differ by less than this are merged.
pub const ATOM_MERGE_TOL: f64 = 1e-12;

/// Slack allowed when sampling a trigonometric density for nonnegativity.
pub const DENSITY_NEG_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    /// Radians in `[0, 2π)`.
    pub angle: f64,
    pub mass: f64,
}

/// Density `Σ_{|j| ≤ J} c_j e^{ijt}` with respect to normalized arc length.
///
/// Only `c_0, …, c_J` are stored; `c_{−j} = conj(c_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigDensity {
    coeffs: Vec<Complex64>,
}

impl TrigDensity {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, j: i64) -> Complex64 {
        let k = j.unsigned_abs() as usize;
        match self.coeffs.get(k) {
            Some(c) if j < 0 => c.conj(),
            Some(c) => *c,
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// Nonnegative-frequency coefficients `c_0, …, c_J`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn density(&self, t: f64) -> f64 {
        let mut acc = self.coeffs[0].re;
        for (j, c) in self.coeffs.iter().enumerate().skip(1) {
            acc += 2.0 * (c * Complex64::cis(j as f64 * t)).re;
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MeasurePart {
    Lebesgue { mass: f64 },
    Atoms(Vec<Atom>),
    TrigDensity(TrigDensity),
}

impl MeasurePart {
    pub fn moment(&self, j: i64) -> Complex64 {
        match self {
            MeasurePart::Lebesgue { mass } => {
                if j == 0 {
                    Complex64::new(*mass, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            MeasurePart::Atoms(atoms) => {
                // Evaluate at |j| and conjugate so that μ̂(−j) = conj(μ̂(j)) bitwise.
                let k = j.unsigned_abs() as f64;
                let mut acc = Complex64::new(0.0, 0.0);
                for a in atoms {
                    acc += a.mass * Complex64::cis(-k * a.angle);
                }
                if j < 0 { acc.conj() } else { acc }
            }
            MeasurePart::TrigDensity(d) => d.coeff(j),
        }
    }

    /// Poisson integral at `w`; the caller guarantees `|w| < 1`.
    pub fn poisson(&self, w: Complex64) -> f64 {
        match self {
            MeasurePart::Lebesgue { mass } => *mass,
            MeasurePart::Atoms(atoms) => {
                let one_minus = 1.0 - w.norm_sqr();
                atoms
                    .iter()
                    .map(|a| a.mass * one_minus / (w - Complex64::cis(a.angle)).norm_sqr())
                    .sum()
            }
            MeasurePart::TrigDensity(d) => {
                let r = w.norm();
                let phase = if r > 0.0 { w / r } else { Complex64::new(1.0, 0.0) };
                let mut acc = Complex64::new(0.0, 0.0);
                let big_j = d.degree() as i64;
                for j in -big_j..=big_j {
                    let rp = r.powi(j.unsigned_abs() as i32);
                    acc += d.coeff(j) * rp * phase.powi(j as i32);
                }
                debug_assert!(acc.im.abs() <= 1e-12 * (1.0 + acc.re.abs()));
                acc.re
            }
        }
    }

    pub fn mass(&self) -> f64 {
        self.moment(0).re
    }

    /// Largest frequency present in the part's density (0 for Lebesgue and atoms).
    pub fn trig_degree(&self) -> usize {
        match self {
            MeasurePart::TrigDensity(d) => d.degree(),
            _ => 0,
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, MeasurePart::Atoms(_))
    }

    fn circle_rule(&self, nodes: usize, out: &mut Vec<(f64, f64)>) {
        match self {
            MeasurePart::Lebesgue { mass } => {
                let w = mass / nodes as f64;
                out.extend((0..nodes).map(|k| (TAU * k as f64 / nodes as f64, w)));
            }
            MeasurePart::Atoms(atoms) => out.extend(atoms.iter().map(|a| (a.angle, a.mass))),
            MeasurePart::TrigDensity(d) => {
                out.extend((0..nodes).map(|k| {
                    let t = TAU * k as f64 / nodes as f64;
                    (t, d.density(t) / nodes as f64)
                }));
            }
        }
    }
}

/// A finite positive Borel measure on the unit circle, stored as a mixture of
/// closed-form parts. The empty mixture is the zero measure.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CircleMeasure {
    parts: Vec<MeasurePart>,
}

fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU { 0.0 } else { t }
}

impl CircleMeasure {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn lebesgue(mass: f64) -> Result<Self> {
        if !(mass.is_finite() && mass >= 0.0) {
            return Err(Error::InvalidMeasure(format!("Lebesgue mass must be finite and ≥ 0, got {mass}")));
        }
        Ok(Self { parts: vec![MeasurePart::Lebesgue { mass }] })
    }

    pub fn atom(angle: f64, mass: f64) -> Result<Self> {
        Self::atoms(&[(angle, mass)])
    }

    /// Point masses given as `(angle, mass)` pairs. Angles are normalized to `[0, 2π)`
    /// and nearly coincident atoms are merged.
    pub fn atoms(list: &[(f64, f64)]) -> Result<Self> {
        let mut atoms: Vec<Atom> = Vec::with_capacity(list.len());
        for &(angle, mass) in list {
            if !angle.is_finite() {
                return Err(Error::InvalidMeasure(format!("atom angle must be finite, got {angle}")));
            }
            if !(mass.is_finite() && mass > 0.0) {
                return Err(Error::InvalidMeasure(format!("atom mass must be finite and > 0, got {mass}")));
            }
            atoms.push(Atom { angle: normalize_angle(angle), mass });
        }
        atoms.sort_by(|a, b| a.angle.total_cmp(&b.angle));
        let mut merged: Vec<Atom> = Vec::with_capacity(atoms.len());
        for a in atoms {
            match merged.last_mut() {
                Some(prev) if a.angle - prev.angle < ATOM_MERGE_TOL => prev.mass += a.mass,
                _ => merged.push(a),
            }
        }
        // wrap-around: an atom just below 2π coincides with one at 0
        if merged.len() > 1 {
            let last = merged[merged.len() - 1];
            if TAU - last.angle + merged[0].angle < ATOM_MERGE_TOL {
                merged[0].mass += last.mass;
                merged.pop();
            }
        }
        if merged.is_empty() {
            return Ok(Self::zero());
        }
        Ok(Self { parts: vec![MeasurePart::Atoms(merged)] })
    }

    /// Trigonometric density from the coefficients `c_0, …, c_J`.
    pub fn trig_density(coeffs: &[Complex64]) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidMeasure("trig density needs at least c_0".into()));
        }
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::InvalidMeasure("trig density coefficients must be finite".into()));
        }
        if coeffs[0].im.abs() > 1e-12 {
            return Err(Error::InvalidMeasure(format!("c_0 must be real, got {}", coeffs[0])));
        }
        let mut stored = coeffs.to_vec();
        stored[0].im = 0.0;
        while stored.len() > 1 && stored.last().is_some_and(|c| c.norm() == 0.0) {
            stored.pop();
        }
        let density = TrigDensity { coeffs: stored };
        let big_j = density.degree();
        let grid = 8 * big_j + 16;
        for k in 0..grid {
            let t = TAU * k as f64 / grid as f64;
            let v = density.density(t);
            if v < -DENSITY_NEG_SLACK {
                return Err(Error::InvalidMeasure(format!(
                    "trig density is negative ({v:e}) at angle {t}"
                )));
            }
        }
        Ok(Self { parts: vec![MeasurePart::TrigDensity(density)] })
    }

    /// Trigonometric density from a signed-frequency map; missing negative
    /// frequencies are filled in by conjugate symmetry.
    pub fn trig_density_signed(entries: &[(i64, Complex64)]) -> Result<Self> {
        let big_j = entries.iter().map(|(j, _)| j.unsigned_abs() as usize).max().unwrap_or(0);
        let mut pos: Vec<Option<Complex64>> = vec![None; big_j + 1];
        let mut neg: Vec<Option<Complex64>> = vec![None; big_j + 1];
        for &(j, c) in entries {
            let slot = if j >= 0 { &mut pos[j as usize] } else { &mut neg[j.unsigned_abs() as usize] };
            if slot.is_some() {
                return Err(Error::InvalidMeasure(format!("duplicate coefficient for j = {j}")));
            }
            *slot = Some(c);
        }
        let mut coeffs = Vec::with_capacity(big_j + 1);
        for k in 0..=big_j {
            let c = match (pos[k], neg[k]) {
                (Some(p), Some(n)) => {
                    if (p - n.conj()).norm() > 1e-12 * (1.0 + p.norm()) {
                        return Err(Error::InvalidMeasure(format!(
                            "coefficients c_{k} and c_-{k} are not conjugate"
                        )));
                    }
                    p
                }
                (Some(p), None) => p,
                (None, Some(n)) => n.conj(),
                (None, None) => Complex64::new(0.0, 0.0),
            };
            coeffs.push(c);
        }
        Self::trig_density(&coeffs)
    }

    pub fn mixture(parts: Vec<CircleMeasure>) -> Self {
        Self { parts: parts.into_iter().flat_map(|m| m.parts).collect() }
    }

    /// Multiplies every part by `c ≥ 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::InvalidMeasure(format!("scale must be finite and ≥ 0, got {c}")));
        }
        if c == 0.0 {
            return Ok(Self::zero());
        }
        let parts = self
            .parts
            .iter()
            .map(|p| match p {
                MeasurePart::Lebesgue { mass } => MeasurePart::Lebesgue { mass: c * mass },
                MeasurePart::Atoms(atoms) => MeasurePart::Atoms(
                    atoms.iter().map(|a| Atom { angle: a.angle, mass: c * a.mass }).collect(),
                ),
                MeasurePart::TrigDensity(d) => MeasurePart::TrigDensity(TrigDensity {
                    coeffs: d.coeffs.iter().map(|z| z * c).collect(),
                }),
            })
            .collect();
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[MeasurePart] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.total_mass() == 0.0
    }

    pub fn has_atoms(&self) -> bool {
        self.parts.iter().any(MeasurePart::is_atomic)
    }

    pub fn trig_degree(&self) -> usize {
        self.parts.iter().map(MeasurePart::trig_degree).max().unwrap_or(0)
    }

    /// `μ̂(j) = ∫ ζ^{−j} dμ(ζ)`.
    pub fn moment(&self, j: i64) -> Complex64 {
        self.parts.iter().map(|p| p.moment(j)).sum()
    }

    pub fn total_mass(&self) -> f64 {
        let m = self.moment(0);
        debug_assert!(m.im == 0.0);
        m.re
    }

    /// `P_μ(w) = ∫ (1 − |w|²)/|w − ζ|² dμ(ζ)` for `|w| < 1`.
    pub fn poisson(&self, w: Complex64) -> Result<f64> {
        if !(w.norm() < 1.0) {
            return Err(Error::Domain(format!("Poisson integral needs |w| < 1, got |w| = {}", w.norm())));
        }
        Ok(self.parts.iter().map(|p| p.poisson(w)).sum())
    }

    /// Weighted nodes `(angle, weight)` integrating against the measure.
    ///
    /// Atoms contribute themselves; continuous parts use a `nodes`-point trapezoid rule,
    /// exact for trigonometric integrands of degree below `nodes − J`.
    pub fn circle_rule(&self, nodes: usize) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for p in &self.parts {
            p.circle_rule(nodes.max(1), &mut out);
        }
        out
    }

    pub fn integrate<F: Fn(f64) -> Complex64>(&self, nodes: usize, f: F) -> Complex64 {
        self.circle_rule(nodes).into_iter().map(|(t, w)| f(t) * w).sum()
    }

    pub fn moment_sequence(&self, big_j: usize) -> MomentSequence {
        MomentSequence {
            values: (0..=big_j as i64).map(|j| self.moment(j)).collect(),
            feasibility: Feasibility::Unchecked,
        }
    }

    pub fn to_spec(&self) -> MeasureSpec {
        let part_spec = |p: &MeasurePart| match p {
            MeasurePart::Lebesgue { mass } => MeasureSpec::Lebesgue { mass: *mass },
            MeasurePart::Atoms(atoms) => MeasureSpec::Atoms {
                atoms: atoms.iter().map(|a| AtomSpec { angle: a.angle, mass: a.mass }).collect(),
            },
            MeasurePart::TrigDensity(d) => MeasureSpec::TrigDensity {
                coeffs: d
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, c)| CoeffSpec { j: j as i64, re: c.re, im: c.im })
                    .collect(),
            },
        };
        match self.parts.as_slice() {
            [single] => part_spec(single),
            parts => MeasureSpec::Mixture { parts: parts.iter().map(part_spec).collect() },
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: MeasureSpec = serde_json::from_str(text)?;
        spec.build()
    }
}

/// JSON form of a measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MeasureSpec {
    Lebesgue { mass: f64 },
    Atoms { atoms: Vec<AtomSpec> },
    TrigDensity { coeffs: Vec<CoeffSpec> },
    Mixture { parts: Vec<MeasureSpec> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomSpec {
    pub angle: f64,
    pub mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffSpec {
    pub j: i64,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

impl MeasureSpec {
    pub fn build(&self) -> Result<CircleMeasure> {
        match self {
            MeasureSpec::Lebesgue { mass } => CircleMeasure::lebesgue(*mass),
            MeasureSpec::Atoms { atoms } => {
                let list: Vec<(f64, f64)> = atoms.iter().map(|a| (a.angle, a.mass)).collect();
                CircleMeasure::atoms(&list)
            }
            MeasureSpec::TrigDensity { coeffs } => {
                let entries: Vec<(i64, Complex64)> =
                    coeffs.iter().map(|c| (c.j, Complex64::new(c.re, c.im))).collect();
                CircleMeasure::trig_density_signed(&entries)
            }
            MeasureSpec::Mixture { parts } => {
                let built = parts.iter().map(MeasureSpec::build).collect::<Result<Vec<_>>>()?;
                Ok(CircleMeasure::mixture(built))
            }
        }
    }
}

/// The built-in measure catalog used by the suite and the acceptance checks.
pub fn catalog() -> Vec<(&'static str, CircleMeasure)> {
    let third = TAU / 3.0;
    vec![
        ("zero", CircleMeasure::zero()),
        ("lebesgue(1)", CircleMeasure::lebesgue(1.0).unwrap()),
        ("lebesgue(0.5)", CircleMeasure::lebesgue(0.5).unwrap()),
        ("atom(0,1)", CircleMeasure::atom(0.0, 1.0).unwrap()),
        ("atoms[(0,0.5),(2pi/3,0.5)]", CircleMeasure::atoms(&[(0.0, 0.5), (third, 0.5)]).unwrap()),
        (
            "trig(c0=1,c1=0.4)",
            CircleMeasure::trig_density(&[Complex64::new(1.0, 0.0), Complex64::new(0.4, 0.0)]).unwrap(),
        ),
        (
            "lebesgue(0.5)+atom(pi,0.5)",
            CircleMeasure::mixture(vec![
                CircleMeasure::lebesgue(0.5).unwrap(),
                CircleMeasure::atom(std::f64::consts::PI, 0.5).unwrap(),
            ]),
        ),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Feasibility {
    Unchecked,
    Feasible { min_eig: f64 },
    Infeasible { min_eig: f64 },
}

/// Hermitian moment data `values(j)`, `|j| ≤ J`; only `j ≥ 0` is stored.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence {
    values: Vec<Complex64>,
    pub feasibility: Feasibility,
}

impl MomentSequence {
    /// Builds from `values(0), …, values(J)`. `values(0)` must be real and nonnegative.
    pub fn new(nonneg: Vec<Complex64>) -> Result<Self> {
        let Some(v0) = nonneg.first() else {
            return Err(Error::InvalidMeasure("moment sequence needs values(0)".into()));
        };
        if v0.im.abs() > 1e-12 * (1.0 + v0.re.abs()) || v0.re < -1e-12 {
            return Err(Error::InvalidMeasure(format!("values(0) must be real and ≥ 0, got {v0}")));
        }
        let mut values = nonneg;
        values[0] = Complex64::new(values[0].re.max(0.0), 0.0);
        Ok(Self { values, feasibility: Feasibility::Unchecked })
    }

    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, j: i64) -> Complex64 {
        let k = j.unsigned_abs() as usize;
        match self.values.get(k) {
            Some(v) if j < 0 => v.conj(),
            Some(v) => *v,
            None => Complex64::new(0.0, 0.0),
        }
    }

    pub fn nonneg_values(&self) -> &[Complex64] {
        &self.values
    }

    /// The `(J+1)×(J+1)` Toeplitz matrix `[values(j − k)]`.
    pub fn toeplitz(&self) -> nalgebra::DMatrix<Complex64> {
        let n = self.values.len();
        nalgebra::DMatrix::from_fn(n, n, |j, k| self.get(j as i64 - k as i64))
    }

    /// Fills [`Self::feasibility`] from the smallest Toeplitz eigenvalue; feasible iff
    /// `min_eig ≥ −tol`.
    pub fn toeplitz_feasibility(mut self, tol: f64) -> Self {
        let min_eig = linalg::min_hermitian_eigenvalue(&self.toeplitz());
        self.feasibility = if min_eig >= -tol {
            Feasibility::Feasible { min_eig }
        } else {
            Feasibility::Infeasible { min_eig }
        };
        self
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self.feasibility, Feasibility::Feasible { .. })
    }

    /// Smallest Toeplitz eigenvalue, once checked.
    pub fn min_eig(&self) -> Option<f64> {
        match self.feasibility {
            Feasibility::Unchecked => None,
            Feasibility::Feasible { min_eig } | Feasibility::Infeasible { min_eig } => Some(min_eig),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lebesgue_moments() {
        let mu = CircleMeasure::lebesgue(1.0).unwrap();
        assert_eq!(mu.moment(0), c(1.0, 0.0));
        assert_eq!(mu.moment(3), c(0.0, 0.0));
    }

    #[test]
    fn atom_moments() {
        let mu = CircleMeasure::atom(0.0, 1.0).unwrap();
        for j in -5..=5 {
            assert_eq!(mu.moment(j), c(1.0, 0.0));
        }
        let mu = CircleMeasure::atom(PI, 2.0).unwrap();
        let m = mu.moment(1);
        assert!((m - c(-2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn poisson_values() {
        for (_, mu) in catalog() {
            assert!((mu.poisson(c(0.0, 0.0)).unwrap() - mu.total_mass()).abs() < 1e-14);
        }
        let leb = CircleMeasure::lebesgue(1.0).unwrap();
        assert!((leb.poisson(c(0.3, 0.4)).unwrap() - 1.0).abs() < 1e-15);
        let atom = CircleMeasure::atom(0.0, 1.0).unwrap();
        assert!((atom.poisson(c(0.5, 0.0)).unwrap() - 3.0).abs() < 1e-14);
        assert!(matches!(leb.poisson(c(1.0, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(leb.poisson(c(0.8, 0.7)), Err(Error::Domain(_))));
    }

    #[test]
    fn total_masses() {
        assert_eq!(CircleMeasure::lebesgue(2.0).unwrap().total_mass(), 2.0);
        let a = CircleMeasure::atoms(&[(0.0, 0.5), (PI, 0.25)]).unwrap();
        assert_eq!(a.total_mass(), 0.75);
        let d = CircleMeasure::trig_density_signed(&[(0, c(1.0, 0.0)), (1, c(0.4, 0.0)), (-1, c(0.4, 0.0))])
            .unwrap();
        assert_eq!(d.total_mass(), 1.0);
        assert_eq!(CircleMeasure::zero().total_mass(), 0.0);
    }

    #[test]
    fn toeplitz_examples() {
        let leb = CircleMeasure::lebesgue(1.0).unwrap().moment_sequence(3).toeplitz_feasibility(1e-12);
        match leb.feasibility {
            Feasibility::Feasible { min_eig } => assert!((min_eig - 1.0).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        let atom = CircleMeasure::atom(0.0, 1.0).unwrap().moment_sequence(2).toeplitz_feasibility(1e-12);
        match atom.feasibility {
            Feasibility::Feasible { min_eig } => assert!(min_eig.abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        let ms = MomentSequence::new(vec![c(1.0, 0.0), c(0.8, 0.0), c(-0.5, 0.0)])
            .unwrap()
            .toeplitz_feasibility(1e-12);
        // closed form from the persymmetric block: (1.5 − √5.37)/2
        let expected = (1.5 - 5.37f64.sqrt()) / 2.0;
        match ms.feasibility {
            Feasibility::Infeasible { min_eig } => assert!((min_eig - expected).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn atoms_merge_and_normalize() {
        let a = CircleMeasure::atoms(&[(0.0, 0.5), (TAU - 1e-13, 0.25), (-PI, 1.0)]).unwrap();
        match &a.parts()[0] {
            MeasurePart::Atoms(atoms) => {
                assert_eq!(atoms.len(), 2);
                assert_eq!(atoms[0].mass, 0.75);
                assert!((atoms[1].angle - PI).abs() < 1e-15);
            }
            _ => unreachable!(),
        }
        assert!(CircleMeasure::atoms(&[(0.0, 0.0)]).is_err());
        assert!(CircleMeasure::atoms(&[(0.0, -1.0)]).is_err());
    }

    #[test]
    fn rejects_negative_density() {
        assert!(CircleMeasure::trig_density(&[c(1.0, 0.0), c(0.6, 0.0)]).is_err());
        assert!(CircleMeasure::trig_density(&[c(1.0, 0.0), c(0.5, 0.0)]).is_ok());
        assert!(CircleMeasure::lebesgue(-1.0).is_err());
        assert!(
            CircleMeasure::trig_density_signed(&[(0, c(1.0, 0.0)), (1, c(0.2, 0.1)), (-1, c(0.2, 0.1))]).is_err()
        );
    }

    #[test]
    fn circle_rule_reproduces_moments() {
        for (name, mu) in catalog() {
            for j in -6i64..=6 {
                let q = mu.integrate(64, |t| Complex64::cis(-(j as f64) * t));
                assert!((q - mu.moment(j)).norm() < 1e-12, "{name} j={j}");
            }
        }
    }

    #[test]
    fn json_schema_round_trip() {
        let text = r#"{"type":"mixture","parts":[{"type":"lebesgue","mass":0.5},
            {"type":"atoms","atoms":[{"angle":3.141592653589793,"mass":0.5}]},
            {"type":"trig_density","coeffs":[{"j":0,"re":1.0,"im":0.0},{"j":1,"re":0.2,"im":0.1}]}]}"#;
        let mu = CircleMeasure::from_json(text).unwrap();
        assert_eq!(mu.parts().len(), 3);
        assert!((mu.moment(-1) - c(-0.5 + 0.2, -0.1)).norm() < 1e-15);
        let back = mu.to_spec().build().unwrap();
        assert_eq!(back, mu);
    }
}
