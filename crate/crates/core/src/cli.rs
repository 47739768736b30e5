//! Command runner behind the `dirichlet-lab` binary.
//!
//! Every command yields a [`Report`] of named checks. The exit status is 0 when every
//! check passes, 1 when any check fails and 2 when the input does not validate.
//! Randomized inputs come from a ChaCha generator seeded with `--seed`, so a fixed
//! configuration reproduces its report byte for byte.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bipoly::{Axis, BiPoly};
use crate::error::{Error, Result};
use crate::gram::{GramMatrix, MonomialBasis, gram_entry, gram_matrix, richter_rhs};
use crate::koszul::{GleasonMode, gleason_solve, koszul_build};
use crate::linalg::{self, CMat, CVec};
use crate::measure::{CircleMeasure, catalog};
use crate::quadrature::{QuadOracle, QuadSpec};
use crate::report::{CheckRow, Report, fmt_f64};
use crate::toral::{
    ModelInput, ModelOptions, TruncatedPair, build_pair, reconstruct_gram_from_orbit, restrict_orbit,
    verify_model_hypotheses,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Identity names carried by report rows.
pub mod anchor {
    pub const ORACLE: &str = "Dirichlet integral as Poisson-weighted area integral";
    pub const RICHTER: &str = "Richter norm formula";
    pub const TORAL: &str = "toral 2-isometry";
    pub const MOMENT: &str = "moment formula for shift powers";
    pub const WANDERING: &str = "wandering subspace";
    pub const ADJOINT_KERNEL: &str = "joint kernel of adjoint shifts";
    pub const KERNEL: &str = "reproducing kernel";
    pub const GLEASON: &str = "Gleason decomposition";
    pub const KOSZUL: &str = "Koszul cohomology and Fredholm index";
    pub const GRAM_MOMENTS: &str = "Gram entries from circle moments";
    pub const ORBIT: &str = "orbit Gram table";
    pub const MODEL: &str = "model hypotheses";
    pub const HARDY: &str = "Hardy space inclusion";
    pub const SLICE: &str = "Hardy slice law";
    pub const POISSON: &str = "Poisson lower bound";
    pub const DIVISION: &str = "division property";
    pub const TOEPLITZ: &str = "trigonometric moment positivity";
}

/// Default tolerances, overridable with `--tol NAME=VAL`.
pub const DEFAULT_TOLERANCES: &[(&str, f64)] = &[
    ("division", 1e-13),
    ("gleason", 1e-10),
    ("gleason_objective", 1e-12),
    ("hardy", 1e-10),
    ("kernel", 1e-10),
    ("kernel_origin", 1e-12),
    ("model", 1e-10),
    ("moment", 1e-12),
    ("oracle", 1e-8),
    ("oracle_atom", 1e-5),
    ("orbit", 1e-12),
    ("poisson", 1e-12),
    ("rank", 1e-8),
    ("recover", 1e-10),
    ("richter", 1e-10),
    ("slice", 1e-12),
    ("toeplitz", 1e-10),
    ("toral", 1e-12),
];

#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances(BTreeMap<String, f64>);

impl Default for Tolerances {
    fn default() -> Self {
        Self(DEFAULT_TOLERANCES.iter().map(|&(k, v)| (k.to_string(), v)).collect())
    }
}

impl Tolerances {
    pub fn get(&self, name: &str) -> f64 {
        self.0[name]
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !self.0.contains_key(name) {
            let known: Vec<&str> = self.0.keys().map(String::as_str).collect();
            return Err(Error::Input(format!("unknown tolerance {name:?}; known: {}", known.join(", "))));
        }
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::Input(format!("tolerance {name} must be positive, got {value}")));
        }
        self.0.insert(name.to_string(), value);
        Ok(())
    }

    /// Applies a `NAME=VAL` override.
    pub fn apply(&mut self, text: &str) -> Result<()> {
        let (name, value) = text
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("--tol expects NAME=VAL, got {text:?}")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("--tol {name}: {value:?} is not a number")))?;
        self.set(name.trim(), value)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Gram,
    OracleCompare,
    RichterCheck,
    ToralCheck,
    MomentCheck,
    WanderingCheck,
    Kernel,
    AdjointKernel,
    Gleason,
    Koszul,
    RecoverMoments,
    ReconstructOrbit,
    VerifyPair,
    Suite,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }

    fn default_basis(self) -> (usize, usize) {
        match self {
            Command::ToralCheck | Command::MomentCheck => (8, 8),
            Command::Koszul => (6, 6),
            _ => (4, 4),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "dirichlet-lab", version, about = "Checks identities of Dirichlet-type spaces on the bidisc")]
pub struct CliArgs {
    #[arg(value_enum)]
    pub command: Command,
    /// Truncation bidegree.
    #[arg(long, num_args = 2, value_names = ["N1", "N2"])]
    pub basis: Option<Vec<usize>>,
    /// Measure JSON for the first variable (default: zero measure).
    #[arg(long, value_name = "FILE")]
    pub measure1: Option<PathBuf>,
    /// Measure JSON for the second variable (default: zero measure).
    #[arg(long, value_name = "FILE")]
    pub measure2: Option<PathBuf>,
    /// Polynomial JSON.
    #[arg(long, value_name = "FILE")]
    pub poly: Option<PathBuf>,
    /// Operator pair JSON for `verify-pair`.
    #[arg(long, value_name = "FILE")]
    pub pair: Option<PathBuf>,
    /// Point in the bidisc as `re,im,re,im`.
    #[arg(long, allow_hyphen_values = true, value_name = "RE,IM,RE,IM")]
    pub lambda: Option<String>,
    #[arg(long)]
    pub radial: Option<usize>,
    #[arg(long)]
    pub angular: Option<usize>,
    #[arg(long = "atom-terms")]
    pub atom_terms: Option<usize>,
    /// Tolerance override, repeatable.
    #[arg(long = "tol", value_name = "NAME=VAL")]
    pub tol: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Report JSON destination (default: stdout).
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Also write the check rows as CSV.
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    /// `None` picks a per-command default.
    pub basis: Option<(usize, usize)>,
    pub quad: QuadSpec,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub lambda: Option<(Complex64, Complex64)>,
    pub measure1: Option<PathBuf>,
    pub measure2: Option<PathBuf>,
    pub poly: Option<PathBuf>,
    pub pair: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            basis: None,
            quad: QuadSpec::default(),
            tolerances: Tolerances::default(),
            seed: 0,
            lambda: None,
            measure1: None,
            measure2: None,
            poly: None,
            pair: None,
            out: None,
            csv: None,
        }
    }

    pub fn from_args(args: CliArgs) -> Result<Self> {
        let mut cfg = Self::new(args.command);
        cfg.basis = args.basis.map(|b| (b[0], b[1]));
        let d = QuadSpec::default();
        cfg.quad = QuadSpec {
            radial_nodes: args.radial.unwrap_or(d.radial_nodes),
            angular_nodes: args.angular.unwrap_or(d.angular_nodes),
            atom_series_terms: args.atom_terms.unwrap_or(d.atom_series_terms),
        };
        for t in &args.tol {
            cfg.tolerances.apply(t)?;
        }
        cfg.seed = args.seed;
        cfg.lambda = args.lambda.as_deref().map(parse_lambda).transpose()?;
        cfg.measure1 = args.measure1;
        cfg.measure2 = args.measure2;
        cfg.poly = args.poly;
        cfg.pair = args.pair;
        cfg.out = args.out;
        cfg.csv = args.csv;
        Ok(cfg)
    }

    fn basis_or_default(&self) -> (usize, usize) {
        self.basis.unwrap_or_else(|| self.command.default_basis())
    }
}

/// Parses `re,im,re,im`.
pub fn parse_lambda(text: &str) -> Result<(Complex64, Complex64)> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Input(format!("--lambda expects re,im,re,im, got {text:?}")))?;
    match parts.as_slice() {
        &[a, b, c, d] => Ok((Complex64::new(a, b), Complex64::new(c, d))),
        _ => Err(Error::Input(format!("--lambda expects four numbers, got {}", parts.len()))),
    }
}

/// Operator pair file for `verify-pair`. Complex numbers are `[re, im]`; matrices are
/// lists of rows. `gram[i][k] = ⟨e_i, e_k⟩` and defaults to the identity.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairFile {
    pub t1: Vec<Vec<[f64; 2]>>,
    pub t2: Vec<Vec<[f64; 2]>>,
    pub f0: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<[f64; 2]>>>,
    /// Coordinates on which the toral identity is claimed.
    #[serde(default)]
    pub window: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_depth: Option<usize>,
}

fn to_rows(m: &CMat) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|k| [m[(i, k)].re, m[(i, k)].im]).collect()).collect()
}

fn from_rows(rows: &[Vec<[f64; 2]>], what: &str) -> Result<CMat> {
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Input(format!("{what}: ragged rows")));
    }
    Ok(CMat::from_fn(n, cols, |i, k| Complex64::new(rows[i][k][0], rows[i][k][1])))
}

impl PairFile {
    /// The truncated multiplication pair with `f₀ = 1` and its exact toral window.
    pub fn from_truncated(pair: &TruncatedPair) -> Self {
        let b = pair.basis();
        let mut f0 = vec![[0.0, 0.0]; b.len()];
        f0[b.index(0, 0)] = [1.0, 0.0];
        Self {
            t1: to_rows(pair.shift(Axis::Z1)),
            t2: to_rows(pair.shift(Axis::Z2)),
            f0,
            gram: Some(to_rows(pair.gram().entries())),
            window: pair.window(2, 2).unwrap_or_default(),
            orbit_depth: None,
        }
    }

    pub fn to_model(&self) -> Result<(ModelInput, ModelOptions)> {
        let t1 = from_rows(&self.t1, "t1")?;
        let n = t1.nrows();
        let input = ModelInput {
            t1,
            t2: from_rows(&self.t2, "t2")?,
            f0: CVec::from_iterator(n.max(self.f0.len()), self.f0.iter().map(|z| Complex64::new(z[0], z[1]))),
            gram: self.gram.as_deref().map(|g| from_rows(g, "gram")).transpose()?,
        };
        let opts = ModelOptions {
            tol: 0.0,
            window: self.window.clone(),
            orbit_depth: self.orbit_depth.unwrap_or(n.min(10)),
        };
        Ok((input, opts))
    }
}

/// Result of [`run`]: exit status, the report (absent on input errors) and the
/// diagnostic lines meant for stderr.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Option<Report>,
    pub messages: Vec<String>,
}

/// Runs one command and writes `--out` / `--csv` if requested.
pub fn run(config: &RunConfig) -> Outcome {
    let report = match dispatch(config) {
        Ok(r) => r,
        Err(e) => {
            return Outcome { exit_code: EXIT_INPUT, report: None, messages: vec![format!("input error: {e}")] };
        }
    };
    let mut messages: Vec<String> = report
        .failures()
        .map(|r| {
            format!(
                "FAIL {} [{}]: value {} exceeds tolerance {}",
                r.name,
                r.anchor,
                fmt_f64(r.value),
                fmt_f64(r.tolerance)
            )
        })
        .collect();
    let mut exit_code = if report.all_pass() { EXIT_PASS } else { EXIT_FAIL };
    let writes = [(config.out.as_deref(), report.to_json()), (config.csv.as_deref(), report.to_csv())];
    for (path, text) in writes {
        if let Some(path) = path
            && let Err(e) = std::fs::write(path, text)
        {
            messages.push(format!("cannot write {}: {e}", path.display()));
            exit_code = EXIT_INPUT;
        }
    }
    Outcome { exit_code, report: Some(report), messages }
}

/// Parses process arguments, runs, prints, and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match CliArgs::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let config = match RunConfig::from_args(args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("input error: {e}");
            return EXIT_INPUT;
        }
    };
    let outcome = run(&config);
    if config.out.is_none()
        && let Some(r) = &outcome.report
    {
        println!("{}", r.to_json());
    }
    for m in &outcome.messages {
        eprintln!("{m}");
    }
    outcome.exit_code
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Domain(_)
            | Error::InvalidMeasure(_)
            | Error::InvalidPolynomial(_)
            | Error::BasisTooSmall { .. }
            | Error::InvalidQuadSpec(_)
            | Error::Input(_)
            | Error::Json(_)
            | Error::Io(_)
    )
}

/// Appends the rows of a check; numerical breakdowns become a failing row, input
/// errors propagate.
fn absorb(report: &mut Report, name: &str, anchor: &str, rows: Result<Vec<CheckRow>>) -> Result<()> {
    match rows {
        Ok(rows) => rows.into_iter().for_each(|r| report.push(r)),
        Err(e) if is_input_error(&e) => return Err(e),
        Err(e) => report.push(CheckRow::flag(format!("{name} ({e})"), anchor, false)),
    }
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load_measure(path: Option<&Path>) -> Result<CircleMeasure> {
    match path {
        Some(p) => CircleMeasure::from_json(&read(p)?),
        None => Ok(CircleMeasure::zero()),
    }
}

fn check_bidisc(lambda: (Complex64, Complex64)) -> Result<()> {
    if lambda.0.norm() < 1.0 && lambda.1.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("point {lambda:?} is outside the open bidisc")))
    }
}

fn c1() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Uniform point in the disc of radius `radius`.
pub fn random_disc<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Complex64 {
    loop {
        let x: f64 = rng.random_range(-1.0..1.0);
        let y: f64 = rng.random_range(-1.0..1.0);
        if x * x + y * y < 1.0 {
            return Complex64::new(x, y) * radius;
        }
    }
}

fn random_poly<R: Rng + ?Sized>(rng: &mut R, cap: (usize, usize)) -> BiPoly {
    let d1 = rng.random_range(0..=cap.0);
    let d2 = rng.random_range(0..=cap.1);
    BiPoly::random(rng, d1, d2)
}

/// `λ = (t e^{iπ/5}, s e^{−iπ/3})` for `t, s` on five equispaced points of `[−0.3, 0.3]`.
pub fn koszul_grid() -> Vec<(Complex64, Complex64)> {
    let ts: Vec<f64> = (0..5).map(|i| -0.3 + 0.15 * i as f64).collect();
    let u1 = Complex64::from_polar(1.0, PI / 5.0);
    let u2 = Complex64::from_polar(1.0, -PI / 3.0);
    ts.iter().flat_map(|&t| ts.iter().map(move |&s| (u1 * t, u2 * s))).collect()
}

// ---- checks ---------------------------------------------------------------------------

fn hardy_rows(t: &Tolerances, label: &str, g: &GramMatrix) -> Vec<CheckRow> {
    vec![CheckRow::at_least_neg(format!("{label}min eig(G − I)"), anchor::HARDY, g.hardy_excess_min_eig(), t.get("hardy"))]
}

/// Quadrature against closed-form entries over all monomial pairs of `basis`. The row
/// value is the worst error divided by its allowance.
fn oracle_rows(
    t: &Tolerances,
    quad: QuadSpec,
    label: &str,
    mu1: &CircleMeasure,
    mu2: &CircleMeasure,
    basis: MonomialBasis,
) -> Result<Vec<CheckRow>> {
    let oracle = QuadOracle::new(mu1, mu2, quad, basis.n1.max(basis.n2))?;
    let atoms = mu1.has_atoms() || mu2.has_atoms();
    let monos: Vec<BiPoly> = basis.pairs().map(|(m, n)| BiPoly::monomial(m, n, c1())).collect();
    let mut worst = 0.0f64;
    for (i, a) in basis.pairs().enumerate() {
        for (k, b) in basis.pairs().enumerate() {
            let exact = gram_entry(mu1, mu2, a, b);
            let q = oracle.inner_product(&monos[i], &monos[k])?;
            let allowance = if atoms {
                t.get("oracle_atom").max(q.tail_bound)
            } else {
                t.get("oracle") * (1.0 + exact.norm())
            };
            worst = worst.max((q.value - exact).norm() / allowance);
        }
    }
    Ok(vec![CheckRow::at_most(format!("{label}quadrature vs Gram (error / allowance)"), anchor::ORACLE, worst, 1.0)])
}

fn richter_rows(t: &Tolerances, label: &str, mu1: &CircleMeasure, mu2: &CircleMeasure, polys: &[BiPoly]) -> Result<Vec<CheckRow>> {
    let mut worst = 0.0f64;
    for p in polys {
        let (b1, b2) = p.bidegree();
        let g = gram_matrix(mu1, mu2, MonomialBasis::new(b1 + 3, b2 + 3))?;
        for k in 0..=3 {
            for l in 0..=3 {
                let lhs = g.norm_sq(&p.shift(k, l))?;
                let rhs = richter_rhs(mu1, mu2, p, k, l)?;
                worst = worst.max((lhs - rhs).abs() / rhs.abs().max(f64::MIN_POSITIVE));
            }
        }
    }
    Ok(vec![CheckRow::at_most(format!("{label}Richter relative error (k, l ≤ 3)"), anchor::RICHTER, worst, t.get("richter"))])
}

fn toral_rows(t: &Tolerances, label: &str, pair: &TruncatedPair) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for (i, j) in [(Axis::Z1, Axis::Z1), (Axis::Z1, Axis::Z2), (Axis::Z2, Axis::Z1), (Axis::Z2, Axis::Z2)] {
        let v = pair.toral_residual(i, j)?;
        rows.push(CheckRow::at_most(
            format!("{label}toral residual ({},{})", i.index(), j.index()),
            anchor::TORAL,
            v,
            t.get("toral") * pair.gram_norm(),
        ));
    }
    Ok(rows)
}

fn moment_rows(t: &Tolerances, label: &str, pair: &TruncatedPair) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for k in 0..=4 {
        for l in 0..=(4 - k) {
            if k + l == 0 {
                continue;
            }
            match pair.moment_identity_residual(k, l) {
                Ok(v) => rows.push(CheckRow::at_most(format!("{label}moment identity ({k},{l})"), anchor::MOMENT, v, t.get("moment"))),
                Err(Error::WindowEmpty(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(rows)
}

fn wandering_rows(label: &str, pair: &TruncatedPair) -> Vec<CheckRow> {
    vec![CheckRow::at_most(format!("{label}wandering cross terms"), anchor::WANDERING, pair.wandering_check(), 0.0)]
}

fn adjoint_rows(label: &str, pair: &TruncatedPair) -> Vec<CheckRow> {
    [Axis::Z1, Axis::Z2]
        .into_iter()
        .map(|a| {
            CheckRow::at_most(
                format!("{label}adjoint kernel cross terms (T{})", a.index()),
                anchor::ADJOINT_KERNEL,
                pair.adjoint_kernel_check(a),
                0.0,
            )
        })
        .collect()
}

fn kernel_rows(t: &Tolerances, label: &str, g: &GramMatrix, points: &[(Complex64, Complex64)], rng: &mut ChaCha8Rng) -> Result<Vec<CheckRow>> {
    let basis = g.basis();
    let origin = g.kernel_coeffs((Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)))?;
    let e0 = basis.index(0, 0);
    let dev = origin
        .iter()
        .enumerate()
        .map(|(i, z)| (z - if i == e0 { c1() } else { Complex64::new(0.0, 0.0) }).norm())
        .fold(0.0, f64::max);
    let mut worst = 0.0f64;
    for &w in points {
        let f = BiPoly::random(rng, basis.n1, basis.n2);
        let kw = basis.to_poly(&g.kernel_coeffs(w)?);
        let err = (g.inner_product(&f, &kw)? - f.eval(w.0, w.1)).norm();
        worst = worst.max(err / (1.0 + g.norm_sq(&f)?.sqrt()));
    }
    Ok(vec![
        CheckRow::at_most(format!("{label}kernel at origin vs e₀"), anchor::KERNEL, dev, t.get("kernel_origin")),
        CheckRow::at_most(
            format!("{label}reproducing property at {} points", points.len()),
            anchor::KERNEL,
            worst,
            t.get("kernel"),
        ),
    ])
}

struct GleasonStats {
    division_residual: f64,
    min_norm_residual: f64,
    objective_excess: f64,
}

fn gleason_stats(g: &GramMatrix, cases: &[(BiPoly, (Complex64, Complex64))]) -> Result<GleasonStats> {
    let mut s = GleasonStats { division_residual: 0.0, min_norm_residual: 0.0, objective_excess: 0.0 };
    for (f, lambda) in cases {
        let d = gleason_solve(g, f, *lambda, GleasonMode::SuccessiveDivision)?;
        let m = gleason_solve(g, f, *lambda, GleasonMode::MinNorm)?;
        let scale = 1.0 + g.norm_sq(f)?.sqrt();
        s.division_residual = s.division_residual.max(d.residual / scale);
        s.min_norm_residual = s.min_norm_residual.max(m.residual / scale);
        s.objective_excess = s.objective_excess.max((m.objective - d.objective) / d.objective.max(1.0));
    }
    Ok(s)
}

fn gleason_rows(t: &Tolerances, label: &str, g: &GramMatrix, cases: &[(BiPoly, (Complex64, Complex64))]) -> Result<Vec<CheckRow>> {
    let s = gleason_stats(g, cases)?;
    Ok(vec![
        CheckRow::at_most(format!("{label}Gleason residual, successive division"), anchor::GLEASON, s.division_residual, t.get("gleason")),
        CheckRow::at_most(format!("{label}Gleason residual, minimum norm"), anchor::GLEASON, s.min_norm_residual, t.get("gleason")),
        CheckRow::at_most(
            format!("{label}minimum-norm objective excess"),
            anchor::GLEASON,
            s.objective_excess,
            t.get("gleason_objective"),
        ),
    ])
}

fn koszul_rows(
    t: &Tolerances,
    label: &str,
    mu1: &CircleMeasure,
    mu2: &CircleMeasure,
    n: (usize, usize),
    lambdas: &[(Complex64, Complex64)],
) -> Result<Vec<CheckRow>> {
    let mut off = 0usize;
    for &lambda in lambdas {
        let stage = koszul_build(mu1, mu2, n.0, n.1, lambda)?;
        match stage.cohomology_dims(t.get("rank")) {
            Ok(h) if h.dims() == (0, 0, 1) && h.index() == 1 => {}
            Ok(_) | Err(Error::RankAmbiguous { .. }) => off += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(vec![CheckRow::at_most(
        format!("{label}points of {} without cohomology (0,0,1) and index 1", lambdas.len()),
        anchor::KOSZUL,
        off as f64,
        0.0,
    )])
}

fn recover_rows(t: &Tolerances, label: &str, g: &GramMatrix, mu1: &CircleMeasure, mu2: &CircleMeasure) -> Result<Vec<CheckRow>> {
    let rec = g.recover_moments()?;
    let mut err = 0.0f64;
    for (seq, mu) in [(&rec.mu1, mu1), (&rec.mu2, mu2)] {
        for j in 0..=seq.order() as i64 {
            err = err.max((seq.get(j) - mu.moment(j)).norm());
        }
    }
    let tol = t.get("recover");
    let min_eig = [rec.mu1.clone(), rec.mu2.clone()]
        .into_iter()
        .map(|s| s.toeplitz_feasibility(tol).min_eig().unwrap_or(f64::NAN))
        .fold(f64::INFINITY, f64::min);
    Ok(vec![
        CheckRow::at_most(format!("{label}recovered moments vs closed form"), anchor::GRAM_MOMENTS, err, tol),
        CheckRow::at_most(format!("{label}moment recovery consistency"), anchor::GRAM_MOMENTS, rec.consistency_residual, tol),
        CheckRow::at_least_neg(format!("{label}recovered Toeplitz min eigenvalue"), anchor::TOEPLITZ, min_eig, tol),
    ])
}

fn orbit_rows(t: &Tolerances, label: &str, g: &GramMatrix) -> Result<Vec<CheckRow>> {
    let (d1, d2) = restrict_orbit(g);
    let full = reconstruct_gram_from_orbit(&d1, &d2)?;
    let diff = linalg::max_abs(&(full - g.entries()));
    Ok(vec![CheckRow::at_most(format!("{label}orbit reconstruction vs Gram"), anchor::ORBIT, diff, t.get("orbit"))])
}

fn measure_rows(t: &Tolerances, label: &str, mu: &CircleMeasure, rng: &mut ChaCha8Rng) -> Result<Vec<CheckRow>> {
    let mass = mu.total_mass();
    let mut slack = f64::INFINITY;
    for _ in 0..200 {
        let w = random_disc(rng, 1.0);
        slack = slack.min(mu.poisson(w)? - mass * (1.0 - w.norm_sqr()) / 4.0);
    }
    let min_eig = mu.moment_sequence(8).toeplitz_feasibility(t.get("toeplitz")).min_eig().unwrap_or(f64::NAN);
    Ok(vec![
        CheckRow::at_least_neg(format!("{label}Poisson slack at 200 points"), anchor::POISSON, slack, t.get("poisson")),
        CheckRow::at_least_neg(format!("{label}moment Toeplitz min eigenvalue"), anchor::TOEPLITZ, min_eig, t.get("toeplitz")),
    ])
}

fn polynomial_rows(t: &Tolerances, rng: &mut ChaCha8Rng) -> Result<Vec<CheckRow>> {
    let tol = t.get("division");
    let mut round_trip = 0.0f64;
    for i in 0..100 {
        let q = random_poly(rng, (4, 4));
        let lambda = random_disc(rng, 1.0);
        let axis = if i % 2 == 0 { Axis::Z1 } else { Axis::Z2 };
        let back = q.mul_linear(axis, lambda).divide_slice(axis, lambda, tol)?;
        round_trip = round_trip.max(back.max_coeff_diff(&q) / q.max_abs_coeff().max(f64::MIN_POSITIVE));
    }
    let mut missed = 0usize;
    for i in 0..20 {
        let q = random_poly(rng, (3, 3));
        let lambda = random_disc(rng, 1.0);
        let axis = if i % 2 == 0 { Axis::Z1 } else { Axis::Z2 };
        let bump = Complex64::new(0.5 + rng.random::<f64>(), rng.random::<f64>());
        let f = &q.mul_linear(axis, lambda) + &BiPoly::constant(bump);
        if !matches!(f.divide_slice(axis, lambda, tol), Err(Error::SliceNotVanishing(_))) {
            missed += 1;
        }
    }
    let radii = [0.5, 0.9, 0.99, 0.999];
    let mut monotone = 0.0f64;
    let mut gap = 0.0f64;
    for _ in 0..20 {
        let f = random_poly(rng, (4, 4));
        let profile: Vec<f64> = radii.iter().map(|&r| f.slice_profile(r)).collect::<Result<_>>()?;
        for w in profile.windows(2) {
            monotone = monotone.max(w[0] - w[1]);
        }
        let r: f64 = 0.999999;
        let analytic: f64 = f.terms().map(|((_, n), a)| a.norm_sqr() * (1.0 - (r * r).powi(n as i32))).sum();
        let hardy = f.hardy_norm_sq();
        gap = gap.max((hardy - f.slice_profile(r)? - analytic).abs() / hardy.max(f64::MIN_POSITIVE));
    }
    Ok(vec![
        CheckRow::at_most("division round trip (relative)", anchor::DIVISION, round_trip, tol),
        CheckRow::at_most("non-divisible inputs accepted", anchor::DIVISION, missed as f64, 0.0),
        CheckRow::at_most("slice profile decrease", anchor::SLICE, monotone, t.get("slice")),
        CheckRow::at_most("slice profile gap vs analytic", anchor::SLICE, gap, t.get("slice")),
    ])
}

// ---- commands -------------------------------------------------------------------------

struct Inputs {
    mu1: CircleMeasure,
    mu2: CircleMeasure,
    basis: MonomialBasis,
}

fn inputs(cfg: &RunConfig) -> Result<Inputs> {
    let (n1, n2) = cfg.basis_or_default();
    Ok(Inputs {
        mu1: load_measure(cfg.measure1.as_deref())?,
        mu2: load_measure(cfg.measure2.as_deref())?,
        basis: MonomialBasis::new(n1, n2),
    })
}

fn poly_or_random(cfg: &RunConfig, rng: &mut ChaCha8Rng, cap: (usize, usize)) -> Result<BiPoly> {
    match &cfg.poly {
        Some(p) => BiPoly::from_json(&read(p)?),
        None => Ok(random_poly(rng, cap)),
    }
}

fn complex_json(z: Complex64) -> String {
    format!("[{},{}]", fmt_f64(z.re), fmt_f64(z.im))
}

fn dispatch(cfg: &RunConfig) -> Result<Report> {
    let t = &cfg.tolerances;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = Report::new(cfg.command.name(), cfg.seed);
    let name = cfg.command.name();
    if let Some(l) = cfg.lambda {
        check_bidisc(l)?;
    }
    match cfg.command {
        Command::Gram => {
            let i = inputs(cfg)?;
            let g = gram_matrix(&i.mu1, &i.mu2, i.basis)?;
            hardy_rows(t, "", &g).into_iter().for_each(|r| report.push(r));
            report.data = Some(g.to_json());
        }
        Command::OracleCompare => {
            let i = inputs(cfg)?;
            absorb(&mut report, &name, anchor::ORACLE, oracle_rows(t, cfg.quad, "", &i.mu1, &i.mu2, i.basis))?;
        }
        Command::RichterCheck => {
            let i = inputs(cfg)?;
            let polys = match &cfg.poly {
                Some(_) => vec![poly_or_random(cfg, &mut rng, (4, 4))?],
                None => (0..5).map(|_| random_poly(&mut rng, (i.basis.n1, i.basis.n2))).collect(),
            };
            absorb(&mut report, &name, anchor::RICHTER, richter_rows(t, "", &i.mu1, &i.mu2, &polys))?;
        }
        Command::ToralCheck | Command::MomentCheck | Command::WanderingCheck | Command::AdjointKernel => {
            let i = inputs(cfg)?;
            let pair = build_pair(&i.mu1, &i.mu2, i.basis.n1, i.basis.n2)?;
            let rows = match cfg.command {
                Command::ToralCheck => toral_rows(t, "", &pair),
                Command::MomentCheck => moment_rows(t, "", &pair),
                Command::WanderingCheck => Ok(wandering_rows("", &pair)),
                _ => Ok(adjoint_rows("", &pair)),
            };
            absorb(&mut report, &name, anchor::TORAL, rows)?;
        }
        Command::Kernel => {
            let i = inputs(cfg)?;
            let g = gram_matrix(&i.mu1, &i.mu2, i.basis)?;
            let points = match cfg.lambda {
                Some(w) => vec![w],
                None => (0..20).map(|_| (random_disc(&mut rng, 0.9), random_disc(&mut rng, 0.9))).collect(),
            };
            absorb(&mut report, &name, anchor::KERNEL, kernel_rows(t, "", &g, &points, &mut rng))?;
        }
        Command::Gleason => {
            let i = inputs(cfg)?;
            let g = gram_matrix(&i.mu1, &i.mu2, i.basis)?;
            let f = poly_or_random(cfg, &mut rng, (i.basis.n1, i.basis.n2))?;
            let lambda = match cfg.lambda {
                Some(l) => l,
                None => (random_disc(&mut rng, 0.9), random_disc(&mut rng, 0.9)),
            };
            i.basis.coefficients(&f)?;
            let d = gleason_solve(&g, &f, lambda, GleasonMode::SuccessiveDivision)?;
            let m = gleason_solve(&g, &f, lambda, GleasonMode::MinNorm)?;
            absorb(&mut report, &name, anchor::GLEASON, gleason_rows(t, "", &g, &[(f, lambda)]))?;
            report.data = Some(format!(
                "{{\"lambda\":[{},{}],\"successive_division\":{{\"residual\":{},\"objective\":{}}},\"min_norm\":{{\"residual\":{},\"objective\":{}}}}}",
                complex_json(lambda.0),
                complex_json(lambda.1),
                fmt_f64(d.residual),
                fmt_f64(d.objective),
                fmt_f64(m.residual),
                fmt_f64(m.objective)
            ));
        }
        Command::Koszul => {
            let i = inputs(cfg)?;
            let lambda = cfg.lambda.unwrap_or((Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)));
            let rank_tol = t.get("rank");
            let stage = koszul_build(&i.mu1, &i.mu2, i.basis.n1, i.basis.n2, lambda)?;
            match stage.cohomology_dims(rank_tol) {
                Ok(h) => {
                    report.push(CheckRow::at_most(
                        "cohomology (h0, h1, h2) distance from (0, 0, 1)",
                        anchor::KOSZUL,
                        (h.h0 + h.h1 + h.h2.abs_diff(1)) as f64,
                        0.0,
                    ));
                    report.push(CheckRow::at_most("Fredholm index − 1", anchor::KOSZUL, (h.index() - 1).abs() as f64, 0.0));
                    report.data = Some(format!(
                        "{{\"lambda\":[{},{}],\"dims\":[{},{},{}],\"index\":{},\"sigma_min_used\":{},\"rank_tol\":{}}}",
                        complex_json(lambda.0),
                        complex_json(lambda.1),
                        h.h0,
                        h.h1,
                        h.h2,
                        h.index(),
                        fmt_f64(h.sigma_min_used),
                        fmt_f64(rank_tol)
                    ));
                }
                Err(e) => absorb(&mut report, &name, anchor::KOSZUL, Err(e))?,
            }
        }
        Command::RecoverMoments => {
            let i = inputs(cfg)?;
            let g = gram_matrix(&i.mu1, &i.mu2, i.basis)?;
            absorb(&mut report, &name, anchor::GRAM_MOMENTS, recover_rows(t, "", &g, &i.mu1, &i.mu2))?;
            let rec = g.recover_moments()?;
            let seq = |s: &crate::measure::MomentSequence| {
                s.nonneg_values().iter().map(|&z| complex_json(z)).collect::<Vec<_>>().join(",")
            };
            report.data = Some(format!(
                "{{\"mu1\":[{}],\"mu2\":[{}],\"consistency_residual\":{}}}",
                seq(&rec.mu1),
                seq(&rec.mu2),
                fmt_f64(rec.consistency_residual)
            ));
        }
        Command::ReconstructOrbit => {
            let i = inputs(cfg)?;
            let g = gram_matrix(&i.mu1, &i.mu2, i.basis)?;
            absorb(&mut report, &name, anchor::ORBIT, orbit_rows(t, "", &g))?;
        }
        Command::VerifyPair => {
            let path = cfg.pair.as_deref().ok_or_else(|| Error::Input("verify-pair needs --pair FILE".into()))?;
            let file: PairFile = serde_json::from_str(&read(path)?)?;
            let (input, mut opts) = file.to_model()?;
            opts.tol = t.get("model");
            let model = verify_model_hypotheses(&input, &opts)?;
            let mut data = String::from("{\"items\":[");
            for (k, item) in model.items.iter().enumerate() {
                if k > 0 {
                    data.push(',');
                }
                let status = match item.pass {
                    Some(true) => "\"pass\"",
                    Some(false) => "\"fail\"",
                    None => "\"not evaluated\"",
                };
                write!(data, "{{\"check\":{:?},\"status\":{status},\"max_violation\":{}}}", item.check, fmt_f64(item.max_violation))
                    .unwrap();
                if let Some(pass) = item.pass {
                    report.push(CheckRow {
                        name: item.check.clone(),
                        anchor: anchor::MODEL.to_string(),
                        value: item.max_violation,
                        tolerance: item.tolerance,
                        pass,
                    });
                }
            }
            data.push_str("]}");
            report.data = Some(data);
        }
        Command::Suite => suite(t, cfg.quad, &mut rng, &mut report)?,
    }
    Ok(report)
}

/// Every invariant over the measure catalog and its pairs.
fn suite(t: &Tolerances, quad: QuadSpec, rng: &mut ChaCha8Rng, report: &mut Report) -> Result<()> {
    absorb(report, "polynomials", anchor::DIVISION, polynomial_rows(t, rng))?;
    let cat = catalog();
    for (name, mu) in &cat {
        let rows = measure_rows(t, &format!("{name}: "), mu, rng);
        absorb(report, name, anchor::POISSON, rows)?;
    }
    let basis = MonomialBasis::new(4, 4);
    let mut lambdas = vec![(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))];
    lambdas.extend(koszul_grid());
    for (n1, mu1) in &cat {
        for (n2, mu2) in &cat {
            let label = format!("{n1} × {n2}: ");
            let g = match gram_matrix(mu1, mu2, basis) {
                Ok(g) => g,
                Err(e) => {
                    absorb(report, &format!("{label}Gram"), anchor::GRAM_MOMENTS, Err(e))?;
                    continue;
                }
            };
            hardy_rows(t, &label, &g).into_iter().for_each(|r| report.push(r));
            absorb(report, &label, anchor::ORACLE, oracle_rows(t, quad, &label, mu1, mu2, basis))?;
            let polys: Vec<BiPoly> = (0..2).map(|_| random_poly(rng, (4, 4))).collect();
            absorb(report, &label, anchor::RICHTER, richter_rows(t, &label, mu1, mu2, &polys))?;
            match build_pair(mu1, mu2, 8, 8) {
                Ok(pair) => {
                    absorb(report, &label, anchor::TORAL, toral_rows(t, &label, &pair))?;
                    absorb(report, &label, anchor::MOMENT, moment_rows(t, &label, &pair))?;
                    wandering_rows(&label, &pair).into_iter().for_each(|r| report.push(r));
                    adjoint_rows(&label, &pair).into_iter().for_each(|r| report.push(r));
                }
                Err(e) => absorb(report, &label, anchor::TORAL, Err(e))?,
            }
            let points: Vec<_> = (0..20).map(|_| (random_disc(rng, 0.9), random_disc(rng, 0.9))).collect();
            absorb(report, &label, anchor::KERNEL, kernel_rows(t, &label, &g, &points, rng))?;
            let cases: Vec<_> = (0..4)
                .map(|_| (random_poly(rng, (4, 4)), (random_disc(rng, 0.9), random_disc(rng, 0.9))))
                .collect();
            absorb(report, &label, anchor::GLEASON, gleason_rows(t, &label, &g, &cases))?;
            absorb(report, &label, anchor::KOSZUL, koszul_rows(t, &label, mu1, mu2, (6, 6), &lambdas))?;
            absorb(report, &label, anchor::GRAM_MOMENTS, recover_rows(t, &label, &g, mu1, mu2))?;
            absorb(report, &label, anchor::ORBIT, orbit_rows(t, &label, &g))?;
        }
    }
    Ok(())
}
