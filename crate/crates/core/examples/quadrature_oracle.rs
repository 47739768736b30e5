//! Independent quadrature of the defining integrals, compared with closed-form Gram
//! entries.

use dirichlet_bidisc::gram::gram_entry;
use dirichlet_bidisc::measure::catalog;
use dirichlet_bidisc::quadrature::{QuadOracle, dirichlet_integral_quad};
use dirichlet_bidisc::{BiPoly, Complex64, QuadSpec, Result};

pub fn run_example() -> Result<()> {
    let spec = QuadSpec { radial_nodes: 32, angular_nodes: 64, atom_series_terms: 100_000 };
    let one = Complex64::new(1.0, 0.0);
    for (name, mu) in catalog() {
        let oracle = QuadOracle::new(&mu, &mu, spec, 3)?;
        let a = BiPoly::monomial(2, 1, one);
        let b = BiPoly::monomial(3, 1, one);
        let q = oracle.inner_product(&a, &b)?;
        let exact = gram_entry(&mu, &mu, (2, 1), (3, 1));
        println!(
            "{name:<28} <z1^2 z2, z1^3 z2>: quadrature {:+.8}  closed form {:+.8}  series tail {:.1e}",
            q.value.re, exact.re, q.tail_bound
        );
    }
    let (_, trig) = &catalog()[5];
    let f = BiPoly::from_fn(2, 2, |m, n| Complex64::new(m as f64 - n as f64, 0.5));
    let d = dirichlet_integral_quad(trig, trig, &f, spec)?;
    println!("Dirichlet integral of a sample polynomial under the trigonometric density: {:.10}", d.value);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
