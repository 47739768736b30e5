//! Gram matrices of `D(μ₁, μ₂)`, reproducing kernels, the Richter norm formula and
//! reading moments back off a Gram matrix.

use dirichlet_bidisc::gram::{gram_matrix, richter_rhs};
use dirichlet_bidisc::measure::CircleMeasure;
use dirichlet_bidisc::{BiPoly, Complex64, MonomialBasis, Result};

pub fn run_example() -> Result<()> {
    let mu1 = CircleMeasure::lebesgue(1.0)?;
    let mu2 = CircleMeasure::atoms(&[(0.0, 0.5), (2.0 * std::f64::consts::PI / 3.0, 0.5)])?;
    let g = gram_matrix(&mu1, &mu2, MonomialBasis::new(4, 4))?;
    println!("basis size {}, ‖G‖ = {:.4}, min eig(G − I) = {:.2e}", g.basis().len(), g.norm(), g.hardy_excess_min_eig());
    println!("<z2, z2^2> = {:.6}", g.entry((0, 1), (0, 2)));

    let w = (Complex64::new(0.3, 0.2), Complex64::new(-0.5, 0.1));
    let kw = g.basis().to_poly(&g.kernel_coeffs(w)?);
    let f = BiPoly::from_fn(3, 2, |m, n| Complex64::new(1.0 / (1 + m + n) as f64, 0.1 * m as f64));
    let err = (g.inner_product(&f, &kw)? - f.eval(w.0, w.1)).norm();
    println!("reproducing property error {err:.1e}");

    let p = BiPoly::from_fn(1, 1, |m, n| Complex64::new(1.0 + m as f64, -(n as f64)));
    let big = gram_matrix(&mu1, &mu2, MonomialBasis::new(4, 4))?;
    for (k, l) in [(0, 0), (1, 2), (3, 1)] {
        let lhs = big.norm_sq(&p.shift(k, l))?;
        let rhs = richter_rhs(&mu1, &mu2, &p, k, l)?;
        println!("‖z1^{k} z2^{l} p‖² = {lhs:.10}   formula {rhs:.10}");
    }

    let rec = g.recover_moments()?;
    println!("recovered moment(1) of mu2 {:.6}, exact {:.6}, consistency {:.1e}", rec.mu2.get(1), mu2.moment(1), rec.consistency_residual);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
