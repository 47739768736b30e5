//! Bivariate polynomials: slices, division by `z_j − λ`, and the Hardy slice profile.

use dirichlet_bidisc::{Axis, BiPoly, Complex64, Error, Result};

pub fn run_example() -> Result<()> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let q = BiPoly::from_fn(2, 1, |m, n| c(1.0 + m as f64, 0.5 * n as f64));
    let lambda = c(0.25, -0.5);

    // (z₁ − λ) q vanishes on {z₁ = λ}, so division recovers q
    let f = q.mul_linear(Axis::Z1, lambda);
    println!("f has bidegree {:?}; slice at z1 = lambda has max coefficient {:.1e}", f.bidegree(), f.slice(Axis::Z1, lambda).max_abs_coeff());
    let back = f.divide_slice(Axis::Z1, lambda, 1e-13)?;
    println!("division round trip error {:.1e}", back.max_coeff_diff(&q));

    let g = &f + &BiPoly::constant(c(0.1, 0.0));
    match g.divide_slice(Axis::Z1, lambda, 1e-13) {
        Err(Error::SliceNotVanishing(r)) => println!("f + 0.1 does not vanish on the slice (remainder {r:.3})"),
        other => println!("unexpected: {other:?}"),
    }

    let point = (c(0.3, 0.1), c(-0.2, 0.4));
    let (g1, g2) = q.gleason_split(point);
    let lhs = q.eval(c(0.5, 0.0), c(0.1, 0.2)) - q.eval(point.0, point.1);
    let rhs = g1.eval(c(0.5, 0.0), c(0.1, 0.2)) * (c(0.5, 0.0) - point.0) + g2.eval(c(0.5, 0.0), c(0.1, 0.2)) * (c(0.1, 0.2) - point.1);
    println!("Gleason split check at a sample point: {:.1e}", (lhs - rhs).norm());

    println!("Hardy norm² {:.6}", q.hardy_norm_sq());
    for r in [0.5, 0.9, 0.99, 0.999] {
        println!("  slice profile r = {r:<5} {:.6}", q.slice_profile(r)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
