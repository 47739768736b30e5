//! The truncated multiplication pair: toral 2-isometry, moment identities, wandering
//! subspace, adjoint kernels and orbit reconstruction.

use dirichlet_bidisc::measure::CircleMeasure;
use dirichlet_bidisc::toral::{build_pair, reconstruct_gram_from_orbit, restrict_orbit};
use dirichlet_bidisc::{Axis, Result};

pub fn run_example() -> Result<()> {
    let mu1 = CircleMeasure::trig_density(&[dirichlet_bidisc::Complex64::new(1.0, 0.0), dirichlet_bidisc::Complex64::new(0.4, 0.0)])?;
    let mu2 = CircleMeasure::mixture(vec![CircleMeasure::lebesgue(0.5)?, CircleMeasure::atom(std::f64::consts::PI, 0.5)?]);
    let pair = build_pair(&mu1, &mu2, 8, 8)?;
    println!("‖G‖ = {:.4}", pair.gram_norm());
    for (i, j) in [(Axis::Z1, Axis::Z1), (Axis::Z1, Axis::Z2), (Axis::Z2, Axis::Z2)] {
        println!("toral residual ({},{}) = {:.1e}", i.index(), j.index(), pair.toral_residual(i, j)?);
    }
    for (k, l) in [(1, 0), (2, 1), (3, 1), (2, 2)] {
        println!("moment identity ({k},{l}) residual {:.1e}", pair.moment_identity_residual(k, l)?);
    }
    println!("wandering cross terms {:e}", pair.wandering_check());
    println!("adjoint kernel cross terms {:e} / {:e}", pair.adjoint_kernel_check(Axis::Z1), pair.adjoint_kernel_check(Axis::Z2));

    let (d1, d2) = restrict_orbit(pair.gram());
    let full = reconstruct_gram_from_orbit(&d1, &d2)?;
    let diff = (full - pair.gram().entries()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    println!("orbit reconstruction max deviation {diff:e}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
