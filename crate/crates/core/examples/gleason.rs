//! Gleason's problem `f − f(λ) = (z₁ − λ₁) g₁ + (z₂ − λ₂) g₂`, solved by successive
//! division and by minimizing `‖g₁‖² + ‖g₂‖²` in the space norm.

use dirichlet_bidisc::gram::gram_matrix;
use dirichlet_bidisc::koszul::{GleasonMode, gleason_solve};
use dirichlet_bidisc::measure::CircleMeasure;
use dirichlet_bidisc::{BiPoly, Complex64, MonomialBasis, Result};

pub fn run_example() -> Result<()> {
    let mu = CircleMeasure::lebesgue(1.0)?;
    let g = gram_matrix(&mu, &mu, MonomialBasis::new(3, 3))?;
    let f = BiPoly::from_fn(3, 3, |m, n| Complex64::new(1.0 / (1 + m * n) as f64, 0.2 * (m as f64 - n as f64)));
    let lambda = (Complex64::new(0.4, 0.1), Complex64::new(-0.2, 0.5));
    for mode in [GleasonMode::SuccessiveDivision, GleasonMode::MinNorm] {
        let s = gleason_solve(&g, &f, lambda, mode)?;
        println!("{mode:?}: residual {:.1e}, ‖g1‖² + ‖g2‖² = {:.8}", s.residual, s.objective);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
