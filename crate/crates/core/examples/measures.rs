//! Circle measures: moments, Poisson extensions and the Toeplitz positivity test.

use dirichlet_bidisc::measure::{CircleMeasure, MomentSequence, catalog};
use dirichlet_bidisc::{Complex64, Result};

pub fn run_example() -> Result<()> {
    for (name, mu) in catalog() {
        let m1 = mu.moment(1);
        println!("{name:<28} mass {:.3}  moment(1) = {:+.4}{:+.4}i", mu.total_mass(), m1.re, m1.im);
    }

    let mu = CircleMeasure::from_json(r#"{"type":"mixture","parts":[
        {"type":"lebesgue","mass":0.5},
        {"type":"atoms","atoms":[{"angle":3.141592653589793,"mass":0.5}]}]}"#)?;
    let w = Complex64::new(0.3, -0.4);
    let p = mu.poisson(w)?;
    let floor = mu.total_mass() * (1.0 - w.norm_sqr()) / 4.0;
    println!("P_mu({w}) = {p:.6} >= {floor:.6}");

    let seq = mu.moment_sequence(6).toeplitz_feasibility(1e-10);
    println!("moments of a positive measure: feasible = {}", seq.is_feasible());
    let bad = MomentSequence::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.9, 0.0), Complex64::new(0.0, 0.0)])?
        .toeplitz_feasibility(1e-10);
    println!("(1, 0.9, 0): feasible = {}, min eigenvalue {:.6}", bad.is_feasible(), bad.min_eig().unwrap());

    println!("JSON: {}", serde_json::to_string(&mu.to_spec()).expect("serializable"));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
