//! Running commands programmatically and reading their JSON reports.

use dirichlet_bidisc::cli::{Command, RunConfig, run};
use dirichlet_bidisc::{Complex64, Result};

pub fn run_example() -> Result<()> {
    let mut cfg = RunConfig::new(Command::Koszul);
    cfg.lambda = Some((Complex64::new(0.2, 0.0), Complex64::new(0.0, -0.1)));
    let out = run(&cfg);
    println!("koszul exit {}", out.exit_code);
    if let Some(report) = out.report {
        println!("{}", report.to_json());
    }

    let mut cfg = RunConfig::new(Command::ToralCheck);
    cfg.basis = Some((5, 5));
    cfg.tolerances.apply("toral=1e-13")?;
    let out = run(&cfg);
    let report = out.report.expect("valid input");
    println!("toral-check: {} of {} rows pass", report.passed(), report.rows.len());
    print!("{}", report.to_csv());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
