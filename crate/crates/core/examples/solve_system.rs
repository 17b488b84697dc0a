//! Decompose and solve a system file, then check the result.
//!
//! ```text
//! cargo run --example solve_system -- systems/katsura3.sys
//! ```
//! Without an argument the circle/parabola system is used.

use std::fs;

use triangsolve::cli::parse_system;
use triangsolve::modular::{mod_decompose, ModularConfig};
use triangsolve::unisolve::{solve_system, test_zero, DEFAULT_RESIDUAL_TOL, DEFAULT_TOL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => fs::read_to_string(path)?,
        None => include_str!("../systems/circle_parabola.sys").to_string(),
    };
    let (ring, ideal) = parse_system(&text)?;

    let outcome = mod_decompose(&ideal, &ModularConfig { seed: 42, ..ModularConfig::default() })?;
    let d = &outcome.decomposition;
    println!("{} triangular sets after {} rounds", d.len(), outcome.rounds);
    for set in d.sets() {
        println!("  {set}");
    }

    let solutions = solve_system(&ideal, d, DEFAULT_TOL)?;
    for p in &solutions.points {
        let coords: Vec<String> = ring
            .vars()
            .iter()
            .zip(&p.coords)
            .map(|(v, z)| format!("{v} = {z:.10}"))
            .collect();
        println!("  [{}] x{}  residual {:.1e}", coords.join(", "), p.multiplicity, p.residual);
    }

    let report = test_zero(&ideal, d, &solutions, DEFAULT_RESIDUAL_TOL)?;
    println!(
        "total multiplicity {} / vdim {}, verified: {}",
        report.total_multiplicity,
        report.vdim,
        report.passed()
    );
    Ok(())
}
