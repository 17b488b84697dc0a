//! Cyclic 5-roots end to end in modular mode.
//!
//! ```text
//! cargo run --release --example cyclic5 -- 4
//! ```
//! The optional argument is the number of worker threads.

use std::time::Instant;

use triangsolve::cli::parse_system;
use triangsolve::modular::{mod_decompose, ModularConfig};
use triangsolve::unisolve::{solve_system, test_zero, DEFAULT_RESIDUAL_TOL, DEFAULT_TOL};

fn main() -> triangsolve::Result<()> {
    let jobs = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let (_, ideal) = parse_system(include_str!("../systems/cyclic5.sys"))?;

    let start = Instant::now();
    let cfg = ModularConfig {
        primes_per_round: 8,
        jobs,
        seed: 5,
        ..ModularConfig::default()
    };
    let outcome = mod_decompose(&ideal, &cfg)?;
    let decomposed = start.elapsed();
    let solutions = solve_system(&ideal, &outcome.decomposition, DEFAULT_TOL)?;
    let report = test_zero(&ideal, &outcome.decomposition, &solutions, DEFAULT_RESIDUAL_TOL)?;

    for set in outcome.decomposition.sets() {
        println!("vdim {:>2}: degrees {:?}", set.vdim(), set.degrees_by_variable());
    }
    println!(
        "{} primes, {} rounds, decomposition {:.2?}, total {:.2?}",
        outcome.primes_used,
        outcome.rounds,
        decomposed,
        start.elapsed()
    );
    println!(
        "{} solutions, total multiplicity {}, vdim {}, max residual {:.1e}, verified {}",
        solutions.distinct_points(),
        report.total_multiplicity,
        report.vdim,
        report.max_residual,
        report.passed()
    );
    Ok(())
}
