//! Roots of univariate polynomials with multiplicities.

use num_complex::Complex64;
use triangsolve::unisolve::{uni_roots, UnivariatePoly, DEFAULT_TOL};

fn show(label: &str, f: &UnivariatePoly) -> triangsolve::Result<()> {
    println!("{label}");
    for r in uni_roots(f, DEFAULT_TOL)? {
        match &r.exact {
            Some(q) => println!("  {q}  x{}", r.multiplicity),
            None => println!("  {:.12}  x{}  (radius {:.1e})", r.value, r.multiplicity, r.radius),
        }
    }
    Ok(())
}

fn main() -> triangsolve::Result<()> {
    // (x - 1)^3 (x + 2)^2 (x^2 + 1), coefficients from low to high degree
    show("(x-1)^3 (x+2)^2 (x^2+1)", &UnivariatePoly::from_i64(&[-4, 8, -5, 3, 0, -4, 1, 1]))?;

    // x^5 - x - 1 has no rational roots
    show("x^5 - x - 1", &UnivariatePoly::from_i64(&[-1, -1, 0, 0, 0, 1]))?;

    // Floating input: a triple root at 0.5 and a simple root at -1.
    let c = |re: f64| Complex64::new(re, 0.0);
    show(
        "(z - 0.5)^3 (z + 1) in floating point",
        &UnivariatePoly::float(vec![c(-0.125), c(0.625), c(-0.75), c(-0.5), c(1.0)]),
    )?;
    Ok(())
}
