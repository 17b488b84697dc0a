//! Triangular decomposition of `<x2^10, x1*x2^3 + x2^5, x1^11>`.
//!
//! Two sets come out, `{x2^7, x1 + x2^2}` and `{x2^3, x1^11}`. Their vector
//! space dimensions add up to that of the input ideal even though their
//! intersection is strictly larger than the ideal itself.

use triangsolve::cli::parse_system;
use triangsolve::ideals::ideal_contains;
use triangsolve::triang::triang_m;

fn main() -> triangsolve::Result<()> {
    let (_, ideal) = parse_system(include_str!("../systems/moller_example.sys"))?;
    println!("vdim(I) = {}", ideal.vdim()?);

    let d = triang_m(&ideal)?;
    for (i, set) in d.sets().iter().enumerate() {
        println!("F{} = {set}   vdim {}", i + 1, set.vdim());
    }
    println!("sum of set dimensions = {}", d.total_vdim());

    for set in d.sets() {
        assert!(ideal_contains(&ideal, &set.ideal())?);
    }
    // x2^7 lies in both sets but is a standard monomial of I.
    let witness = d.sets()[0].polys()[0].clone();
    let in_both = d.sets().iter().all(|s| s.groebner().contains(&witness));
    println!(
        "{witness}: in F1 and F2 {in_both}, in I {}",
        ideal.groebner().contains(&witness)
    );
    Ok(())
}
