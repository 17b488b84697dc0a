//! The disjoint variant: saturations instead of quotients give pairwise
//! comaximal sets, at the price of multiplicities.

use triangsolve::cli::parse_system;
use triangsolve::poly::reduced_groebner;
use triangsolve::triang::{triang_m, triang_m_disjoint};

const SYSTEM: &str = "
vars x y
x^2 + y^2 - 2y
y - x^2
(x - 1) y
";

fn main() -> triangsolve::Result<()> {
    for text in [include_str!("../systems/moller_example.sys"), SYSTEM] {
        let (_, ideal) = parse_system(text)?;
        let plain = triang_m(&ideal)?;
        let disjoint = triang_m_disjoint(&ideal)?;
        println!("vdim {}", ideal.vdim()?);
        println!("  triangM          total {}: {:?}", plain.total_vdim(), plain.texts());
        println!("  triangM disjoint total {}: {:?}", disjoint.total_vdim(), disjoint.texts());

        let sets = disjoint.sets();
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                let union: Vec<_> = sets[i].polys().iter().chain(sets[j].polys()).cloned().collect();
                println!("  F{} + F{} is the unit ideal: {}", i + 1, j + 1, reduced_groebner(&union)?.is_unit());
            }
        }
    }
    Ok(())
}
