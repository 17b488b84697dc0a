//! Gröbner bases, quotients, saturation and containment on small ideals.

use triangsolve::cli::{parse_polynomial, parse_system};
use triangsolve::ideals::{ideal_contains, ideal_quotient, saturation, IdealHandle};

fn main() -> triangsolve::Result<()> {
    let (ring, ideal) = parse_system("vars x y\nx^2 y - y\ny^3 - y\n")?;
    let gb = ideal.groebner();
    println!("basis: {:?}", gb.elements().iter().map(|g| g.to_string()).collect::<Vec<_>>());
    println!("zero-dimensional: {}", ideal.is_zero_dimensional());

    let (_, line) = parse_system("vars x y\ny\n")?;
    println!("<y> zero-dimensional: {}", line.is_zero_dimensional());

    let y = parse_polynomial(&ring, "y")?;
    let q = ideal_quotient(&ideal, &y)?;
    let s = saturation(&ideal, &y)?;
    println!("I : y     = {:?}", q.elements().iter().map(|g| g.to_string()).collect::<Vec<_>>());
    println!("I : y^inf = {:?}", s.elements().iter().map(|g| g.to_string()).collect::<Vec<_>>());

    let q = IdealHandle::from_groebner(q);
    println!("I inside I : y: {}", ideal_contains(&ideal, &q)?);
    println!("I : y inside I: {}", ideal_contains(&q, &ideal)?);

    let f = parse_polynomial(&ring, "(x^2 - 1) y^2")?;
    println!("normal form of {f}: {}", gb.normal_form(&f));
    Ok(())
}
