#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use triangsolve::arith::rational;
use triangsolve::ideals::RationalIdeal;
use triangsolve::poly::{Monomial, RationalPoly, Rationals, Ring};

pub const CYCLIC5: &str = include_str!("../../systems/cyclic5.sys");
pub const MOLLER_EXAMPLE: &str = include_str!("../../systems/moller_example.sys");

/// Random ideals in 2 or 3 variables, one generator per variable, each with
/// four terms of total degree at most 4 and integer coefficients in
/// `[-9, 9]`. Ideals that are not zero-dimensional, and the unit ideal, are
/// skipped until `count` remain.
pub fn random_corpus(seed: u64, count: usize) -> Vec<RationalIdeal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(2..=3);
        let vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let ring = Ring::new(&vars, Rationals).unwrap();
        let gens: Vec<RationalPoly> = (0..n)
            .map(|_| {
                let terms = (0..4)
                    .map(|_| {
                        let mut e = vec![0u32; n];
                        for _ in 0..rng.gen_range(0..=4) {
                            e[rng.gen_range(0..n)] += 1;
                        }
                        (Monomial::from_exponents(&e).unwrap(), rational(rng.gen_range(-9..=9), 1))
                    })
                    .collect();
                RationalPoly::from_terms(&ring, terms)
            })
            .collect();
        let Ok(ideal) = RationalIdeal::new(gens) else { continue };
        if ideal.is_zero_dimensional() && !ideal.is_unit() {
            out.push(ideal);
        }
    }
    out
}
