//! End-to-end properties on ideals whose zeros are known in advance.

use std::collections::BTreeMap;

use proptest::prelude::*;
use triangsolve::arith::rational;
use triangsolve::ideals::RationalIdeal;
use triangsolve::modular::{mod_decompose, ModularConfig};
use triangsolve::poly::{RationalPoly, Rationals, Ring};
use triangsolve::triang::triang_m;
use triangsolve::unisolve::{solve_system, test_zero, DEFAULT_RESIDUAL_TOL, DEFAULT_TOL};

/// `<x2 - p(x1), prod (x1 - a_i)^{m_i}>`, disguised by adding a multiple of
/// the second generator to the first.
fn ideal_with_zeros(roots: &[(i64, u32)], p: &[i64], mix: i64) -> RationalIdeal {
    let ring = Ring::new(&["x1", "x2"], Rationals).unwrap();
    let x1 = RationalPoly::var(&ring, 0);
    let x2 = RationalPoly::var(&ring, 1);
    let constant = |c: i64| RationalPoly::constant(&ring, rational(c, 1));
    let mut univariate = RationalPoly::one(&ring);
    for &(a, m) in roots {
        univariate = &univariate * &(&x1 - &constant(a)).pow(m);
    }
    let mut image = RationalPoly::zero(&ring);
    for &c in p.iter().rev() {
        image = &(&image * &x1) + &constant(c);
    }
    let linear = &x2 - &image;
    let disguised = &linear + &(&univariate * &(&x2 * &constant(mix)));
    RationalIdeal::new(vec![disguised, univariate]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn recovers_known_zeros(
        roots in prop::collection::btree_map(-6i64..=6, 1u32..=3, 1..=4),
        p in prop::collection::vec(-3i64..=3, 1..=3),
        mix in -2i64..=2,
        seed in any::<u64>(),
    ) {
        let roots: Vec<(i64, u32)> = roots.into_iter().collect();
        let ideal = ideal_with_zeros(&roots, &p, mix);
        let total: u32 = roots.iter().map(|r| r.1).sum();
        prop_assert_eq!(ideal.vdim().unwrap(), total as usize);

        let direct = triang_m(&ideal).unwrap();
        let cfg = ModularConfig { primes_per_round: 3, seed, ..ModularConfig::default() };
        let modular = mod_decompose(&ideal, &cfg).unwrap();
        prop_assert_eq!(&modular.decomposition, &direct);

        let solutions = solve_system(&ideal, &direct, DEFAULT_TOL).unwrap();
        let report = test_zero(&ideal, &direct, &solutions, DEFAULT_RESIDUAL_TOL).unwrap();
        prop_assert!(report.passed(), "{:?}", report.failures());

        // A zero may be split over several sets; its multiplicities add up.
        let eval = |a: i64| p.iter().rev().fold(0i64, |acc, &c| acc * a + c);
        let expected: BTreeMap<(i64, i64), usize> =
            roots.iter().map(|&(a, m)| ((a, eval(a)), m as usize)).collect();
        let mut found: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        for pt in &solutions.points {
            let exact = pt.exact.as_ref().expect("integer zeros are found exactly");
            let key = (exact[0].to_integer().try_into().unwrap(), exact[1].to_integer().try_into().unwrap());
            *found.entry(key).or_default() += pt.multiplicity;
        }
        prop_assert_eq!(found, expected);
    }
}

#[test]
fn zero_split_over_two_sets() {
    // x2 = x1^2 - 2 x1 sends both -1 and 3 to 3, so the double zero at
    // (-1, 3) ends up in two sets.
    let ideal = ideal_with_zeros(&[(-1, 2), (3, 1)], &[0, -2, 1], 0);
    let d = triang_m(&ideal).unwrap();
    let solutions = solve_system(&ideal, &d, DEFAULT_TOL).unwrap();
    let at = |x: f64| -> usize {
        solutions
            .points
            .iter()
            .filter(|p| (p.coords[0].re - x).abs() < 1e-9 && (p.coords[1].re - 3.0).abs() < 1e-9)
            .map(|p| p.multiplicity)
            .sum()
    };
    assert_eq!((at(-1.0), at(3.0)), (2, 1));
    assert_eq!(solutions.total_multiplicity, 3);
}
