//! The modular driver step by step: decompositions modulo primes, Chinese
//! remaindering with rational reconstruction, and the final probabilistic
//! check.

use std::sync::Arc;

use num_bigint::BigInt;
use triangsolve::arith::{crt_lift, farey_reconstruct, PrimeField, PrimeStream};
use triangsolve::cli::parse_system;
use triangsolve::ideals::reduce_ideal_mod_p;
use triangsolve::modular::{mod_decompose_with_progress, ModularConfig, ProgressSink};
use triangsolve::triang::triang_m;

fn main() -> triangsolve::Result<()> {
    // Reconstructing -7/12 from its images modulo three primes.
    let mut primes = PrimeStream::new(1);
    let ps: Vec<u64> = (0..3).map(|_| primes.next_prime(&[])).collect();
    let residues: Vec<(u64, u64)> = ps
        .iter()
        .map(|&p| {
            let f = PrimeField::new(p).unwrap();
            (f.mul(f.neg(7), f.inv(12).unwrap()), p)
        })
        .collect();
    let (r, n) = crt_lift(&residues)?;
    println!("-7/12 mod {n} = {r}");
    println!("reconstructed: {:?}", farey_reconstruct(&r, &n).map(|q| q.to_string()));
    // A single prime is too small for 123456789/1000: the result is either
    // missing or a different fraction.
    let f = PrimeField::new(ps[0])?;
    let r = f.mul(f.from_i64(123_456_789), f.inv(1000).unwrap());
    let guess = farey_reconstruct(&BigInt::from(r), &BigInt::from(ps[0]));
    println!("123456789/1000 from one prime: {:?}", guess.map(|q| q.to_string()));

    let (_, ideal) = parse_system(include_str!("../systems/katsura3.sys"))?;

    // One snapshot by hand.
    let p = PrimeField::new(ps[0])?;
    if let Some(image) = reduce_ideal_mod_p(&ideal, p) {
        let d = triang_m(&image)?;
        println!("modulo {}: {} set(s), first: {}", ps[0], d.len(), d.sets()[0]);
    }

    let sink: ProgressSink = Arc::new(|e| println!("  {e}"));
    let cfg = ModularConfig {
        primes_per_round: 3,
        seed: 7,
        ..ModularConfig::default()
    };
    let outcome = mod_decompose_with_progress(&ideal, &cfg, Some(sink))?;
    let direct = triang_m(&ideal)?;
    println!("lifted result equals the direct rational computation: {}", outcome.decomposition == direct);
    Ok(())
}
