//! Exact integer and rational arithmetic, word-sized prime fields, prime
//! generation, Chinese remaindering and Farey rational reconstruction.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};

pub use num_rational::BigRational;

/// Lower end of the range primes are drawn from.
pub const PRIME_LOW: u64 = 1 << 30;
/// Exclusive upper end of the prime range.
pub const PRIME_HIGH: u64 = 1 << 31;

/// Arithmetic in `Z/pZ` for a word-sized prime `p < 2^32`.
///
/// Residues are plain `u64` values in `[0, p)`; products of two residues fit
/// in a `u64` without overflow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= (1 << 32) || !is_prime(p) {
            return Err(invalid(format!("{p} is not a word-sized prime")));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            return None;
        }
        // extended Euclid on signed 128-bit to stay clear of overflow
        let (mut r0, mut r1) = (self.p as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i128) as u64)
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn from_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        v.mod_floor(&m).to_u64().expect("residue fits in u64")
    }

    /// Maps `a/b` to `a * b^-1 mod p`; `None` when `p` divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Option<u64> {
        let den = self.from_bigint(q.denom());
        let inv = self.inv(den)?;
        Some(self.mul(self.from_bigint(q.numer()), inv))
    }
}

/// Deterministic Miller–Rabin, exact for all `n < 3.3 * 10^24` (and so for
/// every `u64`).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A batch of distinct primes together with the integers none of them divide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeBatch {
    pub primes: Vec<u64>,
    pub excluded: Vec<BigInt>,
}

/// Seeded, reproducible stream of primes in `[2^30, 2^31)` that never issues
/// the same prime twice.
#[derive(Debug, Clone)]
pub struct PrimeStream {
    rng: ChaCha8Rng,
    issued: HashSet<u64>,
}

impl PrimeStream {
    pub fn new(seed: u64) -> Self {
        PrimeStream {
            rng: ChaCha8Rng::seed_from_u64(seed),
            issued: HashSet::new(),
        }
    }

    /// Marks `p` as used so it is never returned by this stream.
    pub fn reserve(&mut self, p: u64) {
        self.issued.insert(p);
    }

    pub fn issued(&self) -> usize {
        self.issued.len()
    }

    /// Next prime not yet issued and dividing none of `excluded`.
    pub fn next_prime(&mut self, excluded: &[BigInt]) -> u64 {
        loop {
            let candidate = self.rng.gen_range(PRIME_LOW..PRIME_HIGH) | 1;
            if self.issued.contains(&candidate) || !is_prime(candidate) {
                continue;
            }
            let pb = BigInt::from(candidate);
            if excluded.iter().any(|e| !e.is_zero() && (e % &pb).is_zero()) {
                continue;
            }
            self.issued.insert(candidate);
            return candidate;
        }
    }

    pub fn next_batch(&mut self, count: usize, excluded: &[BigInt]) -> Result<PrimeBatch> {
        if count == 0 {
            return Err(invalid("prime batch size must be at least 1"));
        }
        let primes = (0..count).map(|_| self.next_prime(excluded)).collect();
        Ok(PrimeBatch {
            primes,
            excluded: excluded.to_vec(),
        })
    }
}

/// One-shot batch from a fresh stream seeded with `seed`.
pub fn generate_prime_batch(count: usize, excluded: &[BigInt], seed: u64) -> Result<PrimeBatch> {
    PrimeStream::new(seed).next_batch(count, excluded)
}

/// Precomputed data for lifting many residue vectors over one fixed list of
/// primes.
#[derive(Debug, Clone)]
pub struct CrtBasis {
    primes: Vec<u64>,
    modulus: BigInt,
    // N/p_i * ((N/p_i)^-1 mod p_i)
    idempotents: Vec<BigInt>,
}

impl CrtBasis {
    pub fn new(primes: &[u64]) -> Result<Self> {
        if primes.is_empty() {
            return Err(invalid("CRT needs at least one modulus"));
        }
        let mut seen = HashSet::new();
        for &p in primes {
            if !seen.insert(p) {
                return Err(invalid(format!("duplicate modulus {p}")));
            }
        }
        let modulus: BigInt = primes.iter().map(|&p| BigInt::from(p)).product();
        let idempotents = primes
            .iter()
            .map(|&p| {
                let field = PrimeField { p };
                let cofactor = &modulus / BigInt::from(p);
                let inv = field
                    .inv(field.from_bigint(&cofactor))
                    .ok_or_else(|| invalid(format!("moduli not coprime at {p}")))?;
                Ok(cofactor * BigInt::from(inv))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CrtBasis {
            primes: primes.to_vec(),
            modulus,
            idempotents,
        })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// Combines residues given in the same order as the basis primes.
    pub fn lift(&self, residues: &[u64]) -> BigInt {
        debug_assert_eq!(residues.len(), self.primes.len());
        let mut acc = BigInt::zero();
        for (r, e) in residues.iter().zip(&self.idempotents) {
            if *r != 0 {
                acc += e * BigInt::from(*r);
            }
        }
        acc.mod_floor(&self.modulus)
    }
}

/// Chinese remaindering of `(residue, prime)` pairs. Returns `(r, N)` with
/// `0 <= r < N = prod p`.
pub fn crt_lift(residues: &[(u64, u64)]) -> Result<(BigInt, BigInt)> {
    let primes: Vec<u64> = residues.iter().map(|&(_, p)| p).collect();
    let basis = CrtBasis::new(&primes)?;
    let rs: Vec<u64> = residues.iter().map(|&(r, p)| r % p).collect();
    Ok((basis.lift(&rs), basis.modulus.clone()))
}

/// Farey rational reconstruction: the unique `a/b` with `a = r*b mod N`,
/// `2a^2 <= N`, `0 < b`, `2b^2 <= N` and `gcd(b, N) = 1`, or `None` if there is
/// no such fraction.
pub fn farey_reconstruct(r: &BigInt, n: &BigInt) -> Option<BigRational> {
    if !n.is_positive() {
        return None;
    }
    let r = r.mod_floor(n);
    let within = |x: &BigInt| -> bool { BigInt::from(2) * x * x <= *n };
    // half-extended Euclid on (N, r), tracking only the cofactor of r
    let (mut r0, mut r1) = (n.clone(), r);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !within(&r1) {
        let (q, rem) = r0.div_rem(&r1);
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, rem);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || !within(&t1.abs()) || !t1.gcd(n).is_one() {
        return None;
    }
    let (a, b) = if t1.sign() == Sign::Minus {
        (-r1, -t1)
    } else {
        (r1, t1)
    };
    Some(BigRational::new(a, b))
}

/// Lifts a residue known modulo `n` to the symmetric range `(-N/2, N/2]`.
pub fn symmetric_residue(r: &BigInt, n: &BigInt) -> BigInt {
    let r = r.mod_floor(n);
    if BigInt::from(2) * &r > *n {
        r - n
    } else {
        r
    }
}

/// Convenience conversion used throughout.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Absolute value of numerator and denominator of `q` as unsigned integers.
pub fn numer_denom_abs(q: &BigRational) -> (BigUint, BigUint) {
    (
        q.numer().magnitude().clone(),
        q.denom().magnitude().clone(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn crt_examples() {
        let (r, n) = crt_lift(&[(2, 3), (2, 5)]).unwrap();
        assert_eq!((r, n), (BigInt::from(2), BigInt::from(15)));

        // oracle: exhaustive search
        let expected = (0..105u64)
            .find(|x| x % 3 == 1 && x % 5 == 4 && x % 7 == 0)
            .unwrap();
        assert_eq!(expected, 49);
        let (r, n) = crt_lift(&[(1, 3), (4, 5), (0, 7)]).unwrap();
        assert_eq!(r, BigInt::from(expected));
        assert_eq!(n, BigInt::from(105));

        let (r, _) = crt_lift(&[(0, 1_000_003), (0, 7), (0, 11)]).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn crt_rejects_duplicate_primes() {
        assert!(crt_lift(&[(1, 7), (2, 7)]).is_err());
    }

    #[test]
    fn farey_examples() {
        let n = BigInt::from(105);
        assert_eq!(farey_reconstruct(&BigInt::from(53), &n), Some(rational(1, 2)));
        assert_eq!(farey_reconstruct(&BigInt::from(2), &n), Some(rational(2, 1)));
        assert_eq!(farey_reconstruct(&BigInt::from(104), &n), Some(rational(-1, 1)));
    }

    #[test]
    fn farey_failure_when_no_small_fraction() {
        // 4/7 needs 2*7^2 = 98 <= N; with N = 97 no candidate fits and the
        // residue of 4/7 maps to no fraction within the bound
        let n = BigInt::from(97);
        let f = PrimeField::new(97).unwrap();
        let r = f.mul(4, f.inv(7).unwrap());
        let got = farey_reconstruct(&BigInt::from(r), &n);
        assert_ne!(got, Some(rational(4, 7)));
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.inv(2), Some(3));
        assert_eq!(f.inv(0), None);
        assert_eq!(f.from_rational(&rational(1, 2)), Some(3));
        assert_eq!(f.from_rational(&rational(1, 5)), None);
        assert_eq!(f.from_rational(&rational(-1, 1)), Some(4));
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn prime_batches() {
        let b = generate_prime_batch(3, &[BigInt::from(6)], 7).unwrap();
        assert_eq!(b.primes.len(), 3);
        let set: HashSet<_> = b.primes.iter().collect();
        assert_eq!(set.len(), 3);
        assert!(b.primes.iter().all(|&p| p != 2 && p != 3 && is_prime(p)));

        let mut s1 = PrimeStream::new(42);
        let mut s2 = PrimeStream::new(42);
        let a1 = s1.next_batch(1, &[]).unwrap();
        let a2 = s1.next_batch(1, &[]).unwrap();
        assert_ne!(a1.primes, a2.primes);
        assert_eq!(s2.next_batch(1, &[]).unwrap(), a1);
        assert_eq!(s2.next_batch(1, &[]).unwrap(), a2);

        assert!(generate_prime_batch(0, &[], 1).is_err());
    }

    #[test]
    fn excluded_divisors_are_avoided() {
        let mut stream = PrimeStream::new(3);
        let first = stream.next_prime(&[]);
        let mut replay = PrimeStream::new(3);
        let next = replay.next_prime(&[BigInt::from(first) * BigInt::from(5)]);
        assert_ne!(next, first);
    }

    proptest! {
        #[test]
        fn crt_inverts_reduction(x in 0u64..(1u64 << 60)) {
            let primes = [1_000_000_007u64, 998_244_353, 1_000_000_009];
            let basis = CrtBasis::new(&primes).unwrap();
            let rs: Vec<u64> = primes.iter().map(|p| x % p).collect();
            prop_assert_eq!(basis.lift(&rs), BigInt::from(x));
        }

        #[test]
        fn farey_round_trip(a in -10_000i64..=10_000, b in 1i64..=10_000) {
            let q = rational(a, b);
            let primes = [1_073_741_827u64, 1_073_741_831];
            let basis = CrtBasis::new(&primes).unwrap();
            let rs: Vec<u64> = primes
                .iter()
                .map(|&p| PrimeField::new(p).unwrap().from_rational(&q).unwrap())
                .collect();
            let r = basis.lift(&rs);
            prop_assert_eq!(farey_reconstruct(&r, basis.modulus()), Some(q));
        }

        #[test]
        fn rationals_stay_reduced(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let s = rational(a, b) * rational(c, d) + rational(c, b);
            prop_assert!(s.numer().gcd(s.denom()).is_one());
            prop_assert!(s.denom().is_positive());
        }
    }
}
