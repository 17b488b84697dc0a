//! Fixed-point complex arithmetic for back-substitution into polynomials
//! with large rational coefficients.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::BigRational;

/// `(re + i im) / 2^bits` for the precision it was made with.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Fx {
    re: BigInt,
    im: BigInt,
}

/// A working precision in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Precision {
    bits: u32,
}

impl Precision {
    pub(crate) fn new(bits: u32) -> Self {
        Precision { bits }
    }

    pub(crate) fn zero(&self) -> Fx {
        Fx {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    pub(crate) fn one(&self) -> Fx {
        Fx {
            re: BigInt::from(1) << self.bits,
            im: BigInt::zero(),
        }
    }

    pub(crate) fn rational(&self, q: &BigRational) -> Fx {
        Fx {
            re: (q.numer() << self.bits) / q.denom(),
            im: BigInt::zero(),
        }
    }

    fn fixed(&self, x: f64) -> BigInt {
        match BigRational::from_float(x) {
            Some(q) => (q.numer() << self.bits) / q.denom(),
            None => BigInt::zero(),
        }
    }

    pub(crate) fn complex(&self, z: Complex64) -> Fx {
        Fx {
            re: self.fixed(z.re),
            im: self.fixed(z.im),
        }
    }

    fn part_to_f64(&self, a: &BigInt) -> f64 {
        BigRational::new(a.clone(), BigInt::from(1) << self.bits)
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    pub(crate) fn approx(&self, a: &Fx) -> Complex64 {
        Complex64::new(self.part_to_f64(&a.re), self.part_to_f64(&a.im))
    }

    pub(crate) fn add(&self, a: &Fx, b: &Fx) -> Fx {
        Fx {
            re: &a.re + &b.re,
            im: &a.im + &b.im,
        }
    }

    pub(crate) fn sub(&self, a: &Fx, b: &Fx) -> Fx {
        Fx {
            re: &a.re - &b.re,
            im: &a.im - &b.im,
        }
    }

    pub(crate) fn mul(&self, a: &Fx, b: &Fx) -> Fx {
        Fx {
            re: (&a.re * &b.re - &a.im * &b.im) >> self.bits,
            im: (&a.re * &b.im + &a.im * &b.re) >> self.bits,
        }
    }

    pub(crate) fn scale(&self, a: &Fx, k: u64) -> Fx {
        Fx {
            re: &a.re * k,
            im: &a.im * k,
        }
    }

    pub(crate) fn pow(&self, a: &Fx, e: u32) -> Fx {
        let mut out = self.one();
        for _ in 0..e {
            out = self.mul(&out, a);
        }
        out
    }

    /// `None` when `b` is zero at this precision.
    pub(crate) fn div(&self, a: &Fx, b: &Fx) -> Option<Fx> {
        let den = &b.re * &b.re + &b.im * &b.im;
        if den.is_zero() {
            return None;
        }
        let re = (&a.re * &b.re + &a.im * &b.im) << self.bits;
        let im = (&a.im * &b.re - &a.re * &b.im) << self.bits;
        Some(Fx { re: re / &den, im: im / den })
    }

    /// `log2 |a|` rounded up, in units of the precision; large negative for zero.
    fn magnitude_bits(&self, a: &Fx) -> i64 {
        a.re.abs().max(a.im.abs()).bits() as i64 - self.bits as i64
    }

    fn horner2(&self, c: &[Fx], z: &Fx) -> (Fx, Fx) {
        let mut p = self.zero();
        let mut dp = self.zero();
        for a in c.iter().rev() {
            dp = self.add(&self.mul(&dp, z), &p);
            p = self.add(&self.mul(&p, z), a);
        }
        (p, dp)
    }

    fn derivative(&self, c: &[Fx]) -> Vec<Fx> {
        c.iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| self.scale(a, i as u64))
            .collect()
    }

    /// Newton on the `(k-1)`-th derivative of `c`, starting at `start`.
    ///
    /// Stops once a step falls below the precision or fails to shrink.
    /// Returns `None` when the
    /// iteration wanders more than `1e-3` (relative) away from `start`.
    pub(crate) fn polish(&self, c: &[Fx], start: Complex64, k: usize) -> Option<Fx> {
        let mut d = c.to_vec();
        for _ in 1..k {
            d = self.derivative(&d);
        }
        let mut z = self.complex(start);
        let floor = -(self.bits as i64) + 8;
        let mut last = i64::MAX;
        for _ in 0..100 {
            let (p, dp) = self.horner2(&d, &z);
            let Some(step) = self.div(&p, &dp) else { break };
            let size = self.magnitude_bits(&step);
            // Once the steps stop shrinking only rounding noise is left.
            if size >= last && size < 0 {
                break;
            }
            z = self.sub(&z, &step);
            last = size;
            if step.re.is_zero() && step.im.is_zero() || size < floor + self.magnitude_bits(&z).max(0) {
                break;
            }
        }
        let value = self.approx(&z);
        let drift = (value - start).norm() / start.norm().max(1.0);
        (value.is_finite() && drift <= 1e-3).then_some(z)
    }
}
