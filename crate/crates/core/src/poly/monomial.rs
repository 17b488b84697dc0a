use std::cmp::Ordering;
use std::fmt;

use crate::error::{invalid, Result};

/// Largest number of variables a ring may have (one slot is kept free for the
/// elimination variable used by ideal quotients).
pub const MAX_VARS: usize = 15;
const SLOTS: usize = MAX_VARS + 1;

/// Dense exponent vector of a monomial.
///
/// Unused trailing slots are zero, so the derived ordering is exactly the
/// lexicographic ordering with `x1 > x2 > ... > xn`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: [u16; SLOTS],
    len: u8,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        assert!(n <= SLOTS, "too many variables");
        Monomial {
            exps: [0; SLOTS],
            len: n as u8,
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > SLOTS {
            return Err(invalid(format!("at most {MAX_VARS} variables supported")));
        }
        let mut m = Monomial::one(exps.len());
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).map_err(|_| invalid("exponent too large"))?;
        }
        Ok(m)
    }

    /// `x_i^e` in an `n`-variable ring (0-based `i`).
    pub fn var_power(n: usize, i: usize, e: u32) -> Self {
        let mut m = Monomial::one(n);
        m.exps[i] = e as u16;
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.exps[..self.nvars()].iter().map(|&e| e as u32).collect()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(&other.exps) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        out
    }

    /// `self / other`, assuming `other` divides `self`.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(&other.exps) {
            *a -= *b;
        }
        out
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(&other.exps) {
            *a = (*a).max(*b);
        }
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the single variable when the monomial is a pure power.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps[..self.nvars()].iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Drops the first `k` variables (their exponents must be zero).
    pub fn drop_front(&self, k: usize) -> Monomial {
        debug_assert!(self.exps[..k].iter().all(|&e| e == 0));
        let mut out = Monomial::one(self.nvars() - k);
        out.exps[..self.nvars() - k].copy_from_slice(&self.exps[k..self.nvars()]);
        out
    }

    /// Prepends `k` variables with exponent `e` for the first and zero for the rest.
    pub fn push_front(&self, k: usize, first: u32) -> Monomial {
        let n = self.nvars() + k;
        assert!(n <= SLOTS, "too many variables");
        let mut out = Monomial::one(n);
        out.exps[k..n].copy_from_slice(&self.exps[..self.nvars()]);
        if k > 0 {
            out.exps[0] = first as u16;
        }
        out
    }

    pub fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut out = *self;
        out.exps[i] = e as u16;
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.exps[..self.nvars()])
    }
}

/// Lexicographic comparison of two exponent vectors, `x1` most significant.
pub fn lex_compare(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.nvars() != b.nvars() {
        return Err(invalid(format!(
            "exponent vectors of length {} and {}",
            a.nvars(),
            b.nvars()
        )));
    }
    Ok(a.cmp(b))
}
