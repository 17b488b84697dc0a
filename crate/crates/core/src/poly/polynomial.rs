use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{Field, Rationals};
use super::monomial::{Monomial, MAX_VARS};
use crate::arith::{BigRational, PrimeField};
use crate::error::{invalid, Error, Result};

/// Polynomial ring `K[x1, ..., xn]` with the lexicographic ordering
/// `x1 > x2 > ... > xn`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ring<F: Field> {
    vars: Vec<String>,
    field: F,
}

pub type RationalRing = Ring<Rationals>;
pub type ModularRing = Ring<PrimeField>;

impl<F: Field> Ring<F> {
    pub fn new<S: AsRef<str>>(vars: &[S], field: F) -> Result<Arc<Self>> {
        if vars.is_empty() {
            return Err(invalid("a ring needs at least one variable"));
        }
        if vars.len() > MAX_VARS {
            return Err(invalid(format!("at most {MAX_VARS} variables supported")));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(invalid(format!("duplicate variable name {v}")));
            }
        }
        Ok(Arc::new(Ring { vars, field }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Same variables over another coefficient field.
    pub fn with_field<G: Field>(&self, field: G) -> Arc<Ring<G>> {
        Arc::new(Ring {
            vars: self.vars.clone(),
            field,
        })
    }

    /// The subring in the variables `x_{k+1}, ..., x_n`.
    pub fn drop_front(&self, k: usize) -> Result<Arc<Self>> {
        Ring::new(&self.vars[k..], self.field.clone())
    }

    /// The ring with an extra, largest variable `name` in front.
    pub fn push_front(&self, name: &str) -> Result<Arc<Self>> {
        if self.vars.iter().any(|v| v == name) {
            return Err(invalid(format!("duplicate variable name {name}")));
        }
        if self.vars.len() > MAX_VARS {
            return Err(invalid("no room for another variable"));
        }
        let mut vars = vec![name.to_string()];
        vars.extend(self.vars.iter().cloned());
        Ok(Arc::new(Ring {
            vars,
            field: self.field.clone(),
        }))
    }

    pub(crate) fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

/// Leading exponent, coefficient, monomial and term of a non-zero polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct LeadingData<E> {
    pub exponent: Vec<u32>,
    pub coefficient: E,
    pub monomial: Monomial,
}

/// Sparse polynomial; terms are stored in strictly decreasing lex order and
/// never have zero coefficients.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<Ring<F>>,
    terms: Vec<(Monomial, F::Elem)>,
}

pub type RationalPoly = Polynomial<Rationals>;
pub type ModularPoly = Polynomial<PrimeField>;

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && Ring::same(&self.ring, &other.ring)
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<Ring<F>>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring<F>>, c: F::Elem) -> Self {
        Polynomial::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<Ring<F>>) -> Self {
        Polynomial::constant(ring, ring.field.one())
    }

    pub fn term(ring: &Arc<Ring<F>>, m: Monomial, c: F::Elem) -> Self {
        let terms = if ring.field.is_zero(&c) {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// The variable `x_{i+1}` (0-based index).
    pub fn var(ring: &Arc<Ring<F>>, i: usize) -> Self {
        Polynomial::term(ring, Monomial::var_power(ring.nvars(), i, 1), ring.field.one())
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Arc<Ring<F>>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        let field = &ring.field;
        let mut acc: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let terms = acc
            .into_iter()
            .rev()
            .filter(|(_, c)| !field.is_zero(c))
            .collect();
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Trusts the caller that `terms` are sorted descending with no zeros.
    pub(crate) fn from_sorted_terms(ring: &Arc<Ring<F>>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !ring.field.is_zero(c)));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn lc(&self) -> Option<&F::Elem> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn leading_data(&self) -> Result<LeadingData<F::Elem>> {
        let (m, c) = self.terms.first().ok_or(Error::ZeroPolynomial)?;
        Ok(LeadingData {
            exponent: m.exponents(),
            coefficient: c.clone(),
            monomial: *m,
        })
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    /// Whether variable `var` occurs in some term.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(var) > 0)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = &self.ring.field;
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (*m, field.mul(a, c)))
            .collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    /// `c * m * self`
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let field = &self.ring.field;
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(t, a)| (t.mul(m), field.mul(a, c)))
            .collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.lc() {
            None => self.clone(),
            Some(c) if self.ring.field.is_one(c) => self.clone(),
            Some(c) => {
                let inv = self.ring.field.inv(c);
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficient of `x_var^d`, as a polynomial with `x_var` set to zero.
    pub fn coeff_of_var_power(&self, var: usize, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(var) == d)
            .map(|(m, c)| (m.with_exp(var, 0), c.clone()))
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Maps coefficients into another ring with the same number of variables.
    /// Returns `None` as soon as `f` does.
    pub fn try_map<G: Field>(
        &self,
        ring: &Arc<Ring<G>>,
        mut f: impl FnMut(&F::Elem) -> Option<G::Elem>,
    ) -> Option<Polynomial<G>> {
        assert_eq!(ring.nvars(), self.ring.nvars());
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let v = f(c)?;
            if !ring.field.is_zero(&v) {
                terms.push((*m, v));
            }
        }
        Some(Polynomial::from_sorted_terms(ring, terms))
    }

    /// Moves the polynomial into `ring` whose variables are the last
    /// `ring.nvars()` variables of this one.
    pub fn restrict_to(&self, ring: &Arc<Ring<F>>) -> Result<Self> {
        let k = self.ring.nvars() - ring.nvars();
        if self.terms.iter().any(|(m, _)| (0..k).any(|i| m.exp(i) > 0)) {
            return Err(invalid("polynomial involves eliminated variables"));
        }
        let terms = self.terms.iter().map(|(m, c)| (m.drop_front(k), c.clone())).collect();
        Ok(Polynomial::from_sorted_terms(ring, terms))
    }

    /// Embeds into `ring`, which has extra leading variables.
    pub fn embed_into(&self, ring: &Arc<Ring<F>>) -> Self {
        let k = ring.nvars() - self.ring.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.push_front(k, 0), c.clone()))
            .collect();
        Polynomial::from_sorted_terms(ring, terms)
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        let field = &self.ring.field;
        let (dm, dc) = divisor.terms.first()?;
        let dc_inv = field.inv(dc);
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            if !dm.divides(m) {
                return None;
            }
            let qm = m.div(dm);
            let qc = field.mul(c, &dc_inv);
            rem = &rem - &divisor.mul_term(&qm, &qc);
            quot.push((qm, qc));
        }
        Some(Polynomial::from_sorted_terms(&self.ring, quot))
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let field = &self.ring.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let take_b = |c: &F::Elem| if negate_other { field.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0, take_b(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other {
                        field.sub(&a[i].1, &b[j].1)
                    } else {
                        field.add(&a[i].1, &b[j].1)
                    };
                    if !field.is_zero(&c) {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, take_b(c))));
        Polynomial::from_sorted_terms(&self.ring, out)
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.merge(rhs, false)
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.merge(rhs, true)
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        let field = &self.ring.field;
        let terms = self.terms.iter().map(|(m, c)| (*m, field.neg(c))).collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        let field = &self.ring.field;
        let mut acc: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = field.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = field.add(v, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let terms = acc
            .into_iter()
            .rev()
            .filter(|(_, c)| !field.is_zero(c))
            .collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    /// Canonical text: descending lex terms, `*` between factors, `^` for
    /// powers and rationals as `a/b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = &self.ring.field;
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (negative, text) = field.render(c);
            if negative {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, "+")?;
            }
            let mut factors = Vec::new();
            let unit = text == "1";
            if !unit || m.is_one() {
                factors.push(text);
            }
            for (i, name) in self.ring.vars.iter().enumerate() {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl RationalPoly {
    /// Reduction modulo `p`; `None` if `p` divides a denominator.
    pub fn reduce_mod(&self, ring: &Arc<ModularRing>) -> Option<ModularPoly> {
        let field = *ring.field();
        self.try_map(ring, |c| field.from_rational(c))
    }

    /// Builds a rational polynomial from integer-coefficient terms given as
    /// `(coefficient, exponents)` pairs.
    pub fn from_int_terms(ring: &Arc<RationalRing>, terms: &[(i64, &[u32])]) -> Result<Self> {
        let terms = terms
            .iter()
            .map(|(c, e)| {
                if e.len() != ring.nvars() {
                    return Err(invalid("exponent vector length does not match ring"));
                }
                Ok((Monomial::from_exponents(e)?, BigRational::from_integer((*c).into())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_terms(ring, terms))
    }
}
