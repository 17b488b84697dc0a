//! Linear algebra in the quotient `K[X]/I` of a zero-dimensional ideal.
//!
//! The algebra is described by its standard monomials and the sparse
//! matrices of multiplication by each variable. From these, lex Gröbner
//! bases of related ideals are read off as kernels of evaluation maps:
//! the ideal itself, the quotient `I : h` and the sum `I + <h>`.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::field::Field;
use super::groebner::{reduce, DegRevLex, GroebnerBasis, Lex, TermOrder, Terms};
use super::monomial::Monomial;
use super::polynomial::{Polynomial, Ring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Order {
    Lex,
    DegRevLex,
}

type Sparse<E> = Vec<(usize, E)>;

/// `K[X]/I` for a zero-dimensional ideal `I`.
#[derive(Clone)]
pub struct QuotientAlgebra<F: Field> {
    ring: Arc<Ring<F>>,
    order: Order,
    gb: Vec<Terms<F>>,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// `mult[j][b]` is the normal form of `x_j * basis[b]`.
    mult: Vec<Vec<Sparse<F::Elem>>>,
}

impl<F: Field> std::fmt::Debug for QuotientAlgebra<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuotientAlgebra")
            .field("dimension", &self.basis.len())
            .finish()
    }
}

impl<F: Field> QuotientAlgebra<F> {
    /// From a reduced degree reverse lex basis (terms sorted descending in
    /// that order, elements ascending by leading monomial).
    pub(crate) fn from_degrevlex(ring: &Arc<Ring<F>>, gb: Vec<Terms<F>>) -> Self {
        Self::build(ring, Order::DegRevLex, gb)
    }

    /// From a reduced lex basis; fails unless the ideal is zero-dimensional.
    pub fn from_lex(gb: &GroebnerBasis<F>) -> Result<Self> {
        if gb.is_unit() || !gb.is_zero_dimensional() {
            return Err(Error::NotZeroDimensional);
        }
        let terms = gb.elements().iter().map(|g| g.terms().to_vec()).collect();
        Ok(Self::build(gb.ring(), Order::Lex, terms))
    }

    fn build(ring: &Arc<Ring<F>>, order: Order, gb: Vec<Terms<F>>) -> Self {
        let n = ring.nvars();
        let lms: Vec<Monomial> = gb.iter().map(|g| g[0].0).collect();
        let standard = |m: &Monomial| !lms.iter().any(|l| l.divides(m));

        let mut seen: BTreeSet<Monomial> = BTreeSet::new();
        let mut frontier = vec![Monomial::one(n)];
        seen.insert(Monomial::one(n));
        while let Some(m) = frontier.pop() {
            for j in 0..n {
                let next = m.mul(&Monomial::var_power(n, j, 1));
                if standard(&next) && seen.insert(next) {
                    frontier.push(next);
                }
            }
        }
        let basis: Vec<Monomial> = seen.into_iter().collect();
        let index: HashMap<Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();

        let mut algebra = QuotientAlgebra {
            ring: ring.clone(),
            order,
            gb,
            basis,
            index,
            mult: Vec::new(),
        };
        let field = ring.field();
        let mut mult = Vec::with_capacity(n);
        for j in 0..n {
            let x = Monomial::var_power(n, j, 1);
            let column: Vec<Sparse<F::Elem>> = algebra
                .basis
                .iter()
                .map(|b| {
                    let m = b.mul(&x);
                    match algebra.index.get(&m) {
                        Some(&k) => vec![(k, field.one())],
                        None => algebra.sparse_nf(vec![(m, field.one())]),
                    }
                })
                .collect();
            mult.push(column);
        }
        algebra.mult = mult;
        algebra
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    /// Vector space dimension of the algebra.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Standard monomials, ascending in lex.
    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.basis
    }

    fn sparse_nf(&self, mut terms: Terms<F>) -> Sparse<F::Elem> {
        let field = self.ring.field();
        let refs: Vec<&[(Monomial, F::Elem)]> = self.gb.iter().map(|g| g.as_slice()).collect();
        let reduced = match self.order {
            Order::Lex => {
                terms.sort_by(|a, b| Lex::cmp(&b.0, &a.0));
                reduce::<Lex, F>(field, &terms, &refs, true)
            }
            Order::DegRevLex => {
                terms.sort_by(|a, b| DegRevLex::cmp(&b.0, &a.0));
                reduce::<DegRevLex, F>(field, &terms, &refs, true)
            }
        };
        reduced
            .into_iter()
            .map(|(m, c)| (self.index[&m], c))
            .collect()
    }

    /// Coordinates of the class of `f` in the standard monomial basis.
    pub fn vector_of(&self, f: &Polynomial<F>) -> Vec<F::Elem> {
        let field = self.ring.field();
        let mut out = vec![field.zero(); self.dim()];
        for (k, c) in self.sparse_nf(f.terms().to_vec()) {
            out[k] = c;
        }
        out
    }

    /// Multiplication of a coordinate vector by `x_j`.
    pub fn mul_var(&self, j: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        let field = self.ring.field();
        let mut out = vec![field.zero(); self.dim()];
        for (b, c) in v.iter().enumerate() {
            if field.is_zero(c) {
                continue;
            }
            for (k, a) in &self.mult[j][b] {
                let prod = field.mul(c, a);
                out[*k] = field.add(&out[*k], &prod);
            }
        }
        out
    }

    /// Reduced lex basis of the ideal itself.
    pub fn lex_basis(&self) -> GroebnerBasis<F> {
        let mut one = vec![self.ring.field().zero(); self.dim()];
        one[self.index[&Monomial::one(self.ring.nvars())]] = self.ring.field().one();
        self.kernel(one, Vec::new())
    }

    /// Reduced lex basis of `I : h`.
    pub fn quotient(&self, h: &Polynomial<F>) -> GroebnerBasis<F> {
        self.kernel(self.vector_of(h), Vec::new())
    }

    /// Reduced lex basis of `I : h^infinity`.
    pub fn saturation(&self, h: &Polynomial<F>) -> GroebnerBasis<F> {
        let mut current = self.quotient(h);
        let mut dim = self.dim();
        loop {
            if current.is_unit() {
                return current;
            }
            let next = QuotientAlgebra::from_lex(&current).expect("quotient stays zero-dimensional");
            if next.dim() == dim {
                return current;
            }
            dim = next.dim();
            current = next.quotient(h);
        }
    }

    /// Reduced lex basis of `I + <h>`.
    pub fn sum_with(&self, h: &Polynomial<F>) -> GroebnerBasis<F> {
        self.sum_with_all(std::slice::from_ref(h))
    }

    /// Reduced lex basis of `I + <h_1, ..., h_k>`.
    pub fn sum_with_all(&self, hs: &[Polynomial<F>]) -> GroebnerBasis<F> {
        let n = self.ring.nvars();
        let mut products: Vec<Vec<F::Elem>> = Vec::with_capacity(hs.len() * self.dim());
        for h in hs {
            let first = products.len();
            // Standard monomials form an order ideal and are sorted ascending,
            // so every b/x_j is already available when b is reached.
            let mut by_monomial: HashMap<Monomial, usize> = HashMap::new();
            for (k, b) in self.basis.iter().enumerate() {
                let v = if b.is_one() {
                    self.vector_of(h)
                } else {
                    let j = (0..n).find(|&j| b.exp(j) > 0).expect("non-constant monomial");
                    let prev = b.div(&Monomial::var_power(n, j, 1));
                    self.mul_var(j, &products[first + by_monomial[&prev]])
                };
                by_monomial.insert(*b, k);
                products.push(v);
            }
        }
        let mut one = vec![self.ring.field().zero(); self.dim()];
        one[self.index[&Monomial::one(n)]] = self.ring.field().one();
        self.kernel(one, products)
    }

    /// Lex basis of the kernel of `m -> m * start` modulo the span of `extra`.
    fn kernel(&self, start: Vec<F::Elem>, extra: Vec<Vec<F::Elem>>) -> GroebnerBasis<F> {
        let field = self.ring.field();
        let n = self.ring.nvars();
        let mut echelon = Echelon::<F>::default();
        for v in extra {
            echelon.insert(field, v, Vec::new());
        }

        let mut staircase: Vec<Monomial> = Vec::new();
        let mut images: HashMap<Monomial, Vec<F::Elem>> = HashMap::new();
        let mut leading: Vec<Monomial> = Vec::new();
        let mut elements: Vec<Polynomial<F>> = Vec::new();
        let mut candidates: BTreeSet<Monomial> = BTreeSet::new();
        candidates.insert(Monomial::one(n));

        while let Some(m) = candidates.pop_first() {
            if leading.iter().any(|l| l.divides(&m)) {
                continue;
            }
            let image = if m.is_one() {
                start.clone()
            } else {
                let (j, prev) = (0..n)
                    .filter(|&j| m.exp(j) > 0)
                    .map(|j| (j, m.div(&Monomial::var_power(n, j, 1))))
                    .find(|(_, p)| images.contains_key(p))
                    .expect("candidate has a predecessor on the staircase");
                self.mul_var(j, &images[&prev])
            };
            let mut combo = vec![field.zero(); staircase.len() + 1];
            combo[staircase.len()] = field.one();
            let (rest, combo) = echelon.reduce(field, image.clone(), combo);
            if rest.iter().all(|c| field.is_zero(c)) {
                let mut terms = vec![(m, field.one())];
                for (s, c) in staircase.iter().zip(&combo) {
                    if !field.is_zero(c) {
                        terms.push((*s, c.clone()));
                    }
                }
                elements.push(Polynomial::from_terms(&self.ring, terms));
                if m.is_one() {
                    break;
                }
                leading.push(m);
            } else {
                echelon.push(field, rest, combo);
                staircase.push(m);
                images.insert(m, image);
                for j in 0..n {
                    candidates.insert(m.mul(&Monomial::var_power(n, j, 1)));
                }
            }
        }
        if elements.iter().any(|g| g.is_constant()) {
            return GroebnerBasis::unit(&self.ring);
        }
        GroebnerBasis::from_reduced(&self.ring, elements)
    }
}

struct Row<E> {
    pivot: usize,
    vec: Vec<E>,
    combo: Vec<E>,
}

struct Echelon<F: Field> {
    rows: Vec<Row<F::Elem>>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Echelon { rows: Vec::new() }
    }
}

impl<F: Field> Echelon<F> {
    fn reduce(&self, field: &F, mut v: Vec<F::Elem>, mut combo: Vec<F::Elem>) -> (Vec<F::Elem>, Vec<F::Elem>) {
        for row in &self.rows {
            let c = v[row.pivot].clone();
            if field.is_zero(&c) {
                continue;
            }
            for (k, a) in row.vec.iter().enumerate().skip(row.pivot) {
                if !field.is_zero(a) {
                    field.sub_mul_assign(&mut v[k], &c, a);
                }
            }
            for (k, a) in row.combo.iter().enumerate() {
                if !field.is_zero(a) {
                    field.sub_mul_assign(&mut combo[k], &c, a);
                }
            }
        }
        (v, combo)
    }

    fn insert(&mut self, field: &F, v: Vec<F::Elem>, combo: Vec<F::Elem>) {
        let (v, combo) = self.reduce(field, v, combo);
        if v.iter().any(|c| !field.is_zero(c)) {
            self.push(field, v, combo);
        }
    }

    /// Appends an already reduced, non-zero vector.
    fn push(&mut self, field: &F, mut v: Vec<F::Elem>, mut combo: Vec<F::Elem>) {
        let pivot = v.iter().position(|c| !field.is_zero(c)).expect("non-zero row");
        let inv = field.inv(&v[pivot]);
        for c in v.iter_mut().chain(combo.iter_mut()) {
            *c = field.mul(c, &inv);
        }
        self.rows.push(Row { pivot, vec: v, combo });
    }
}
