//! Division, S-polynomials and reduced Gröbner bases.
//!
//! The Buchberger engine (Gebauer–Möller criteria, sugar selection) works on
//! raw term lists and is generic over the term order. The public surface is
//! lexicographic; degree reverse lex is only used internally as a fast first
//! pass for zero-dimensional ideals, whose lex basis is then recovered by
//! linear algebra in the quotient algebra (see `algebra`).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::marker::PhantomData;
use std::sync::Arc;

use super::algebra::QuotientAlgebra;
use super::field::Field;
use super::monomial::Monomial;
use super::polynomial::{Polynomial, Ring};
use crate::error::{invalid, Result};

pub(crate) type Terms<F> = Vec<(Monomial, <F as Field>::Elem)>;

/// A monomial order.
pub(crate) trait TermOrder: Copy + Send + Sync + 'static {
    fn cmp(a: &Monomial, b: &Monomial) -> Ordering;
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Lex;

#[derive(Debug, Clone, Copy)]
pub(crate) struct DegRevLex;

impl TermOrder for Lex {
    #[inline]
    fn cmp(a: &Monomial, b: &Monomial) -> Ordering {
        a.cmp(b)
    }
}

impl TermOrder for DegRevLex {
    #[inline]
    fn cmp(a: &Monomial, b: &Monomial) -> Ordering {
        a.degree().cmp(&b.degree()).then_with(|| {
            for i in (0..a.nvars()).rev() {
                match a.exp(i).cmp(&b.exp(i)) {
                    Ordering::Equal => continue,
                    other => return other.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

/// Block order for eliminating the first variable: its exponent decides,
/// then degree reverse lex on the remaining variables.
#[derive(Debug, Clone, Copy)]
pub(crate) struct EliminateFirst;

impl TermOrder for EliminateFirst {
    fn cmp(a: &Monomial, b: &Monomial) -> Ordering {
        a.exp(0).cmp(&b.exp(0)).then_with(|| {
            (a.degree() - a.exp(0)).cmp(&(b.degree() - b.exp(0))).then_with(|| {
                for i in (1..a.nvars()).rev() {
                    match a.exp(i).cmp(&b.exp(i)) {
                        Ordering::Equal => continue,
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            })
        })
    }
}

struct Key<O>(Monomial, PhantomData<O>);

impl<O: TermOrder> PartialEq for Key<O> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}
impl<O: TermOrder> Eq for Key<O> {}
impl<O: TermOrder> PartialOrd for Key<O> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<O: TermOrder> Ord for Key<O> {
    fn cmp(&self, other: &Self) -> Ordering {
        O::cmp(&self.0, &other.0)
    }
}

/// Reduced, monic lex Gröbner basis sorted so that `LM(g1) < ... < LM(gm)`.
#[derive(Clone, PartialEq)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<Ring<F>>,
    elements: Vec<Polynomial<F>>,
    reduced: bool,
}

impl<F: Field> std::fmt::Debug for GroebnerBasis<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list()
            .entries(self.elements.iter().map(|p| p.to_string()))
            .finish()
    }
}

impl<F: Field> GroebnerBasis<F> {
    /// Wraps elements that are already known to form a reduced basis.
    pub(crate) fn from_reduced(ring: &Arc<Ring<F>>, mut elements: Vec<Polynomial<F>>) -> Self {
        elements.sort_by(|a, b| a.lm().cmp(&b.lm()));
        GroebnerBasis {
            ring: ring.clone(),
            elements,
            reduced: true,
        }
    }

    pub(crate) fn unit(ring: &Arc<Ring<F>>) -> Self {
        GroebnerBasis::from_reduced(ring, vec![Polynomial::one(ring)])
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Polynomial<F>> {
        self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Whether the basis generates the whole ring.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].lm().is_some_and(|m| m.is_one())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().filter_map(|g| g.lm().copied()).collect()
    }

    /// Whether every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        has_pure_powers(&self.leading_monomials(), self.ring.nvars())
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Polynomial<F> {
        let refs: Vec<&[(Monomial, F::Elem)]> = self.elements.iter().map(|g| g.terms()).collect();
        let terms = reduce::<Lex, F>(f.field(), f.terms(), &refs, true);
        Polynomial::from_sorted_terms(f.ring(), terms)
    }

    /// Ideal membership.
    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.normal_form(f).is_zero()
    }
}

pub(crate) fn has_pure_powers(lms: &[Monomial], n: usize) -> bool {
    if lms.iter().any(|m| m.is_one()) {
        return true;
    }
    (0..n).all(|i| lms.iter().any(|m| m.pure_power_var() == Some(i)))
}

/// Remainder of `f` under full division by `divisors`.
///
/// Among the divisors whose leading monomial divides the current term, the
/// one with the smallest leading monomial is used (ties by position).
pub fn normal_form<F: Field>(f: &Polynomial<F>, divisors: &[Polynomial<F>]) -> Polynomial<F> {
    let mut sorted: Vec<(usize, &Polynomial<F>)> = divisors
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .collect();
    sorted.sort_by(|(i, a), (j, b)| a.lm().cmp(&b.lm()).then(i.cmp(j)));
    let refs: Vec<&[(Monomial, F::Elem)]> = sorted.iter().map(|(_, g)| g.terms()).collect();
    let terms = reduce::<Lex, F>(f.field(), f.terms(), &refs, true);
    Polynomial::from_sorted_terms(f.ring(), terms)
}

/// Division of `f` (sorted descending in `O`) by divisors sorted ascending by
/// leading monomial; the first divisor that applies is used.
pub(crate) fn reduce<O: TermOrder, F: Field>(
    field: &F,
    f: &[(Monomial, F::Elem)],
    divisors: &[&[(Monomial, F::Elem)]],
    full: bool,
) -> Terms<F> {
    let lead: Vec<(Monomial, F::Elem)> = divisors
        .iter()
        .map(|g| (g[0].0, field.inv(&g[0].1)))
        .collect();
    let mut pending: BTreeMap<Key<O>, F::Elem> = f
        .iter()
        .map(|(m, c)| (Key(*m, PhantomData), c.clone()))
        .collect();
    let mut out = Vec::new();
    while let Some((Key(m, _), c)) = pending.pop_last() {
        match lead.iter().position(|(lm, _)| lm.divides(&m)) {
            None if !full => {
                out.push((m, c));
                out.extend(std::mem::take(&mut pending).into_iter().rev().map(|(k, c)| (k.0, c)));
                return out;
            }
            None => out.push((m, c)),
            Some(k) => {
                let (lm, lc_inv) = &lead[k];
                let shift = m.div(lm);
                let factor = field.mul(&c, lc_inv);
                for (t, a) in &divisors[k][1..] {
                    let key = Key(t.mul(&shift), PhantomData);
                    match pending.get_mut(&key) {
                        Some(v) => {
                            field.sub_mul_assign(v, &factor, a);
                            if field.is_zero(v) {
                                pending.remove(&key);
                            }
                        }
                        None => {
                            pending.insert(key, field.neg(&field.mul(&factor, a)));
                        }
                    }
                }
            }
        }
    }
    out
}

fn s_poly_terms<O: TermOrder, F: Field>(
    field: &F,
    f: &[(Monomial, F::Elem)],
    g: &[(Monomial, F::Elem)],
) -> Terms<F> {
    let l = f[0].0.lcm(&g[0].0);
    let (sf, sg) = (l.div(&f[0].0), l.div(&g[0].0));
    let (cf, cg) = (field.inv(&f[0].1), field.inv(&g[0].1));
    let mut acc: BTreeMap<Key<O>, F::Elem> = BTreeMap::new();
    for (m, c) in &f[1..] {
        acc.insert(Key(m.mul(&sf), PhantomData), field.mul(c, &cf));
    }
    for (m, c) in &g[1..] {
        let key = Key(m.mul(&sg), PhantomData);
        let v = field.neg(&field.mul(c, &cg));
        match acc.get_mut(&key) {
            Some(e) => {
                *e = field.add(e, &v);
                if field.is_zero(e) {
                    acc.remove(&key);
                }
            }
            None => {
                acc.insert(key, v);
            }
        }
    }
    acc.into_iter().rev().map(|(k, c)| (k.0, c)).collect()
}

/// `lcm/LT(f) * f - lcm/LT(g) * g` with `lcm = lcm(LM(f), LM(g))`.
pub fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Result<Polynomial<F>> {
    if f.is_zero() || g.is_zero() {
        return Err(invalid("S-polynomial of zero"));
    }
    let terms = s_poly_terms::<Lex, F>(f.field(), f.terms(), g.terms());
    Ok(Polynomial::from_sorted_terms(f.ring(), terms))
}

pub(crate) fn monic_terms<F: Field>(field: &F, mut t: Terms<F>) -> Terms<F> {
    if let Some((_, c)) = t.first() {
        if !field.is_one(c) {
            let inv = field.inv(c);
            for (_, a) in t.iter_mut() {
                *a = field.mul(a, &inv);
            }
        }
    }
    t
}

fn total_degree<E>(t: &[(Monomial, E)]) -> u32 {
    t.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Buchberger<'a, O: TermOrder, F: Field> {
    field: &'a F,
    polys: Vec<Terms<F>>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    _order: PhantomData<O>,
}

impl<'a, O: TermOrder, F: Field> Buchberger<'a, O, F> {
    fn lm(&self, i: usize) -> &Monomial {
        &self.polys[i][0].0
    }

    fn pair(&self, i: usize, j: usize) -> Pair {
        let (mi, mj) = (self.lm(i), self.lm(j));
        let lcm = mi.lcm(mj);
        let si = self.sugar[i] - mi.degree();
        let sj = self.sugar[j] - mj.degree();
        Pair {
            i,
            j,
            lcm,
            sugar: si.max(sj) + lcm.degree(),
        }
    }

    /// Gebauer–Möller update for the newly added polynomial `h`.
    fn update(&mut self, h: usize) {
        let hm = *self.lm(h);
        let candidates: Vec<Pair> = (0..h)
            .filter(|&g| self.active[g])
            .map(|g| self.pair(g, h))
            .collect();

        // chain criterion among the new pairs
        let mut kept: Vec<Pair> = Vec::new();
        for (idx, p) in candidates.iter().enumerate() {
            let coprime = self.lm(p.i).is_coprime(&hm);
            let dominated = candidates[idx + 1..]
                .iter()
                .chain(kept.iter())
                .any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p.clone());
            }
        }
        // product criterion
        kept.retain(|p| !self.lm(p.i).is_coprime(&hm));

        // old pairs made redundant by h
        let polys = &self.polys;
        self.pairs.retain(|p| {
            let redundant = hm.divides(&p.lcm)
                && polys[p.i][0].0.lcm(&hm) != p.lcm
                && polys[p.j][0].0.lcm(&hm) != p.lcm;
            !redundant
        });
        self.pairs.extend(kept);

        for g in 0..h {
            if self.active[g] && hm.divides(&self.polys[g][0].0) {
                self.active[g] = false;
            }
        }
        self.active[h] = true;
    }

    fn reducers(&self) -> Vec<&[(Monomial, F::Elem)]> {
        let mut r: Vec<&[(Monomial, F::Elem)]> = self
            .polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p.as_slice())
            .collect();
        r.sort_by(|a, b| O::cmp(&a[0].0, &b[0].0));
        r
    }

    fn push(&mut self, p: Terms<F>, sugar: u32) {
        // the sugar never drops below the actual degree
        self.sugar.push(sugar.max(total_degree(&p)));
        self.polys.push(monic_terms(self.field, p));
        self.active.push(false);
        self.update(self.polys.len() - 1);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then(O::cmp(&a.lcm, &b.lcm))
                    .then((a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis in order `O` of the given term lists (each sorted
/// descending in `O`), sorted ascending by leading monomial. The unit ideal
/// comes back as `[[1]]`.
pub(crate) fn buchberger_basis<O: TermOrder, F: Field>(
    field: &F,
    gens: Vec<Terms<F>>,
    nvars: usize,
) -> Vec<Terms<F>> {
    let unit = || vec![vec![(Monomial::one(nvars), field.one())]];
    let mut gens: Vec<Terms<F>> = gens.into_iter().filter(|g| !g.is_empty()).collect();
    if gens.iter().any(|g| g[0].0.is_one()) {
        return unit();
    }
    gens.sort_by(|a, b| O::cmp(&a[0].0, &b[0].0));

    let mut state: Buchberger<'_, O, F> = Buchberger {
        field,
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        _order: PhantomData,
    };
    for g in gens {
        let r = reduce::<O, F>(field, &g, &state.reducers(), true);
        if r.is_empty() {
            continue;
        }
        if r[0].0.is_one() {
            return unit();
        }
        let s = total_degree(&g);
        state.push(r, s);
    }
    while let Some(pair) = state.next_pair() {
        let sp = s_poly_terms::<O, F>(field, &state.polys[pair.i], &state.polys[pair.j]);
        let r = reduce::<O, F>(field, &sp, &state.reducers(), true);
        if r.is_empty() {
            continue;
        }
        if r[0].0.is_one() {
            return unit();
        }
        state.push(r, pair.sugar);
    }

    let minimal: Vec<Terms<F>> = state
        .polys
        .into_iter()
        .zip(state.active)
        .filter(|(_, a)| *a)
        .map(|(p, _)| p)
        .collect();
    interreduce::<O, F>(field, minimal)
}

/// Tail-reduces a minimal basis (no leading monomial divides another) and
/// sorts it ascending.
pub(crate) fn interreduce<O: TermOrder, F: Field>(field: &F, mut basis: Vec<Terms<F>>) -> Vec<Terms<F>> {
    basis.sort_by(|a, b| O::cmp(&a[0].0, &b[0].0));
    for k in 0..basis.len() {
        let g = monic_terms(field, std::mem::take(&mut basis[k]));
        let others: Vec<&[(Monomial, F::Elem)]> = basis
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, p)| p.as_slice())
            .collect();
        let mut reduced = vec![g[0].clone()];
        reduced.extend(reduce::<O, F>(field, &g[1..], &others, true));
        basis[k] = reduced;
    }
    basis
}

/// Reduced lex Gröbner basis of the ideal generated by `gens`.
///
/// Zero-dimensional ideals go through a degree reverse lex basis and a
/// change of ordering in the quotient algebra; all other ideals run
/// Buchberger in lex directly. The result is the same either way.
pub fn reduced_groebner<F: Field>(gens: &[Polynomial<F>]) -> Result<GroebnerBasis<F>> {
    match zero_dimensional_groebner(gens)? {
        Some(gb) => Ok(gb),
        None => lex_buchberger(gens),
    }
}

/// The reduced lex basis when `<gens>` is zero-dimensional (or the unit
/// ideal), `None` otherwise. Only a degree reverse lex basis is computed in
/// the second case.
pub fn zero_dimensional_groebner<F: Field>(gens: &[Polynomial<F>]) -> Result<Option<GroebnerBasis<F>>> {
    let ring = check_generators(gens)?;
    let field = ring.field().clone();
    let n = ring.nvars();
    let resorted: Vec<Terms<F>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut t = g.terms().to_vec();
            t.sort_by(|a, b| DegRevLex::cmp(&b.0, &a.0));
            t
        })
        .collect();
    let drl = buchberger_basis::<DegRevLex, F>(&field, resorted, n);
    let lms: Vec<Monomial> = drl.iter().map(|g| g[0].0).collect();
    if lms.iter().any(|m| m.is_one()) {
        return Ok(Some(GroebnerBasis::unit(&ring)));
    }
    if has_pure_powers(&lms, n) {
        let algebra = QuotientAlgebra::from_degrevlex(&ring, drl);
        return Ok(Some(algebra.lex_basis()));
    }
    Ok(None)
}

/// Elements free of the first variable in a Gröbner basis of `gens` for an
/// order eliminating it; they generate the elimination ideal.
pub(crate) fn eliminate_first<F: Field>(gens: &[Polynomial<F>]) -> Result<Vec<Polynomial<F>>> {
    let ring = check_generators(gens)?;
    let resorted: Vec<Terms<F>> = gens
        .iter()
        .map(|g| {
            let mut t = g.terms().to_vec();
            t.sort_by(|a, b| EliminateFirst::cmp(&b.0, &a.0));
            t
        })
        .collect();
    let basis = buchberger_basis::<EliminateFirst, F>(ring.field(), resorted, ring.nvars());
    Ok(basis
        .into_iter()
        .filter(|g| g[0].0.exp(0) == 0)
        .map(|g| Polynomial::from_terms(&ring, g))
        .collect())
}

/// Plain lex Buchberger, for ideals of any dimension.
pub fn lex_buchberger<F: Field>(gens: &[Polynomial<F>]) -> Result<GroebnerBasis<F>> {
    let ring = check_generators(gens)?;
    let terms: Vec<Terms<F>> = gens.iter().map(|g| g.terms().to_vec()).collect();
    let basis = buchberger_basis::<Lex, F>(ring.field(), terms, ring.nvars());
    let elements = basis
        .into_iter()
        .map(|t| Polynomial::from_sorted_terms(&ring, t))
        .collect();
    Ok(GroebnerBasis::from_reduced(&ring, elements))
}

fn check_generators<F: Field>(gens: &[Polynomial<F>]) -> Result<Arc<Ring<F>>> {
    let ring = gens
        .first()
        .map(|g| g.ring().clone())
        .ok_or_else(|| invalid("no generators"))?;
    if gens.iter().any(|g| !Ring::same(g.ring(), &ring)) {
        return Err(invalid("generators live in different rings"));
    }
    if gens.iter().all(|g| g.is_zero()) {
        return Err(invalid("all generators are zero"));
    }
    Ok(ring)
}

/// Checks Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner<F: Field>(basis: &[Polynomial<F>]) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            match s_polynomial(&basis[i], &basis[j]) {
                Ok(s) => {
                    if !normal_form(&s, basis).is_zero() {
                        return false;
                    }
                }
                Err(_) => return false,
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rational, PrimeField};
    use crate::poly::field::Rationals;
    use crate::poly::polynomial::{RationalPoly, RationalRing};
    use proptest::prelude::*;

    fn ring2() -> Arc<RationalRing> {
        Ring::new(&["x1", "x2"], Rationals).unwrap()
    }

    fn p(r: &Arc<RationalRing>, t: &[(i64, &[u32])]) -> RationalPoly {
        RationalPoly::from_int_terms(r, t).unwrap()
    }

    fn moller_gens(r: &Arc<RationalRing>) -> Vec<RationalPoly> {
        vec![
            p(r, &[(1, &[0, 10])]),
            p(r, &[(1, &[1, 3]), (1, &[0, 5])]),
            p(r, &[(1, &[11, 0])]),
        ]
    }

    fn texts<F: Field>(gb: &GroebnerBasis<F>) -> Vec<String> {
        gb.elements().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn degrevlex_order() {
        let m = |e: &[u32]| Monomial::from_exponents(e).unwrap();
        // same degree: smaller power of the last variable wins
        assert_eq!(DegRevLex::cmp(&m(&[1, 1, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(DegRevLex::cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(DegRevLex::cmp(&m(&[0, 0, 3]), &m(&[2, 0, 0])), Ordering::Greater);
        assert_eq!(DegRevLex::cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(DegRevLex::cmp(&m(&[0, 0, 4]), &m(&[1, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn normal_form_examples() {
        let r = ring2();
        let g = p(&r, &[(1, &[1, 0]), (-1, &[0, 2])]);
        assert!(normal_form(&g, std::slice::from_ref(&g)).is_zero());
        let x1sq = p(&r, &[(1, &[2, 0])]);
        assert_eq!(normal_form(&x1sq, std::slice::from_ref(&g)), p(&r, &[(1, &[0, 4])]));
        let x2sq = p(&r, &[(1, &[0, 2])]);
        assert_eq!(normal_form(&x2sq, &[p(&r, &[(1, &[1, 0])])]), x2sq);
    }

    #[test]
    fn s_polynomial_examples() {
        let r = ring2();
        let f = p(&r, &[(1, &[1, 0]), (-1, &[0, 2])]);
        assert!(s_polynomial(&f, &f).unwrap().is_zero());
        let a = p(&r, &[(1, &[2, 0])]);
        let b = p(&r, &[(1, &[1, 1])]);
        assert!(s_polynomial(&a, &b).unwrap().is_zero());
        let c = p(&r, &[(1, &[0, 3])]);
        assert_eq!(s_polynomial(&f, &c).unwrap(), p(&r, &[(-1, &[0, 5])]));
    }

    #[test]
    fn reduced_groebner_examples() {
        let r = ring2();
        let gb = reduced_groebner(&moller_gens(&r)).unwrap();
        assert_eq!(texts(&gb), ["x2^10", "x1*x2^3+x2^5", "x1^11"]);
        assert!(is_groebner(gb.elements()));

        let gb = reduced_groebner(&[
            p(&r, &[(1, &[2, 0]), (-1, &[0, 1])]),
            p(&r, &[(1, &[0, 2]), (-1, &[1, 0])]),
        ])
        .unwrap();
        assert_eq!(texts(&gb), ["x2^4-x2", "x1-x2^2"]);

        let gb = reduced_groebner(&[RationalPoly::constant(&r, rational(5, 1))]).unwrap();
        assert!(gb.is_unit());
        assert_eq!(texts(&gb), ["1"]);

        assert!(reduced_groebner(&[RationalPoly::zero(&r)]).is_err());
        assert!(reduced_groebner::<Rationals>(&[]).is_err());
    }

    #[test]
    fn positive_dimensional_falls_back_to_lex() {
        let r = ring2();
        let gb = reduced_groebner(&[
            p(&r, &[(1, &[1, 1]), (-1, &[0, 0])]),
            p(&r, &[(2, &[2, 1])]),
        ])
        .unwrap();
        assert!(gb.is_unit());
        let gb = reduced_groebner(&[p(&r, &[(1, &[1, 2]), (-1, &[1, 0])])]).unwrap();
        assert_eq!(texts(&gb), ["x1*x2^2-x1"]);
        assert!(!gb.is_zero_dimensional());
    }

    #[test]
    fn both_routes_agree_on_zero_dimensional_input() {
        let r = Ring::new(&["x", "y", "z"], Rationals).unwrap();
        let gens = vec![
            p(&r, &[(1, &[2, 0, 0]), (1, &[0, 1, 1]), (-3, &[0, 0, 0])]),
            p(&r, &[(1, &[0, 2, 0]), (-2, &[1, 0, 0]), (1, &[0, 0, 1])]),
            p(&r, &[(1, &[0, 0, 2]), (1, &[1, 1, 0]), (-1, &[0, 0, 0])]),
        ];
        let fast = reduced_groebner(&gens).unwrap();
        let plain = lex_buchberger(&gens).unwrap();
        assert_eq!(fast, plain);
        assert!(is_groebner(fast.elements()));
    }

    #[test]
    fn canonical_across_generating_sets() {
        let r = ring2();
        let gens = moller_gens(&r);
        let sum = &gens[0] + &gens[1];
        let combo = &(&gens[2] * &p(&r, &[(1, &[0, 1]), (3, &[0, 0])])) + &gens[1];
        let alt = vec![sum, gens[0].clone(), combo];
        assert_eq!(reduced_groebner(&gens).unwrap(), reduced_groebner(&alt).unwrap());
    }

    // membership oracle for monomial ideals: a monomial lies in the ideal iff
    // some generator divides it
    #[test]
    fn monomial_ideal_membership_matches_divisibility() {
        let r = ring2();
        let gens = vec![p(&r, &[(1, &[2, 1])]), p(&r, &[(1, &[0, 3])]), p(&r, &[(1, &[4, 0])])];
        let gb = reduced_groebner(&gens).unwrap();
        for a in 0..6u32 {
            for b in 0..5u32 {
                let m = Monomial::from_exponents(&[a, b]).unwrap();
                let expected = gens.iter().any(|g| g.lm().unwrap().divides(&m));
                let f = p(&r, &[(1, &[a, b])]);
                assert_eq!(gb.contains(&f), expected, "x1^{a} x2^{b}");
            }
        }
    }

    fn small_poly(r: &Arc<RationalRing>, coeffs: &[(i64, u32, u32)]) -> RationalPoly {
        let terms: Vec<(i64, [u32; 2])> = coeffs.iter().map(|&(c, a, b)| (c, [a, b])).collect();
        let refs: Vec<(i64, &[u32])> = terms.iter().map(|(c, e)| (*c, &e[..])).collect();
        p(r, &refs)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn buchberger_output_is_reduced_groebner(
            a in proptest::collection::vec((-5i64..=5, 0u32..3, 0u32..3), 1..4),
            b in proptest::collection::vec((-5i64..=5, 0u32..3, 0u32..3), 1..4),
            zero_dim in any::<bool>(),
        ) {
            let r = ring2();
            let f = small_poly(&r, &a);
            let g = small_poly(&r, &b);
            let mut gens = vec![f, g];
            if zero_dim {
                gens.push(p(&r, &[(1, &[3, 0]), (-1, &[0, 0])]));
                gens.push(p(&r, &[(1, &[0, 3]), (-2, &[0, 0])]));
            }
            prop_assume!(gens.iter().any(|g| !g.is_zero()));
            let gb = reduced_groebner(&gens).unwrap();
            prop_assert!(is_groebner(gb.elements()));
            prop_assert_eq!(&gb, &lex_buchberger(&gens).unwrap());
            for gen in &gens {
                prop_assert!(gb.contains(gen));
            }
            let lms = gb.leading_monomials();
            for (i, m) in lms.iter().enumerate() {
                prop_assert!(gb.elements()[i].lc().unwrap() == &rational(1, 1));
                if i > 0 {
                    prop_assert!(lms[i - 1] < *m);
                }
                for (j, g) in gb.elements().iter().enumerate() {
                    if i != j {
                        prop_assert!(g.terms().iter().all(|(t, _)| !m.divides(t)));
                    }
                }
            }
        }

        #[test]
        fn modular_arithmetic_commutes_with_reduction(
            a in proptest::collection::vec((-50i64..=50, 0u32..3, 0u32..3), 1..5),
            b in proptest::collection::vec((-50i64..=50, 0u32..3, 0u32..3), 1..5),
            den in 1i64..20,
        ) {
            let r = ring2();
            let f = &small_poly(&r, &a) * &RationalPoly::constant(&r, rational(1, den));
            let g = small_poly(&r, &b);
            let prime = 1_073_741_827u64;
            let rp = r.with_field(PrimeField::new(prime).unwrap());
            let fp = f.reduce_mod(&rp).unwrap();
            let gp = g.reduce_mod(&rp).unwrap();
            prop_assert_eq!((&f * &g).reduce_mod(&rp).unwrap(), &fp * &gp);
            prop_assert_eq!((&f - &g).reduce_mod(&rp).unwrap(), &fp - &gp);
            if let Ok(sp) = s_polynomial(&f, &g) {
                prop_assert_eq!(sp.reduce_mod(&rp).unwrap(), s_polynomial(&fp, &gp).unwrap());
            }
        }
    }
}
