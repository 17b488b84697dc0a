//! Ideals given by generators: dimension, quotients, saturation,
//! containment and reduction modulo a prime.

use std::sync::{Arc, OnceLock};

use crate::arith::PrimeField;
use crate::error::{invalid, Error, Result};
use crate::poly::{
    eliminate_first, reduced_groebner, zero_dimensional_groebner, Field, GroebnerBasis, Monomial, Polynomial, QuotientAlgebra,
    Rationals, Ring,
};

/// An ideal together with a lazily computed reduced lex Gröbner basis.
pub struct IdealHandle<F: Field> {
    ring: Arc<Ring<F>>,
    generators: Vec<Polynomial<F>>,
    basis: OnceLock<GroebnerBasis<F>>,
    zero_dim: OnceLock<bool>,
}

pub type RationalIdeal = IdealHandle<Rationals>;
pub type ModularIdeal = IdealHandle<PrimeField>;

impl<F: Field> Clone for IdealHandle<F> {
    fn clone(&self) -> Self {
        IdealHandle {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            basis: self.basis.clone(),
            zero_dim: self.zero_dim.clone(),
        }
    }
}

impl<F: Field> std::fmt::Debug for IdealHandle<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list()
            .entries(self.generators.iter().map(|g| g.to_string()))
            .finish()
    }
}

impl<F: Field> IdealHandle<F> {
    /// Fails when there are no generators, they live in different rings, or
    /// all of them are zero.
    pub fn new(generators: Vec<Polynomial<F>>) -> Result<Self> {
        let ring = generators
            .first()
            .map(|g| g.ring().clone())
            .ok_or_else(|| invalid("an ideal needs at least one generator"))?;
        if generators.iter().any(|g| !Ring::same(g.ring(), &ring)) {
            return Err(invalid("generators live in different rings"));
        }
        let generators: Vec<Polynomial<F>> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        if generators.is_empty() {
            return Err(invalid("all generators are zero"));
        }
        Ok(IdealHandle {
            ring,
            generators,
            basis: OnceLock::new(),
            zero_dim: OnceLock::new(),
        })
    }

    /// The ideal generated by a known reduced basis.
    pub fn from_groebner(gb: GroebnerBasis<F>) -> Self {
        let generators = gb.elements().to_vec();
        let ring = gb.ring().clone();
        let zero_dim = OnceLock::from(gb.is_zero_dimensional());
        IdealHandle {
            ring,
            generators,
            basis: OnceLock::from(gb),
            zero_dim,
        }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    /// The reduced lex Gröbner basis, computed once on first access.
    pub fn groebner(&self) -> &GroebnerBasis<F> {
        self.basis.get_or_init(|| {
            reduced_groebner(&self.generators).expect("generators were validated on construction")
        })
    }

    /// Decided from a degree reverse lex basis, so positive-dimensional
    /// ideals never pay for a lex basis here.
    pub fn is_zero_dimensional(&self) -> bool {
        *self.zero_dim.get_or_init(|| {
            if let Some(gb) = self.basis.get() {
                return gb.is_zero_dimensional();
            }
            match zero_dimensional_groebner(&self.generators).expect("generators were validated on construction") {
                Some(gb) => {
                    let _ = self.basis.set(gb);
                    true
                }
                None => false,
            }
        })
    }

    pub fn vdim(&self) -> Result<usize> {
        if !self.is_zero_dimensional() {
            return Err(Error::NotZeroDimensional);
        }
        vdim(self.groebner())
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().is_unit()
    }
}

/// Pure-power test on a reduced basis; the unit ideal counts as
/// zero-dimensional.
pub fn is_zero_dimensional<F: Field>(g: &GroebnerBasis<F>) -> bool {
    g.is_zero_dimensional()
}

/// Number of standard monomials of a zero-dimensional basis.
pub fn vdim<F: Field>(g: &GroebnerBasis<F>) -> Result<usize> {
    if !g.is_zero_dimensional() {
        return Err(Error::NotZeroDimensional);
    }
    if g.is_unit() {
        return Ok(0);
    }
    let n = g.ring().nvars();
    Ok(count_standard(&g.leading_monomials(), Monomial::one(n), 0))
}

fn count_standard(lms: &[Monomial], prefix: Monomial, var: usize) -> usize {
    if var == prefix.nvars() {
        return 1;
    }
    let mut total = 0;
    let mut e = 0;
    loop {
        let m = prefix.with_exp(var, e);
        // Later variables are still zero, so divisibility of `m` means every
        // extension of it is divisible too.
        if lms.iter().any(|l| l.divides(&m)) {
            return total;
        }
        total += count_standard(lms, m, var + 1);
        e += 1;
    }
}

/// `I : h`.
///
/// Zero-dimensional ideals are handled by linear algebra in `K[X]/I`;
/// other ideals by elimination (see [`quotient_by_elimination`]).
pub fn ideal_quotient<F: Field>(ideal: &IdealHandle<F>, h: &Polynomial<F>) -> Result<GroebnerBasis<F>> {
    check_divisor(ideal, h)?;
    let gb = ideal.groebner();
    if gb.is_unit() {
        return Ok(gb.clone());
    }
    if gb.is_zero_dimensional() {
        return Ok(QuotientAlgebra::from_lex(gb)?.quotient(h));
    }
    quotient_by_elimination(gb, h)
}

/// `I : h` from `I ∩ <h>`, where the intersection is the part free of `t`
/// in a basis of `<t*I, (1-t)*h>` for an order eliminating `t`.
pub fn quotient_by_elimination<F: Field>(
    gb: &GroebnerBasis<F>,
    h: &Polynomial<F>,
) -> Result<GroebnerBasis<F>> {
    if h.is_zero() {
        return Err(invalid("quotient by the zero polynomial"));
    }
    let ring = gb.ring();
    let mut name = String::from("_t");
    while ring.vars().contains(&name) {
        name.push('_');
    }
    let big = ring.push_front(&name)?;
    let t = Polynomial::var(&big, 0);
    let one = Polynomial::one(&big);
    let mut gens: Vec<Polynomial<F>> = gb.elements().iter().map(|g| &t * &g.embed_into(&big)).collect();
    gens.push(&(&one - &t) * &h.embed_into(&big));
    let mut quotients = Vec::new();
    for g in eliminate_first(&gens)? {
        let g = g.restrict_to(ring)?;
        let q = g
            .divide_exact(h)
            .ok_or_else(|| invalid("intersection element not divisible by h"))?;
        quotients.push(q);
    }
    reduced_groebner(&quotients)
}

/// `I : h^∞`.
pub fn saturation<F: Field>(ideal: &IdealHandle<F>, h: &Polynomial<F>) -> Result<GroebnerBasis<F>> {
    check_divisor(ideal, h)?;
    let gb = ideal.groebner();
    if gb.is_unit() {
        return Ok(gb.clone());
    }
    if gb.is_zero_dimensional() {
        return Ok(QuotientAlgebra::from_lex(gb)?.saturation(h));
    }
    let mut current = gb.clone();
    loop {
        let next = quotient_by_elimination(&current, h)?;
        if next == current {
            return Ok(current);
        }
        current = next;
    }
}

fn check_divisor<F: Field>(ideal: &IdealHandle<F>, h: &Polynomial<F>) -> Result<()> {
    if h.is_zero() {
        return Err(invalid("quotient by the zero polynomial"));
    }
    if !Ring::same(h.ring(), ideal.ring()) {
        return Err(invalid("polynomial and ideal live in different rings"));
    }
    Ok(())
}

/// Whether `I ⊆ J`.
pub fn ideal_contains<F: Field>(i: &IdealHandle<F>, j: &IdealHandle<F>) -> Result<bool> {
    if !Ring::same(i.ring(), j.ring()) {
        return Err(invalid("ideals live in different rings"));
    }
    let gb = j.groebner();
    Ok(i.generators().iter().all(|f| gb.contains(f)))
}

/// Reduces every generator modulo `p`. `None` when `p` divides a
/// denominator or every generator vanishes.
pub fn reduce_ideal_mod_p(ideal: &IdealHandle<Rationals>, p: PrimeField) -> Option<IdealHandle<PrimeField>> {
    let ring = ideal.ring().with_field(p);
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.reduce_mod(&ring))
        .collect::<Option<Vec<_>>>()?;
    IdealHandle::new(gens).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;
    use crate::poly::{RationalPoly, RationalRing};
    use proptest::prelude::*;

    fn ring2() -> Arc<RationalRing> {
        Ring::new(&["x1", "x2"], Rationals).unwrap()
    }

    fn p(r: &Arc<RationalRing>, t: &[(i64, &[u32])]) -> RationalPoly {
        RationalPoly::from_int_terms(r, t).unwrap()
    }

    fn ideal(r: &Arc<RationalRing>, gens: &[&[(i64, &[u32])]]) -> RationalIdeal {
        IdealHandle::new(gens.iter().map(|g| p(r, g)).collect()).unwrap()
    }

    fn example(r: &Arc<RationalRing>) -> RationalIdeal {
        ideal(r, &[&[(1, &[0, 10])], &[(1, &[1, 3]), (1, &[0, 5])], &[(1, &[11, 0])]])
    }

    fn texts<F: Field>(g: &GroebnerBasis<F>) -> Vec<String> {
        g.elements().iter().map(|e| e.to_string()).collect()
    }

    #[test]
    fn zero_dimensionality() {
        let r = ring2();
        assert!(example(&r).is_zero_dimensional());
        assert!(!ideal(&r, &[&[(1, &[1, 0])]]).is_zero_dimensional());
        assert!(ideal(&r, &[&[(1, &[0, 0])]]).is_zero_dimensional());
    }

    #[test]
    fn vdim_examples() {
        let r = ring2();
        assert_eq!(example(&r).vdim().unwrap(), 40);
        assert_eq!(ideal(&r, &[&[(1, &[0, 7])], &[(1, &[1, 0]), (1, &[0, 2])]]).vdim().unwrap(), 7);
        assert_eq!(ideal(&r, &[&[(1, &[0, 3])], &[(1, &[11, 0])]]).vdim().unwrap(), 33);
        assert_eq!(ideal(&r, &[&[(1, &[1, 0])], &[(1, &[0, 1])]]).vdim().unwrap(), 1);
        assert_eq!(ideal(&r, &[&[(1, &[1, 0])]]).vdim(), Err(Error::NotZeroDimensional));
    }

    #[test]
    fn quotient_examples() {
        let r = ring2();
        let i = example(&r);
        let x2_3 = p(&r, &[(1, &[0, 3])]);
        let q = ideal_quotient(&i, &x2_3).unwrap();
        assert_eq!(texts(&q), ["x2^7", "x1+x2^2"]);
        assert_eq!(quotient_by_elimination(i.groebner(), &x2_3).unwrap(), q);

        let one = Polynomial::one(&r);
        assert_eq!(&ideal_quotient(&i, &one).unwrap(), i.groebner());

        let x1sq = ideal(&r, &[&[(1, &[2, 0])]]);
        let x1 = p(&r, &[(1, &[1, 0])]);
        assert_eq!(texts(&ideal_quotient(&x1sq, &x1).unwrap()), ["x1"]);
        assert!(ideal_quotient(&x1sq, &Polynomial::zero(&r)).is_err());
    }

    #[test]
    fn saturation_examples() {
        let r = ring2();
        let x2 = p(&r, &[(1, &[0, 1])]);
        let x1 = p(&r, &[(1, &[1, 0])]);
        let a = ideal(&r, &[&[(1, &[1, 0])], &[(1, &[0, 10])]]);
        assert!(saturation(&a, &x2).unwrap().is_unit());
        let b = ideal(&r, &[&[(1, &[1, 0]), (-1, &[0, 0])]]);
        assert_eq!(texts(&saturation(&b, &x2).unwrap()), ["x1-1"]);
        let c = ideal(&r, &[&[(1, &[2, 0])]]);
        assert!(saturation(&c, &x1).unwrap().is_unit());
    }

    #[test]
    fn containment_examples() {
        let r = ring2();
        let i = example(&r);
        let f1 = ideal(&r, &[&[(1, &[0, 7])], &[(1, &[1, 0]), (1, &[0, 2])]]);
        let f2 = ideal(&r, &[&[(1, &[0, 3])], &[(1, &[11, 0])]]);
        assert!(ideal_contains(&i, &f1).unwrap());
        assert!(ideal_contains(&i, &f2).unwrap());
        assert!(!ideal_contains(&f1, &i).unwrap());
        assert!(ideal_contains(&i, &i).unwrap());
        let x1 = ideal(&r, &[&[(1, &[1, 0])]]);
        let x1sq = ideal(&r, &[&[(1, &[2, 0])]]);
        assert!(!ideal_contains(&x1, &x1sq).unwrap());
    }

    #[test]
    fn modular_reduction_examples() {
        let r = ring2();
        let f = &p(&r, &[(1, &[1, 0])]).scale(&rational(1, 2)) + &p(&r, &[(1, &[0, 1])]);
        let i = IdealHandle::new(vec![f]).unwrap();
        let m = reduce_ideal_mod_p(&i, PrimeField::new(5).unwrap()).unwrap();
        assert_eq!(m.generators()[0].to_string(), "3*x1+x2");
        let x1 = ideal(&r, &[&[(1, &[1, 0])]]);
        let m = reduce_ideal_mod_p(&x1, PrimeField::new(1_000_003).unwrap()).unwrap();
        assert_eq!(m.generators()[0].to_string(), "x1");
        let fifth = IdealHandle::new(vec![p(&r, &[(1, &[1, 0])]).scale(&rational(1, 5))]).unwrap();
        assert!(reduce_ideal_mod_p(&fifth, PrimeField::new(5).unwrap()).is_none());
    }

    #[test]
    fn cache_is_shared_across_threads() {
        let r = ring2();
        let i = Arc::new(example(&r));
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let i = i.clone();
                std::thread::spawn(move || i.groebner().clone())
            })
            .collect();
        for h in handles {
            assert_eq!(&h.join().unwrap(), i.groebner());
        }
    }

    fn monomial_gens() -> impl Strategy<Value = Vec<(u32, u32)>> {
        prop::collection::vec((0u32..4, 0u32..4), 1..4)
    }

    fn build(r: &Arc<RationalRing>, shape: &[Vec<(i64, u32, u32)>]) -> Vec<RationalPoly> {
        shape.iter()
            .map(|ts| {
                let terms: Vec<(i64, [u32; 2])> = ts.iter().map(|&(c, a, b)| (c, [a, b])).collect();
                let refs: Vec<(i64, &[u32])> = terms.iter().map(|(c, e)| (*c, &e[..])).collect();
                p(r, &refs)
            })
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn monomial_membership_matches_divisibility(gens in monomial_gens(), probe in (0u32..6, 0u32..6)) {
            let r = ring2();
            let polys: Vec<RationalPoly> = gens.iter().map(|&(a, b)| p(&r, &[(1, &[a, b])])).collect();
            let i = IdealHandle::new(polys).unwrap();
            let f = ideal(&r, &[&[(1, &[probe.0, probe.1])]]);
            let brute = gens.iter().any(|&(a, b)| a <= probe.0 && b <= probe.1);
            prop_assert_eq!(ideal_contains(&f, &i).unwrap(), brute);
        }

        #[test]
        fn dimension_is_additive(
            tail1 in prop::collection::vec((-5i64..=5, 0u32..3, 0u32..4), 0..4),
            tail2 in prop::collection::vec((-5i64..=5, 0u32..4), 0..4),
            h in prop::collection::vec((-5i64..=5, 0u32..3, 0u32..3), 1..4),
        ) {
            let r = ring2();
            // Coprime pure-power leading terms: a zero-dimensional ideal of
            // dimension 12 with random tails.
            let mut f1 = vec![(1, 3, 0)];
            f1.extend(tail1);
            let mut f2 = vec![(1, 0, 4)];
            f2.extend(tail2.into_iter().map(|(c, e)| (c, 0, e)));
            let gens = build(&r, &[f1, f2]);
            let i = IdealHandle::new(gens.clone()).unwrap();
            prop_assert_eq!(i.vdim().unwrap(), 12);
            let h = build(&r, &[h])[0].clone();
            prop_assume!(!h.is_zero());
            let quotient = ideal_quotient(&i, &h).unwrap();
            let mut with_h = gens;
            with_h.push(h.clone());
            let sum = reduced_groebner(&with_h).unwrap();
            prop_assert_eq!(
                i.vdim().unwrap(),
                vdim(&quotient).unwrap() + vdim(&sum).unwrap()
            );
            // Over the rationals elimination suffers coefficient swell; the
            // two routes are compared modulo a prime instead.
            let field = PrimeField::new(1_000_003).unwrap();
            let ip = reduce_ideal_mod_p(&i, field).unwrap();
            let hp = h.reduce_mod(&ip.ring().clone()).unwrap();
            prop_assert_eq!(
                ideal_quotient(&ip, &hp).unwrap(),
                quotient_by_elimination(ip.groebner(), &hp).unwrap()
            );
            let sat = saturation(&i, &h).unwrap();
            let sat_ideal = IdealHandle::from_groebner(sat.clone());
            prop_assert_eq!(ideal_quotient(&sat_ideal, &h).unwrap(), sat);
        }
    }
}
