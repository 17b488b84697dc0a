//! Möller's triangular decomposition of zero-dimensional ideals.

use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};
use crate::ideals::IdealHandle;
use crate::poly::{normal_form, reduced_groebner, Field, GroebnerBasis, Monomial, Polynomial, QuotientAlgebra, Ring};

/// Polynomials `f1, ..., fn` where `LT(f_i)` is a pure power of
/// `x_{n-i+1}` and `f_i` only involves `x_{n-i+1}, ..., x_n`.
///
/// So `f1` is univariate in the last variable and `fn` has main variable
/// `x1`. Each `f_i` is monic and the set is a reduced Gröbner basis.
#[derive(Clone, PartialEq)]
pub struct TriangularSet<F: Field> {
    ring: Arc<Ring<F>>,
    polys: Vec<Polynomial<F>>,
}

impl<F: Field> TriangularSet<F> {
    /// Checks the shape invariants; polynomials are given as `f1, ..., fn`.
    pub fn new(polys: Vec<Polynomial<F>>) -> Result<Self> {
        let ring = polys
            .first()
            .map(|f| f.ring().clone())
            .ok_or_else(|| invalid("empty triangular set"))?;
        let n = ring.nvars();
        if polys.len() != n {
            return Err(invalid(format!("a triangular set in {n} variables needs {n} polynomials")));
        }
        for (i, f) in polys.iter().enumerate() {
            if !Ring::same(f.ring(), &ring) {
                return Err(invalid("polynomials live in different rings"));
            }
            let main = n - 1 - i;
            let lm = f.lm().ok_or(Error::ZeroPolynomial)?;
            if lm.pure_power_var() != Some(main) {
                return Err(invalid(format!("leading term of f{} is not a power of {}", i + 1, ring.vars()[main])));
            }
            if (0..main).any(|v| f.involves(v)) {
                return Err(invalid(format!("f{} involves a variable before its main variable", i + 1)));
            }
            if !f.field().is_one(f.lc().expect("non-zero")) {
                return Err(invalid(format!("f{} is not monic", i + 1)));
            }
        }
        Ok(TriangularSet { ring, polys })
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    /// `f1, ..., fn`.
    pub fn polys(&self) -> &[Polynomial<F>] {
        &self.polys
    }

    /// The polynomial whose main variable is `x_{var+1}` (0-based `var`).
    pub fn poly_for_var(&self, var: usize) -> &Polynomial<F> {
        &self.polys[self.ring.nvars() - 1 - var]
    }

    /// `α_1, ..., α_n`, the main degrees of `f1, ..., fn`.
    pub fn degrees(&self) -> Vec<u32> {
        self.polys
            .iter()
            .map(|f| f.lm().map_or(0, |m| m.degree()))
            .collect()
    }

    /// Main degrees read in variable order `x1, ..., xn`.
    pub fn degrees_by_variable(&self) -> Vec<u32> {
        let mut d = self.degrees();
        d.reverse();
        d
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|f| *f.lm().expect("non-zero")).collect()
    }

    /// `dim_K K[X]/<F>`, the product of the main degrees.
    pub fn vdim(&self) -> usize {
        self.degrees().iter().map(|&d| d as usize).product()
    }

    pub fn groebner(&self) -> GroebnerBasis<F> {
        GroebnerBasis::from_reduced(&self.ring, self.polys.clone())
    }

    pub fn ideal(&self) -> IdealHandle<F> {
        IdealHandle::from_groebner(self.groebner())
    }

    pub fn texts(&self) -> Vec<String> {
        self.polys.iter().map(|f| f.to_string()).collect()
    }
}

impl<F: Field> fmt::Display for TriangularSet<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.texts().join(", "))
    }
}

impl<F: Field> fmt::Debug for TriangularSet<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A list of triangular sets in canonical order.
///
/// Sets are sorted by their main degrees read in variable order
/// `(α_n, ..., α_1)`; equal keys keep the order in which the recursion
/// produced them, which does not depend on the coefficient field.
#[derive(Clone, PartialEq)]
pub struct TriangularDecomposition<F: Field> {
    ring: Arc<Ring<F>>,
    sets: Vec<TriangularSet<F>>,
}

impl<F: Field> TriangularDecomposition<F> {
    /// Sorts `sets` into canonical order.
    pub fn new(ring: &Arc<Ring<F>>, mut sets: Vec<TriangularSet<F>>) -> Result<Self> {
        if sets.iter().any(|s| !Ring::same(s.ring(), ring)) {
            return Err(invalid("triangular sets live in different rings"));
        }
        sets.sort_by_key(|s| s.degrees_by_variable());
        Ok(TriangularDecomposition {
            ring: ring.clone(),
            sets,
        })
    }

    /// Keeps `sets` in the given order (used when matching decompositions
    /// across primes, where the order is already canonical).
    pub fn from_ordered(ring: &Arc<Ring<F>>, sets: Vec<TriangularSet<F>>) -> Self {
        TriangularDecomposition {
            ring: ring.clone(),
            sets,
        }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn sets(&self) -> &[TriangularSet<F>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// `Σ vdim(F_i)`.
    pub fn total_vdim(&self) -> usize {
        self.sets.iter().map(|s| s.vdim()).sum()
    }

    pub fn texts(&self) -> Vec<Vec<String>> {
        self.sets.iter().map(|s| s.texts()).collect()
    }
}

impl<F: Field> fmt::Debug for TriangularDecomposition<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.sets).finish()
    }
}

/// Leading coefficients in `x1` of `g_1, ..., g_{m-1}`, as polynomials in
/// `K[x2, ..., xn]`.
pub fn extract_leading_coeffs<F: Field>(g: &GroebnerBasis<F>) -> Result<Vec<Polynomial<F>>> {
    let ring = g.ring();
    if ring.nvars() < 2 {
        return Ok(Vec::new());
    }
    let sub = ring.drop_front(1)?;
    let elements = g.elements();
    let m = elements.len();
    elements[..m.saturating_sub(1)]
        .iter()
        .map(|gi| {
            let d = gi.degree_in(0);
            gi.coeff_of_var_power(0, d).restrict_to(&sub)
        })
        .collect()
}

/// Möller's triangular decomposition: `√I = ∩ √<F_i>` and
/// `vdim(I) = Σ vdim(F_i)`.
pub fn triang_m<F: Field>(ideal: &IdealHandle<F>) -> Result<TriangularDecomposition<F>> {
    run(ideal, false)
}

/// The variant with saturations in place of quotients; its sets are
/// pairwise comaximal but multiplicities are not preserved.
pub fn triang_m_disjoint<F: Field>(ideal: &IdealHandle<F>) -> Result<TriangularDecomposition<F>> {
    run(ideal, true)
}

fn run<F: Field>(ideal: &IdealHandle<F>, disjoint: bool) -> Result<TriangularDecomposition<F>> {
    if !ideal.is_zero_dimensional() {
        return Err(Error::NotZeroDimensional);
    }
    let gb = ideal.groebner();
    let mut sets = Vec::new();
    decompose(gb, disjoint, &mut sets)?;
    TriangularDecomposition::new(ideal.ring(), sets)
}

/// Reduced basis of `<G'>`. The elements of `G` free of `x1` are a lex
/// basis of the zero-dimensional elimination ideal `J`, and `<G'>` is `J`
/// plus the genuine leading coefficients, which is linear algebra in
/// `K[x2, ..., xn]/J`.
fn leading_coeff_basis<F: Field>(gb: &GroebnerBasis<F>, lead: &[Polynomial<F>]) -> Result<GroebnerBasis<F>> {
    let sub = lead.first().map(|h| h.ring().clone()).ok_or_else(|| invalid("no leading coefficients"))?;
    let (free, coeffs): (Vec<usize>, Vec<usize>) = (0..lead.len()).partition(|&i| !gb.elements()[i].involves(0));
    let elimination = GroebnerBasis::from_reduced(&sub, free.iter().map(|&i| lead[i].clone()).collect());
    match QuotientAlgebra::from_lex(&elimination) {
        Ok(algebra) => {
            let hs: Vec<Polynomial<F>> = coeffs.iter().map(|&i| lead[i].clone()).collect();
            Ok(algebra.sum_with_all(&hs))
        }
        Err(Error::NotZeroDimensional) => reduced_groebner(lead),
        Err(e) => Err(e),
    }
}

fn decompose<F: Field>(gb: &GroebnerBasis<F>, disjoint: bool, out: &mut Vec<TriangularSet<F>>) -> Result<()> {
    if gb.is_unit() {
        return Ok(());
    }
    let ring = gb.ring();
    let g = gb.elements();
    let gm = g.last().expect("non-unit basis is non-empty");
    if ring.nvars() == 1 {
        out.push(TriangularSet::new(vec![gm.clone()])?);
        return Ok(());
    }

    let lead = extract_leading_coeffs(gb)?;
    let sub_basis = leading_coeff_basis(gb, &lead)?;
    let mut sub_sets = Vec::new();
    decompose(&sub_basis, disjoint, &mut sub_sets)?;
    for set in sub_sets {
        let mut polys: Vec<Polynomial<F>> = set.polys().iter().map(|f| f.embed_into(ring)).collect();
        let top = normal_form(gm, &polys);
        polys.push(top);
        out.push(TriangularSet::new(polys)?);
    }

    let mut members: Vec<Polynomial<F>> = g.to_vec();
    let mut current = gb.clone();
    for h in lead.iter().map(|h| h.embed_into(ring)) {
        if members.contains(&h) {
            continue;
        }
        if current.is_unit() {
            break;
        }
        let algebra = QuotientAlgebra::from_lex(&current)?;
        let next = if disjoint { algebra.saturation(&h) } else { algebra.quotient(&h) };
        decompose(&next, disjoint, out)?;
        current = algebra.sum_with(&h);
        members.push(h);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::{ideal_contains, RationalIdeal};
    use crate::poly::{RationalPoly, RationalRing, Rationals};
    use proptest::prelude::*;

    fn p(r: &Arc<RationalRing>, t: &[(i64, &[u32])]) -> RationalPoly {
        RationalPoly::from_int_terms(r, t).unwrap()
    }

    fn ideal(r: &Arc<RationalRing>, gens: &[&[(i64, &[u32])]]) -> RationalIdeal {
        IdealHandle::new(gens.iter().map(|g| p(r, g)).collect()).unwrap()
    }

    fn ring(n: usize) -> Arc<RationalRing> {
        let vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        Ring::new(&vars, Rationals).unwrap()
    }

    fn example(r: &Arc<RationalRing>) -> RationalIdeal {
        ideal(r, &[&[(1, &[0, 10])], &[(1, &[1, 3]), (1, &[0, 5])], &[(1, &[11, 0])]])
    }

    #[test]
    fn leading_coefficients() {
        let r = ring(2);
        let i = example(&r);
        let lead = extract_leading_coeffs(i.groebner()).unwrap();
        let texts: Vec<String> = lead.iter().map(|f| f.to_string()).collect();
        assert_eq!(texts, ["x2^10", "x2^3"]);

        let x = Ring::new(&["x1"], Rationals).unwrap();
        let uni = IdealHandle::new(vec![p(&x, &[(1, &[2]), (-1, &[0])])]).unwrap();
        assert!(extract_leading_coeffs(uni.groebner()).unwrap().is_empty());

        let lin = ideal(&r, &[&[(1, &[0, 1])], &[(1, &[1, 0])]]);
        let lead = extract_leading_coeffs(lin.groebner()).unwrap();
        assert_eq!(lead.len(), 1);
        assert_eq!(lead[0].to_string(), "x2");
    }

    #[test]
    fn example_decomposition() {
        let r = ring(2);
        let i = example(&r);
        let d = triang_m(&i).unwrap();
        assert_eq!(d.texts(), [vec!["x2^7", "x1+x2^2"], vec!["x2^3", "x1^11"]]);
        assert_eq!(d.sets()[0].vdim(), 7);
        assert_eq!(d.sets()[1].vdim(), 33);
        assert_eq!(d.total_vdim(), i.vdim().unwrap());
    }

    #[test]
    fn already_triangular_inputs() {
        let r = ring(2);
        let a = ideal(&r, &[&[(1, &[1, 0]), (-1, &[0, 0])], &[(1, &[0, 1]), (-2, &[0, 0])]]);
        assert_eq!(triang_m(&a).unwrap().texts(), [vec!["x2-2", "x1-1"]]);
        let b = ideal(&r, &[&[(1, &[2, 0]), (-1, &[0, 1])], &[(1, &[0, 2]), (-1, &[1, 0])]]);
        assert_eq!(triang_m(&b).unwrap().texts(), [vec!["x2^4-x2", "x1-x2^2"]]);
    }

    #[test]
    fn unit_and_positive_dimensional_inputs() {
        let r = ring(2);
        let unit = ideal(&r, &[&[(1, &[1, 0])], &[(1, &[1, 0]), (1, &[0, 0])]]);
        assert!(triang_m(&unit).unwrap().is_empty());
        let line = ideal(&r, &[&[(1, &[1, 0])]]);
        assert_eq!(triang_m(&line).unwrap_err(), Error::NotZeroDimensional);
    }

    #[test]
    fn disjoint_examples() {
        let r = ring(2);
        let a = ideal(&r, &[&[(1, &[0, 2])], &[(1, &[1, 0])]]);
        assert_eq!(triang_m_disjoint(&a).unwrap().texts(), [vec!["x2^2", "x1"]]);
        let b = ideal(&r, &[&[(1, &[0, 2]), (-1, &[0, 1])], &[(1, &[1, 0]), (-1, &[0, 1])]]);
        assert_eq!(triang_m_disjoint(&b).unwrap().texts(), [vec!["x2^2-x2", "x1-x2"]]);
        let d = triang_m_disjoint(&example(&r)).unwrap();
        assert_comaximal(&d);
    }

    fn assert_comaximal(d: &TriangularDecomposition<Rationals>) {
        for (i, a) in d.sets().iter().enumerate() {
            for b in &d.sets()[i + 1..] {
                let mut gens = a.polys().to_vec();
                gens.extend(b.polys().iter().cloned());
                assert!(reduced_groebner(&gens).unwrap().is_unit(), "{a} and {b} meet");
            }
        }
    }

    #[test]
    fn three_variables() {
        let r = ring(3);
        // Points (0,0,0) doubled along x3 and (1,1,1).
        let i = ideal(
            &r,
            &[
                &[(1, &[1, 0, 0]), (-1, &[0, 0, 1])],
                &[(1, &[0, 1, 0]), (-1, &[0, 0, 1])],
                &[(1, &[0, 0, 3]), (-1, &[0, 0, 2])],
                &[(1, &[0, 1, 1]), (-1, &[0, 0, 1])],
            ],
        );
        let d = triang_m(&i).unwrap();
        assert_eq!(d.total_vdim(), i.vdim().unwrap());
        for set in d.sets() {
            assert!(ideal_contains(&i, &set.ideal()).unwrap());
        }
        assert_eq!(triang_m(&i).unwrap(), d);
    }

    #[test]
    fn set_invariants_are_checked() {
        let r = ring(2);
        assert!(TriangularSet::new(vec![p(&r, &[(1, &[0, 2])]), p(&r, &[(1, &[1, 0])])]).is_ok());
        assert!(TriangularSet::new(vec![p(&r, &[(1, &[1, 0])]), p(&r, &[(1, &[0, 2])])]).is_err());
        assert!(TriangularSet::new(vec![p(&r, &[(2, &[0, 2])]), p(&r, &[(1, &[1, 0])])]).is_err());
        assert!(TriangularSet::new(vec![p(&r, &[(1, &[0, 2])])]).is_err());
    }

    fn random_poly(r: &Arc<RationalRing>, terms: &[(i64, Vec<u32>)]) -> RationalPoly {
        let refs: Vec<(i64, &[u32])> = terms.iter().map(|(c, e)| (*c, &e[..])).collect();
        p(r, &refs)
    }

    fn random_terms(n: usize) -> impl Strategy<Value = Vec<(i64, Vec<u32>)>> {
        prop::collection::vec((-9i64..=9, prop::collection::vec(0u32..3, n)), 1..4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn decomposition_properties(
            a in random_terms(2),
            b in random_terms(2),
            c in random_terms(2),
            da in 1u32..4,
            db in 1u32..4,
        ) {
            let r = ring(2);
            let mut fa = vec![(1, vec![da, 0])];
            fa.extend(a.into_iter().filter(|(_, e)| e[0] < da));
            let mut fb = vec![(1, vec![0, db])];
            fb.extend(b.into_iter().filter(|(_, e)| e[0] == 0 && e[1] < db));
            let gens = vec![random_poly(&r, &fa), random_poly(&r, &fb), random_poly(&r, &c)];
            let i = IdealHandle::new(gens).unwrap();
            prop_assert!(i.is_zero_dimensional());
            let d = triang_m(&i).unwrap();
            prop_assert_eq!(d.total_vdim(), i.vdim().unwrap());
            for set in d.sets() {
                prop_assert!(ideal_contains(&i, &set.ideal()).unwrap());
                prop_assert!(TriangularSet::new(set.polys().to_vec()).is_ok());
                prop_assert_eq!(set.vdim(), set.ideal().vdim().unwrap());
            }
            let dis = triang_m_disjoint(&i).unwrap();
            assert_comaximal(&dis);
        }
    }
}
