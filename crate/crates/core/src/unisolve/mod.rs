//! Numeric solving of triangular sets and the final verification.

mod precise;
mod univariate;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::BigRational;
use crate::error::{invalid, Error, Result};
use crate::ideals::{ideal_contains, RationalIdeal};
use crate::poly::{Rationals, RationalPoly};
use crate::triang::{TriangularDecomposition, TriangularSet};

use precise::{Fx, Precision};

pub use univariate::{uni_roots, RootCluster, UnivariatePoly};

pub type RationalSet = TriangularSet<Rationals>;
pub type RationalDecomposition = TriangularDecomposition<Rationals>;

/// Default clustering tolerance, relative to root magnitude.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Default bound on residuals accepted by [`test_zero`].
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-6;

/// A common zero of a triangular set.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionPoint {
    /// Index of the triangular set that produced the point.
    pub set: usize,
    /// Coordinates in variable order `x1, ..., xn`.
    pub coords: Vec<Complex64>,
    /// Exact coordinates, when every one of them is rational.
    pub exact: Option<Vec<BigRational>>,
    pub multiplicity: usize,
    /// `max |f(P)|` over the polynomials the point was last checked against.
    pub residual: f64,
    /// Points closer than about `1e-6` share a location id, also across sets.
    pub location: usize,
    /// Set when refinement did not improve the point.
    pub unrefined: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SolutionSet {
    pub points: Vec<SolutionPoint>,
    pub total_multiplicity: usize,
}

impl SolutionSet {
    pub fn new(points: Vec<SolutionPoint>) -> Self {
        let total_multiplicity = points.iter().map(|p| p.multiplicity).sum();
        SolutionSet {
            points,
            total_multiplicity,
        }
    }

    pub fn max_residual(&self) -> f64 {
        self.points.iter().map(|p| p.residual).fold(0.0, f64::max)
    }

    /// Number of geometrically distinct points.
    pub fn distinct_points(&self) -> usize {
        let mut ids: Vec<usize> = self.points.iter().map(|p| p.location).collect();
        ids.sort_unstable();
        ids.dedup();
        ids.len()
    }
}

#[derive(Clone)]
enum Coord {
    Exact(BigRational),
    Float(Fx),
}

impl Coord {
    fn value(&self, prec: &Precision) -> Complex64 {
        match self {
            Coord::Exact(q) => univariate::to_complex(q),
            Coord::Float(z) => prec.approx(z),
        }
    }

    fn fixed(&self, prec: &Precision) -> Fx {
        match self {
            Coord::Exact(q) => prec.rational(q),
            Coord::Float(z) => z.clone(),
        }
    }
}

struct Partial {
    coords: Vec<Option<Coord>>,
    multiplicity: usize,
}

/// A univariate polynomial after substitution, with fixed-point
/// coefficients when some substituted value is not rational.
enum Specialised {
    Exact(Vec<BigRational>),
    Fixed(Vec<Fx>),
}

/// Coefficients of `f` as a univariate polynomial in `var`, after plugging
/// in the known coordinates of later variables.
fn specialise(f: &RationalPoly, var: usize, known: &[Option<Coord>], prec: &Precision) -> Specialised {
    let deg = f.degree_in(var) as usize;
    let all_exact = known[var + 1..].iter().all(|c| matches!(c, Some(Coord::Exact(_))));
    if all_exact {
        let mut c = vec![BigRational::zero(); deg + 1];
        for (m, a) in f.terms() {
            let mut t = a.clone();
            for (v, slot) in known.iter().enumerate().skip(var + 1) {
                if let Some(Coord::Exact(x)) = slot {
                    let e = m.exp(v);
                    if e > 0 {
                        t *= num_traits::pow(x.clone(), e as usize);
                    }
                }
            }
            c[m.exp(var) as usize] += t;
        }
        Specialised::Exact(c)
    } else {
        let xs: Vec<Fx> = known
            .iter()
            .map(|c| c.as_ref().map_or_else(|| prec.zero(), |c| c.fixed(prec)))
            .collect();
        let mut c = vec![prec.zero(); deg + 1];
        for (m, a) in f.terms() {
            let mut t = prec.rational(a);
            for (v, x) in xs.iter().enumerate().skip(var + 1) {
                let e = m.exp(v);
                if e > 0 {
                    t = prec.mul(&t, &prec.pow(x, e));
                }
            }
            let k = m.exp(var) as usize;
            c[k] = prec.add(&c[k], &t);
        }
        Specialised::Fixed(c)
    }
}

/// Working precision for back-substitution into `set`: enough to absorb
/// the cancellation between its largest coefficients.
fn precision_for(set: &RationalSet) -> Precision {
    let coeff_bits = set
        .polys()
        .iter()
        .flat_map(|f| f.terms())
        .map(|(_, a)| a.numer().bits().max(a.denom().bits()))
        .max()
        .unwrap_or(0);
    let degree: u32 = set.polys().iter().map(|f| f.total_degree()).sum();
    let bits = 192 + 3 * coeff_bits + 16 * degree as u64;
    Precision::new(bits.min(1 << 16) as u32)
}

fn solve_set(index: usize, set: &RationalSet, tol: f64) -> Result<Vec<SolutionPoint>> {
    let n = set.ring().nvars();
    let prec = precision_for(set);
    let mut partials = vec![Partial {
        coords: vec![None; n],
        multiplicity: 1,
    }];
    let degenerate = |detail: String| Error::DegenerateChain { set: index, detail };
    for (level, f) in set.polys().iter().enumerate() {
        let var = n - 1 - level;
        let mut next = Vec::new();
        for p in partials {
            let (u, fixed) = match specialise(f, var, &p.coords, &prec) {
                Specialised::Exact(c) => {
                    let fixed = c.iter().map(|a| prec.rational(a)).collect();
                    (UnivariatePoly::exact(c), fixed)
                }
                Specialised::Fixed(c) => (UnivariatePoly::float(c.iter().map(|a| prec.approx(a)).collect()), c),
            };
            if u.to_complex().iter().any(|c| !c.is_finite()) {
                return Err(degenerate(format!("non-finite coefficients after substituting into {f}")));
            }
            if u.degree().unwrap_or(0) == 0 {
                return Err(degenerate(format!(
                    "{f} has no roots in {} after substitution",
                    set.ring().vars()[var]
                )));
            }
            for root in uni_roots(&u, tol)? {
                let coord = match root.exact {
                    Some(q) => Coord::Exact(q),
                    None => Coord::Float(
                        prec.polish(&fixed, root.value, root.multiplicity)
                            .unwrap_or_else(|| prec.complex(root.value)),
                    ),
                };
                let mut coords = p.coords.clone();
                coords[var] = Some(coord);
                next.push(Partial {
                    coords,
                    multiplicity: p.multiplicity * root.multiplicity,
                });
            }
        }
        partials = next;
    }
    Ok(partials
        .into_iter()
        .map(|p| {
            let coords: Vec<Coord> = p.coords.into_iter().map(|c| c.expect("every variable solved")).collect();
            let exact = coords
                .iter()
                .map(|c| match c {
                    Coord::Exact(q) => Some(q.clone()),
                    Coord::Float(_) => None,
                })
                .collect::<Option<Vec<_>>>();
            let fixed: Vec<Fx> = coords.iter().map(|c| c.fixed(&prec)).collect();
            let residual = match &exact {
                Some(x) => exact_residual(set.polys(), x),
                None => set
                    .polys()
                    .iter()
                    .map(|f| prec.approx(&eval_fixed(&prec, f, &fixed)).norm())
                    .fold(0.0, f64::max),
            };
            SolutionPoint {
                set: index,
                coords: coords.iter().map(|c| c.value(&prec)).collect(),
                exact,
                multiplicity: p.multiplicity,
                residual,
                location: 0,
                unrefined: false,
            }
        })
        .collect())
}

fn eval_fixed(prec: &Precision, f: &RationalPoly, x: &[Fx]) -> Fx {
    f.terms().iter().fold(prec.zero(), |acc, (m, a)| {
        let t = x
            .iter()
            .enumerate()
            .filter(|(v, _)| m.exp(*v) > 0)
            .fold(prec.rational(a), |t, (v, xv)| prec.mul(&t, &prec.pow(xv, m.exp(v))));
        prec.add(&acc, &t)
    })
}

fn exact_residual(polys: &[RationalPoly], x: &[BigRational]) -> f64 {
    polys
        .iter()
        .map(|f| eval_exact(f, x).to_f64().map_or(f64::INFINITY, f64::abs))
        .fold(0.0, f64::max)
}

/// Solves every set by back-substitution, starting from the polynomial
/// univariate in the last variable. Residuals are measured against the
/// triangular sets themselves.
pub fn solve_triang(d: &RationalDecomposition, tol: f64) -> Result<SolutionSet> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(invalid("tolerance must be positive"));
    }
    let per_set = d
        .sets()
        .par_iter()
        .enumerate()
        .map(|(i, set)| solve_set(i, set, tol))
        .collect::<Result<Vec<_>>>()?;
    let mut points: Vec<SolutionPoint> = per_set.into_iter().flatten().collect();
    assign_locations(&mut points);
    Ok(SolutionSet::new(points))
}

/// Solves, refines every point against its set and records residuals
/// against the generators of `ideal`.
pub fn solve_system(ideal: &RationalIdeal, d: &RationalDecomposition, tol: f64) -> Result<SolutionSet> {
    let raw = solve_triang(d, tol)?;
    let mut points: Vec<SolutionPoint> = raw
        .points
        .into_par_iter()
        .map(|p| {
            let set = &d.sets()[p.set];
            refine_point(&p, set, ideal.generators(), tol)
        })
        .collect();
    assign_locations(&mut points);
    Ok(SolutionSet::new(points))
}

fn assign_locations(points: &mut [SolutionPoint]) {
    let mut reps: Vec<Vec<Complex64>> = Vec::new();
    for p in points.iter_mut() {
        let found = reps.iter().position(|r| {
            r.iter()
                .zip(&p.coords)
                .all(|(a, b)| (a - b).norm() <= 1e-6 * a.norm().max(1.0))
        });
        p.location = match found {
            Some(id) => id,
            None => {
                reps.push(p.coords.clone());
                reps.len() - 1
            }
        };
    }
}

/// `max |f(P)|` over `polys`. The sum is formed without rounding error
/// from the floating coordinates, so only their own rounding shows.
pub fn residual(polys: &[RationalPoly], point: &SolutionPoint) -> f64 {
    match &point.exact {
        Some(x) => exact_residual(polys, x),
        None => {
            let prec = Precision::new(RESIDUAL_BITS);
            let x: Vec<Fx> = point.coords.iter().map(|z| prec.complex(*z)).collect();
            polys
                .iter()
                .map(|f| prec.approx(&eval_fixed(&prec, f, &x)).norm())
                .fold(0.0, f64::max)
        }
    }
}

const RESIDUAL_BITS: u32 = 1200;

fn eval_exact(f: &RationalPoly, x: &[BigRational]) -> BigRational {
    let mut sum = BigRational::zero();
    for (m, a) in f.terms() {
        let mut t = a.clone();
        for (v, xv) in x.iter().enumerate() {
            let e = m.exp(v);
            if e > 0 {
                t *= num_traits::pow(xv.clone(), e as usize);
            }
        }
        sum += t;
    }
    sum
}

fn eval_complex(f: &RationalPoly, x: &[Complex64]) -> Complex64 {
    f.terms()
        .iter()
        .map(|(m, a)| {
            x.iter()
                .enumerate()
                .fold(univariate::to_complex(a), |t, (v, xv)| t * xv.powu(m.exp(v)))
        })
        .sum()
}

/// Value and gradient at `x`.
fn eval_gradient(f: &RationalPoly, x: &[Complex64]) -> (Complex64, Vec<Complex64>) {
    let n = x.len();
    let mut value = Complex64::zero();
    let mut grad = vec![Complex64::zero(); n];
    for (m, a) in f.terms() {
        let c = univariate::to_complex(a);
        let powers: Vec<Complex64> = (0..n).map(|v| x[v].powu(m.exp(v))).collect();
        value += powers.iter().fold(c, |t, p| t * p);
        for j in 0..n {
            let e = m.exp(j);
            if e == 0 {
                continue;
            }
            let mut t = c * x[j].powu(e - 1) * e as f64;
            for (v, p) in powers.iter().enumerate() {
                if v != j {
                    t *= p;
                }
            }
            grad[j] += t;
        }
    }
    (value, grad)
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
fn solve_linear(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    let scale = a.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
        if a[pivot][col].norm() <= 1e-14 * scale {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor.is_zero() {
                continue;
            }
            let (above, below) = a.split_at_mut(row);
            for (x, v) in below[0][col..].iter_mut().zip(&above[col][col..]) {
                *x -= factor * v;
            }
            let v = b[col];
            b[row] -= factor * v;
        }
    }
    let mut x = vec![Complex64::zero(); n];
    for row in (0..n).rev() {
        let s: Complex64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x.iter().all(|z| z.is_finite()).then_some(x)
}

fn max_abs(polys: &[RationalPoly], x: &[Complex64]) -> f64 {
    polys.iter().map(|f| eval_complex(f, x).norm()).fold(0.0, f64::max)
}

/// Undamped Newton (Gauss–Newton when there are more equations than
/// unknowns) on `polys`, accepting steps only while `max |f|` drops and the
/// point stays within `max_move` (relative). Returns whether any step was
/// accepted.
fn newton(polys: &[RationalPoly], x: &mut Vec<Complex64>, max_move: f64) -> bool {
    let n = x.len();
    let mut current = max_abs(polys, x);
    let mut improved = false;
    for _ in 0..30 {
        if current == 0.0 {
            break;
        }
        let (values, jac): (Vec<Complex64>, Vec<Vec<Complex64>>) = polys.iter().map(|f| eval_gradient(f, x)).unzip();
        let step = if polys.len() == n {
            solve_linear(jac, values)
        } else {
            // Normal equations J^H J s = J^H f.
            let jh = |i: usize, k: usize| jac[k][i].conj();
            let a = (0..n)
                .map(|i| (0..n).map(|j| (0..polys.len()).map(|k| jh(i, k) * jac[k][j]).sum()).collect())
                .collect();
            let b = (0..n).map(|i| (0..polys.len()).map(|k| jh(i, k) * values[k]).sum()).collect();
            solve_linear(a, b)
        };
        let Some(step) = step else { break };
        let cand: Vec<Complex64> = x.iter().zip(&step).map(|(a, s)| a - s).collect();
        let moved = cand
            .iter()
            .zip(x.iter())
            .map(|(a, b)| (a - b).norm() / b.norm().max(1.0))
            .fold(0.0, f64::max);
        if moved > max_move {
            break;
        }
        let next = max_abs(polys, &cand);
        if next.is_nan() || next >= current {
            break;
        }
        *x = cand;
        current = next;
        improved = true;
    }
    improved
}

/// Newton iteration on the equations of `set`, followed by Gauss–Newton on
/// `generators`, keeping whichever of the input and the two iterates has
/// the smallest residual against `generators`.
///
/// The triangular set pins down which root is meant; the generators usually
/// have much smaller coefficients and so evaluate more accurately in
/// floating point. Exact points are left alone. Steps are only accepted
/// while they lower the residual and keep the point close, so the iteration
/// cannot jump to a different root. When neither iterate improves on an
/// input whose residual exceeds `tol`, the input comes back unchanged with
/// `unrefined` set. The multiplicity never changes.
pub fn refine_point(
    point: &SolutionPoint,
    set: &RationalSet,
    generators: &[RationalPoly],
    tol: f64,
) -> SolutionPoint {
    let target = if generators.is_empty() { set.polys() } else { generators };
    let mut out = point.clone();
    out.residual = residual(target, point);
    if point.exact.is_some() {
        return out;
    }
    let max_move = tol.sqrt().max(1e-2);
    let mut x = point.coords.clone();
    let mut best_improved = false;
    for polys in [set.polys(), target] {
        if !newton(polys, &mut x, max_move) {
            continue;
        }
        let candidate = SolutionPoint {
            coords: x.clone(),
            ..point.clone()
        };
        let r = residual(target, &candidate);
        if r < out.residual {
            out.coords = candidate.coords;
            out.residual = r;
            best_improved = true;
        }
    }
    out.unrefined = !best_improved && out.residual > tol;
    out
}

/// Outcome of [`test_zero`], with every individual check.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTestReport {
    /// `I ⊆ <F>` for each set, decided exactly.
    pub contained: Vec<bool>,
    pub total_multiplicity: usize,
    pub vdim: usize,
    pub max_residual: f64,
    pub residual_tol: f64,
}

impl ZeroTestReport {
    pub fn all_contained(&self) -> bool {
        self.contained.iter().all(|&c| c)
    }

    pub fn multiplicity_matches(&self) -> bool {
        self.total_multiplicity == self.vdim
    }

    pub fn residuals_ok(&self) -> bool {
        self.max_residual <= self.residual_tol
    }

    pub fn passed(&self) -> bool {
        self.all_contained() && self.multiplicity_matches() && self.residuals_ok()
    }

    /// The verdict without the multiplicity count. Sets from the disjoint
    /// variant describe the zero set of `I` but not its multiplicities.
    pub fn passed_ignoring_multiplicity(&self) -> bool {
        self.all_contained() && self.residuals_ok()
    }

    /// Names of the failed checks.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, c) in self.contained.iter().enumerate() {
            if !c {
                out.push(format!("ideal not contained in triangular set {i}"));
            }
        }
        if !self.multiplicity_matches() {
            out.push(format!(
                "total multiplicity {} differs from dimension {}",
                self.total_multiplicity, self.vdim
            ));
        }
        if !self.residuals_ok() {
            out.push(format!("residual {:e} exceeds {:e}", self.max_residual, self.residual_tol));
        }
        out
    }
}

/// Checks `I ⊆ <F>` for every set, `Σ multiplicities = dim_Q Q[X]/I` and
/// every residual against `tol`.
pub fn test_zero(
    ideal: &RationalIdeal,
    d: &RationalDecomposition,
    solutions: &SolutionSet,
    tol: f64,
) -> Result<ZeroTestReport> {
    let contained = d
        .sets()
        .par_iter()
        .map(|set| ideal_contains(ideal, &set.ideal()))
        .collect::<Result<Vec<bool>>>()?;
    let vdim = if ideal.is_zero_dimensional() { ideal.vdim()? } else { 0 };
    Ok(ZeroTestReport {
        contained,
        total_multiplicity: solutions.total_multiplicity,
        vdim,
        max_residual: solutions.max_residual(),
        residual_tol: tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;
    use crate::poly::Ring;
    use crate::triang::triang_m;
    use std::sync::Arc;

    fn ring2() -> Arc<crate::poly::RationalRing> {
        Ring::new(&["x1", "x2"], Rationals).unwrap()
    }

    fn poly(ring: &Arc<crate::poly::RationalRing>, terms: &[(i64, &[u32])]) -> RationalPoly {
        RationalPoly::from_int_terms(ring, terms).unwrap()
    }

    fn decomposition(ring: &Arc<crate::poly::RationalRing>, sets: Vec<Vec<RationalPoly>>) -> RationalDecomposition {
        let sets = sets.into_iter().map(|s| TriangularSet::new(s).unwrap()).collect();
        TriangularDecomposition::from_ordered(ring, sets)
    }

    fn moller_ideal() -> RationalIdeal {
        let r = ring2();
        RationalIdeal::new(vec![
            poly(&r, &[(1, &[0, 10])]),
            poly(&r, &[(1, &[1, 3]), (1, &[0, 5])]),
            poly(&r, &[(1, &[11, 0])]),
        ])
        .unwrap_or_else(|_| unreachable!())
    }

    #[test]
    fn multiple_root_at_origin() {
        let r = ring2();
        let d = decomposition(&r, vec![vec![poly(&r, &[(1, &[0, 7])]), poly(&r, &[(1, &[1, 0]), (1, &[0, 2])])]]);
        let s = solve_triang(&d, DEFAULT_TOL).unwrap();
        assert_eq!(s.points.len(), 1);
        assert_eq!(s.points[0].multiplicity, 7);
        assert_eq!(s.points[0].exact, Some(vec![rational(0, 1), rational(0, 1)]));
        assert_eq!(s.points[0].residual, 0.0);
    }

    #[test]
    fn linear_and_quadratic_chains() {
        let r = ring2();
        let d = decomposition(
            &r,
            vec![vec![poly(&r, &[(1, &[0, 1]), (-1, &[0, 0])]), poly(&r, &[(1, &[1, 0]), (-2, &[0, 0])])]],
        );
        let s = solve_triang(&d, DEFAULT_TOL).unwrap();
        assert_eq!(s.points.len(), 1);
        assert_eq!(s.points[0].coords, [Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)]);

        let d = decomposition(
            &r,
            vec![vec![poly(&r, &[(1, &[0, 2]), (-1, &[0, 0])]), poly(&r, &[(1, &[1, 0]), (-1, &[0, 1])])]],
        );
        let s = solve_triang(&d, DEFAULT_TOL).unwrap();
        let mut xs: Vec<(f64, f64)> = s.points.iter().map(|p| (p.coords[0].re, p.coords[1].re)).collect();
        xs.sort_by(|a, b| a.0.total_cmp(&b.0));
        assert_eq!(xs, [(-1.0, -1.0), (1.0, 1.0)]);
        assert!(s.points.iter().all(|p| p.multiplicity == 1));
    }

    #[test]
    fn newton_polishes_perturbed_point() {
        let r = ring2();
        let set = TriangularSet::new(vec![
            poly(&r, &[(1, &[0, 2]), (-2, &[0, 0])]),
            poly(&r, &[(1, &[1, 0]), (-1, &[0, 1])]),
        ])
        .unwrap();
        let p = SolutionPoint {
            set: 0,
            coords: vec![Complex64::new(1.414, 0.0); 2],
            exact: None,
            multiplicity: 1,
            residual: 1.0,
            location: 0,
            unrefined: false,
        };
        let q = refine_point(&p, &set, set.polys(), DEFAULT_TOL);
        let s2 = 2f64.sqrt();
        assert!(q.coords.iter().all(|z| (z - s2).norm() < 1e-12));
        assert!(q.residual < 1e-12);
        assert!(!q.unrefined);

        let exact = SolutionPoint {
            coords: vec![Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)],
            exact: Some(vec![rational(2, 1), rational(1, 1)]),
            ..p.clone()
        };
        let lin = TriangularSet::new(vec![
            poly(&r, &[(1, &[0, 1]), (-1, &[0, 0])]),
            poly(&r, &[(1, &[1, 0]), (-2, &[0, 0])]),
        ])
        .unwrap();
        let q = refine_point(&exact, &lin, lin.polys(), DEFAULT_TOL);
        assert_eq!(q.coords, exact.coords);
        assert_eq!(q.residual, 0.0);
    }

    #[test]
    fn multiple_cluster_never_gets_worse() {
        let r = ring2();
        let set = TriangularSet::new(vec![poly(&r, &[(1, &[0, 7])]), poly(&r, &[(1, &[1, 0]), (1, &[0, 2])])]).unwrap();
        let p = SolutionPoint {
            set: 0,
            coords: vec![Complex64::new(1e-4, 0.0), Complex64::new(1e-3, 1e-3)],
            exact: None,
            multiplicity: 7,
            residual: 0.0,
            location: 0,
            unrefined: false,
        };
        let before = residual(set.polys(), &p);
        let q = refine_point(&p, &set, set.polys(), DEFAULT_TOL);
        assert_eq!(q.multiplicity, 7);
        assert!(q.residual <= before);
    }

    #[test]
    fn moller_example_verifies() {
        let ideal = moller_ideal();
        let d = triang_m(&ideal).unwrap();
        let s = solve_system(&ideal, &d, DEFAULT_TOL).unwrap();
        let per_set: Vec<usize> = (0..d.len())
            .map(|i| s.points.iter().filter(|p| p.set == i).map(|p| p.multiplicity).sum())
            .collect();
        assert_eq!(per_set, [7, 33]);
        assert_eq!(s.total_multiplicity, 40);
        assert_eq!(s.distinct_points(), 1);
        let report = test_zero(&ideal, &d, &s, DEFAULT_RESIDUAL_TOL).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.vdim, 40);

        let only_first = TriangularDecomposition::from_ordered(ideal.ring(), vec![d.sets()[0].clone()]);
        let s1 = solve_system(&ideal, &only_first, DEFAULT_TOL).unwrap();
        let report = test_zero(&ideal, &only_first, &s1, DEFAULT_RESIDUAL_TOL).unwrap();
        assert!(!report.passed());
        assert_eq!(report.total_multiplicity, 7);

        let mut short = s.clone();
        short.points[0].multiplicity -= 1;
        let short = SolutionSet::new(short.points);
        assert!(!test_zero(&ideal, &d, &short, DEFAULT_RESIDUAL_TOL).unwrap().passed());
    }

    #[test]
    fn three_variable_system_conserves_multiplicity() {
        let r = Ring::new(&["x", "y", "z"], Rationals).unwrap();
        let gens = vec![
            RationalPoly::from_int_terms(&r, &[(1, &[2, 0, 0]), (1, &[0, 2, 0]), (1, &[0, 0, 2]), (-3, &[0, 0, 0])]).unwrap(),
            RationalPoly::from_int_terms(&r, &[(1, &[1, 1, 0]), (-1, &[0, 0, 1]), (-1, &[0, 0, 0])]).unwrap(),
            RationalPoly::from_int_terms(&r, &[(1, &[0, 1, 1]), (-2, &[1, 0, 0]), (1, &[0, 0, 0])]).unwrap(),
        ];
        let ideal = RationalIdeal::new(gens).unwrap();
        let d = triang_m(&ideal).unwrap();
        let s = solve_system(&ideal, &d, DEFAULT_TOL).unwrap();
        for (i, set) in d.sets().iter().enumerate() {
            let m: usize = s.points.iter().filter(|p| p.set == i).map(|p| p.multiplicity).sum();
            assert_eq!(m, set.vdim());
        }
        let report = test_zero(&ideal, &d, &s, DEFAULT_RESIDUAL_TOL).unwrap();
        assert!(report.passed(), "{report:?}");
        // Real input: the solutions are closed under conjugation.
        for p in &s.points {
            let conj: Vec<Complex64> = p.coords.iter().map(|z| z.conj()).collect();
            assert!(s.points.iter().any(|q| q.coords.iter().zip(&conj).all(|(a, b)| (a - b).norm() < 2e-6)));
        }
    }
}
