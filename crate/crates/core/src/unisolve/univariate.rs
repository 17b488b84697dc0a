//! Univariate complex root finding with multiplicities.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::BigRational;
use crate::error::{invalid, Result};

/// Coefficients `c_0, ..., c_d` of a univariate polynomial, either exact or
/// floating point.
#[derive(Debug, Clone, PartialEq)]
pub enum UnivariatePoly {
    Exact(Vec<BigRational>),
    Float(Vec<Complex64>),
}

impl UnivariatePoly {
    /// Trims trailing zero coefficients.
    pub fn exact(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UnivariatePoly::Exact(coeffs)
    }

    pub fn float(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| c.norm() == 0.0) {
            coeffs.pop();
        }
        UnivariatePoly::Float(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UnivariatePoly::exact(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            UnivariatePoly::Exact(c) => c.is_empty(),
            UnivariatePoly::Float(c) => c.is_empty(),
        }
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        match self {
            UnivariatePoly::Exact(c) => c.len().checked_sub(1),
            UnivariatePoly::Float(c) => c.len().checked_sub(1),
        }
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        match self {
            UnivariatePoly::Exact(c) => c.iter().map(to_complex).collect(),
            UnivariatePoly::Float(c) => c.clone(),
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner(&self.to_complex(), z)
    }
}

/// A root together with its multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct RootCluster {
    pub value: Complex64,
    /// Set when the root is known to be exactly this rational number.
    pub exact: Option<BigRational>,
    pub multiplicity: usize,
    /// Radius of the cluster (zero for exact roots).
    pub radius: f64,
}

pub(crate) fn to_complex(q: &BigRational) -> Complex64 {
    Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::zero(), |acc, a| acc * z + a)
}

/// Value and first derivative.
fn horner2(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn derivative_c(c: &[Complex64]) -> Vec<Complex64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, a)| a * i as f64)
        .collect()
}

/// Roots with multiplicities; their multiplicities add up to the degree.
///
/// Exact input goes through a square-free decomposition, so multiplicities
/// are exact. Floating input is solved directly and roots closer than the
/// tolerance (relative to their magnitude, widened for larger clusters)
/// are merged.
pub fn uni_roots(f: &UnivariatePoly, tol: f64) -> Result<Vec<RootCluster>> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(invalid("tolerance must be positive"));
    }
    match f.degree() {
        None => Err(invalid("the zero polynomial has no isolated roots")),
        Some(0) => Ok(Vec::new()),
        Some(_) => match f {
            UnivariatePoly::Exact(c) => Ok(exact_roots(c)),
            UnivariatePoly::Float(c) => Ok(float_roots(c, tol)),
        },
    }
}

fn exact_roots(c: &[BigRational]) -> Vec<RootCluster> {
    let mut out = Vec::new();
    for (factor, mult) in square_free(c) {
        if factor.len() == 2 {
            let root = -&factor[0] / &factor[1];
            out.push(RootCluster {
                value: to_complex(&root),
                exact: Some(root),
                multiplicity: mult,
                radius: 0.0,
            });
            continue;
        }
        let fc: Vec<Complex64> = factor.iter().map(to_complex).collect();
        for (z, r) in simple_roots(&fc) {
            let exact = rational_candidate(z).filter(|q| eval_exact(&factor, q).is_zero());
            out.push(RootCluster {
                value: exact.as_ref().map_or(z, to_complex),
                exact,
                multiplicity: mult,
                radius: r,
            });
        }
    }
    out
}

/// A nearby rational with small denominator, by continued fractions.
fn rational_candidate(z: Complex64) -> Option<BigRational> {
    let x = z.re;
    if !x.is_finite() || z.im.abs() > 1e-9 * x.abs().max(1.0) || x.abs() > 1e15 {
        return None;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let approx = h1.to_f64()? / k1.to_f64()?;
        if (approx - x).abs() <= 1e-12 * x.abs().max(1.0) {
            return (k1.abs() <= BigInt::from(1_000_000)).then(|| BigRational::new(h1, k1));
        }
        let frac = y - a;
        if frac.abs() < 1e-300 {
            break;
        }
        y = 1.0 / frac;
    }
    None
}

fn eval_exact(c: &[BigRational], x: &BigRational) -> BigRational {
    c.iter().rev().fold(BigRational::zero(), |acc, a| acc * x + a)
}

fn float_roots(c: &[Complex64], tol: f64) -> Vec<RootCluster> {
    let roots = simple_roots(c);
    cluster(c, roots, tol)
}

/// Relative accuracy assumed for floating coefficients.
const COEFF_ACCURACY: f64 = 1e-14;

/// Aberth–Ehrlich iteration followed by inclusion radii
/// `d * (|p(z_i)| + e_i) / |c_d * prod_{j != i} (z_i - z_j)|`, where `e_i`
/// bounds the error of evaluating `p` at `z_i`.
fn simple_roots(c: &[Complex64]) -> Vec<(Complex64, f64)> {
    let d = c.len() - 1;
    let lead = c[d];
    let monic: Vec<Complex64> = c.iter().map(|a| a / lead).collect();
    if d == 1 {
        return vec![(-monic[0], 0.0)];
    }
    let mut z = initial_guesses(&monic);
    let eps = f64::EPSILON;
    for _ in 0..2000 {
        let mut done = true;
        for i in 0..d {
            let (p, dp) = horner2(&monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::one() - ratio * sum);
            if !w.is_finite() {
                continue;
            }
            z[i] -= w;
            if w.norm() > 4.0 * eps * z[i].norm().max(1e-300) {
                done = false;
            }
        }
        if done {
            break;
        }
    }
    // A couple of Newton steps sharpen simple roots.
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner2(&monic, *zi);
            let step = p / dp;
            if !step.is_finite() || step.norm() == 0.0 {
                break;
            }
            let cand = *zi - step;
            if horner(&monic, cand).norm() <= p.norm() {
                *zi = cand;
            } else {
                break;
            }
        }
    }
    let abs_coeffs: Vec<Complex64> = monic.iter().map(|a| Complex64::new(a.norm(), 0.0)).collect();
    let radii = (0..d)
        .map(|i| {
            let p = horner(&monic, z[i]);
            let size = horner(&abs_coeffs, Complex64::new(z[i].norm(), 0.0)).re;
            let err = 4.0 * d as f64 * COEFF_ACCURACY * size;
            let denom: Complex64 = (0..d).filter(|&j| j != i).map(|j| z[i] - z[j]).product();
            let r = d as f64 * (p.norm() + err) / denom.norm();
            if r.is_finite() { r } else { f64::INFINITY }
        })
        .collect::<Vec<f64>>();
    z.into_iter().zip(radii).collect()
}

/// Points on a circle around the centroid of the roots, with a radius taken
/// from the Fujiwara bound of the shifted polynomial.
fn initial_guesses(monic: &[Complex64]) -> Vec<Complex64> {
    let d = monic.len() - 1;
    let center = -monic[d - 1] / d as f64;
    let shifted = taylor_shift(monic, center);
    let mut radius: f64 = 0.0;
    for k in 1..=d {
        let a = shifted[d - k].norm();
        let bound = if k == d { (a / 2.0).powf(1.0 / k as f64) } else { a.powf(1.0 / k as f64) };
        radius = radius.max(bound);
    }
    let radius = if radius > 0.0 { 2.0 * radius } else { 1.0 };
    (0..d)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / d as f64 + 0.4;
            center + Complex64::from_polar(radius, angle)
        })
        .collect()
}

/// Coefficients of `p(x + s)`.
fn taylor_shift(c: &[Complex64], s: Complex64) -> Vec<Complex64> {
    let mut out = c.to_vec();
    let n = out.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let v = out[j + 1] * s;
            out[j] += v;
        }
    }
    out
}

/// Groups approximate roots into clusters.
///
/// Two groups merge when the merged group stays within
/// `max(tol, (tol / 1e2)^(2/k)) * max(1, |centre|)` of its centre, where `k` is
/// its size, or when their inclusion disks overlap. The widening with `k`
/// reflects that a `k`-fold root perturbed by `ε` splits by about `ε^(1/k)`.
fn cluster(c: &[Complex64], roots: Vec<(Complex64, f64)>, tol: f64) -> Vec<RootCluster> {
    let mut groups: Vec<Vec<(Complex64, f64)>> = roots.into_iter().map(|r| vec![r]).collect();
    let centre = |g: &[(Complex64, f64)]| g.iter().map(|(z, _)| z).sum::<Complex64>() / g.len() as f64;
    let spread = |g: &[(Complex64, f64)], m: Complex64| g.iter().map(|(z, _)| (z - m).norm()).fold(0.0, f64::max);
    let disk = |g: &[(Complex64, f64)], m: Complex64| {
        g.iter()
            .map(|(z, r)| (z - m).norm() + r)
            .fold(0.0, f64::max)
    };
    loop {
        let mut best: Option<(f64, usize, usize)> = None;
        for i in 0..groups.len() {
            for j in i + 1..groups.len() {
                let (mi, mj) = (centre(&groups[i]), centre(&groups[j]));
                let overlap = (mi - mj).norm() <= disk(&groups[i], mi) + disk(&groups[j], mj);
                let mut merged = groups[i].clone();
                merged.extend(groups[j].iter().cloned());
                let m = centre(&merged);
                let k = merged.len() as f64;
                let allowed = tol.max((tol * 1e-2).powf(2.0 / k)) * m.norm().max(1.0);
                let s = spread(&merged, m);
                if overlap || s <= allowed {
                    let score = s / allowed;
                    if best.is_none_or(|(b, _, _)| score < b) {
                        best = Some((score, i, j));
                    }
                }
            }
        }
        match best {
            Some((_, i, j)) => {
                let g = groups.remove(j);
                groups[i].extend(g);
            }
            None => break,
        }
    }
    groups
        .into_iter()
        .map(|g| {
            let k = g.len();
            let m = centre(&g);
            let radius = if k == 1 { g[0].1 } else { spread(&g, m) };
            let value = if k == 1 { m } else { polish_multiple(c, m, k) };
            RootCluster {
                value,
                exact: None,
                multiplicity: k,
                radius,
            }
        })
        .collect()
}

/// Newton on the `(k-1)`-th derivative, whose root near a `k`-fold cluster
/// is simple. Keeps the centre if the iteration does not improve it.
fn polish_multiple(c: &[Complex64], start: Complex64, k: usize) -> Complex64 {
    let mut d = c.to_vec();
    for _ in 1..k {
        d = derivative_c(&d);
    }
    let mut z = start;
    for _ in 0..20 {
        let (p, dp) = horner2(&d, z);
        let step = p / dp;
        if !step.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= 4.0 * f64::EPSILON * z.norm().max(1.0) {
            break;
        }
    }
    let scale = (start.norm()).max(1.0);
    if z.is_finite() && (z - start).norm() <= 1e-3 * scale {
        z
    } else {
        start
    }
}

// Dense rational univariate arithmetic, coefficients c_0..c_d.

fn trim(mut c: Vec<BigRational>) -> Vec<BigRational> {
    while c.last().is_some_and(|a| a.is_zero()) {
        c.pop();
    }
    c
}

fn monic_q(c: Vec<BigRational>) -> Vec<BigRational> {
    match c.last().cloned() {
        Some(lead) if !lead.is_one() => c.into_iter().map(|a| a / &lead).collect(),
        _ => c,
    }
}

fn derivative_q(c: &[BigRational]) -> Vec<BigRational> {
    trim(
        c.iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

fn divrem_q(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (Vec::new(), trim(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let q = &rem[k + db] / &lead;
        if q.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &q * bi;
        }
        quot[k] = q;
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

fn gcd_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = divrem_q(&x, &y);
        x = std::mem::replace(&mut y, primitive(r));
    }
    monic_q(x)
}

/// Scales to coprime integer coefficients to keep sizes down.
fn primitive(c: Vec<BigRational>) -> Vec<BigRational> {
    if c.is_empty() {
        return c;
    }
    let den = c.iter().fold(BigInt::one(), |l, a| l.lcm(a.denom()));
    let ints: Vec<BigInt> = c.iter().map(|a| (a * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, a| g.gcd(a));
    ints.into_iter().map(|a| BigRational::from_integer(a / &g)).collect()
}

fn sub_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
                let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
                x - y
            })
            .collect(),
    )
}

/// Yun's square-free decomposition: monic `a_i` with `f = lc * prod a_i^i`.
pub(crate) fn square_free(c: &[BigRational]) -> Vec<(Vec<BigRational>, usize)> {
    let f = monic_q(trim(c.to_vec()));
    let df = derivative_q(&f);
    let g = gcd_q(&f, &df);
    let mut b = divrem_q(&f, &g).0;
    let mut cc = divrem_q(&df, &g).0;
    let mut d = sub_q(&cc, &derivative_q(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while b.len() > 1 {
        let a = gcd_q(&b, &d);
        b = divrem_q(&b, &a).0;
        cc = divrem_q(&d, &a).0;
        d = sub_q(&cc, &derivative_q(&b));
        if a.len() > 1 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}
