//! Multi-modular triangular decomposition over the rationals.
//!
//! Each round decomposes the ideal modulo a batch of fresh primes (in
//! parallel), keeps the largest class of snapshots with equal leading
//! structure, lifts coefficients by Chinese remaindering and Farey
//! reconstruction, and accepts the lift only if it agrees with the
//! decomposition modulo one more prime.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arith::{farey_reconstruct, numer_denom_abs, CrtBasis, PrimeField, PrimeStream};
use crate::error::{invalid, Error, Result};
use crate::ideals::{reduce_ideal_mod_p, IdealHandle, RationalIdeal};
use crate::poly::{Field, ModularRing, Monomial, Polynomial, RationalPoly, RationalRing, Rationals};
use crate::ideals::ModularIdeal;
use crate::triang::{triang_m, triang_m_disjoint, TriangularDecomposition, TriangularSet};

/// Leading structure of a decomposition: the leading monomials of every
/// set, in canonical set order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    sets: Vec<Vec<Monomial>>,
}

impl Signature {
    pub fn of<F: Field>(d: &TriangularDecomposition<F>) -> Self {
        Signature {
            sets: d.sets().iter().map(|s| s.leading_monomials()).collect(),
        }
    }

    pub fn set_count(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[Vec<Monomial>] {
        &self.sets
    }

    /// Sum of the degrees of all leading monomials.
    pub fn total_degree(&self) -> u32 {
        self.sets.iter().flatten().map(|m| m.degree()).sum()
    }

    /// Text such as `2:{[0, 7],[1, 0]}{[0, 3],[11, 0]}`.
    pub fn text(&self) -> String {
        let mut out = format!("{}:", self.sets.len());
        for set in &self.sets {
            let parts: Vec<String> = set.iter().map(|m| format!("{m:?}")).collect();
            out.push_str(&format!("{{{}}}", parts.join(",")));
        }
        out
    }
}

/// The decomposition of `I mod p`.
#[derive(Debug, Clone)]
pub struct ModularSnapshot {
    prime: u64,
    decomposition: TriangularDecomposition<PrimeField>,
    signature: Signature,
}

impl ModularSnapshot {
    pub fn new(prime: u64, decomposition: TriangularDecomposition<PrimeField>) -> Self {
        let signature = Signature::of(&decomposition);
        ModularSnapshot {
            prime,
            decomposition,
            signature,
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn decomposition(&self) -> &TriangularDecomposition<PrimeField> {
        &self.decomposition
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }
}

/// Parameters of the modular driver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModularConfig {
    /// Primes added per round.
    pub primes_per_round: usize,
    /// Worker threads for the per-prime decompositions.
    pub jobs: usize,
    pub seed: u64,
    /// Rounds before giving up.
    pub max_rounds: usize,
    /// Use the disjoint variant of the decomposition.
    pub disjoint: bool,
}

impl Default for ModularConfig {
    fn default() -> Self {
        ModularConfig {
            primes_per_round: 10,
            jobs: 1,
            seed: 0,
            max_rounds: 50,
            disjoint: false,
        }
    }
}

impl ModularConfig {
    pub fn validate(&self) -> Result<()> {
        if self.primes_per_round == 0 {
            return Err(invalid("primes per round must be at least 1"));
        }
        if self.jobs == 0 {
            return Err(invalid("worker count must be at least 1"));
        }
        if self.max_rounds == 0 {
            return Err(invalid("max rounds must be at least 1"));
        }
        Ok(())
    }
}

/// Progress of [`mod_decompose_with_progress`].
#[derive(Debug, Clone, PartialEq)]
pub enum ProgressEvent {
    RoundStarted { round: usize, primes: Vec<u64> },
    PrimeSkipped { round: usize, prime: u64, reason: String },
    Vote { round: usize, classes: usize, kept: usize, signature: String },
    Lift { round: usize, success: bool },
    PTest { round: usize, prime: u64, passed: bool },
    Finished { rounds: usize, primes_used: usize },
}

impl fmt::Display for ProgressEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProgressEvent::RoundStarted { round, primes } => {
                write!(f, "round {round}: {} new primes", primes.len())
            }
            ProgressEvent::PrimeSkipped { round, prime, reason } => {
                write!(f, "round {round}: prime {prime} skipped ({reason})")
            }
            ProgressEvent::Vote {
                round,
                classes,
                kept,
                signature,
            } => write!(
                f,
                "round {round}: vote over {classes} classes kept {kept} snapshots with signature {signature}"
            ),
            ProgressEvent::Lift { round, success } => write!(
                f,
                "round {round}: lift {}",
                if *success { "succeeded" } else { "failed" }
            ),
            ProgressEvent::PTest { round, prime, passed } => write!(
                f,
                "round {round}: test with prime {prime} {}",
                if *passed { "passed" } else { "failed" }
            ),
            ProgressEvent::Finished { rounds, primes_used } => {
                write!(f, "finished after {rounds} rounds using {primes_used} primes")
            }
        }
    }
}

pub type ProgressSink = Arc<dyn Fn(&ProgressEvent) + Send + Sync>;

/// Result of the modular driver.
#[derive(Debug, Clone)]
pub struct ModularOutcome {
    pub decomposition: TriangularDecomposition<Rationals>,
    pub rounds: usize,
    /// Every prime drawn, including rejected and test primes.
    pub primes_used: usize,
    /// The primes whose snapshots were lifted.
    pub lifted_primes: Vec<u64>,
}

/// Why a prime produced no snapshot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SnapshotFailure {
    /// `p` divides a denominator or kills every generator.
    BadReduction,
    /// `I mod p` is not zero-dimensional.
    NotZeroDimensional,
}

fn decompose(ideal: &ModularIdeal, disjoint: bool) -> Result<TriangularDecomposition<PrimeField>> {
    if disjoint {
        triang_m_disjoint(ideal)
    } else {
        triang_m(ideal)
    }
}

/// Decomposes `I mod p`.
pub fn snapshot_for_prime(
    ideal: &RationalIdeal,
    p: u64,
) -> Result<std::result::Result<ModularSnapshot, SnapshotFailure>> {
    snapshot_with(ideal, p, false)
}

fn snapshot_with(
    ideal: &RationalIdeal,
    p: u64,
    disjoint: bool,
) -> Result<std::result::Result<ModularSnapshot, SnapshotFailure>> {
    let field = PrimeField::new(p)?;
    let Some(reduced) = reduce_ideal_mod_p(ideal, field) else {
        return Ok(Err(SnapshotFailure::BadReduction));
    };
    match decompose(&reduced, disjoint) {
        Ok(d) => Ok(Ok(ModularSnapshot::new(p, d))),
        Err(Error::NotZeroDimensional) => Ok(Err(SnapshotFailure::NotZeroDimensional)),
        Err(e) => Err(e),
    }
}

/// Keeps the largest class of snapshots with equal signatures.
///
/// Equal class sizes are resolved in favour of the smaller total
/// leading-monomial degree, then the smaller signature text. The
/// surviving snapshots keep their input order.
pub fn delete_unlucky(snapshots: Vec<ModularSnapshot>) -> (Vec<ModularSnapshot>, Vec<u64>) {
    let mut classes: BTreeMap<&Signature, usize> = BTreeMap::new();
    for s in &snapshots {
        *classes.entry(&s.signature).or_default() += 1;
    }
    let winner = classes
        .iter()
        .max_by(|(a, ca), (b, cb)| {
            ca.cmp(cb)
                .then_with(|| b.total_degree().cmp(&a.total_degree()))
                .then_with(|| b.text().cmp(&a.text()))
        })
        .map(|(sig, _)| (*sig).clone());
    let Some(winner) = winner else {
        return (Vec::new(), Vec::new());
    };
    let kept: Vec<ModularSnapshot> = snapshots.into_iter().filter(|s| s.signature == winner).collect();
    let primes = kept.iter().map(|s| s.prime).collect();
    (kept, primes)
}

/// Lifts snapshots sharing one signature to a rational decomposition.
///
/// Returns `Ok(None)` when some coefficient has no Farey preimage, i.e. the
/// primes are not yet enough.
pub fn lift_decomposition(
    ring: &Arc<RationalRing>,
    snapshots: &[ModularSnapshot],
) -> Result<Option<TriangularDecomposition<Rationals>>> {
    let first = snapshots.first().ok_or_else(|| invalid("nothing to lift"))?;
    if snapshots.iter().any(|s| s.signature != first.signature) {
        return Err(invalid("snapshots with different signatures cannot be lifted together"));
    }
    let primes: Vec<u64> = snapshots.iter().map(|s| s.prime).collect();
    let basis = CrtBasis::new(&primes)?;
    let n = ring.nvars();
    let mut sets = Vec::with_capacity(first.decomposition.len());
    for k in 0..first.decomposition.len() {
        let mut polys = Vec::with_capacity(n);
        for j in 0..n {
            let images: Vec<&Polynomial<PrimeField>> = snapshots
                .iter()
                .map(|s| &s.decomposition.sets()[k].polys()[j])
                .collect();
            let monomials: BTreeSet<Monomial> = images.iter().flat_map(|f| f.terms().iter().map(|(m, _)| *m)).collect();
            let mut terms = Vec::with_capacity(monomials.len());
            for m in monomials {
                let residues: Vec<u64> = images
                    .iter()
                    .map(|f| {
                        f.terms()
                            .binary_search_by(|(t, _)| m.cmp(t))
                            .map_or(0, |i| f.terms()[i].1)
                    })
                    .collect();
                let lifted = basis.lift(&residues);
                match farey_reconstruct(&lifted, basis.modulus()) {
                    Some(c) => terms.push((m, c)),
                    None => return Ok(None),
                }
            }
            polys.push(RationalPoly::from_terms(ring, terms));
        }
        match TriangularSet::new(polys) {
            Ok(set) => sets.push(set),
            Err(_) => return Ok(None),
        }
    }
    Ok(Some(TriangularDecomposition::from_ordered(ring, sets)))
}

/// The decomposition with every coefficient reduced modulo `p`, or `None`
/// if `p` divides a denominator or changes a leading term.
pub fn reduce_decomposition(
    d: &TriangularDecomposition<Rationals>,
    ring: &Arc<ModularRing>,
) -> Option<TriangularDecomposition<PrimeField>> {
    let mut sets = Vec::with_capacity(d.len());
    for set in d.sets() {
        let polys = set
            .polys()
            .iter()
            .map(|f| f.reduce_mod(ring))
            .collect::<Option<Vec<_>>>()?;
        sets.push(TriangularSet::new(polys).ok()?);
    }
    Some(TriangularDecomposition::from_ordered(ring, sets))
}

/// Numerators and denominators of every coefficient.
fn coefficient_integers<'a>(polys: impl Iterator<Item = &'a RationalPoly>) -> Vec<BigInt> {
    let mut out = BTreeSet::new();
    for f in polys {
        for (_, c) in f.terms() {
            let (a, b) = numer_denom_abs(c);
            out.insert(BigInt::from(a));
            out.insert(BigInt::from(b));
        }
    }
    out.into_iter().filter(|v| *v > BigInt::from(1)).collect()
}

/// Compares `d mod p` with the decomposition of `I mod p` for a fresh prime
/// drawn from `stream` that divides no coefficient of `I` or `d`.
pub fn p_test_triang(
    ideal: &RationalIdeal,
    d: &TriangularDecomposition<Rationals>,
    stream: &mut PrimeStream,
) -> Result<(u64, bool)> {
    p_test_with(ideal, d, stream, false)
}

fn p_test_with(
    ideal: &RationalIdeal,
    d: &TriangularDecomposition<Rationals>,
    stream: &mut PrimeStream,
    disjoint: bool,
) -> Result<(u64, bool)> {
    let mut excluded = coefficient_integers(ideal.generators().iter());
    excluded.extend(coefficient_integers(d.sets().iter().flat_map(|s| s.polys())));
    loop {
        let p = stream.next_prime(&excluded);
        let field = PrimeField::new(p)?;
        let Some(reduced) = reduce_ideal_mod_p(ideal, field) else {
            continue;
        };
        let ring = reduced.ring().clone();
        let Some(expected) = reduce_decomposition(d, &ring) else {
            return Ok((p, false));
        };
        let passed = match decompose(&reduced, disjoint) {
            Ok(direct) => direct == expected,
            Err(Error::NotZeroDimensional) => false,
            Err(e) => return Err(e),
        };
        return Ok((p, passed));
    }
}

/// Modular triangular decomposition of a zero-dimensional ideal over Q.
pub fn mod_decompose(ideal: &RationalIdeal, cfg: &ModularConfig) -> Result<ModularOutcome> {
    mod_decompose_with_progress(ideal, cfg, None)
}

pub fn mod_decompose_with_progress(
    ideal: &RationalIdeal,
    cfg: &ModularConfig,
    progress: Option<ProgressSink>,
) -> Result<ModularOutcome> {
    cfg.validate()?;
    let emit = |e: ProgressEvent| {
        if let Some(sink) = &progress {
            sink(&e);
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| invalid(format!("cannot start worker pool: {e}")))?;
    let mut stream = PrimeStream::new(cfg.seed);
    let excluded = coefficient_integers(ideal.generators().iter());
    let mut snapshots: Vec<ModularSnapshot> = Vec::new();
    let mut last_reason = String::from("no usable primes");

    for round in 1..=cfg.max_rounds {
        let batch = stream.next_batch(cfg.primes_per_round, &excluded)?;
        emit(ProgressEvent::RoundStarted {
            round,
            primes: batch.primes.clone(),
        });
        let results: Vec<Result<std::result::Result<ModularSnapshot, SnapshotFailure>>> =
            pool.install(|| batch.primes.par_iter().map(|&p| snapshot_with(ideal, p, cfg.disjoint)).collect());

        let mut not_zero_dim = 0;
        let mut usable = 0;
        for (result, &p) in results.into_iter().zip(&batch.primes) {
            match result? {
                Ok(s) => {
                    usable += 1;
                    snapshots.push(s);
                }
                Err(failure) => {
                    if failure == SnapshotFailure::NotZeroDimensional {
                        usable += 1;
                        not_zero_dim += 1;
                    }
                    emit(ProgressEvent::PrimeSkipped {
                        round,
                        prime: p,
                        reason: format!("{failure:?}"),
                    });
                }
            }
        }
        // Leading structure is preserved by all but finitely many primes, so
        // a majority of positive-dimensional reductions settles the question.
        if usable > 0 && 2 * not_zero_dim > usable {
            return Err(Error::NotZeroDimensional);
        }
        if snapshots.is_empty() {
            continue;
        }

        let classes: BTreeSet<&Signature> = snapshots.iter().map(|s| &s.signature).collect();
        let classes = classes.len();
        let (kept, primes) = delete_unlucky(std::mem::take(&mut snapshots));
        snapshots = kept;
        emit(ProgressEvent::Vote {
            round,
            classes,
            kept: snapshots.len(),
            signature: snapshots[0].signature.text(),
        });

        let lifted = lift_decomposition(ideal.ring(), &snapshots)?;
        emit(ProgressEvent::Lift {
            round,
            success: lifted.is_some(),
        });
        let Some(d) = lifted else {
            last_reason = String::from("rational reconstruction failed");
            continue;
        };

        let (p, passed) = p_test_with(ideal, &d, &mut stream, cfg.disjoint)?;
        emit(ProgressEvent::PTest { round, prime: p, passed });
        if passed {
            let primes_used = stream.issued();
            emit(ProgressEvent::Finished { rounds: round, primes_used });
            return Ok(ModularOutcome {
                decomposition: d,
                rounds: round,
                primes_used,
                lifted_primes: primes,
            });
        }
        last_reason = format!("verification with prime {p} failed");
    }
    Err(Error::RoundsExceeded {
        rounds: cfg.max_rounds,
        primes: stream.issued(),
        reason: last_reason,
    })
}

/// Convenience wrapper building the ideal from generators.
pub fn mod_decompose_generators(
    generators: Vec<RationalPoly>,
    cfg: &ModularConfig,
) -> Result<ModularOutcome> {
    mod_decompose(&IdealHandle::new(generators)?, cfg)
}
