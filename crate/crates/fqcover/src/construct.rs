//! Construction and search: building the sharp near-covering system over
//! F_2[x], and exhaustively testing coverage-extension claims at desk scale.
//!
//! The sharp system for a degree bound n and a target polynomial r₀ of
//! degree < n uses the moduli x, x², …, xⁿ and covers every polynomial of
//! degree < n except exactly r₀; globally it misses precisely the class
//! r₀ + (xⁿ).  The residues are produced inductively: with r_i = r₀ mod
//! x^i, the first residue is r′₁ = 1 + r₁, and at each later step there
//! is exactly one residue r′_{k+1} of degree < k+1 making the cosets
//! r′₁ + (x), …, r′_{k+1} + (x^{k+1}), r_{k+1} + (x^{k+1}) pairwise
//! disjoint — and disjointness alone forces them to partition F_2[x],
//! because their densities already sum to 1.  The builder asserts this
//! uniqueness by exhaustive search over all 2^{k+1} candidates at every
//! step, and re-verifies the partition by counting classes, so a
//! deviation is reported rather than papered over.
//!
//! Internally the builder works on u64 indices: a polynomial over F_2 of
//! degree < 64 is the integer whose bit i is the coefficient of x^i, and
//! reduction mod x^i is a mask by 2^i − 1.  The public types speak
//! [`Poly`] throughout, and [`verify_sharp`] re-checks everything with
//! ordinary polynomial arithmetic, independent of the bit-level shortcut.

use num_bigint::BigUint;
use num_traits::One;

use crate::covering::{Congruence, CongruenceSystem};
use crate::error::{Error, Result};
use crate::factor::monic_polys_of_degree;
use crate::field::FieldDesc;
use crate::poly::Poly;

/// Largest degree bound the u64-index representation supports.
const MAX_SHARP_N: usize = 60;

/// Points of degree < threshold are tracked in a u64 coverage mask, so
/// the search engine handles at most this many of them.
const MAX_THRESHOLD_POINTS: u64 = 64;

/// A system with moduli x, x², …, xⁿ covering every polynomial of degree
/// < n except exactly `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharpSystem {
    /// The congruences, one per modulus x^i, in ascending modulus order.
    pub system: CongruenceSystem,
    /// The unique polynomial of degree < n the system does not cover.
    pub target: Poly,
    /// The degree bound; also the number of congruences.
    pub n: usize,
}

/// Build the sharp system for degree bound `n` and target `r0`.
///
/// Only defined over F_2; requires deg r0 < n (the zero polynomial has
/// degree 0) and 1 ≤ n ≤ 60.  At every induction step the residue is
/// found by exhaustive search and must be unique; the step's partition
/// identity is then re-counted outright.  The finished system is checked
/// to cover exactly the 2ⁿ − 1 polynomials of degree < n other than r0
/// and to miss exactly the class r0 + (xⁿ).
pub fn build_sharp_system(n: usize, r0: &Poly) -> Result<SharpSystem> {
    let field = r0.field().clone();
    if field.order() != 2 {
        return Err(Error::NotBinaryField);
    }
    if n == 0 {
        return Err(Error::InvalidParameter("degree bound must be positive".into()));
    }
    if n > MAX_SHARP_N {
        return Err(Error::InvalidParameter(format!(
            "degree bound {n} exceeds the supported maximum {MAX_SHARP_N}"
        )));
    }
    if r0.degree() >= n {
        return Err(Error::InvalidParameter(format!(
            "target degree {} is not below the bound {n}",
            r0.degree()
        )));
    }

    let target: u64 = u64::try_from(r0.index()).expect("degree < 60 fits in u64");
    let mask = |i: usize| -> u64 { (1u64 << i) - 1 };

    // primed[i-1] holds r'_i; the base case flips the constant term of r_1.
    let mut primed: Vec<u64> = vec![(target & 1) ^ 1];
    for step in 2..=n {
        let r_step = target & mask(step);
        let mut found: Option<u64> = None;
        let mut count = 0usize;
        for cand in 0..(1u64 << step) {
            if cand == r_step {
                continue;
            }
            if (1..step).all(|i| cand & mask(i) != primed[i - 1]) {
                count += 1;
                found = Some(cand);
            }
        }
        if count != 1 {
            return Err(Error::SharpNotUnique { step, found: count });
        }
        let chosen = found.expect("count == 1");

        // Partition double-check: every class mod x^step is hit exactly
        // once by the step's cosets plus the target coset.
        for t in 0..(1u64 << step) {
            let mut hits = 0usize;
            for i in 1..step {
                if t & mask(i) == primed[i - 1] {
                    hits += 1;
                }
            }
            if t == chosen {
                hits += 1;
            }
            if t == r_step {
                hits += 1;
            }
            if hits != 1 {
                return Err(Error::SharpCheckFailed {
                    clause: format!("class {t} is hit {hits} times at step {step}"),
                });
            }
        }
        primed.push(chosen);
    }

    let congruences = primed
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            Congruence::new(Poly::from_index_u64(&field, r), Poly::x_pow(&field, i + 1))
        })
        .collect::<Result<Vec<_>>>()?;
    let system = CongruenceSystem::from_congruences(&field, congruences)?;

    // Invariant checks on the finished system, via the coverage oracles.
    let report = system.coverage_below(n)?;
    let expected_covered = (BigUint::one() << n) - BigUint::one();
    if report.covered_count != expected_covered || report.uncovered != vec![r0.clone()] {
        return Err(Error::SharpCheckFailed {
            clause: format!(
                "coverage below {n}: expected all but {r0}, found {} uncovered",
                report.uncovered_count
            ),
        });
    }
    let exact = system.covers_everything_exact(1u64 << n)?;
    if exact.witness_class != Some((r0.clone(), Poly::x_pow(&field, n))) {
        return Err(Error::SharpCheckFailed {
            clause: "global uncovered class is not the target class".into(),
        });
    }

    Ok(SharpSystem { system, target: r0.clone(), n })
}

/// Independently re-verify a [`SharpSystem`] with plain polynomial
/// arithmetic: well-formedness, pairwise coset disjointness, the
/// partition identity by class counting mod xⁿ, and that the uncovered
/// set is exactly the class target + (xⁿ).
///
/// Returns the violated clause as an error; `Ok(())` means every check
/// passed.
pub fn verify_sharp(s: &SharpSystem) -> Result<()> {
    let field = s.system.field();
    let fail = |clause: String| Err(Error::SharpCheckFailed { clause });

    if field.order() != 2 {
        return fail("field: expected the two-element field".into());
    }
    if s.n == 0 || s.system.len() != s.n {
        return fail(format!(
            "moduli: expected {} congruences, found {}",
            s.n,
            s.system.len()
        ));
    }
    if s.target.degree() >= s.n {
        return fail(format!(
            "target: degree {} is not below the bound {}",
            s.target.degree(),
            s.n
        ));
    }
    for (i, c) in s.system.congruences().iter().enumerate() {
        if *c.modulus() != Poly::x_pow(field, i + 1) {
            return fail(format!(
                "moduli: congruence {} has modulus {}, expected x^{}",
                i + 1,
                c.modulus(),
                i + 1
            ));
        }
    }

    // (a) Pairwise disjointness.  Cosets a + (x^i) and b + (x^j) with
    // i ≤ j meet exactly when a ≡ b mod x^i, so disjointness is a residue
    // comparison at the smaller modulus.  The target coset participates
    // at modulus x^n.
    let congruences = s.system.congruences();
    let mut cosets: Vec<(usize, Poly)> = congruences
        .iter()
        .enumerate()
        .map(|(i, c)| (i + 1, c.residue().clone()))
        .collect();
    cosets.push((s.n, s.target.clone()));
    for a in 0..cosets.len() {
        for b in a + 1..cosets.len() {
            let (i, ra) = &cosets[a];
            let (j, rb) = &cosets[b];
            let low = Poly::x_pow(field, *i.min(j));
            if ra.rem(&low)? == rb.rem(&low)? {
                return fail(format!(
                    "disjointness: cosets mod x^{i} and mod x^{j} intersect"
                ));
            }
        }
    }

    // (b) Partition identity: every class mod x^n is hit exactly once by
    // the n cosets together with the target coset.
    let xn = Poly::x_pow(field, s.n);
    for rep in Poly::enumerate_degree_below(field, s.n) {
        let mut hits = 0usize;
        for c in congruences {
            if c.covers(&rep)? {
                hits += 1;
            }
        }
        if rep.rem(&xn)? == s.target.rem(&xn)? {
            hits += 1;
        }
        if hits != 1 {
            return fail(format!("partition: class of {rep} is hit {hits} times"));
        }
    }

    // (c) The uncovered set is exactly the class target + (x^n).  Every
    // modulus divides x^n, so membership depends only on the class mod
    // x^n and checking representatives decides the whole ring.
    for rep in Poly::enumerate_degree_below(field, s.n) {
        let covered = s.system.covers_point(&rep)?;
        if rep == s.target {
            if covered {
                return fail(format!("uncovered set: target {rep} is covered"));
            }
        } else if !covered {
            return fail(format!("uncovered set: non-target {rep} is uncovered"));
        }
    }

    Ok(())
}

/// Outcome of an exhaustive system search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    /// Systems that cover everything below the degree threshold without
    /// covering the whole ring, in enumeration order.
    pub counterexamples: Vec<CongruenceSystem>,
    /// Number of candidate systems (multisets of congruences) enumerated.
    pub systems_enumerated: u64,
    /// How many of them covered everything below the threshold.
    pub premise_count: u64,
    /// The degree threshold the premise used.
    pub degree_threshold: usize,
}

/// The least T such that q^T ≥ 2ⁿ, computed in exact integer arithmetic.
///
/// This is the degree bound below which an n-congruence system over F_q
/// is conjectured to be forced into full coverage once it covers all of
/// degree < T; for q = 2 it is n itself.  A non-integer n/log₂(q) is
/// rounded up.
pub fn degree_threshold(q: u64, n: usize) -> usize {
    let goal = BigUint::one() << n;
    let q = BigUint::from(q);
    let mut power = BigUint::one();
    let mut t = 0usize;
    while power < goal {
        power *= &q;
        t += 1;
    }
    t
}

/// Exhaustively enumerate all multisets of `n` congruences with moduli of
/// degree ≤ `max_mod_deg` (all residues), and report every system that
/// covers all polynomials of degree < `threshold` yet provably misses
/// some polynomial.
fn search_systems(
    field: &FieldDesc,
    n: usize,
    max_mod_deg: usize,
    threshold: usize,
    cap: u64,
) -> Result<SearchReport> {
    if n == 0 || max_mod_deg == 0 {
        return Err(Error::InvalidParameter(
            "system size and modulus degree budget must be positive".into(),
        ));
    }
    let points: Vec<Poly> = Poly::enumerate_degree_below(field, threshold).collect();
    if points.len() as u64 > MAX_THRESHOLD_POINTS {
        return Err(Error::InvalidParameter(format!(
            "degree threshold {threshold} spans {} points, beyond the {} the \
             search engine tracks",
            points.len(),
            MAX_THRESHOLD_POINTS
        )));
    }
    let full_mask: u64 = if points.len() == 64 { u64::MAX } else { (1u64 << points.len()) - 1 };

    // The candidate pool: every congruence with a monic modulus of degree
    // 1..=max_mod_deg, paired with its coverage mask over the points.
    let mut pool: Vec<(Congruence, u64)> = Vec::new();
    for d in 1..=max_mod_deg {
        for modulus in monic_polys_of_degree(field, d) {
            for residue in Poly::enumerate_degree_below(field, d) {
                let congruence = Congruence::new(residue, modulus.clone())?;
                let mut mask = 0u64;
                for (j, point) in points.iter().enumerate() {
                    if congruence.covers(point)? {
                        mask |= 1 << j;
                    }
                }
                pool.push((congruence, mask));
            }
        }
    }
    let pool_size = pool.len();

    // Multisets of size n from the pool: C(pool + n − 1, n) systems.
    let mut expected = BigUint::one();
    for i in 0..n {
        expected = expected * BigUint::from(pool_size + i) / BigUint::from(i + 1);
    }
    let Ok(expected_u64) = u64::try_from(expected.clone()) else {
        return Err(Error::CapExceeded { required: expected, cap });
    };
    if expected_u64 > cap {
        return Err(Error::CapExceeded { required: expected, cap });
    }

    let mut report = SearchReport {
        counterexamples: Vec::new(),
        systems_enumerated: 0,
        premise_count: 0,
        degree_threshold: threshold,
    };
    let mut idx = vec![0usize; n];
    'outer: loop {
        report.systems_enumerated += 1;
        let mut union = 0u64;
        for &i in &idx {
            union |= pool[i].1;
        }
        if union == full_mask {
            report.premise_count += 1;
            let system = CongruenceSystem::from_congruences(
                field,
                idx.iter().map(|&i| pool[i].0.clone()).collect(),
            )?;
            if !system.covers_everything_exact(cap)?.complete {
                report.counterexamples.push(system);
            }
        }

        let mut j = n;
        loop {
            if j == 0 {
                break 'outer;
            }
            j -= 1;
            if idx[j] + 1 < pool_size {
                let next = idx[j] + 1;
                for slot in idx.iter_mut().skip(j) {
                    *slot = next;
                }
                continue 'outer;
            }
        }
    }
    assert_eq!(report.systems_enumerated, expected_u64);
    Ok(report)
}

/// Exhaustively verify, for systems of `n` congruences with moduli of
/// degree ≤ `max_mod_deg`, that covering every polynomial of degree < n
/// forces covering the whole ring.  An empty counterexample list means
/// the property held throughout.
pub fn theorem_exhaustive_check(
    field: &FieldDesc,
    n: usize,
    max_mod_deg: usize,
    cap: u64,
) -> Result<SearchReport> {
    search_systems(field, n, max_mod_deg, n, cap)
}

/// Search for counterexamples to the sharper conjectured threshold: a
/// system of `n` congruences (moduli of degree ≤ `degree_budget`) that
/// covers everything of degree < ⌈n/log₂ q⌉ yet misses some polynomial.
/// An empty list means the conjectured bound survives at this scale.
pub fn conjecture_search(
    field: &FieldDesc,
    n: usize,
    degree_budget: usize,
    cap: u64,
) -> Result<SearchReport> {
    let threshold = degree_threshold(field.order(), n);
    search_systems(field, n, degree_budget, threshold, cap)
}
