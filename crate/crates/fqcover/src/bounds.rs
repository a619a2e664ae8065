//! Exact-rational counting bounds for incomplete covering systems.
//!
//! Everything here works in big-integer rationals — the inequalities being
//! checked compare quantities that can be exponentially close, so floating
//! point is banned throughout.  The centerpiece is
//! [`uncovered_lower_bound`]: an inclusion–exclusion lower bound on how
//! many low-degree polynomials escape a family of residue-class groups.
//! Around it sit the arithmetic facts that drive the extremal analysis:
//! cumulative irreducible-count bounds, an AM–GM product ceiling, the
//! greedy worst-case product, the two multiplicity-exchange inequalities,
//! a large-parameter threshold comparison, and greedy coverage maxima for
//! small degree bounds.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::factor::{count_irreducible_order, count_irreducible_upto};
use crate::field::prime_power_parts;

fn rat_int(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

fn rat_u64(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn pow_big(q: u64, d: usize) -> BigUint {
    BigUint::from(q).pow(d as u32)
}

/// The data of a residue-class counting instance: for each of t groups, an
/// irreducible-modulus degree d_i and a class count k_i, plus a split
/// index s deciding which prefix of the groups is summed rather than
/// multiplied in [`uncovered_lower_bound`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundInstance {
    q: u64,
    n: usize,
    /// (d_i, k_i), sorted ascending by degree.
    groups: Vec<(usize, u64)>,
    s: usize,
}

impl BoundInstance {
    /// Validate and canonicalize (groups are sorted by degree ascending).
    pub fn new(q: u64, n: usize, mut groups: Vec<(usize, u64)>, s: usize) -> Result<Self> {
        if prime_power_parts(q).is_none() {
            return Err(Error::BadBoundInstance(format!("{q} is not a prime power")));
        }
        if n == 0 {
            return Err(Error::BadBoundInstance("degree bound n must be positive".into()));
        }
        if groups.is_empty() {
            return Err(Error::BadBoundInstance("at least one group is required".into()));
        }
        if s == 0 || s > groups.len() {
            return Err(Error::BadBoundInstance(format!(
                "split index s = {s} out of range 1..={}",
                groups.len()
            )));
        }
        for &(d, k) in &groups {
            if d == 0 {
                return Err(Error::BadBoundInstance("group degree must be positive".into()));
            }
            if BigUint::from(k) >= pow_big(q, d) {
                return Err(Error::BadBoundInstance(format!(
                    "group (d={d}, k={k}) has k ≥ q^d = {}",
                    pow_big(q, d)
                )));
            }
        }
        groups.sort_by_key(|&(d, _)| d);
        Ok(BoundInstance { q, n, groups, s })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn groups(&self) -> &[(usize, u64)] {
        &self.groups
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// The same instance with a different split index.
    pub fn with_split(&self, s: usize) -> Result<Self> {
        Self::new(self.q, self.n, self.groups.clone(), s)
    }
}

/// Exact lower-bound arithmetic for the number N of polynomials of degree
/// < n avoiding every listed residue class:
///
///   N > 1 + q^n (1 − Σ_{i≤s} k_i/q^{d_i}) Π_{i>s} (1 − k_i/q^{d_i})
///         − (1 + Σ_{i≤s} k_i) Π_{i>s} (1 + k_i).
///
/// Returns the right-hand side exactly; callers compare it against an
/// exactly computed N.  The inequality is strict whenever some k_i > 0;
/// with all k_i = 0 both sides equal q^n.
pub fn uncovered_lower_bound(inst: &BoundInstance) -> BigRational {
    let qn = rat_int(&pow_big(inst.q, inst.n));
    let mut head_sum = BigRational::zero(); // Σ_{i≤s} k_i / q^{d_i}
    let mut head_count = BigRational::zero(); // Σ_{i≤s} k_i
    let mut tail_prod = BigRational::one(); // Π_{i>s} (1 − k_i/q^{d_i})
    let mut tail_grow = BigRational::one(); // Π_{i>s} (1 + k_i)
    for (i, &(d, k)) in inst.groups.iter().enumerate() {
        let frac = rat_u64(k) / rat_int(&pow_big(inst.q, d));
        if i < inst.s {
            head_sum += frac;
            head_count += rat_u64(k);
        } else {
            tail_prod *= BigRational::one() - frac;
            tail_grow *= BigRational::one() + rat_u64(k);
        }
    }
    BigRational::one() + qn * (BigRational::one() - head_sum) * tail_prod
        - (BigRational::one() + head_count) * tail_grow
}

/// Result of comparing a cumulative irreducible count against its bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    /// The cumulative count of monic irreducibles.
    pub lhs: BigUint,
    /// The bound: 3·2^{d−3} for q = 2, (q−1)/(2q)·q^d otherwise.
    pub rhs: BigRational,
    /// lhs ≤ rhs.
    pub holds: bool,
}

/// Compare the number of monic irreducibles of degree ≤ d (starting from
/// degree 2 when `from_degree_two`) against the closed-form ceiling
/// 3·2^{d−3} for q = 2 and (q−1)/(2q)·q^d for general q.
///
/// The q = 2 form is tight at d = 4 (6 ≤ 6, counting from degree 2) and
/// holds for every d ≥ 2.  The general form is *not* universally true:
/// counting from degree 2 it fails at (q, d) ∈ {(3,3), (3,4), (4,3)} —
/// e.g. q = 3, d = 3 gives 3 + 8 = 11 irreducibles against a ceiling of
/// 3² = 9.  The check reports such failures honestly.
pub fn cumulative_irreducible_bound(q: u64, d: u32, from_degree_two: bool) -> Result<BoundCheck> {
    if d < 2 {
        return Err(Error::InvalidParameter("degree bound must be at least 2".into()));
    }
    let lhs = count_irreducible_upto(q, d, from_degree_two)?;
    let rhs = if q == 2 {
        // 3·2^{d−3}, a rational (3/2) at d = 2.
        rat_u64(3) * rat_u64(2).pow(d as i32 - 3)
    } else {
        rat_u64(q - 1) / rat_u64(2 * q) * rat_int(&pow_big(q, d as usize))
    };
    let holds = rat_int(&lhs) <= rhs;
    Ok(BoundCheck { lhs, rhs, holds })
}

/// The split size used by the product bounds below: one less than a third
/// of n, rounded up, clamped to t − 1 when only t groups exist.
fn product_split(n: usize, t: usize) -> usize {
    // ⌈n/3 − 1⌉ = ⌈(n−3)/3⌉, which is (n−1)/3 in integer division for
    // n ≥ 1, never negative.
    ((n - 1) / 3).min(t - 1)
}

/// The AM–GM ceiling on a product of s+1 factors with fixed sum n+s+1:
/// returns (s, ((n+s+1)/(s+1))^{s+1}) with s = min(⌈n/3−1⌉, t−1).
pub fn am_gm_upper_bound(n: usize, t: usize) -> Result<(usize, BigRational)> {
    if n == 0 || t == 0 {
        return Err(Error::InvalidParameter("n and t must be positive".into()));
    }
    let s = product_split(n, t);
    let base = rat_u64((n + s + 1) as u64) / rat_u64((s + 1) as u64);
    Ok((s, base.pow((s + 1) as i32)))
}

/// The extremal product Π (1 − k_i/q^{d_i}) under the greedy fill:
/// irreducible moduli taken by ascending degree starting at 2, each
/// loaded with its maximum admissible multiplicity k = d − 1, until
/// s = ⌈n/3−1⌉ factors are consumed.  n ≤ 3 yields the empty product 1.
pub fn worst_case_product(q: u64, n: usize) -> Result<BigRational> {
    if prime_power_parts(q).is_none() {
        return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let s = (n - 1) / 3;
    let mut product = BigRational::one();
    let mut taken = 0usize;
    let mut d = 2usize;
    while taken < s {
        let mut available = count_irreducible_order(q, d as u32)?;
        while taken < s && !available.is_zero() {
            product *= BigRational::one()
                - rat_u64((d - 1) as u64) / rat_int(&pow_big(q, d));
            taken += 1;
            available -= 1u32;
        }
        d += 1;
    }
    Ok(product)
}

/// Truth of the two multiplicity-exchange inequalities, reported per case;
/// a case outside its parameter range is `None` (not applicable).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeCheck {
    /// Equal degrees d1 = d2, shifting one unit from k1 to k2
    /// (1 ≤ k1 ≤ k2 < d2 − 1): does the balanced product strictly win?
    pub same_degree: Option<bool>,
    /// Degrees d1 < d2, shifting one unit from k2 down to k1
    /// (0 ≤ k1 < d1 − 1, k2 ≤ d2): does the original product strictly win?
    pub cross_degree: Option<bool>,
}

/// Evaluate the exchange inequalities in exact rationals.
///
/// Same-degree case (d1 = d2 = d):
///   (1 − k1/q^d)(1 − k2/q^d) > (1 − (k1−1)/q^d)(1 − (k2+1)/q^d),
/// whose difference is (k2 − k1 + 1)/q^{2d}.
///
/// Cross-degree case (d1 < d2):
///   (1 − k1/q^{d1})(1 − k2/q^{d2}) > (1 − (k1+1)/q^{d1})(1 − (k2−1)/q^{d2}),
/// whose difference is (q^{d2} − q^{d1} + k1 − k2 + 1)/q^{d1+d2}.
///
/// At least one case's parameter range must apply, else an error.
pub fn exchange_step_check(
    q: u64,
    d1: usize,
    k1: u64,
    d2: usize,
    k2: u64,
) -> Result<ExchangeCheck> {
    if prime_power_parts(q).is_none() {
        return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
    }
    let factor = |d: usize, k: BigRational| BigRational::one() - k / rat_int(&pow_big(q, d));

    let same_degree = (d1 == d2 && 1 <= k1 && k1 <= k2 && k2 + 1 < d2 as u64).then(|| {
        let lhs = factor(d1, rat_u64(k1)) * factor(d2, rat_u64(k2));
        let rhs = factor(d1, rat_u64(k1) - BigRational::one())
            * factor(d2, rat_u64(k2) + BigRational::one());
        lhs > rhs
    });
    let cross_degree = (d1 < d2 && k1 + 1 < d1 as u64 && k2 <= d2 as u64).then(|| {
        let lhs = factor(d1, rat_u64(k1)) * factor(d2, rat_u64(k2));
        let rhs = factor(d1, rat_u64(k1) + BigRational::one())
            * factor(d2, rat_u64(k2) - BigRational::one());
        lhs > rhs
    });
    if same_degree.is_none() && cross_degree.is_none() {
        return Err(Error::NoExchangeCase { d1, k1, d2, k2 });
    }
    Ok(ExchangeCheck { same_degree, cross_degree })
}

/// Result of the large-n threshold comparison, reported as exact 6th
/// powers (the original exponents have denominator 6).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdCheck {
    /// (2^{2n/3−4} · 3^{n/6+1})^6 = 2^{4n−24} · 3^{n+6}, exact.
    pub lhs_pow6: BigRational,
    /// (2^{2n/3})^6 = 2^{4n}, exact.
    pub rhs_pow6: BigRational,
    /// lhs > rhs (equivalently lhs_pow6 > rhs_pow6; both sides positive).
    pub holds: bool,
}

/// Decide 2^{2n/3−4} · 3^{n/6+1} > 2^{2n/3} exactly by comparing 6th
/// powers in big integers.  Equivalent to 3^{n+6} > 2^{24}, so it holds
/// precisely for n ≥ 10 — the comparison fails at n = 9 by a whisker
/// (3^15 = 14 348 907 against 2^24 = 16 777 216).
pub fn large_n_threshold_check(n: usize) -> Result<ThresholdCheck> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let three = rat_u64(3).pow((n + 6) as i32);
    let lhs_pow6 = three * rat_u64(2).pow(4 * n as i32 - 24);
    let rhs_pow6 = rat_u64(2).pow(4 * n as i32);
    let holds = lhs_pow6 > rhs_pow6;
    Ok(ThresholdCheck { lhs_pow6, rhs_pow6, holds })
}

/// Greedy upper bound on how many polynomials of degree < n a normalized
/// system can cover.
///
/// Congruence slots are assigned to irreducible moduli by ascending degree
/// (starting at degree 2), at most d − 1 per degree-d modulus; a modulus
/// of degree d covers at most ⌈q^{n−d}⌉ polynomials of degree < n per
/// residue class, i.e. q^{n−d} when d ≤ n and 1 otherwise.  The total is
/// capped at q^n.
///
/// The slot count equals n except over F_2 for 4 ≤ n ≤ 8, where the
/// 8-slot configuration {one quadratic ×1, two cubics ×2, one quartic ×3}
/// is the binding case for the whole range and is used for each such n.
pub fn max_coverage_upper(q: u64, n: usize) -> Result<BigUint> {
    if prime_power_parts(q).is_none() {
        return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let mut slots = if q == 2 && (4..=8).contains(&n) { 8 } else { n as u64 };
    let mut total = BigUint::zero();
    let mut d = 2usize;
    while slots > 0 {
        let mut available = count_irreducible_order(q, d as u32)?;
        while slots > 0 && !available.is_zero() {
            let k = slots.min((d - 1) as u64);
            let per_class = if d <= n { pow_big(q, n - d) } else { BigUint::one() };
            total += BigUint::from(k) * per_class;
            slots -= k;
            available -= 1u32;
        }
        d += 1;
    }
    Ok(total.min(pow_big(q, n)))
}

/// The degree of the n-th smallest monic irreducible (1-indexed, by
/// cumulative counts starting at degree 1).
pub fn nth_irreducible_degree(q: u64, n: usize) -> Result<u32> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let target = BigUint::from(n);
    let mut cumulative = BigUint::zero();
    let mut d = 1u32;
    loop {
        cumulative += count_irreducible_order(q, d)?;
        if cumulative >= target {
            return Ok(d);
        }
        d += 1;
    }
}

/// Check q^{d_n} · (q − 1) > 2·q·n exactly, where d_n is the degree of
/// the n-th smallest monic irreducible — the gap between the n-th
/// irreducible's modulus size and the linear term 2qn/(q−1).
///
/// Not universally true: q = 3, n = 1 sits exactly on the boundary
/// (3 · 2 = 6 = 2 · 3 · 1), and q = 2 fails for every n ≤ 71
/// (e.g. n = 20 has d_20 = 6 and 2^6 = 64 < 80 = 4 · 20); the check
/// reports the exact truth.
pub fn degree_gap_check(q: u64, n: usize) -> Result<bool> {
    if q < 2 {
        return Err(Error::InvalidParameter("q must be at least 2".into()));
    }
    let d = nth_irreducible_degree(q, n)?;
    Ok(pow_big(q, d as usize) * BigUint::from(q - 1) > BigUint::from(2 * q) * BigUint::from(n))
}
