//! Irreducibility, factorization, and counting of monic irreducibles.
//!
//! Everything here is exact and enumeration-based.  The moduli appearing in
//! covering systems have single-digit degrees, so trial division over all
//! monic polynomials up to half the degree is both simple and fast enough;
//! sophistication would buy nothing.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::FieldDesc;
use crate::poly::Poly;

/// A factorization into monic irreducibles: `unit · Π factorᵢ^multᵢ`.
///
/// Factors are sorted by (degree, enumeration index) and are pairwise
/// distinct; multiplicities are ⩾ 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// The leading coefficient of the original polynomial.
    pub unit: crate::field::FieldElem,
    /// Distinct monic irreducible factors with multiplicities, ascending.
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiply the factorization back out.
    pub fn expand(&self, field: &FieldDesc) -> Poly {
        let mut acc = Poly::constant(field, self.unit);
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m)).expect("same field");
        }
        acc
    }
}

/// All monic polynomials of exactly the given degree, in enumeration order.
///
/// There are q^d of them: the d lower coefficients run through all values
/// while the leading coefficient stays 1.  Degree 0 yields just the
/// constant 1.
pub fn monic_polys_of_degree(field: &FieldDesc, d: usize) -> impl Iterator<Item = Poly> {
    let field = field.clone();
    let total = field.order_big().pow(d as u32);
    let mut idx = BigUint::zero();
    std::iter::from_fn(move || {
        if idx < total {
            let mut p = Poly::from_index(&field, &idx);
            idx += 1u32;
            let mut coeffs = p.coeffs().to_vec();
            coeffs.resize(d + 1, field.zero());
            coeffs[d] = field.one();
            p = Poly::from_coeffs(&field, coeffs);
            Some(p)
        } else {
            None
        }
    })
}

/// Whether a nonconstant polynomial is irreducible over its coefficient
/// field.  Constants (zero included) are rejected.
///
/// Decided by trial division against every monic polynomial of degree
/// 1 … ⌊deg/2⌋.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let deg = f.degree();
    for d in 1..=deg / 2 {
        for g in monic_polys_of_degree(f.field(), d) {
            if f.divisible_by(&g)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn irreducible_nonconstant(f: &Poly) -> bool {
    is_irreducible(f).expect("nonconstant by construction")
}

/// Factor a nonzero polynomial into monic irreducibles.
///
/// Trial division by monic irreducibles in enumeration order, so the factor
/// list comes out sorted by (degree, index) for free.  A nonzero constant
/// factors as its unit alone; zero is rejected.
pub fn factor(f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field().clone();
    let unit = f.leading_coeff();
    let mut rest = f.make_monic();
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    let mut d = 1usize;
    while !rest.is_constant() {
        if d > rest.degree() / 2 {
            // No divisor of degree ≤ half remains, so what is left is
            // irreducible.
            factors.push((rest.clone(), 1));
            break;
        }
        // Divide out every irreducible of degree d to full multiplicity;
        // scanning them in enumeration order keeps the factor list sorted.
        for g in monic_polys_of_degree(&field, d) {
            if !irreducible_nonconstant(&g) {
                continue;
            }
            let mut mult = 0u32;
            loop {
                let (q, r) = rest.divmod(&g)?;
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                factors.push((g, mult));
            }
            if rest.is_constant() {
                break;
            }
        }
        d += 1;
    }
    Ok(Factorization { unit, factors })
}

/// Möbius function on positive integers.
pub fn mobius(n: u64) -> i64 {
    debug_assert!(n >= 1);
    let mut n = n;
    let mut mu = 1i64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// The number of monic irreducible polynomials of degree d over F_q,
/// by Möbius inversion of q^d = Σ_{e|d} e·N(e):
///
///   N(d) = (1/d) Σ_{k|d} μ(k) q^{d/k}.
pub fn count_irreducible_order(q: u64, d: u32) -> Result<BigUint> {
    if d == 0 {
        return Err(Error::InvalidParameter("degree must be positive".into()));
    }
    if crate::field::prime_power_parts(q).is_none() {
        return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
    }
    let q = BigUint::from(q);
    let mut pos = BigUint::zero();
    let mut neg = BigUint::zero();
    for k in 1..=d as u64 {
        if d as u64 % k != 0 {
            continue;
        }
        let term = q.pow((d as u64 / k) as u32);
        match mobius(k) {
            1 => pos += term,
            -1 => neg += term,
            _ => {}
        }
    }
    let diff = pos - neg;
    debug_assert!((&diff % d).is_zero());
    Ok(diff / d)
}

/// [`count_irreducible_order`] for a field description.
pub fn count_irreducible(field: &FieldDesc, d: u32) -> Result<BigUint> {
    count_irreducible_order(field.order(), d)
}

/// Total number of monic irreducibles of degree ⩽ d, optionally counting
/// from degree 2 (i.e. excluding the q linear polynomials).
pub fn count_irreducible_upto(q: u64, d: u32, from_degree_two: bool) -> Result<BigUint> {
    let start = if from_degree_two { 2 } else { 1 };
    let mut total = BigUint::zero();
    for deg in start..=d {
        total += count_irreducible_order(q, deg)?;
    }
    Ok(total)
}

/// All monic irreducibles of the given degree, in enumeration order.
pub fn irreducibles_of_degree(field: &FieldDesc, d: usize) -> impl Iterator<Item = Poly> {
    monic_polys_of_degree(field, d).filter(irreducible_nonconstant)
}

/// All monic irreducibles of degree 1 … d, sorted by (degree, index).
pub fn irreducibles_up_to(field: &FieldDesc, d: usize) -> Vec<Poly> {
    let mut out = Vec::new();
    for deg in 1..=d {
        out.extend(irreducibles_of_degree(field, deg));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldDesc {
        FieldDesc::binary()
    }

    fn f3() -> FieldDesc {
        FieldDesc::prime(3).unwrap()
    }

    #[test]
    fn linear_polynomials_are_irreducible() {
        let f = f3();
        for c in 0..3 {
            assert!(is_irreducible(&Poly::from_ints(&f, &[c, 1])).unwrap());
            assert!(is_irreducible(&Poly::from_ints(&f, &[c, 2])).unwrap());
        }
    }

    #[test]
    fn irreducibility_rejects_constants() {
        let f = f3();
        assert_eq!(
            is_irreducible(&Poly::from_ints(&f, &[2])),
            Err(Error::ConstantPolynomial)
        );
        assert_eq!(is_irreducible(&Poly::zero(&f)), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn quadratic_irreducibility_over_f2() {
        let f = f2();
        // x^2 + x + 1 is the only irreducible quadratic over F_2.
        assert!(is_irreducible(&Poly::from_ints(&f, &[1, 1, 1])).unwrap());
        assert!(!is_irreducible(&Poly::from_ints(&f, &[0, 0, 1])).unwrap()); // x^2
        assert!(!is_irreducible(&Poly::from_ints(&f, &[1, 0, 1])).unwrap()); // (x+1)^2
        assert!(!is_irreducible(&Poly::from_ints(&f, &[0, 1, 1])).unwrap()); // x(x+1)
    }

    #[test]
    fn factor_perfect_square() {
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 over F_2.
        let f = f2();
        let p = Poly::from_ints(&f, &[1, 0, 1, 0, 1]);
        let fac = factor(&p).unwrap();
        assert_eq!(fac.factors, vec![(Poly::from_ints(&f, &[1, 1, 1]), 2)]);
        assert_eq!(fac.expand(&f), p);
    }

    #[test]
    fn factor_with_unit() {
        // 2x^2 + 2x = 2 · x · (x + 1) over F_3.
        let f = f3();
        let p = Poly::from_ints(&f, &[0, 2, 2]);
        let fac = factor(&p).unwrap();
        assert_eq!(fac.unit, f.elem(2).unwrap());
        assert_eq!(
            fac.factors,
            vec![(Poly::from_ints(&f, &[0, 1]), 1), (Poly::from_ints(&f, &[1, 1]), 1)]
        );
        assert_eq!(fac.expand(&f), p);
    }

    #[test]
    fn factor_handles_constants() {
        let f = f3();
        assert_eq!(factor(&Poly::zero(&f)), Err(Error::ZeroPolynomial));
        let two = factor(&Poly::from_ints(&f, &[2])).unwrap();
        assert_eq!(two.unit, f.elem(2).unwrap());
        assert!(two.factors.is_empty());
        assert_eq!(two.expand(&f), Poly::from_ints(&f, &[2]));
    }

    #[test]
    fn factorization_round_trips_exhaustively() {
        // Every nonzero polynomial of degree ≤ 5 over F_2 and ≤ 3 over F_3:
        // factor, expand, compare; factors sorted and irreducible.
        for (field, max_deg) in [(f2(), 5usize), (f3(), 3usize)] {
            let q = field.order();
            let total = q.pow(max_deg as u32 + 1);
            for i in 1..total {
                let p = Poly::from_index_u64(&field, i);
                let fac = factor(&p).unwrap();
                assert_eq!(fac.expand(&field), p, "q={q} index={i}");
                for (g, m) in &fac.factors {
                    assert!(is_irreducible(g).unwrap());
                    assert!(g.is_monic());
                    assert!(*m >= 1);
                }
                assert!(fac.factors.windows(2).all(|w| w[0].0 < w[1].0));
            }
        }
    }

    #[test]
    fn irreducible_counts_match_enumeration() {
        for field in [f2(), f3()] {
            for d in 1..=6u32 {
                if field.order().pow(d) > 1 << 12 {
                    continue;
                }
                let counted = count_irreducible(&field, d).unwrap();
                let enumerated = irreducibles_of_degree(&field, d as usize).count();
                assert_eq!(counted, BigUint::from(enumerated));
            }
        }
    }

    #[test]
    fn known_irreducible_counts() {
        assert_eq!(count_irreducible_order(2, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(count_irreducible_order(2, 2).unwrap(), BigUint::from(1u32));
        assert_eq!(count_irreducible_order(2, 3).unwrap(), BigUint::from(2u32));
        assert_eq!(count_irreducible_order(2, 4).unwrap(), BigUint::from(3u32));
        assert_eq!(count_irreducible_order(3, 1).unwrap(), BigUint::from(3u32));
        assert_eq!(count_irreducible_order(3, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(count_irreducible_order(4, 2).unwrap(), BigUint::from(6u32));
    }

    #[test]
    fn mobius_small_values() {
        let expect = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (n, &mu) in (1u64..).zip(expect.iter()) {
            assert_eq!(mobius(n), mu, "n={n}");
        }
    }

    #[test]
    fn counts_rejected_for_bad_arguments() {
        assert!(count_irreducible_order(6, 2).is_err());
        assert!(count_irreducible_order(2, 0).is_err());
    }

    #[test]
    fn cumulative_count_with_and_without_linears() {
        // Over F_2: degrees 1..4 have 2, 1, 2, 3 irreducibles.
        assert_eq!(count_irreducible_upto(2, 4, false).unwrap(), BigUint::from(8u32));
        assert_eq!(count_irreducible_upto(2, 4, true).unwrap(), BigUint::from(6u32));
    }

    #[test]
    fn irreducibles_up_to_degree_two_over_f2() {
        let f = f2();
        let expect = vec![
            Poly::x(&f),
            Poly::from_ints(&f, &[1, 1]),
            Poly::from_ints(&f, &[1, 1, 1]),
        ];
        assert_eq!(irreducibles_up_to(&f, 2), expect);
        assert_eq!(irreducibles_up_to(&f, 3).len(), 5);
    }

    #[test]
    fn monic_enumeration_has_expected_size_and_order() {
        let f = f3();
        let cubics: Vec<Poly> = monic_polys_of_degree(&f, 3).collect();
        assert_eq!(cubics.len(), 27);
        assert!(cubics.iter().all(|p| p.is_monic() && p.degree() == 3));
        assert!(cubics.windows(2).all(|w| w[0] < w[1]));
        let constants: Vec<Poly> = monic_polys_of_degree(&f, 0).collect();
        assert_eq!(constants, vec![Poly::one(&f)]);
    }
}
