//! Cross-implementation property checks.
//!
//! Every test here pits a library routine against an independent
//! computation of the same quantity: brute-force enumeration, a
//! counting identity, or an algebraic identity that must hold for
//! arbitrary inputs.  Randomized tests use fixed seeds so failures
//! reproduce.

mod common;

use fqcover::{
    build_sharp_system, count_irreducible, count_irreducible_order, count_irreducible_upto,
    crt_combine, exchange_step_check, intersection_count, irreducibles_of_degree,
    irreducibles_up_to, monic_polys_of_degree, normalize_system, ClassSet, Congruence,
    CongruenceSystem, FieldDesc, Poly, DEFAULT_WITNESS_CAP,
};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXACT_CAP: u64 = 1 << 16;

/// Division with remainder reconstructs the dividend, exhaustively over
/// all small inputs: g = q·f + r with r = 0 or deg r < deg f.
#[test]
fn division_reconstructs_every_dividend() {
    for (q, bound) in [(2u64, 5usize), (3, 4)] {
        let field = FieldDesc::prime(q).unwrap();
        for f in Poly::enumerate_degree_below(&field, bound) {
            if f.is_zero() {
                continue;
            }
            for g in Poly::enumerate_degree_below(&field, bound) {
                let (quot, rem) = g.divmod(&f).unwrap();
                assert_eq!(quot.mul(&f).unwrap().add(&rem).unwrap(), g, "q={q} g={g} f={f}");
                assert!(
                    rem.is_zero() || rem.degree() < f.degree(),
                    "q={q} g={g} f={f} rem={rem}"
                );
            }
        }
    }
}

/// The divisor-counting formula agrees with trial division over proper
/// extension fields, where polynomial arithmetic runs through the field's
/// own multiplication tables rather than integer arithmetic mod p.
#[test]
fn extension_field_counts_match_trial_division() {
    let f4 = FieldDesc::of_order(4).unwrap();
    for d in 1..=3usize {
        let enumerated = irreducibles_of_degree(&f4, d).count();
        let counted = count_irreducible(&f4, d as u32).unwrap();
        assert_eq!(BigUint::from(enumerated), counted, "q=4 d={d}");
    }
    let f9 = FieldDesc::of_order(9).unwrap();
    for d in 1..=2usize {
        let enumerated = irreducibles_of_degree(&f9, d).count();
        let counted = count_irreducible(&f9, d as u32).unwrap();
        assert_eq!(BigUint::from(enumerated), counted, "q=9 d={d}");
    }
    // Spot values: N_4(2) = (16 − 4)/2 and N_9(2) = (81 − 9)/2.
    assert_eq!(count_irreducible(&f4, 2).unwrap(), BigUint::from(6u32));
    assert_eq!(count_irreducible(&f9, 2).unwrap(), BigUint::from(36u32));
}

/// Cumulative irreducible counts are partial sums of the per-degree
/// counts, with the degree-one term dropped when requested.
#[test]
fn cumulative_counts_are_partial_sums() {
    for q in [2u64, 3, 5] {
        let mut all = BigUint::ZERO;
        for d in 1..=8u32 {
            all += count_irreducible_order(q, d).unwrap();
            assert_eq!(count_irreducible_upto(q, d, false).unwrap(), all, "q={q} d={d}");
            assert_eq!(
                count_irreducible_upto(q, d, true).unwrap(),
                &all - BigUint::from(q),
                "q={q} d={d} (from degree two)"
            );
        }
    }
}

/// A combined congruence satisfies every input congruence, is the unique
/// solution below the product degree, and does not depend on input order.
#[test]
fn chinese_remainder_solution_is_unique_and_order_free() {
    let field = FieldDesc::binary();
    let primes = irreducibles_up_to(&field, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(0x04c7);
    for _ in 0..200 {
        let k = rng.gen_range(2..=3usize);
        let mut chosen: Vec<Poly> = primes.choose_multiple(&mut rng, k).cloned().collect();
        // A repeated prime factor keeps the moduli coprime but exercises
        // the non-squarefree path.
        if rng.gen_bool(0.5) {
            let i = rng.gen_range(0..chosen.len());
            chosen[i] = chosen[i].mul(&chosen[i]).unwrap();
        }
        let pairs: Vec<(Poly, Poly)> = chosen
            .iter()
            .map(|m| (common::random_poly(&mut rng, &field, m.degree()), m.clone()))
            .collect();

        let (sol, modulus) = crt_combine(&pairs).unwrap();
        let mut product = Poly::one(&field);
        for (_, m) in &pairs {
            product = product.mul(m).unwrap();
        }
        assert_eq!(modulus, product);
        assert!(sol.is_zero() || sol.degree() < modulus.degree());
        for (r, m) in &pairs {
            assert_eq!(sol.rem(m).unwrap(), r.rem(m).unwrap(), "sol={sol} r={r} m={m}");
        }

        // Uniqueness, by counting solutions directly.
        let solutions = Poly::enumerate_degree_below(&field, modulus.degree())
            .filter(|g| pairs.iter().all(|(r, m)| g.rem(m).unwrap() == r.rem(m).unwrap()))
            .count();
        assert_eq!(solutions, 1);

        let mut shuffled = pairs.clone();
        shuffled.shuffle(&mut rng);
        assert_eq!(crt_combine(&shuffled).unwrap(), (sol, modulus));
    }
}

/// A random small system over F_2: one to three congruences with moduli of
/// degree at most three.
fn random_system(rng: &mut impl Rng, field: &FieldDesc) -> CongruenceSystem {
    let n_congs = rng.gen_range(1..=3usize);
    let mut congruences = Vec::with_capacity(n_congs);
    for _ in 0..n_congs {
        let d = rng.gen_range(1..=3usize);
        let moduli: Vec<Poly> = monic_polys_of_degree(field, d).collect();
        let modulus = moduli.choose(rng).unwrap().clone();
        let residue = common::random_poly(rng, field, d);
        congruences.push(Congruence::new(residue, modulus).unwrap());
    }
    CongruenceSystem::from_congruences(field, congruences).unwrap()
}

/// The exact completeness decision agrees with enumerating every residue
/// class below the lcm, and with the degree-truncated check at the lcm
/// degree; any witness class really is uncovered, and an upper density
/// below one forces incompleteness.
#[test]
fn exact_decision_agrees_with_enumeration() {
    let field = FieldDesc::binary();
    let mut rng = ChaCha8Rng::seed_from_u64(0xe84c7);
    let one = BigRational::from_integer(BigInt::from(1));
    for _ in 0..300 {
        let system = random_system(&mut rng, &field);
        let exact = system.covers_everything_exact(EXACT_CAP).unwrap();
        assert_eq!(exact.complete, common::oracle_complete(&system));
        assert_eq!(
            exact.complete,
            system.covers_all_below(system.lcm_of_moduli().degree()).unwrap()
        );
        match &exact.witness_class {
            Some((rep, lcm)) => {
                assert!(!exact.complete);
                assert_eq!(*lcm, system.lcm_of_moduli());
                assert!(!system.covers_point(rep).unwrap());
            }
            None => assert!(exact.complete),
        }
        if system.density_upper() < one {
            assert!(!exact.complete, "density < 1 must force incompleteness");
        }
    }
}

/// Degree-truncated coverage reports agree with the brute-force oracle:
/// same counts, same leading uncovered polynomials.
#[test]
fn coverage_reports_match_the_oracle() {
    let field = FieldDesc::binary();
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0f3);
    for _ in 0..150 {
        let system = random_system(&mut rng, &field);
        for n in 1..=4usize {
            let report = system.coverage_below(n).unwrap();
            let missed = common::oracle_uncovered_below(&system, n);
            assert_eq!(report.checked_count, BigUint::from(1u64 << n));
            assert_eq!(report.uncovered_count, BigUint::from(missed.len()));
            assert_eq!(
                report.covered_count,
                BigUint::from((1u64 << n) - missed.len() as u64)
            );
            assert_eq!(report.complete, missed.is_empty());
            let prefix: Vec<Poly> =
                missed.iter().take(DEFAULT_WITNESS_CAP).cloned().collect();
            assert_eq!(report.uncovered, prefix);
        }
    }
}

/// Both exchange inequalities stay strict over F_3 throughout their
/// parameter ranges (the coverage-bound sweep only exercises q = 2).
#[test]
fn exchange_steps_stay_strict_over_f3() {
    for d in 1..=6usize {
        for k1 in 1..=d as u64 {
            for k2 in k1..=d as u64 {
                if k2 + 1 >= d as u64 {
                    continue;
                }
                let check = exchange_step_check(3, d, k1, d, k2).unwrap();
                assert_eq!(check.same_degree, Some(true), "d={d} k1={k1} k2={k2}");
            }
        }
    }
    for d1 in 1..=6usize {
        for d2 in d1 + 1..=6usize {
            for k1 in 0..(d1 as u64).saturating_sub(1) {
                for k2 in 0..=d2 as u64 {
                    let check = exchange_step_check(3, d1, k1, d2, k2).unwrap();
                    assert_eq!(check.cross_degree, Some(true), "d1={d1} d2={d2} k1={k1} k2={k2}");
                }
            }
        }
    }
}

/// The n-congruence construction is sharp in the degree bound: it covers
/// everything of degree below n − 1 (indeed everything below n except one
/// target), yet never the whole ring.  So no bound smaller than n can
/// replace the hypothesis "covers all polynomials of degree below n".
#[test]
fn sharp_degree_bound_is_exact() {
    let field = FieldDesc::binary();
    for n in 2..=10usize {
        let target = Poly::x_pow(&field, n - 1);
        let sharp = build_sharp_system(n, &target).unwrap();
        assert!(sharp.system.covers_all_below(n - 1).unwrap(), "n={n}");
        assert!(!sharp.system.covers_all_below(n).unwrap(), "n={n}");
        let exact = sharp.system.covers_everything_exact(1 << n).unwrap();
        assert!(!exact.complete, "n={n}");
        assert_eq!(exact.witness_class, Some((target.clone(), Poly::x_pow(&field, n))));
    }
}

/// The product formula for intersecting residue-class sets with coprime
/// moduli agrees with direct enumeration, including empty sets; the
/// intersection is nonempty exactly when both sets are.
#[test]
fn class_intersection_count_matches_enumeration() {
    let field = FieldDesc::prime(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x15ec7);
    let random_class_set = |rng: &mut ChaCha8Rng, modulus: &Poly| {
        let residues: Vec<Poly> = Poly::enumerate_degree_below(&field, modulus.degree())
            .filter(|_| rng.gen_bool(0.4))
            .collect();
        ClassSet::new(modulus.clone(), residues).unwrap()
    };
    let mut checked = 0;
    while checked < 100 {
        let d1 = rng.gen_range(1..=2usize);
        let d2 = rng.gen_range(1..=2usize);
        let all1: Vec<Poly> = monic_polys_of_degree(&field, d1).collect();
        let all2: Vec<Poly> = monic_polys_of_degree(&field, d2).collect();
        let m1 = all1.choose(&mut rng).unwrap();
        let m2 = all2.choose(&mut rng).unwrap();
        if !m1.gcd(m2).unwrap().is_constant() {
            continue;
        }
        let a = random_class_set(&mut rng, m1);
        let b = random_class_set(&mut rng, m2);
        let expected = common::oracle_intersection(m1, a.residues(), m2, b.residues());
        assert_eq!(intersection_count(&a, &b).unwrap(), BigUint::from(expected));
        assert_eq!(expected > 0, a.count() > 0 && b.count() > 0);
        checked += 1;
    }
}

/// Normalization output always satisfies its own invariant checker, for a
/// fresh batch of generated near-covering systems.
#[test]
fn normalized_systems_pass_their_own_verifier() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2f0c);
    for i in 0..40 {
        let (system, n) = common::gen_premise_system(&mut rng);
        let normalized = normalize_system(&system, n, EXACT_CAP)
            .unwrap_or_else(|e| panic!("instance {i}: {e}"));
        normalized.verify(EXACT_CAP).unwrap_or_else(|e| panic!("instance {i}: {e}"));
    }
}

/// A polynomial of degree < 8 with entries reduced mod q.
fn poly_from_raw(field: &FieldDesc, raw: &[u64]) -> Poly {
    let coeffs: Vec<u64> = raw.iter().map(|c| c % field.order()).collect();
    Poly::from_ints(field, &coeffs)
}

proptest! {
    /// Printing and reparsing is the identity on polynomials over prime
    /// fields.
    #[test]
    fn printed_form_round_trips(
        q in prop_oneof![Just(2u64), Just(3), Just(5)],
        raw in prop::collection::vec(0u64..30, 0..8),
    ) {
        let field = FieldDesc::prime(q).unwrap();
        let p = poly_from_raw(&field, &raw);
        let back = Poly::parse(&field, &p.to_string()).unwrap();
        prop_assert_eq!(back, p);
    }

    /// Enumeration indices round-trip through the polynomial they name.
    #[test]
    fn enumeration_index_round_trips(
        q in prop_oneof![Just(2u64), Just(3), Just(5)],
        idx in 0u64..100_000,
    ) {
        let field = FieldDesc::prime(q).unwrap();
        let p = Poly::from_index(&field, &BigUint::from(idx));
        prop_assert_eq!(p.index(), BigUint::from(idx));
    }

    /// Addition and multiplication form a commutative ring.
    #[test]
    fn arithmetic_is_a_commutative_ring(
        a in prop::collection::vec(0u64..3, 0..7),
        b in prop::collection::vec(0u64..3, 0..7),
        c in prop::collection::vec(0u64..3, 0..7),
    ) {
        let field = FieldDesc::prime(3).unwrap();
        let (a, b, c) =
            (poly_from_raw(&field, &a), poly_from_raw(&field, &b), poly_from_raw(&field, &c));
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        let lhs = a.add(&b).unwrap().mul(&c).unwrap();
        let rhs = a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.sub(&a).unwrap(), Poly::zero(&field));
    }

    /// For any a and nonzero b: a = (a div b)·b + (a rem b).
    #[test]
    fn division_identity(
        a in prop::collection::vec(0u64..2, 0..10),
        b in prop::collection::vec(0u64..2, 0..10),
    ) {
        let field = FieldDesc::binary();
        let a = poly_from_raw(&field, &a);
        let b = poly_from_raw(&field, &b);
        prop_assume!(!b.is_zero());
        let (quot, rem) = a.divmod(&b).unwrap();
        prop_assert_eq!(quot.mul(&b).unwrap().add(&rem).unwrap(), a);
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
    }

    /// The extended gcd yields a common divisor and Bézout cofactors.
    #[test]
    fn bezout_identity_holds(
        a in prop::collection::vec(0u64..2, 0..10),
        b in prop::collection::vec(0u64..2, 0..10),
    ) {
        let field = FieldDesc::binary();
        let a = poly_from_raw(&field, &a);
        let b = poly_from_raw(&field, &b);
        prop_assume!(!a.is_zero() || !b.is_zero());
        let (g, u, v) = a.ext_gcd(&b).unwrap();
        prop_assert_eq!(&g, &a.gcd(&b).unwrap());
        prop_assert!(a.rem(&g).unwrap().is_zero());
        prop_assert!(b.rem(&g).unwrap().is_zero());
        let combo = u.mul(&a).unwrap().add(&v.mul(&b).unwrap()).unwrap();
        prop_assert_eq!(combo, g);
    }
}
