//! Brute-force oracles and instance generators shared by the integration
//! suites.  The oracles recompute everything from first principles —
//! enumeration plus divisibility — so they trust only the raw polynomial
//! arithmetic, not the library routines they are checking.

#![allow(dead_code)] // each integration target uses its own subset

use fqcover::{Congruence, CongruenceSystem, FieldDesc, Poly};
use rand::seq::SliceRandom;
use rand::Rng;

/// Does any congruence's modulus divide g − r?  Direct re-check.
pub fn oracle_covers(system: &CongruenceSystem, g: &Poly) -> bool {
    system.congruences().iter().any(|c| {
        let diff = g.sub(c.residue()).unwrap();
        diff.rem(c.modulus()).unwrap().is_zero()
    })
}

/// All uncovered polynomials of degree < n, by full enumeration.
pub fn oracle_uncovered_below(system: &CongruenceSystem, n: usize) -> Vec<Poly> {
    Poly::enumerate_degree_below(system.field(), n)
        .filter(|g| !oracle_covers(system, g))
        .collect()
}

/// Global coverage decided from scratch: coverage of a polynomial depends
/// only on its class mod the lcm of the moduli, and the polynomials of
/// degree < deg(lcm) are exactly one representative per class.
pub fn oracle_complete(system: &CongruenceSystem) -> bool {
    if system.is_empty() {
        return false;
    }
    let lcm = system.lcm_of_moduli();
    Poly::enumerate_degree_below(system.field(), lcm.degree())
        .all(|g| oracle_covers(system, &g))
}

/// Exhaustive coset intersection count: how many classes mod m1·m2 lie in
/// some listed class mod m1 and some listed class mod m2.
pub fn oracle_intersection(
    m1: &Poly,
    set1: &[Poly],
    m2: &Poly,
    set2: &[Poly],
) -> u64 {
    let field = m1.field();
    let total_deg = m1.degree() + m2.degree();
    let mut count = 0u64;
    for g in Poly::enumerate_degree_below(field, total_deg) {
        let r1 = g.rem(m1).unwrap();
        let r2 = g.rem(m2).unwrap();
        if set1.contains(&r1) && set2.contains(&r2) {
            count += 1;
        }
    }
    count
}

/// The four irreducibles used as building blocks by the system generator:
/// x²+x+1, x³+x+1, x³+x²+1, x⁴+x+1.
pub fn generator_primes(field: &FieldDesc) -> Vec<Poly> {
    vec![
        Poly::from_ints(field, &[1, 1, 1]),
        Poly::from_ints(field, &[1, 1, 0, 1]),
        Poly::from_ints(field, &[1, 0, 1, 1]),
        Poly::from_ints(field, &[1, 1, 0, 0, 1]),
    ]
}

/// A random polynomial of degree < n (uniform over all q^n of them).
pub fn random_poly(rng: &mut impl Rng, field: &FieldDesc, n: usize) -> Poly {
    let q = field.order();
    let coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..q)).collect();
    Poly::from_ints(field, &coeffs)
}

/// Generate a system over F_2 that covers every polynomial of degree < n
/// (n ∈ {2, 3}) yet provably misses one, built from irreducible moduli
/// within their multiplicity budgets — then, for n = 2, optionally
/// roughened with a composite-modulus congruence or a squared-modulus
/// congruence that the normalization pass will have to flatten.  The lcm
/// of the moduli never exceeds degree 12.
pub fn gen_premise_system(rng: &mut impl Rng) -> (CongruenceSystem, usize) {
    let field = FieldDesc::binary();
    let n: usize = if rng.gen_bool(0.5) { 2 } else { 3 };
    // 0: irreducible moduli only; 1: add a composite congruence;
    // 2: add a squared-modulus congruence.  The degree-12 lcm budget
    // rules the extras out at n = 3 and the degree-4 prime out of the
    // squared variant.
    let variant: u8 = if n == 2 { rng.gen_range(0..3) } else { 0 };
    let all = generator_primes(&field);
    let primes: Vec<Poly> = match (n, variant) {
        (2, 0) | (2, 2) => all[..3].to_vec(),
        _ => all,
    };
    let budgets: Vec<usize> = primes.iter().map(|p| p.degree() - 1).collect();
    let mut used = vec![0usize; primes.len()];
    let mut congruences: Vec<Congruence> = Vec::new();

    // Greedy cover of the degree-< n points in random order.  The budget
    // capacity always suffices: each congruence covers at least one new
    // point, and the budgets sum to at least the point count.
    let mut points: Vec<Poly> = Poly::enumerate_degree_below(&field, n).collect();
    points.shuffle(rng);
    for pt in &points {
        let covered = congruences.iter().any(|c| c.covers(pt).unwrap());
        if covered {
            continue;
        }
        let avail: Vec<usize> =
            (0..primes.len()).filter(|&i| used[i] < budgets[i]).collect();
        let &i = avail.choose(rng).expect("budget capacity covers all points");
        congruences
            .push(Congruence::new(pt.rem(&primes[i]).unwrap(), primes[i].clone()).unwrap());
        used[i] += 1;
    }
    let base = CongruenceSystem::from_congruences(&field, congruences.clone()).unwrap();

    // The base misses something for sure — its densities sum below 1 —
    // and the extras below are built to keep this witness uncovered.
    let exact = base.covers_everything_exact(1 << 16).unwrap();
    let alpha = exact.witness_class.expect("generated bases never cover everything").0;

    match variant {
        1 => {
            // Composite extra: product of two primes that both have spare
            // multiplicity, so the flattening may land on either.  The
            // residue differs from the witness at both factors.
            let spare: Vec<usize> =
                (0..primes.len()).filter(|&i| used[i] < budgets[i]).collect();
            let picks: Vec<&usize> = spare.choose_multiple(rng, 2).collect();
            let (p1, p2) = (&primes[*picks[0]], &primes[*picks[1]]);
            let modulus = p1.mul(p2).unwrap();
            let residue = loop {
                let r = random_poly(rng, &field, modulus.degree());
                if r.rem(p1).unwrap() != alpha.rem(p1).unwrap()
                    && r.rem(p2).unwrap() != alpha.rem(p2).unwrap()
                {
                    break r;
                }
            };
            congruences.push(Congruence::new(residue, modulus).unwrap());
        }
        2 => {
            // Squared extra on the one prime with spare multiplicity.
            // Half the time the residue agrees with the witness at the
            // base prime (forcing the witness to move during
            // normalization), half the time it does not; either way it
            // must not agree modulo the square, which would cover the
            // witness.
            let spare: Vec<usize> =
                (0..primes.len()).filter(|&i| used[i] < budgets[i]).collect();
            let p = &primes[*spare.choose(rng).unwrap()];
            let square = p.pow(2);
            let residue = if rng.gen_bool(0.5) {
                loop {
                    let lift = random_poly(rng, &field, p.degree());
                    let r = alpha.rem(p).unwrap().add(&p.mul(&lift).unwrap()).unwrap();
                    if r.rem(&square).unwrap() != alpha.rem(&square).unwrap() {
                        break r;
                    }
                }
            } else {
                loop {
                    let r = random_poly(rng, &field, square.degree());
                    if r.rem(p).unwrap() != alpha.rem(p).unwrap() {
                        break r;
                    }
                }
            };
            congruences.push(Congruence::new(residue, square).unwrap());
        }
        _ => {}
    }

    (CongruenceSystem::from_congruences(&field, congruences).unwrap(), n)
}

/// A randomized residue-class counting sample: q ∈ {2, 3}, up to three
/// distinct irreducible moduli of degree ≤ min(4, n), each with a class
/// of k_i < min(d_i, q^{d_i}) distinct residues, at least one nonempty.
/// Returns (q, n, [(modulus, residues)]) sorted by modulus.
pub fn gen_bound_sample(rng: &mut impl Rng) -> (u64, usize, Vec<(Poly, Vec<Poly>)>) {
    let q: u64 = if rng.gen_bool(0.5) { 2 } else { 3 };
    let field = FieldDesc::prime(q).unwrap();
    let n: usize = rng.gen_range(2..=8);
    let dmax = 4.min(n);
    let pool = fqcover::irreducibles_up_to(&field, dmax);
    loop {
        let t = rng.gen_range(1..=3.min(pool.len()));
        let mut moduli: Vec<Poly> =
            pool.choose_multiple(rng, t).cloned().collect();
        moduli.sort();
        let mut groups: Vec<(Poly, Vec<Poly>)> = Vec::new();
        let mut total_k = 0u64;
        for m in moduli {
            let d = m.degree();
            let ceiling = (d as u64).min(field.order().pow(d as u32));
            let k = rng.gen_range(0..ceiling) as usize;
            total_k += k as u64;
            let mut residues: Vec<Poly> =
                Poly::enumerate_degree_below(&field, d).collect();
            residues.shuffle(rng);
            residues.truncate(k);
            groups.push((m, residues));
        }
        if total_k > 0 {
            return (q, n, groups);
        }
    }
}

/// Brute-force count of degree-< n polynomials avoiding every listed
/// residue class.
pub fn oracle_avoiding_count(
    field: &FieldDesc,
    n: usize,
    groups: &[(Poly, Vec<Poly>)],
) -> u64 {
    let mut count = 0u64;
    for g in Poly::enumerate_degree_below(field, n) {
        let avoided = groups
            .iter()
            .all(|(m, set)| !set.contains(&g.rem(m).unwrap()));
        if avoided {
            count += 1;
        }
    }
    count
}
