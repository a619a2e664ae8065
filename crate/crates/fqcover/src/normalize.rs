//! Normalization of incomplete covering systems to irreducible moduli.
//!
//! Input: a system that covers every polynomial of degree < n yet provably
//! misses some polynomial.  Output: a system with the same two properties
//! whose moduli are all irreducible, each irreducible p of degree d
//! carrying fewer than d congruences.  Every transformation only enlarges
//! the individual cosets (a congruence mod f is weakened to a congruence
//! mod a divisor of f), so low-degree coverage survives by construction;
//! the work lies in keeping some polynomial provably uncovered, which may
//! force the tracked witness to move.
//!
//! The witness bookkeeping follows a three-stage plan:
//!
//! 1. Pick the witness α: the least member (enumeration order) of the
//!    first uncovered residue class mod the lcm of the moduli.
//! 2. Split every modulus with several prime-power factors down to one
//!    prime-power factor that still avoids α — one always exists, because
//!    a modulus all of whose prime-power parts matched α would cover α.
//! 3. Flatten prime powers p^λ (λ > 1) to p.  Congruences whose residue
//!    differs from α mod p flatten freely.  If any residue matches α
//!    mod p, flattening it would cover α, so the witness moves first: a
//!    residue r₀ mod p is chosen that no congruence at p uses and that
//!    differs from α mod p, and the new witness is the CRT solution
//!    g′ ≡ r₀ (mod p), g′ ≡ α (mod everything else).  When no such r₀
//!    exists the reduction is stuck and reports a distinct error rather
//!    than guessing.
//!
//! Each stage re-asserts that the current witness is uncovered, and the
//! final system is re-verified from scratch; any violation is reported as
//! a postcondition failure, never repaired silently.

use std::collections::BTreeMap;

use crate::covering::{Congruence, CongruenceSystem};
use crate::crt::crt_combine;
use crate::error::{Error, Result};
use crate::factor::{factor, is_irreducible};
use crate::poly::Poly;

/// A system with irreducible moduli, its uncovered witness, and the degree
/// bound below which it covers everything.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedSystem {
    /// The transformed system; every modulus is irreducible.
    pub system: CongruenceSystem,
    /// A polynomial the system provably does not cover.
    pub omitted: Poly,
    /// The system covers every polynomial of degree < degree_bound.
    pub degree_bound: usize,
}

impl NormalizedSystem {
    /// Re-verify the three structural conditions and the witness from
    /// scratch: (1) everything of degree < degree_bound is covered,
    /// (2) every modulus is irreducible, (3) each modulus of degree d
    /// occurs fewer than d times — and `omitted` is uncovered, so the
    /// system misses at least one polynomial.
    pub fn verify(&self, cap: u64) -> Result<()> {
        if !self.system.covers_all_below(self.degree_bound)? {
            return Err(Error::NormalizePostcondition(format!(
                "a polynomial of degree below {} is uncovered",
                self.degree_bound
            )));
        }
        let mut multiplicity: BTreeMap<&Poly, usize> = BTreeMap::new();
        for c in self.system.congruences() {
            if !is_irreducible(c.modulus())? {
                return Err(Error::NormalizePostcondition(format!(
                    "modulus {} is not irreducible",
                    c.modulus()
                )));
            }
            *multiplicity.entry(c.modulus()).or_default() += 1;
        }
        for (modulus, count) in multiplicity {
            if count >= modulus.degree() {
                return Err(Error::NormalizePostcondition(format!(
                    "modulus {modulus} of degree {} occurs {count} times",
                    modulus.degree()
                )));
            }
        }
        if self.system.covers_point(&self.omitted)? {
            return Err(Error::NormalizePostcondition(format!(
                "claimed witness {} is covered",
                self.omitted
            )));
        }
        // Redundant with the witness check, but cheap and independent:
        // the global decision procedure must agree the system is partial.
        if self.system.covers_everything_exact(cap)?.complete {
            return Err(Error::NormalizePostcondition(
                "system covers every polynomial".into(),
            ));
        }
        Ok(())
    }
}

/// The exponent λ when `f` = p^λ for the irreducible `p`, else `None`.
fn power_of(f: &Poly, p: &Poly) -> Option<u32> {
    let mut rest = f.clone();
    let mut exp = 0u32;
    while !rest.is_constant() {
        let (quot, rem) = rest.divmod(p).expect("nonzero divisor");
        if !rem.is_zero() {
            return None;
        }
        rest = quot;
        exp += 1;
    }
    (exp >= 1).then_some(exp)
}

/// Reduce an incomplete covering system to one with irreducible moduli.
///
/// Premises (both checked): the system covers every polynomial of degree
/// < n, and it does not cover all of F_q[x] (decided exactly within
/// `cap` residue classes).  The system's length is deliberately *not*
/// required to equal n — the transformation never uses it, and demanding
/// it would leave no valid inputs at all over F_2, where n congruences
/// covering all of degree < n already cover everything.
///
/// The result satisfies the [`NormalizedSystem`] conditions, re-verified
/// from scratch before returning; a verification failure (possible for
/// inputs whose congruences crowd a low-degree irreducible) is reported
/// as a distinct postcondition error.
pub fn normalize_system(
    system: &CongruenceSystem,
    n: usize,
    cap: u64,
) -> Result<NormalizedSystem> {
    // --- Premises -------------------------------------------------------
    if !system.covers_all_below(n)? {
        return Err(Error::NormalizePremise(format!(
            "system does not cover every polynomial of degree below {n}"
        )));
    }
    let exact = system.covers_everything_exact(cap)?;
    let Some((class_rep, _lcm)) = exact.witness_class else {
        return Err(Error::NormalizePremise(
            "system covers every polynomial, nothing is omitted".into(),
        ));
    };

    // --- Stage 1: the witness -------------------------------------------
    // Members of the class differ from the representative by a nonzero
    // multiple of the lcm, which has strictly larger degree, so the
    // representative is the least member in enumeration order.
    let mut alpha = class_rep;

    // --- Stage 2: one prime-power factor per congruence ------------------
    let mut congruences: Vec<Congruence> = Vec::with_capacity(system.len());
    for c in system.congruences() {
        let parts = factor(c.modulus())?;
        if parts.factors.len() == 1 && parts.factors[0].1 == 1 {
            congruences.push(c.clone());
            continue;
        }
        // Factors arrive sorted by (degree, index); take the first
        // prime-power part that still avoids the witness.
        let mut replaced = None;
        for (p, lambda) in &parts.factors {
            let pl = p.pow(*lambda);
            if alpha.rem(&pl)? != c.residue().rem(&pl)? {
                replaced = Some(Congruence::new(c.residue().clone(), pl)?);
                break;
            }
        }
        let Some(next) = replaced else {
            // Every prime-power part matching α means the full modulus
            // covers α, contradicting the checked premise.
            return Err(Error::NormalizePostcondition(format!(
                "congruence {} mod {} covers the witness {alpha}",
                c.residue(),
                c.modulus()
            )));
        };
        congruences.push(next);
    }
    let mut current = CongruenceSystem::from_congruences(system.field(), congruences)?;
    if current.covers_point(&alpha)? {
        return Err(Error::NormalizePostcondition(format!(
            "witness {alpha} became covered while splitting moduli"
        )));
    }

    // --- Stage 3: flatten prime powers to their base ----------------------
    // Bases that occur with exponent > 1, in (degree, index) order.
    let mut bases: Vec<Poly> = Vec::new();
    for c in current.congruences() {
        let parts = factor(c.modulus())?;
        let (p, lambda) = &parts.factors[0];
        if *lambda > 1 && !bases.contains(p) {
            bases.push(p.clone());
        }
    }
    bases.sort();

    for p in bases {
        let field = current.field().clone();
        let alpha_p = alpha.rem(&p)?;

        // Partition the current congruences relative to p.
        let mut at_base: Vec<Poly> = Vec::new(); // residues of modulus = p
        let mut matching: Vec<usize> = Vec::new(); // p^λ, λ>1, residue ≡ α (p)
        let mut differing: Vec<usize> = Vec::new(); // p^λ, λ>1, residue ≢ α (p)
        let mut others_lcm = Poly::one(&field);
        for (i, c) in current.congruences().iter().enumerate() {
            match power_of(c.modulus(), &p) {
                Some(1) => at_base.push(c.residue().clone()),
                Some(_) => {
                    if c.residue().rem(&p)? == alpha_p {
                        matching.push(i);
                    } else {
                        differing.push(i);
                    }
                }
                None => {
                    let g = others_lcm.gcd(c.modulus())?;
                    let (quot, _) = c.modulus().divmod(&g)?;
                    others_lcm = others_lcm.mul(&quot)?.make_monic();
                }
            }
        }
        if matching.is_empty() && differing.is_empty() {
            continue;
        }

        let mut rebuilt: Vec<Congruence> = current.congruences().to_vec();

        if !matching.is_empty() {
            // Flattening a matching congruence covers α, so relocate the
            // witness first: find a residue mod p that no congruence at p
            // will use and that differs from α's.
            let mut blocked: Vec<Poly> = at_base;
            for &i in &differing {
                blocked.push(current.congruences()[i].residue().rem(&p)?);
            }
            blocked.push(alpha_p.clone());
            let r0 = Poly::enumerate_degree_below(&field, p.degree())
                .find(|cand| !blocked.contains(cand));
            let Some(r0) = r0 else {
                return Err(Error::NormalizePostcondition(format!(
                    "no residue mod {p} is left for a relocated witness"
                )));
            };
            alpha = if others_lcm.is_constant() {
                r0
            } else {
                let alpha_m = alpha.rem(&others_lcm)?;
                crt_combine(&[(r0, p.clone()), (alpha_m, others_lcm)])?.0
            };
            for &i in &matching {
                rebuilt[i] = Congruence::new(alpha_p.clone(), p.clone())?;
            }
        }
        for &i in &differing {
            let r = current.congruences()[i].residue().rem(&p)?;
            rebuilt[i] = Congruence::new(r, p.clone())?;
        }

        current = CongruenceSystem::from_congruences(&field, rebuilt)?;
        if current.covers_point(&alpha)? {
            return Err(Error::NormalizePostcondition(format!(
                "witness {alpha} became covered while flattening powers of {p}"
            )));
        }
    }

    // --- Postconditions ---------------------------------------------------
    let normalized = NormalizedSystem { system: current, omitted: alpha, degree_bound: n };
    normalized.verify(cap)?;
    Ok(normalized)
}
