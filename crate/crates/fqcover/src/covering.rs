//! Congruence systems and exact coverage decision procedures.
//!
//! A congruence is a coset r + (f): the polynomial g satisfies it when
//! f | (g − r).  A system is an ordered list of congruences over one field;
//! it *covers* g when g satisfies at least one congruence.  Two deciders
//! are provided: an enumeration over all q^n polynomials of degree < n,
//! and an exact global decision working with residue classes modulo the
//! lcm of the moduli — membership in each coset depends only on the class
//! mod the lcm, so finitely many classes decide coverage of the whole ring.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::FieldDesc;
use crate::poly::Poly;

/// Number of uncovered witnesses a [`CoverageReport`] retains by default.
pub const DEFAULT_WITNESS_CAP: usize = 16;

/// Default ceiling on the number of residue classes
/// [`CongruenceSystem::covers_everything_exact`] will enumerate.
pub const DEFAULT_CLASS_CAP: u64 = 1 << 24;

/// One congruence g ≡ r (mod f): the coset r + (f).
///
/// Canonical form: f monic and nonconstant, r fully reduced mod f.  Unit
/// factors of the modulus do not change the ideal, so normalizing monic
/// loses nothing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    modulus: Poly,
    residue: Poly,
}

impl Congruence {
    /// Canonicalize a residue/modulus pair into a congruence.
    pub fn new(residue: Poly, modulus: Poly) -> Result<Self> {
        if modulus.field() != residue.field() {
            return Err(Error::FieldMismatch);
        }
        if modulus.is_constant() {
            return Err(Error::ConstantModulus);
        }
        let modulus = modulus.make_monic();
        let residue = residue.rem(&modulus)?;
        Ok(Congruence { modulus, residue })
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn residue(&self) -> &Poly {
        &self.residue
    }

    /// Whether g lies in the coset r + (f).
    pub fn covers(&self, g: &Poly) -> Result<bool> {
        g.sub(&self.residue)?.divisible_by(&self.modulus)
    }

    /// The density q^{−deg f} of the coset.
    pub fn density(&self) -> BigRational {
        let q = self.modulus.field().order_big();
        BigRational::new(1.into(), q.pow(self.modulus.degree() as u32).into())
    }
}

/// Outcome of enumerating all polynomials of degree below a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport {
    /// Number of polynomials examined (q^n).
    pub checked_count: BigUint,
    /// How many of them satisfied at least one congruence.
    pub covered_count: BigUint,
    /// How many did not.
    pub uncovered_count: BigUint,
    /// The first uncovered polynomials in enumeration order, truncated to
    /// the witness cap.
    pub uncovered: Vec<Poly>,
    /// Whether every examined polynomial was covered.
    pub complete: bool,
}

/// Outcome of the exact global coverage decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactCheck {
    /// Whether the system covers every polynomial in F_q[x].
    pub complete: bool,
    /// When incomplete: an entirely uncovered residue class (r, L), L the
    /// lcm of the moduli — every member of r + (L) is uncovered.
    pub witness_class: Option<(Poly, Poly)>,
}

/// An ordered list of congruences over a fixed field.
///
/// The list may be empty and may repeat congruences or moduli; repeats
/// count with multiplicity wherever congruences sharing a modulus are
/// counted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceSystem {
    field: FieldDesc,
    congruences: Vec<Congruence>,
}

impl CongruenceSystem {
    /// The empty system over a field (covers nothing).
    pub fn new(field: &FieldDesc) -> Self {
        CongruenceSystem { field: field.clone(), congruences: Vec::new() }
    }

    /// Build from parts, checking that every congruence is over `field`.
    pub fn from_congruences(field: &FieldDesc, congruences: Vec<Congruence>) -> Result<Self> {
        for c in &congruences {
            if c.modulus.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(CongruenceSystem { field: field.clone(), congruences })
    }

    pub fn push(&mut self, c: Congruence) -> Result<()> {
        if c.modulus.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        self.congruences.push(c);
        Ok(())
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn congruences(&self) -> &[Congruence] {
        &self.congruences
    }

    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    /// Whether g satisfies at least one congruence of the system.
    pub fn covers_point(&self, g: &Poly) -> Result<bool> {
        if g.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        for c in &self.congruences {
            if c.covers(g)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Enumerate all q^n polynomials of degree < n and report coverage,
    /// keeping at most [`DEFAULT_WITNESS_CAP`] uncovered witnesses.
    pub fn coverage_below(&self, n: usize) -> Result<CoverageReport> {
        self.coverage_below_with_cap(n, DEFAULT_WITNESS_CAP)
    }

    /// [`Self::coverage_below`] with an explicit witness cap.
    pub fn coverage_below_with_cap(&self, n: usize, witness_cap: usize) -> Result<CoverageReport> {
        if n == 0 {
            return Err(Error::InvalidParameter("degree bound must be positive".into()));
        }
        let mut covered = BigUint::zero();
        let mut uncovered_count = BigUint::zero();
        let mut uncovered = Vec::new();
        for g in Poly::enumerate_degree_below(&self.field, n) {
            if self.covers_point(&g)? {
                covered += 1u32;
            } else {
                uncovered_count += 1u32;
                if uncovered.len() < witness_cap {
                    uncovered.push(g);
                }
            }
        }
        let checked = self.field.order_big().pow(n as u32);
        Ok(CoverageReport {
            complete: covered == checked,
            checked_count: checked,
            covered_count: covered,
            uncovered_count,
            uncovered,
        })
    }

    /// Whether every polynomial of degree < n is covered (early exit on
    /// the first miss; equivalent to `coverage_below(n)?.complete`).
    pub fn covers_all_below(&self, n: usize) -> Result<bool> {
        if n == 0 {
            return Err(Error::InvalidParameter("degree bound must be positive".into()));
        }
        for g in Poly::enumerate_degree_below(&self.field, n) {
            if !self.covers_point(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The monic lcm of all moduli; 1 for the empty system.
    pub fn lcm_of_moduli(&self) -> Poly {
        let mut l = Poly::one(&self.field);
        for c in &self.congruences {
            let g = l.gcd(&c.modulus).expect("nonzero inputs");
            let (quot, _) = c.modulus.divmod(&g).expect("gcd divides");
            l = l.mul(&quot).expect("same field").make_monic();
        }
        l
    }

    /// Decide exactly whether the system covers all of F_q[x].
    ///
    /// Membership of g in the coset r + (f) depends only on g mod f, hence
    /// only on g mod L for L = lcm of the moduli.  It therefore suffices
    /// to test one representative of each of the q^{deg L} classes mod L,
    /// and an uncovered representative exhibits an entirely uncovered
    /// class.  The cap bounds the class count; exceeding it is an error,
    /// never silent truncation.
    pub fn covers_everything_exact(&self, cap: u64) -> Result<ExactCheck> {
        let l = self.lcm_of_moduli();
        let class_count = self.field.order_big().pow(l.degree() as u32);
        if class_count > BigUint::from(cap) {
            return Err(Error::CapExceeded { required: class_count, cap });
        }
        // deg L = 0 happens only for the empty system (L = 1): the single
        // class is the whole ring, and nothing is covered.
        if self.congruences.is_empty() {
            return Ok(ExactCheck {
                complete: false,
                witness_class: Some((Poly::zero(&self.field), l)),
            });
        }
        for rep in Poly::enumerate_degree_below(&self.field, l.degree()) {
            if !self.covers_point(&rep)? {
                return Ok(ExactCheck { complete: false, witness_class: Some((rep, l)) });
            }
        }
        Ok(ExactCheck { complete: true, witness_class: None })
    }

    /// The union bound Σ q^{−deg fᵢ} on the fraction of classes covered.
    /// A value below 1 proves the system incomplete; the converse fails.
    pub fn density_upper(&self) -> BigRational {
        let mut total = BigRational::zero();
        for c in &self.congruences {
            total += c.density();
        }
        total
    }
}

/// A set of distinct residue classes sharing one modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSet {
    modulus: Poly,
    residues: Vec<Poly>,
}

impl ClassSet {
    /// Canonicalize: monic nonconstant modulus, residues reduced,
    /// deduplicated, sorted by enumeration index.
    pub fn new(modulus: Poly, residues: Vec<Poly>) -> Result<Self> {
        if modulus.is_constant() {
            return Err(Error::ConstantModulus);
        }
        let modulus = modulus.make_monic();
        let mut reduced = Vec::with_capacity(residues.len());
        for r in &residues {
            if r.field() != modulus.field() {
                return Err(Error::FieldMismatch);
            }
            reduced.push(r.rem(&modulus)?);
        }
        reduced.sort();
        reduced.dedup();
        Ok(ClassSet { modulus, residues: reduced })
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// The distinct residues, reduced and sorted.
    pub fn residues(&self) -> &[Poly] {
        &self.residues
    }

    pub fn count(&self) -> usize {
        self.residues.len()
    }
}

/// Number of residue classes mod p·p′ lying in both class sets, for
/// coprime moduli p, p′.
///
/// Each pair (r, r′) determines exactly one class mod p·p′ by CRT and
/// distinct pairs give distinct classes, so the count is k·k′.  In
/// particular the intersection is nonempty whenever both sets are — two
/// nonempty class sets with coprime moduli can never be disjoint.
pub fn intersection_count(a: &ClassSet, b: &ClassSet) -> Result<BigUint> {
    if a.modulus.field() != b.modulus.field() {
        return Err(Error::FieldMismatch);
    }
    let g = a.modulus.gcd(&b.modulus)?;
    if !g.is_constant() {
        return Err(Error::NonCoprimeModuli);
    }
    Ok(BigUint::from(a.count()) * BigUint::from(b.count()))
}
