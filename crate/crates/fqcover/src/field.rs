//! Finite field descriptions and element arithmetic.
//!
//! A [`FieldDesc`] fixes a field F_q with q = p^e.  Prime fields hold their
//! elements as residues mod p; extension fields represent elements in the
//! polynomial basis over F_p, reduced by a monic irreducible modulus of
//! degree e.  Elements are stored by their index in `0..q`, where the index
//! encodes the basis coefficients in base p (least significant first).  The
//! fields involved in coverage work are tiny, so all arithmetic is computed
//! directly rather than through tables.

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// One element of a finite field, identified by its index in `0..q`.
///
/// For a prime field the index is the residue itself.  For an extension
/// field of degree e the index digits in base p are the coefficients of the
/// element in the polynomial basis, constant coefficient first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(u64);

impl FieldElem {
    /// The element's index in `0..q` (enumeration order).
    pub fn index(self) -> u64 {
        self.0
    }
}

/// Description of a finite field F_q with q = p^e.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldDesc {
    p: u64,
    e: u32,
    q: u64,
    /// Monic irreducible modulus over F_p, coefficients ascending, length
    /// e + 1.  Present exactly when e > 1.
    ext: Option<Vec<u64>>,
}

impl FieldDesc {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldDesc { p, e: 1, q: p, ext: None })
    }

    /// The field F_2, the most common case in coverage work.
    pub fn binary() -> Self {
        FieldDesc { p: 2, e: 1, q: 2, ext: None }
    }

    /// The extension field F_{p^e}, using the first irreducible polynomial
    /// of degree e over F_p in enumeration order as the defining modulus.
    pub fn extension(p: u64, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidParameter("extension degree must be positive".into()));
        }
        if e == 1 {
            return Self::prime(p);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = checked_pow(p, e).ok_or(Error::OrderTooLarge { p, e })?;
        let ext = first_irreducible(p, e);
        Ok(FieldDesc { p, e, q, ext: Some(ext) })
    }

    /// The extension field F_{p^e} with an explicitly chosen defining
    /// modulus (coefficients ascending over F_p, monic, degree e ⩾ 2).
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 3 {
            return Err(Error::BadExtensionModulus("degree must be at least 2".into()));
        }
        let e = (modulus.len() - 1) as u32;
        let q = checked_pow(p, e).ok_or(Error::OrderTooLarge { p, e })?;
        let m: Vec<u64> = modulus.iter().map(|&c| c % p).collect();
        if *m.last().unwrap() != 1 {
            return Err(Error::BadExtensionModulus("modulus must be monic".into()));
        }
        if !base_irreducible(p, &m) {
            return Err(Error::BadExtensionModulus("modulus is reducible".into()));
        }
        Ok(FieldDesc { p, e, q, ext: Some(m) })
    }

    /// A field of the given order, if it is a prime power.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, e) = prime_power_parts(q)
            .ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
        Self::extension(p, e)
    }

    /// The characteristic p.
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// The extension degree e (1 for prime fields).
    pub fn extension_degree(&self) -> u32 {
        self.e
    }

    /// The field order q = p^e.
    pub fn order(&self) -> u64 {
        self.q
    }

    /// The field order as a big integer.
    pub fn order_big(&self) -> BigUint {
        BigUint::from(self.q)
    }

    /// Whether this is a prime field (e = 1).
    pub fn is_prime_field(&self) -> bool {
        self.e == 1
    }

    /// Coefficients of the defining modulus for extension fields.
    pub fn ext_modulus_coeffs(&self) -> Option<&[u64]> {
        self.ext.as_deref()
    }

    /// The zero element.
    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    /// The unit element.
    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    /// The element with the given index.
    pub fn elem(&self, index: u64) -> Result<FieldElem> {
        if index < self.q {
            Ok(FieldElem(index))
        } else {
            Err(Error::ElementOutOfRange { value: index, order: self.q })
        }
    }

    /// The image of an integer under the canonical map Z → F_q
    /// (reduction mod p, embedded as a constant).
    pub fn elem_from_int(&self, value: u64) -> FieldElem {
        FieldElem(value % self.p)
    }

    /// Basis coefficients of an element, length e, entries in `[0, p)`.
    pub fn elem_coeffs(&self, a: FieldElem) -> Vec<u64> {
        let mut idx = a.0;
        let mut out = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            out.push(idx % self.p);
            idx /= self.p;
        }
        out
    }

    /// The element with the given basis coefficients (length e, reduced).
    pub fn elem_from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() != self.e as usize {
            return Err(Error::InvalidParameter(format!(
                "expected {} coefficients, got {}",
                self.e,
                coeffs.len()
            )));
        }
        let mut idx = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= self.p {
                return Err(Error::ElementOutOfRange { value: c, order: self.p });
            }
            idx = idx * self.p + c;
        }
        Ok(FieldElem(idx))
    }

    /// All q elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    pub fn is_zero(&self, a: FieldElem) -> bool {
        a.0 == 0
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.e == 1 {
            FieldElem((a.0 + b.0) % self.p)
        } else {
            let (mut x, y) = (self.elem_coeffs(a), self.elem_coeffs(b));
            for (xi, yi) in x.iter_mut().zip(y) {
                *xi = (*xi + yi) % self.p;
            }
            self.elem_from_coeffs(&x).unwrap()
        }
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.e == 1 {
            FieldElem(if a.0 == 0 { 0 } else { self.p - a.0 })
        } else {
            let mut x = self.elem_coeffs(a);
            for xi in x.iter_mut() {
                *xi = (self.p - *xi) % self.p;
            }
            self.elem_from_coeffs(&x).unwrap()
        }
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.e == 1 {
            // p < 2^32 is guaranteed for any prime field we construct with
            // e = 1 used in practice; widen anyway to stay correct.
            FieldElem(mulmod(a.0, b.0, self.p))
        } else {
            let (x, y) = (self.elem_coeffs(a), self.elem_coeffs(b));
            let prod = base_mul(self.p, &x, &y);
            let red = base_rem(self.p, &prod, self.ext.as_ref().unwrap());
            let mut padded = red;
            padded.resize(self.e as usize, 0);
            self.elem_from_coeffs(&padded).unwrap()
        }
    }

    /// Multiplicative inverse.  Fails on zero.
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.e == 1 {
            Ok(FieldElem(invmod(a.0, self.p)))
        } else {
            // Extended Euclid over F_p[y] against the defining modulus.
            let x = trim(self.elem_coeffs(a));
            let (g, u, _) = base_ext_gcd(self.p, &x, self.ext.as_ref().unwrap());
            debug_assert_eq!(g.len(), 1, "defining modulus must be irreducible");
            let ginv = invmod(g[0], self.p);
            let mut u: Vec<u64> = u.iter().map(|&c| mulmod(c, ginv, self.p)).collect();
            u = base_rem(self.p, &u, self.ext.as_ref().unwrap());
            u.resize(self.e as usize, 0);
            Ok(self.elem_from_coeffs(&u).unwrap())
        }
    }
}

/// Deterministic primality test by trial division; the fields used in
/// coverage computations are far below any range where this matters.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d: u64 = 3;
    while d.checked_mul(d).map(|sq| sq <= n).unwrap_or(false) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Decompose a prime power q = p^e; `None` if q is not one.
pub fn prime_power_parts(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            return if rest == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

fn checked_pow(p: u64, e: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn invmod(a: u64, p: u64) -> u64 {
    // Extended Euclid on integers; p is prime and a ≢ 0.
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    (t0.rem_euclid(p as i128)) as u64
}

// ---------------------------------------------------------------------------
// Small polynomial arithmetic over F_p on raw coefficient vectors, used only
// to realize extension-field element operations.  Coefficients ascending;
// the zero polynomial is the empty vector.
// ---------------------------------------------------------------------------

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn base_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (a, b) = (trim(a.to_vec()), trim(b.to_vec()));
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

fn base_rem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let m = trim(m.to_vec());
    assert!(!m.is_empty(), "zero modulus");
    let lead_inv = invmod(*m.last().unwrap(), p);
    while r.len() >= m.len() {
        let shift = r.len() - m.len();
        let c = mulmod(*r.last().unwrap(), lead_inv, p);
        for (i, &mi) in m.iter().enumerate() {
            let sub = mulmod(c, mi, p);
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

/// Extended gcd over F_p[y]: returns (g, u, v) with u·a + v·b = g.
fn base_ext_gcd(p: u64, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut u0, mut u1) = (vec![1u64], Vec::new());
    let (mut v0, mut v1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = base_divmod(p, &r0, &r1);
        let nu = base_sub(p, &u0, &base_mul(p, &q, &u1));
        let nv = base_sub(p, &v0, &base_mul(p, &q, &v1));
        (r0, r1) = (r1, r);
        (u0, u1) = (u1, nu);
        (v0, v1) = (v1, nv);
    }
    (r0, u0, v0)
}

fn base_sub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), 0);
    }
    for (i, &bi) in b.iter().enumerate() {
        out[i] = (out[i] + p - bi) % p;
    }
    trim(out)
}

fn base_divmod(p: u64, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - b.len() + 1];
    let lead_inv = invmod(*b.last().unwrap(), p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = mulmod(*r.last().unwrap(), lead_inv, p);
        q[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            let sub = mulmod(c, bi, p);
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

/// Irreducibility over F_p by trial division against all monic polynomials
/// of degree up to half the degree of `f`.
fn base_irreducible(p: u64, f: &[u64]) -> bool {
    let f = trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        // Monic divisor candidates of degree d: iterate lower coefficients.
        let count = checked_pow(p, d as u32).expect("tiny degree");
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                g.push(rest % p);
                rest /= p;
            }
            g.push(1);
            if base_rem(p, &f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The first monic irreducible of degree e over F_p in enumeration order.
fn first_irreducible(p: u64, e: u32) -> Vec<u64> {
    let count = checked_pow(p, e).expect("order already validated");
    for idx in 0..count {
        let mut g = Vec::with_capacity(e as usize + 1);
        let mut rest = idx;
        for _ in 0..e {
            g.push(rest % p);
            rest /= p;
        }
        g.push(1);
        if base_irreducible(p, &g) {
            return g;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
