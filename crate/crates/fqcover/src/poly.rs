//! Polynomials over a finite field, with exact arithmetic and an
//! enumeration order.
//!
//! Coefficients are stored ascending (constant term first) with no trailing
//! zeros, so the zero polynomial is the empty vector.  Every polynomial
//! carries its field description; mixing fields is an error and the binary
//! operations check for it.
//!
//! Enumeration order is central to everything downstream: writing a
//! polynomial's coefficient indices as digits in base q (constant term =
//! least significant digit) gives a bijection with the natural numbers, and
//! "smallest polynomial with property P" always means smallest under this
//! index.  Degree increases with the index, so scanning indices 0, 1, 2, …
//! visits all polynomials of each degree before any of the next.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldDesc, FieldElem};

/// A polynomial over a finite field, coefficients ascending, normalized to
/// have no trailing zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldDesc,
    coeffs: Vec<FieldElem>,
}

impl Poly {
    /// The zero polynomial.
    pub fn zero(field: &FieldDesc) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one(field: &FieldDesc) -> Self {
        Poly { field: field.clone(), coeffs: vec![field.one()] }
    }

    /// The monomial x.
    pub fn x(field: &FieldDesc) -> Self {
        Poly { field: field.clone(), coeffs: vec![field.zero(), field.one()] }
    }

    /// The constant polynomial with the given field element.
    pub fn constant(field: &FieldDesc, c: FieldElem) -> Self {
        let coeffs = if field.is_zero(c) { Vec::new() } else { vec![c] };
        Poly { field: field.clone(), coeffs }
    }

    /// Build from ascending coefficients; trailing zeros are stripped.
    pub fn from_coeffs(field: &FieldDesc, coeffs: Vec<FieldElem>) -> Self {
        let mut p = Poly { field: field.clone(), coeffs };
        p.trim();
        p
    }

    /// Build from ascending integer coefficients, each mapped into the
    /// field via reduction mod p.  Convenient in tests over prime fields.
    pub fn from_ints(field: &FieldDesc, coeffs: &[u64]) -> Self {
        let coeffs = coeffs.iter().map(|&c| field.elem_from_int(c)).collect();
        Self::from_coeffs(field, coeffs)
    }

    /// The monomial x^k.
    pub fn x_pow(field: &FieldDesc, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = field.one();
        Poly { field: field.clone(), coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|&c| self.field.is_zero(c)).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    /// The coefficient field.
    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    /// Ascending coefficients, no trailing zeros.
    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// The coefficient of x^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> FieldElem {
        self.coeffs.get(k).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with deg 0 = 0 for the zero polynomial: every constant,
    /// including zero, has degree 0.  This is the convention under which
    /// "the polynomials of degree < n" form exactly q^n residues.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Whether the polynomial is a (possibly zero) constant.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> FieldElem {
        self.coeffs.last().copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map(|&c| c == self.field.one()).unwrap_or(false)
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.field.add(self.coeff(k), other.coeff(k)));
        }
        Ok(Poly::from_coeffs(&self.field, coeffs))
    }

    pub fn neg(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(|&c| self.field.neg(c)).collect();
        Poly { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let prod = self.field.mul(a, b);
                coeffs[i + j] = self.field.add(coeffs[i + j], prod);
            }
        }
        Ok(Poly::from_coeffs(&self.field, coeffs))
    }

    /// Multiply by a scalar.
    pub fn scale(&self, c: FieldElem) -> Poly {
        if self.field.is_zero(c) {
            return Poly::zero(&self.field);
        }
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        Poly { field: self.field.clone(), coeffs }
    }

    /// Euclidean division: self = q·d + r with deg r < deg d (or r = 0).
    pub fn divmod(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = self.clone();
        if r.coeffs.len() < d.coeffs.len() {
            return Ok((Poly::zero(&self.field), r));
        }
        let mut q = vec![self.field.zero(); r.coeffs.len() - d.coeffs.len() + 1];
        let lead_inv = self.field.inv(d.leading_coeff())?;
        while !r.is_zero() && r.coeffs.len() >= d.coeffs.len() {
            let shift = r.coeffs.len() - d.coeffs.len();
            let c = self.field.mul(r.leading_coeff(), lead_inv);
            q[shift] = c;
            for (i, &di) in d.coeffs.iter().enumerate() {
                let sub = self.field.mul(c, di);
                r.coeffs[shift + i] = self.field.sub(r.coeffs[shift + i], sub);
            }
            r.trim();
        }
        Ok((Poly::from_coeffs(&self.field, q), r))
    }

    /// The remainder of Euclidean division.
    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divmod(d)?.1)
    }

    /// Whether `d` divides `self` exactly.
    pub fn divisible_by(&self, d: &Poly) -> Result<bool> {
        Ok(self.rem(d)?.is_zero())
    }

    /// The monic associate (zero stays zero).
    pub fn make_monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading_coeff()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Monic greatest common divisor.  gcd(0, 0) is an error.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.make_monic())
    }

    /// Extended gcd: returns (g, u, v) with u·self + v·other = g, g monic.
    pub fn ext_gcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.check_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Poly::one(&self.field), Poly::zero(&self.field));
        let (mut v0, mut v1) = (Poly::zero(&self.field), Poly::one(&self.field));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let nu = u0.sub(&q.mul(&u1)?)?;
            let nv = v0.sub(&q.mul(&v1)?)?;
            (r0, r1) = (r1, r);
            (u0, u1) = (u1, nu);
            (v0, v1) = (v1, nv);
        }
        // Normalize so that g is monic.
        let lead = r0.leading_coeff();
        if lead != self.field.one() {
            let inv = self.field.inv(lead)?;
            r0 = r0.scale(inv);
            u0 = u0.scale(inv);
            v0 = v0.scale(inv);
        }
        Ok((r0, u0, v0))
    }

    /// Exponentiation by repeated squaring.
    pub fn pow(&self, mut n: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            n >>= 1;
        }
        acc
    }

    /// The enumeration index: coefficient indices read as base-q digits,
    /// constant term least significant.
    pub fn index(&self) -> BigUint {
        let q = self.field.order_big();
        let mut acc = BigUint::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * &q + BigUint::from(c.index());
        }
        acc
    }

    /// The polynomial with the given enumeration index.
    pub fn from_index(field: &FieldDesc, index: &BigUint) -> Poly {
        let q = field.order_big();
        let mut coeffs = Vec::new();
        let mut rest = index.clone();
        while !rest.is_zero() {
            let digit = (&rest % &q).to_u64().expect("digit < q ≤ u64::MAX");
            coeffs.push(field.elem(digit).expect("digit < q"));
            rest /= &q;
        }
        Poly { field: field.clone(), coeffs }
    }

    /// Convenience form of [`Poly::from_index`] for small indices.
    pub fn from_index_u64(field: &FieldDesc, index: u64) -> Poly {
        Self::from_index(field, &BigUint::from(index))
    }

    /// All q^n polynomials of degree < n (degree-0 convention: this
    /// includes every constant), in enumeration order.
    pub fn enumerate_degree_below(field: &FieldDesc, n: usize) -> impl Iterator<Item = Poly> {
        let field = field.clone();
        let total = field.order_big().pow(n as u32);
        let mut idx = BigUint::zero();
        std::iter::from_fn(move || {
            if idx < total {
                let p = Poly::from_index(&field, &idx);
                idx += 1u32;
                Some(p)
            } else {
                None
            }
        })
    }

    /// Parse text like `x^3+x+1` or `2*x^2+2` over a prime field.
    ///
    /// Terms are `c`, `x`, `x^k`, `c*x^k` (also `cx^k`), joined by `+` or
    /// `-`; whitespace is free.  Like terms accumulate.  Extension-field
    /// coefficients have no integer literals, so text input requires a
    /// prime field.
    pub fn parse(field: &FieldDesc, text: &str) -> Result<Poly> {
        if !field.is_prime_field() {
            return Err(Error::TextNeedsPrimeField);
        }
        let bytes = text.as_bytes();
        let mut pos = 0usize;
        let mut coeffs: Vec<FieldElem> = Vec::new();
        let mut any_term = false;

        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };

        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(Error::PolyParse { offset: pos, msg: "empty input".into() });
        }

        loop {
            skip_ws(&mut pos);
            // Sign (optional leading sign on the first term, required
            // separator afterwards).
            let mut negative = false;
            if pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
                negative = bytes[pos] == b'-';
                pos += 1;
                skip_ws(&mut pos);
            } else if any_term {
                return Err(Error::PolyParse {
                    offset: pos,
                    msg: "expected '+' or '-' between terms".into(),
                });
            }

            // Coefficient (optional when the variable follows).
            let digits_start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff: Option<u64> = if pos > digits_start {
                let s = &text[digits_start..pos];
                Some(s.parse().map_err(|_| Error::PolyParse {
                    offset: digits_start,
                    msg: format!("coefficient '{s}' does not fit in 64 bits"),
                })?)
            } else {
                None
            };

            skip_ws(&mut pos);
            if coeff.is_some() && pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                skip_ws(&mut pos);
            }

            // Variable part (optional when a coefficient was given).
            let power: usize = if pos < bytes.len() && bytes[pos] == b'x' {
                pos += 1;
                skip_ws(&mut pos);
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    let exp_start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if pos == exp_start {
                        return Err(Error::PolyParse {
                            offset: pos,
                            msg: "expected exponent after '^'".into(),
                        });
                    }
                    let s = &text[exp_start..pos];
                    s.parse().map_err(|_| Error::PolyParse {
                        offset: exp_start,
                        msg: format!("exponent '{s}' is too large"),
                    })?
                } else {
                    1
                }
            } else if coeff.is_none() {
                return Err(Error::PolyParse {
                    offset: pos,
                    msg: "expected a coefficient or 'x'".into(),
                });
            } else {
                0
            };

            let c = coeff.unwrap_or(1);
            let mut elem = field.elem_from_int(c);
            if negative {
                elem = field.neg(elem);
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, field.zero());
            }
            coeffs[power] = field.add(coeffs[power], elem);
            any_term = true;

            skip_ws(&mut pos);
            if pos == bytes.len() {
                break;
            }
            if bytes[pos] != b'+' && bytes[pos] != b'-' {
                return Err(Error::PolyParse {
                    offset: pos,
                    msg: format!("unexpected character '{}'", &text[pos..pos + 1]),
                });
            }
        }

        Ok(Poly::from_coeffs(field, coeffs))
    }
}

/// Order by enumeration index: first by coefficient length, then by
/// coefficients from the most significant down.  Comparing across fields
/// falls back to comparing the field descriptions so the order is total.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .order()
            .cmp(&other.field.order())
            .then_with(|| self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| {
                for (&a, &b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
                    match a.index().cmp(&b.index()) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    /// Descending powers, `+`-separated: `x^3+x+1`, `2*x^2+1`, `0`.
    /// In extension fields coefficients print as `{index}` since they have
    /// no canonical integer form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let is_one = c == self.field.one();
            let coeff_text = if self.field.is_prime_field() {
                c.index().to_string()
            } else {
                format!("{{{}}}", c.index())
            };
            match (k, is_one) {
                (0, _) => write!(f, "{coeff_text}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{coeff_text}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{coeff_text}*x^{k}")?,
            }
        }
        Ok(())
    }
}
