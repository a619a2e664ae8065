//! Chinese remainder theorem for polynomial congruences.

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Solve a system f ≡ rᵢ (mod mᵢ) with pairwise coprime moduli.
///
/// Returns the unique solution of degree below deg(Π mᵢ).  Moduli must be
/// nonconstant; the list must be nonempty.  Non-coprime moduli are
/// rejected rather than merged — callers in this crate always arrange
/// coprimality first.
pub fn crt_combine(congruences: &[(Poly, Poly)]) -> Result<(Poly, Poly)> {
    let Some(((r0, m0), rest)) = congruences.split_first() else {
        return Err(Error::EmptyCongruenceList);
    };
    if m0.is_constant() {
        return Err(Error::ConstantModulus);
    }
    let mut r = r0.rem(m0)?;
    let mut m = m0.make_monic();
    for (ri, mi) in rest {
        if mi.is_constant() {
            return Err(Error::ConstantModulus);
        }
        let (g, u, v) = m.ext_gcd(mi)?;
        if !g.is_constant() {
            return Err(Error::NonCoprimeModuli);
        }
        // r·(v·mᵢ) + rᵢ·(u·m) is ≡ r mod m and ≡ rᵢ mod mᵢ.
        let new_m = m.mul(mi)?.make_monic();
        let a = r.mul(&v.mul(mi)?)?;
        let b = ri.mul(&u.mul(&m)?)?;
        r = a.add(&b)?.rem(&new_m)?;
        m = new_m;
    }
    Ok((r, m))
}
