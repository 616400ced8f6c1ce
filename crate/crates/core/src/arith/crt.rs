use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// `x ≡ residue (mod modulus)` with `0 <= residue < modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    residue: BigUint,
    modulus: BigUint,
}

impl Congruence {
    /// Reduces `residue` (which may be negative) modulo `modulus >= 1`.
    pub fn new(residue: impl Into<BigInt>, modulus: impl Into<BigUint>) -> Result<Self> {
        let modulus = modulus.into();
        if modulus.is_zero() {
            return Err(Error::invalid("congruence modulus must be positive"));
        }
        let m = BigInt::from_biguint(Sign::Plus, modulus.clone());
        let r = residue.into().mod_floor(&m);
        Ok(Congruence {
            residue: r.to_biguint().expect("mod_floor by a positive modulus"),
            modulus,
        })
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub fn contains(&self, x: &BigUint) -> bool {
        x % &self.modulus == self.residue
    }

    /// `(residue, modulus)` if both fit in `u64`.
    pub fn to_u64_pair(&self) -> Option<(u64, u64)> {
        Some((
            u64::try_from(&self.residue).ok()?,
            u64::try_from(&self.modulus).ok()?,
        ))
    }

    /// Combines two congruences; `None` if they have no common solution.
    pub fn merge(&self, other: &Congruence) -> Option<Congruence> {
        let g = self.modulus.gcd(&other.modulus);
        let r1 = BigInt::from(self.residue.clone());
        let r2 = BigInt::from(other.residue.clone());
        let diff = &r2 - &r1;
        let g_int = BigInt::from(g.clone());
        if !diff.is_multiple_of(&g_int) {
            return None;
        }
        let m1 = BigInt::from(self.modulus.clone());
        let m2g = BigInt::from(&other.modulus / &g);
        let lcm = &m1 * &m2g;
        if m2g.is_one() {
            return Some(self.clone());
        }
        // m1/g · t ≡ diff/g (mod m2/g)
        let a = (&m1 / &g_int).mod_floor(&m2g);
        let inv = a.extended_gcd(&m2g).x.mod_floor(&m2g);
        let t = ((diff / &g_int) * inv).mod_floor(&m2g);
        let x = (r1 + m1 * t).mod_floor(&lcm);
        Some(Congruence {
            residue: x.to_biguint().expect("nonnegative"),
            modulus: lcm.to_biguint().expect("positive"),
        })
    }
}

/// Solves a system of congruences. Returns the unique class modulo the lcm
/// of all moduli, or `None` when the system is incompatible. An empty
/// system is the trivial class `0 mod 1`.
pub fn crt_solve(system: &[Congruence]) -> Option<Congruence> {
    let mut acc = Congruence {
        residue: BigUint::zero(),
        modulus: BigUint::one(),
    };
    for c in system {
        acc = acc.merge(c)?;
    }
    Some(acc)
}

/// 64-bit CRT merge of `(residue, modulus)` pairs. `Ok(None)` means
/// incompatible; `Err` means the lcm does not fit in `u64`.
pub fn crt_merge_u64(a: (u64, u64), b: (u64, u64)) -> Result<Option<(u64, u64)>> {
    let (r1, m1) = (a.0 % a.1, a.1);
    let (r2, m2) = (b.0 % b.1, b.1);
    let g = m1.gcd(&m2);
    let diff = r2 as i128 - r1 as i128;
    if diff % g as i128 != 0 {
        return Ok(None);
    }
    let m2g = m2 / g;
    let lcm = (m1 as u128) * (m2g as u128);
    if lcm > u64::MAX as u128 {
        return Err(Error::Overflow(format!("lcm({m1}, {m2})")));
    }
    if m2g == 1 {
        return Ok(Some((r1, m1)));
    }
    let a_red = ((m1 / g) % m2g) as i128;
    let inv = (a_red.extended_gcd(&(m2g as i128)).x).mod_floor(&(m2g as i128));
    let t = ((diff / g as i128).mod_floor(&(m2g as i128)) * inv).mod_floor(&(m2g as i128));
    let x = (r1 as u128 + m1 as u128 * t as u128) % lcm;
    Ok(Some((x as u64, lcm as u64)))
}
