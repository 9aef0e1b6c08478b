//! Elements of the prime field F_p, for p in 64-bit range.

use super::primes::{is_prime, mul_mod, pow_mod};
use crate::error::{Error, Result};

/// An element of F_p with its modulus carried alongside.
///
/// The modulus is verified prime on construction via [`ResidueElem::new`];
/// arithmetic between elements of different moduli panics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueElem {
    value: u64,
    modulus: u64,
}

impl ResidueElem {
    pub fn new(value: i64, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        Ok(Self::reduce(value, p))
    }

    /// Reduce a signed integer mod a modulus already known to be prime.
    #[inline]
    pub fn reduce(value: i64, p: u64) -> Self {
        let v = value.rem_euclid(p as i64) as u64;
        ResidueElem { value: v, modulus: p }
    }

    #[inline]
    pub fn from_raw(value: u64, p: u64) -> Self {
        ResidueElem { value: value % p, modulus: p }
    }

    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    #[inline]
    fn check(self, rhs: Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        rhs
    }

    #[inline]
    pub fn add(self, rhs: Self) -> Self {
        let rhs = self.check(rhs);
        let mut v = self.value + rhs.value;
        if v >= self.modulus {
            v -= self.modulus;
        }
        ResidueElem { value: v, modulus: self.modulus }
    }

    #[inline]
    pub fn sub(self, rhs: Self) -> Self {
        let rhs = self.check(rhs);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.modulus - rhs.value
        };
        ResidueElem { value: v, modulus: self.modulus }
    }

    #[inline]
    pub fn mul(self, rhs: Self) -> Self {
        let rhs = self.check(rhs);
        ResidueElem {
            value: mul_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }

    #[inline]
    pub fn neg(self) -> Self {
        let v = if self.value == 0 { 0 } else { self.modulus - self.value };
        ResidueElem { value: v, modulus: self.modulus }
    }

    pub fn pow(self, e: u64) -> Self {
        ResidueElem {
            value: pow_mod(self.value, e, self.modulus),
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse; exists iff the value is nonzero.
    pub fn inv(self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::Domain("0 has no inverse".into()));
        }
        Ok(self.pow(self.modulus - 2))
    }
}

pub use super::primes::inv_mod_checked as inv_mod;

/// A square root of -1 in F_p, which exists iff p = 2 or p = 1 (mod 4).
pub fn sqrt_of_minus_one(p: u64) -> Option<u64> {
    if p == 2 {
        return Some(1);
    }
    if p % 4 != 1 {
        return None;
    }
    // g^((p-1)/4) works for any quadratic nonresidue g
    for g in 2..p {
        if pow_mod(g, (p - 1) / 2, p) == p - 1 {
            let i = pow_mod(g, (p - 1) / 4, p);
            debug_assert_eq!(mul_mod(i, i, p), p - 1);
            return Some(i);
        }
    }
    unreachable!("every prime has a nonresidue");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_modulus() {
        assert!(ResidueElem::new(1, 10).is_err());
    }

    #[test]
    fn field_ops() {
        let p = 101;
        let a = ResidueElem::new(-2, p).unwrap();
        assert_eq!(a.value(), 99);
        let b = ResidueElem::new(7, p).unwrap();
        assert_eq!(a.add(b).value(), 5);
        assert_eq!(a.mul(b).value(), (99 * 7) % 101);
        let inv = b.inv().unwrap();
        assert_eq!(b.mul(inv).value(), 1);
        assert!(ResidueElem::new(0, p).unwrap().inv().is_err());
    }

    #[test]
    fn imaginary_unit() {
        assert_eq!(sqrt_of_minus_one(7), None);
        let i = sqrt_of_minus_one(13).unwrap();
        assert_eq!(mul_mod(i, i, 13), 12);
        let i5 = sqrt_of_minus_one(5).unwrap();
        assert_eq!(mul_mod(i5, i5, 5), 4);
    }
}
