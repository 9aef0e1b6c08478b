//! Integers kept in factored form. The moduli assembled from determinant
//! products are astronomically large, so the factor map is the primary
//! representation and expansion is refused above a log threshold.

use super::primes::{factor_u64, is_prime};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use std::collections::BTreeMap;

/// Expansion threshold: log2 of the value must stay below this.
const EXPAND_LOG2_LIMIT: f64 = 1_000_000.0;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FactoredInteger {
    factors: BTreeMap<u64, u64>,
    truncated: bool,
}

impl FactoredInteger {
    pub fn one() -> Self {
        FactoredInteger::default()
    }

    pub fn from_u64(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("cannot factor 0".into()));
        }
        Ok(FactoredInteger { factors: factor_u64(n), truncated: false })
    }

    pub fn from_bigint(n: &BigInt) -> Result<Self> {
        let abs = n.abs();
        let Some(v) = abs.to_u64() else {
            return Err(Error::CapExceeded(format!(
                "factorization target exceeds 64 bits: {abs}"
            )));
        };
        Self::from_u64(v)
    }

    pub fn factors(&self) -> &BTreeMap<u64, u64> {
        &self.factors
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn mark_truncated(&mut self) {
        self.truncated = true;
    }

    pub fn push_prime(&mut self, p: u64, e: u64) {
        assert!(is_prime(p), "{p} is not prime");
        if e > 0 {
            *self.factors.entry(p).or_insert(0) += e;
        }
    }

    /// Multiply in another factored integer (exponents add).
    pub fn merge(&mut self, other: &FactoredInteger) {
        for (&p, &e) in &other.factors {
            *self.factors.entry(p).or_insert(0) += e;
        }
        self.truncated |= other.truncated;
    }

    pub fn max_prime(&self) -> Option<u64> {
        self.factors.keys().next_back().copied()
    }

    pub fn divides_prime(&self, p: u64) -> bool {
        self.factors.contains_key(&p)
    }

    /// Natural log of the represented value.
    pub fn ln(&self) -> f64 {
        self.factors
            .iter()
            .map(|(&p, &e)| e as f64 * (p as f64).ln())
            .sum()
    }

    pub fn log2(&self) -> f64 {
        self.ln() / std::f64::consts::LN_2
    }

    pub fn log10(&self) -> f64 {
        self.ln() / std::f64::consts::LN_10
    }

    /// Expand to a single integer; refused above the log threshold.
    pub fn to_bigint(&self) -> Result<BigInt> {
        if self.log2() >= EXPAND_LOG2_LIMIT {
            return Err(Error::CapExceeded(format!(
                "value has log2 = {:.3e}, expansion refused",
                self.log2()
            )));
        }
        let mut acc = BigInt::one();
        for (&p, &e) in &self.factors {
            acc *= BigInt::from(p).pow(e as u32);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_and_expand() {
        let mut a = FactoredInteger::from_u64(12).unwrap(); // 2^2 * 3
        let b = FactoredInteger::from_u64(18).unwrap(); // 2 * 3^2
        a.merge(&b);
        assert_eq!(a.to_bigint().unwrap(), BigInt::from(216));
        assert_eq!(a.max_prime(), Some(3));
        assert!((a.ln() - 216f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn rejects_nonprime_push() {
        let mut a = FactoredInteger::one();
        let r = std::panic::catch_unwind(move || a.push_prime(6, 1));
        assert!(r.is_err());
    }
}
