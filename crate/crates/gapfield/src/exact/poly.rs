//! Dense univariate polynomials over a [`Field`], with the distinct-root
//! counting used for variety cardinalities.
//!
//! Coefficients sit in ascending degree order; the vector is empty for zero
//! and otherwise ends in a nonzero coefficient.

use super::field::Field;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct UniPoly<F: Field> {
    pub field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for UniPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> UniPoly<F> {
    pub fn from_coeffs(field: F, coeffs: Vec<F::Elem>) -> Self {
        let mut p = UniPoly { field, coeffs };
        p.normalize();
        p
    }

    pub fn zero(field: F) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    fn normalize(&mut self) {
        while self
            .coeffs
            .last()
            .map_or(false, |c| self.field.is_zero(c))
        {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.field.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Self::from_coeffs(self.field.clone(), coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.field.sub(&self.coeff(i), &other.coeff(i)))
            .collect();
        Self::from_coeffs(self.field.clone(), coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field.clone());
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = self.field.mul(a, b);
                coeffs[i + j] = self.field.add(&coeffs[i + j], &prod);
            }
        }
        Self::from_coeffs(self.field.clone(), coeffs)
    }

    pub fn scale(&self, k: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.field.mul(c, k)).collect();
        Self::from_coeffs(self.field.clone(), coeffs)
    }

    /// Quotient and remainder; divisor must be nonzero.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let f = &self.field;
        let dlead_inv = f.inv(divisor.leading().unwrap());
        let ddeg = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); self.coeffs.len().saturating_sub(ddeg)];
        while rem.len() >= ddeg + 1 {
            let rdeg = rem.len() - 1;
            let lead = rem.last().unwrap().clone();
            if f.is_zero(&lead) {
                rem.pop();
                continue;
            }
            let factor = f.mul(&lead, &dlead_inv);
            let shift = rdeg - ddeg;
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                let sub = f.mul(&factor, dc);
                rem[shift + i] = f.sub(&rem[shift + i], &sub);
            }
            quot[shift] = factor;
            debug_assert!(f.is_zero(&rem[rdeg]));
            rem.pop();
        }
        (
            Self::from_coeffs(f.clone(), quot),
            Self::from_coeffs(f.clone(), rem),
        )
    }

    /// Monic gcd; gcd(0,0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if let Some(lead) = a.leading().cloned() {
            let inv = a.field.inv(&lead);
            a = a.scale(&inv);
        }
        a
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero(self.field.clone());
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.field.mul(&self.field.from_i64(i as i64), c))
            .collect();
        Self::from_coeffs(self.field.clone(), coeffs)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// In characteristic p, rewrite f(x) = g(x^p) as g. Only valid over the
    /// prime field, where Frobenius fixes every coefficient.
    fn deflate_char_p(&self) -> Self {
        let p = self.field.characteristic() as usize;
        debug_assert!(p > 0);
        debug_assert!(self
            .coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i % p == 0 || self.field.is_zero(c)));
        let coeffs = self.coeffs.iter().step_by(p).cloned().collect();
        Self::from_coeffs(self.field.clone(), coeffs)
    }

    /// Number of distinct roots in the algebraic closure: the degree of the
    /// radical, with full inseparability peeling in characteristic p.
    pub fn squarefree_degree(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::Domain("squarefree degree of zero polynomial".into()));
        }
        Ok(self.distinct_root_count())
    }

    fn distinct_root_count(&self) -> usize {
        let deg = self.degree().unwrap();
        if deg == 0 {
            return 0;
        }
        let deriv = self.derivative();
        if self.field.characteristic() > 0 && deriv.is_zero() {
            return self.deflate_char_p().distinct_root_count();
        }
        let g = self.gcd(&deriv);
        if g.degree() == Some(0) {
            return deg;
        }
        let (w, r) = self.divrem(&g);
        debug_assert!(r.is_zero());
        // strip the separable part from g, leaving factors with p | multiplicity
        let mut y = g;
        loop {
            let z = y.gcd(&w);
            if z.degree() == Some(0) {
                break;
            }
            let (q, r) = y.divrem(&z);
            debug_assert!(r.is_zero());
            y = q;
        }
        let tame = w.degree().unwrap();
        if y.degree() == Some(0) {
            tame
        } else {
            tame + y.distinct_root_count()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::{PrimeField, Rationals};
    use super::*;
    use num_rational::BigRational;

    fn qpoly(coeffs: &[i64]) -> UniPoly<Rationals> {
        UniPoly::from_coeffs(
            Rationals,
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    #[test]
    fn squarefree_degree_over_q() {
        // (x-1)^2 (x-2) = x^3 - 4x^2 + 5x - 2 has 2 distinct roots
        let f = qpoly(&[-2, 5, -4, 1]);
        assert_eq!(f.squarefree_degree().unwrap(), 2);
        assert!(qpoly(&[]).squarefree_degree().is_err());
    }

    #[test]
    fn squarefree_degree_mod_p() {
        let f5 = PrimeField::new(5).unwrap();
        // x^2 + 1 splits as (x-2)(x-3) mod 5
        let f = UniPoly::from_coeffs(f5, vec![1, 0, 1]);
        assert_eq!(f.squarefree_degree().unwrap(), 2);

        // x^5 - 2 = (x - 2^?)^5 is inseparable with a single root
        let mut coeffs = vec![0u64; 6];
        coeffs[0] = 3; // -2 mod 5
        coeffs[5] = 1;
        let g = UniPoly::from_coeffs(f5, coeffs);
        assert_eq!(g.squarefree_degree().unwrap(), 1);

        // (x^2+1)^5 * (x-1): 3 distinct roots
        let sq = UniPoly::from_coeffs(f5, vec![1, 0, 1]);
        let mut h = UniPoly::constant(f5, 1);
        for _ in 0..5 {
            h = h.mul(&sq);
        }
        let h = h.mul(&UniPoly::from_coeffs(f5, vec![4, 1]));
        assert_eq!(h.squarefree_degree().unwrap(), 3);
    }

    #[test]
    fn squarefree_degree_multiplicative() {
        // gcd(f,g)=1 implies counts add
        let f = qpoly(&[-1, 0, 1]); // (x-1)(x+1)
        let g = qpoly(&[-8, 12, -6, 1]); // (x-2)^3
        let fg = f.mul(&g);
        assert_eq!(
            fg.squarefree_degree().unwrap(),
            f.squarefree_degree().unwrap() + g.squarefree_degree().unwrap()
        );
    }

    #[test]
    fn divrem_gcd() {
        let f = qpoly(&[-2, 5, -4, 1]);
        let g = qpoly(&[-1, 1]);
        let (q, r) = f.divrem(&g);
        assert!(r.is_zero());
        assert_eq!(q.mul(&g), f);
        let d = f.gcd(&f.derivative());
        assert_eq!(d.degree(), Some(1));
    }
}
