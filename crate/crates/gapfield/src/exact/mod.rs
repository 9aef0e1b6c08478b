//! Exact arithmetic substrate: primes, residues, integer matrices,
//! univariate polynomials, factored integers, fixed-point transcendentals.

pub mod factored;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod primes;
pub mod realnum;
pub mod residue;

pub use factored::FactoredInteger;
pub use field::{Field, PrimeField, Rationals};
pub use matrix::{independent_rows_mod_p, independent_rows_q, solve_rational, IntMatrix};
pub use poly::UniPoly;
pub use primes::{divisors_u64, factor_u64, is_prime, primes_in_range, primes_up_to};
pub use realnum::{exp_rational, ln_rational};
pub use residue::{sqrt_of_minus_one, ResidueElem};
