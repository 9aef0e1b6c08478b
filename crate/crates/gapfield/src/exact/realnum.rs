//! High-precision logarithm and exponential on exact rationals.
//!
//! Everything runs in fixed-point over BigInt at a caller-chosen decimal
//! scale, so results carry an absolute error below 10^-digits with no
//! floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn pow10(digits: u32) -> BigInt {
    BigInt::from(10u32).pow(digits)
}

/// Round a rational to the fixed-point grid of the given scale.
fn to_fixed(x: &BigRational, scale: &BigInt) -> BigInt {
    (x * BigRational::from_integer(scale.clone())).round().to_integer()
}

fn from_fixed(v: BigInt, scale: &BigInt) -> BigRational {
    BigRational::new(v, scale.clone())
}

/// ln at the given scale as a fixed-point integer, for x in [1, 2).
/// Uses ln y = 2 atanh((y-1)/(y+1)) with t < 1/3.
fn ln_reduced_fixed(y: &BigRational, scale: &BigInt) -> BigInt {
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    debug_assert!(*y >= one && *y < two);
    let t = (y - &one) / (y + &one);
    let t_fixed = to_fixed(&t, scale);
    let t2_fixed = &t_fixed * &t_fixed / scale;
    let mut acc = BigInt::zero();
    let mut power = t_fixed; // t^(2k+1) in fixed point
    let mut k = 0u32;
    while !power.is_zero() {
        acc += &power / BigInt::from(2 * k + 1);
        power = &power * &t2_fixed / scale;
        k += 1;
        debug_assert!(k < 10_000);
    }
    acc * 2
}

/// ln 2 at the given scale: ln 2 = 2 atanh(1/3).
fn ln2_fixed(scale: &BigInt) -> BigInt {
    let third = BigRational::new(BigInt::one(), BigInt::from(3));
    let t_fixed = to_fixed(&third, scale);
    let t2_fixed = &t_fixed * &t_fixed / scale;
    let mut acc = BigInt::zero();
    let mut power = t_fixed;
    let mut k = 0u32;
    while !power.is_zero() {
        acc += &power / BigInt::from(2 * k + 1);
        power = &power * &t2_fixed / scale;
        k += 1;
    }
    acc * 2
}

/// Natural log of a positive rational with absolute error below 10^-digits.
pub fn ln_rational(x: &BigRational, digits: u32) -> BigRational {
    assert!(x.is_positive(), "ln of non-positive value");
    let guard = digits + 10;
    let scale = pow10(guard);
    // pull out the power of two: x = 2^m * y, y in [1, 2)
    let mut m: i64 = x.numer().bits() as i64 - x.denom().bits() as i64;
    let two = BigRational::from_integer(2.into());
    let one = BigRational::one();
    let pow2 = |k: i64| -> BigRational {
        let p = BigRational::from_integer(BigInt::from(2u32).pow(k.unsigned_abs() as u32));
        if k >= 0 {
            p
        } else {
            p.recip()
        }
    };
    let mut y = x / pow2(m);
    while y >= two {
        y /= &two;
        m += 1;
    }
    while y < one {
        y *= &two;
        m -= 1;
    }
    let value = ln_reduced_fixed(&y, &scale) + BigInt::from(m) * ln2_fixed(&scale);
    round_to(from_fixed(value, &scale), digits)
}

/// e^x for a rational x with absolute error below 10^-digits
/// (for |x| up to a few thousand).
pub fn exp_rational(x: &BigRational, digits: u32) -> BigRational {
    let guard = digits + 15;
    let scale = pow10(guard);
    // range-reduce: x = k ln2 + r with |r| <= ln2/2
    let ln2 = from_fixed(ln2_fixed(&scale), &scale);
    let k_rat = x / &ln2;
    let k = k_rat.round().to_integer();
    let r = x - BigRational::from_integer(k.clone()) * &ln2;
    // Taylor on r
    let r_fixed = to_fixed(&r, &scale);
    let mut term = scale.clone(); // r^0 / 0! = 1
    let mut acc = BigInt::zero();
    let mut n = 1u32;
    while !term.is_zero() {
        acc += &term;
        term = &term * &r_fixed / &scale / BigInt::from(n);
        n += 1;
        debug_assert!(n < 10_000);
    }
    let base = from_fixed(acc, &scale);
    let k_i64 = k.to_i64().expect("exp range");
    let p = BigRational::from_integer(BigInt::from(2u32).pow(k_i64.unsigned_abs() as u32));
    let result = if k_i64 >= 0 { base * p } else { base / p };
    round_to(result, digits)
}

/// Snap to the 10^-digits grid so results are compact to print and compare.
fn round_to(x: BigRational, digits: u32) -> BigRational {
    let scale = pow10(digits);
    from_fixed(to_fixed(&x, &scale), &scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn ln_matches_f64() {
        for (n, d) in [(2i64, 1i64), (7, 1), (10007, 1), (1, 3), (355, 113)] {
            let x = rat(n, d);
            let got = ln_rational(&x, 40).to_f64().unwrap();
            let want = (n as f64 / d as f64).ln();
            assert!((got - want).abs() < 1e-12, "ln({n}/{d}): {got} vs {want}");
        }
    }

    #[test]
    fn ln_of_one_is_zero() {
        assert!(ln_rational(&BigRational::one(), 40).is_zero());
    }

    #[test]
    fn high_precision_ln2() {
        // ln 2 to 40 digits: 0.6931471805599453094172321214581765680755
        let got = ln_rational(&rat(2, 1), 40);
        let reference = BigRational::new(
            "6931471805599453094172321214581765680755".parse::<BigInt>().unwrap(),
            pow10(40),
        );
        let err = (got - reference).abs();
        assert!(err < BigRational::new(BigInt::one(), pow10(38)));
    }

    #[test]
    fn exp_matches_f64() {
        for (n, d) in [(1i64, 1i64), (-1, 1), (5, 2), (1, 1000), (13, 1)] {
            let x = rat(n, d);
            let got = exp_rational(&x, 40).to_f64().unwrap();
            let want = (n as f64 / d as f64).exp();
            assert!(
                (got - want).abs() / want.abs() < 1e-12,
                "exp({n}/{d}): {got} vs {want}"
            );
        }
    }

    #[test]
    fn exp_ln_round_trip() {
        let x = rat(17, 5);
        let back = exp_rational(&ln_rational(&x, 45), 45);
        let err = (&back - &x).abs();
        assert!(err < BigRational::new(BigInt::one(), pow10(35)));
    }
}
