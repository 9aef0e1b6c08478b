//! Deterministic 64-bit primality, prime sieves and integer factorization.

use std::collections::BTreeMap;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc: u64 = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of a mod prime p; panics in debug builds if p | a.
#[inline]
pub fn inv_mod_checked(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "inverse of 0 mod {p}");
    pow_mod(a % p, p - 2, p)
}

/// Deterministic Miller-Rabin. The witness set covers all n < 2^64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let r = (n - 1).trailing_zeros();
    let d = (n - 1) >> r;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes p <= limit, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2usize;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| if b { Some(i as u64) } else { None })
        .collect()
}

/// Primes in (lo, hi], ascending.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    primes_up_to(hi).into_iter().filter(|&p| p > lo).collect()
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Pollard's rho (Brent cycle detection) for a nontrivial factor of odd composite n.
fn pollard_rho(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime(n) && n % 2 == 1);
    let mut c: u64 = 1;
    loop {
        let f = |x: u64| add_mod(mul_mod(x, x, n), c, n);
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Full factorization of n >= 1 as an ordered prime -> exponent map.
pub fn factor_u64(mut n: u64) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    if n <= 1 {
        return out;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        while n % p == 0 {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    out
}

/// All positive divisors of n, ascending.
pub fn divisors_u64(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (&p, &e) in &factor_u64(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for &d in &divs {
            let mut pe = 1u64;
            for _ in 0..=e {
                next.push(d * pe);
                pe = pe.saturating_mul(p);
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    divs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(is_prime(10007));
    }

    #[test]
    fn strong_pseudoprime_regression() {
        // strong pseudoprime to bases 2,3,5,7; equals 151 * 751 * 28351
        assert!(!is_prime(3_215_031_751));
        assert_eq!(
            factor_u64(3_215_031_751),
            BTreeMap::from([(151, 1), (751, 1), (28351, 1)])
        );
    }

    #[test]
    fn sieve_matches_miller_rabin() {
        let sieved = primes_up_to(6);
        assert_eq!(sieved, vec![2, 3, 5]);
        for n in 0..2000u64 {
            assert_eq!(primes_up_to(2000).contains(&n), is_prime(n), "n={n}");
        }
    }

    #[test]
    fn factor_round_trips() {
        for n in [1u64, 2, 12, 97, 2u64.pow(40) + 1, 600851475143] {
            let f = factor_u64(n);
            let back: u64 = f.iter().map(|(p, e)| p.pow(*e as u32)).product();
            if n >= 1 {
                assert_eq!(back.max(1), n.max(1));
            }
            for p in f.keys() {
                assert!(is_prime(*p));
            }
        }
    }

    #[test]
    fn divisors_of_twelve() {
        assert_eq!(divisors_u64(12), vec![1, 2, 3, 4, 6, 12]);
    }
}
