//! Exact integer number theory used by the counting and indexing code.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k.saturating_mul(k) <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

pub fn ensure_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn ensure_positive(n: u64, what: &'static str) -> Result<()> {
    if n == 0 {
        Err(Error::NonPositive(what))
    } else {
        Ok(())
    }
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs in ascending order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut k = 2u64;
    while k.saturating_mul(k) <= n {
        if n.is_multiple_of(k) {
            let mut e = 0;
            while n.is_multiple_of(k) {
                n /= k;
                e += 1;
            }
            out.push((k, e));
        }
        k += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The Möbius function.
pub fn mobius(n: u64) -> Result<i8> {
    ensure_positive(n, "n")?;
    let mut sign = 1i8;
    for (_, e) in factorize(n) {
        if e > 1 {
            return Ok(0);
        }
        sign = -sign;
    }
    Ok(sign)
}

/// The p-adic valuation of a positive integer.
pub fn vp(p: u64, n: u64) -> Result<u32> {
    ensure_prime(p)?;
    ensure_positive(n, "n")?;
    Ok(vp_unchecked(p, n))
}

pub(crate) fn vp_unchecked(p: u64, mut n: u64) -> u32 {
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    ensure_positive(n, "n")?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1u64;
    while k.saturating_mul(k) <= n {
        if n.is_multiple_of(k) {
            small.push(k);
            if k != n / k {
                large.push(n / k);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Membership in J_p, the positive integers prime to p.
pub fn in_jp(p: u64, m: u64) -> Result<bool> {
    ensure_prime(p)?;
    ensure_positive(m, "m")?;
    Ok(!m.is_multiple_of(p))
}

/// Writes a prime power `q` as `(p, f)` with `q = p^f`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, f)] => Some((*p, *f)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1), Ok(1));
        assert_eq!(mobius(6), Ok(1));
        assert_eq!(mobius(12), Ok(0));
        assert_eq!(mobius(30), Ok(-1));
        assert_eq!(mobius(0), Err(Error::NonPositive("n")));
    }

    #[test]
    fn vp_examples() {
        assert_eq!(vp(3, 18), Ok(2));
        assert_eq!(vp(3, 2), Ok(0));
        assert_eq!(vp(2, 8), Ok(3));
        assert_eq!(vp(4, 8), Err(Error::NotPrime(4)));
        assert!(vp(3, 0).is_err());
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(7).unwrap(), vec![1, 7]);
        assert_eq!(divisors(36).unwrap(), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
        assert!(divisors(0).is_err());
    }

    #[test]
    fn jp_examples() {
        assert_eq!(in_jp(3, 4), Ok(true));
        assert_eq!(in_jp(3, 9), Ok(false));
        assert_eq!(in_jp(2, 7), Ok(true));
        assert!(in_jp(6, 7).is_err());
    }

    #[test]
    fn mobius_sums_vanish() {
        for n in 1..=10_000u64 {
            let total: i64 = divisors(n)
                .unwrap()
                .into_iter()
                .map(|u| mobius(u).unwrap() as i64)
                .sum();
            assert_eq!(total, if n == 1 { 1 } else { 0 }, "n = {n}");
        }
    }

    #[test]
    fn divisors_match_trial_scan() {
        for n in 1..=500u64 {
            let brute: Vec<u64> = (1..=n).filter(|k| n % k == 0).collect();
            assert_eq!(divisors(n).unwrap(), brute);
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    proptest! {
        #[test]
        fn vp_is_additive(a in 1u64..=1_000_000, b in 1u64..=1_000_000, pi in 0usize..4) {
            let p = [2u64, 3, 5, 7][pi];
            prop_assert_eq!(vp(p, a * b).unwrap(), vp(p, a).unwrap() + vp(p, b).unwrap());
        }

        #[test]
        fn divisors_closed_under_complement(n in 1u64..=100_000) {
            let ds = divisors(n).unwrap();
            for &d in &ds {
                prop_assert!(ds.binary_search(&(n / d)).is_ok());
            }
        }
    }
}
