//! Number-theoretic helpers: prime-power factorization, the greatest prime
//! power `P(n)` dividing `n`, and the sequence `a_n` of products of maximal
//! prime powers not exceeding `n`.
//!
//! Everything is exact integer arithmetic. In particular, "largest power of
//! `p` not exceeding `n`" is computed by a multiplication loop, never with
//! floating-point logarithms, which misround at exact powers.
//!
//! A trial-division sieve is built once (to [`SIEVE_LIMIT`]) and shared
//! read-only; all functions here are pure and freely concurrent.

use std::sync::OnceLock;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Default sieve bound. Trial division by the sieved primes certifies
/// factorizations up to the square of this limit.
pub const SIEVE_LIMIT: u64 = 1_000_000;

/// One maximal prime power `p^alpha` exactly dividing some n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePower {
    pub prime: u64,
    pub alpha: u32,
    pub value: u64,
}

/// The prime-power decomposition of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    prime_powers: Vec<PrimePower>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn prime_powers(&self) -> &[PrimePower] {
        &self.prime_powers
    }

    /// Re-multiply the prime powers; always equals `n`.
    pub fn product(&self) -> u64 {
        self.prime_powers.iter().map(|pp| pp.value).product()
    }
}

struct Sieve {
    primes: Vec<u64>,
    /// smallest prime factor for every n < SIEVE_LIMIT (0, 1 map to 0)
    spf: Vec<u32>,
}

fn sieve() -> &'static Sieve {
    static SIEVE: OnceLock<Sieve> = OnceLock::new();
    SIEVE.get_or_init(|| {
        let limit = SIEVE_LIMIT as usize;
        let mut spf = vec![0u32; limit];
        let mut primes = Vec::new();
        for i in 2..limit {
            if spf[i] == 0 {
                primes.push(i as u64);
                let mut j = i;
                while j < limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        Sieve { primes, spf }
    })
}

/// Factor `n >= 1` into maximal prime powers.
///
/// Uses the smallest-prime-factor table below the sieve limit and trial
/// division by sieved primes above it, which certifies results up to
/// `SIEVE_LIMIT^2`; larger inputs that retain an uncertified cofactor are
/// rejected rather than guessed.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let s = sieve();
    let mut prime_powers = Vec::new();
    let mut rest = n;
    if rest < SIEVE_LIMIT {
        while rest > 1 {
            let p = s.spf[rest as usize] as u64;
            let mut alpha = 0u32;
            let mut value = 1u64;
            while rest % p == 0 {
                rest /= p;
                alpha += 1;
                value *= p;
            }
            prime_powers.push(PrimePower { prime: p, alpha, value });
        }
    } else {
        for &p in &s.primes {
            if p * p > rest {
                break;
            }
            if rest % p == 0 {
                let mut alpha = 0u32;
                let mut value = 1u64;
                while rest % p == 0 {
                    rest /= p;
                    alpha += 1;
                    value *= p;
                }
                prime_powers.push(PrimePower { prime: p, alpha, value });
            }
        }
        if rest > 1 {
            if rest < SIEVE_LIMIT * SIEVE_LIMIT {
                // No sieved prime divides it, so the cofactor is prime.
                prime_powers.push(PrimePower {
                    prime: rest,
                    alpha: 1,
                    value: rest,
                });
            } else {
                return Err(Error::FactorizationOutOfRange {
                    n,
                    limit: SIEVE_LIMIT,
                });
            }
        }
        prime_powers.sort_by_key(|pp| pp.prime);
    }
    Ok(Factorization { n, prime_powers })
}

/// `P(n)`: the greatest prime power dividing `n`, with `P(1) = 1`.
pub fn greatest_prime_power(n: u64) -> Result<u64> {
    let fact = factorize(n)?;
    Ok(fact
        .prime_powers()
        .iter()
        .map(|pp| pp.value)
        .max()
        .unwrap_or(1))
}

/// True when `n` is 1 or a power of a single prime.
pub fn is_prime_power_or_one(n: u64) -> bool {
    match factorize(n) {
        Ok(f) => f.prime_powers().len() <= 1,
        Err(_) => false,
    }
}

/// Largest power of `p` not exceeding `n`, by exact multiplication.
fn max_power_leq(p: u64, n: u64) -> u64 {
    let mut pow = p;
    while let Some(next) = pow.checked_mul(p) {
        if next > n {
            break;
        }
        pow = next;
    }
    pow
}

/// `a_n`: the product over all primes `p <= n` of the largest power of `p`
/// not exceeding `n` (equivalently `lcm(1, ..., n)`). Grows exponentially,
/// hence the big-integer result.
pub fn a_sequence(n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    if n >= SIEVE_LIMIT {
        return Err(Error::FactorizationOutOfRange {
            n,
            limit: SIEVE_LIMIT,
        });
    }
    let s = sieve();
    let mut a = BigUint::from(1u32);
    for &p in &s.primes {
        if p > n {
            break;
        }
        a *= BigUint::from(max_power_leq(p, n));
    }
    Ok(a)
}

/// Decide `P(n) > threshold` without a full factorization: strip every prime
/// `p <= threshold` from `n`; the claim holds iff a stripped prime power
/// exceeds the threshold or a cofactor `> 1` remains (its prime factors all
/// exceed the threshold).
pub fn greatest_prime_power_exceeds(n: u128, threshold: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let s = sieve();
    let mut rest = n;
    for &p in &s.primes {
        if p > threshold {
            break;
        }
        let p128 = p as u128;
        if rest % p128 == 0 {
            let mut value: u128 = 1;
            while rest % p128 == 0 {
                rest /= p128;
                value *= p128;
            }
            if value > threshold as u128 {
                return Ok(true);
            }
        }
    }
    Ok(rest > 1)
}

/// The escape property: `(n <= a_N) or (P(n) > N)`. The theory says this is
/// always true; it is exposed as a checkable claim rather than assumed.
pub fn verify_escape_property(n_threshold: u64, n: u128) -> Result<bool> {
    if n_threshold == 0 || n == 0 {
        return Err(Error::ZeroArgument);
    }
    let a = a_sequence(n_threshold)?;
    match u128::try_from(&a) {
        Ok(a128) if n <= a128 => return Ok(true),
        Ok(_) => {}
        // a_N does not fit in 128 bits, so n <= a_N for any u128 input.
        Err(_) => return Ok(true),
    }
    greatest_prime_power_exceeds(n, n_threshold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    #[test]
    fn factorize_small() {
        let f = factorize(12).unwrap();
        assert_eq!(
            f.prime_powers(),
            &[
                PrimePower { prime: 2, alpha: 2, value: 4 },
                PrimePower { prime: 3, alpha: 1, value: 3 },
            ]
        );
        assert_eq!(f.product(), 12);
        assert!(factorize(1).unwrap().prime_powers().is_empty());
        assert!(factorize(0).is_err());
    }

    #[test]
    fn factorize_above_sieve_limit() {
        // 1_000_003 is prime and above the sieve bound.
        let f = factorize(1_000_003).unwrap();
        assert_eq!(f.prime_powers().len(), 1);
        assert_eq!(f.prime_powers()[0].prime, 1_000_003);
        let g = factorize(2 * 1_000_003).unwrap();
        assert_eq!(g.product(), 2 * 1_000_003);
    }

    #[test]
    fn greatest_prime_power_examples() {
        assert_eq!(greatest_prime_power(1).unwrap(), 1);
        assert_eq!(greatest_prime_power(12).unwrap(), 4);
        assert_eq!(greatest_prime_power(8).unwrap(), 8);
        assert_eq!(greatest_prime_power(6).unwrap(), 3);
        assert_eq!(greatest_prime_power(360).unwrap(), 9);
        assert!(greatest_prime_power(0).is_err());
    }

    #[test]
    fn a_sequence_examples() {
        assert_eq!(a_sequence(1).unwrap(), BigUint::from(1u32));
        assert_eq!(a_sequence(3).unwrap(), BigUint::from(6u32));
        assert_eq!(a_sequence(5).unwrap(), BigUint::from(60u32));
        assert_eq!(a_sequence(4).unwrap(), BigUint::from(12u32));
        assert!(a_sequence(0).is_err());
    }

    #[test]
    fn a_sequence_matches_lcm_oracle() {
        // Independent route: fold lcm(1..n) with big integers.
        let mut l = BigUint::from(1u32);
        for n in 1..=300u64 {
            l = l.lcm(&BigUint::from(n));
            assert_eq!(a_sequence(n).unwrap(), l, "a_{n}");
        }
    }

    #[test]
    fn escape_examples() {
        assert!(verify_escape_property(4, 13).unwrap());
        assert!(verify_escape_property(4, 12).unwrap());
        for n in 2..200u128 {
            assert!(verify_escape_property(1, n).unwrap());
        }
    }

    #[test]
    fn prime_power_detection() {
        let powers: Vec<u64> = (1..=64).filter(|&n| is_prime_power_or_one(n)).collect();
        assert!(powers.contains(&1));
        assert!(powers.contains(&32));
        assert!(powers.contains(&27));
        assert!(!powers.contains(&6));
        assert!(!powers.contains(&12));
    }
}
