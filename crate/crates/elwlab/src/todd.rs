//! The Todd-class denominator and its divisibility identities.
//!
//! In dimension `n` the universal denominator of the Todd class is
//!
//! ```text
//! mu_td(n) = prod over primes p <= n+1 of p^floor(n/(p-1))
//! ```
//!
//! starting 2, 12, 24, 720. It is close to `n!` (Legendre's formula puts the
//! floors inside the geometric sum instead of outside), every `mu_td(n)`
//! divides all later ones, and the sharper relation
//! `n! * mu_td(m) | mu_td(n+m-1)` holds. Divisibility checks here run on
//! prime valuations, never on the expanded integers, so dimensions in the
//! thousands stay cheap; the expanded product exists as a cross-check for
//! small `n` because `mu_td` grows factorially.

use crate::arith::{factorial_valuation, is_prime, primes_up_to};
use num_bigint::BigUint;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ToddError {
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// `mu_td(n)` in factored form: prime -> exponent `floor(n/(p-1))` for the
/// primes `p <= n+1`. Expanding the factorization reproduces the integer
/// exactly; every stored exponent is positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToddDenominator {
    n: u64,
    valuations: BTreeMap<u64, u64>,
}

impl ToddDenominator {
    pub fn new(n: u64) -> Self {
        let valuations = primes_up_to(n + 1)
            .into_iter()
            .map(|p| (p, n / (p - 1)))
            .collect();
        ToddDenominator { n, valuations }
    }

    pub fn dimension(&self) -> u64 {
        self.n
    }

    /// `v_p(mu_td(n))`, i.e. `floor(n/(p-1))`; zero for primes `p > n+1`.
    pub fn valuation(&self, p: u64) -> u64 {
        self.valuations.get(&p).copied().unwrap_or(0)
    }

    /// The `(prime, exponent)` pairs, ascending in the prime.
    pub fn factors(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.valuations.iter().map(|(&p, &e)| (p, e))
    }

    /// The expanded integer value.
    pub fn value(&self) -> BigUint {
        let mut out = BigUint::one();
        for (&p, &e) in &self.valuations {
            out *= BigUint::from(p).pow(e as u32);
        }
        out
    }
}

impl fmt::Display for ToddDenominator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valuations.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for (p, e) in self.factors() {
            if !first {
                f.write_str(" · ")?;
            }
            write!(f, "{p}^{e}")?;
            first = false;
        }
        Ok(())
    }
}

/// The Todd denominator `mu_td(n)` as an exact integer.
pub fn mu_td(n: u64) -> BigUint {
    ToddDenominator::new(n).value()
}

/// `v_p(mu_td(n)) = floor(n/(p-1))`; zero when `p > n+1`.
pub fn mu_td_valuation(n: u64, p: u64) -> Result<u64, ToddError> {
    if !is_prime(p) {
        return Err(ToddError::NotPrime(p));
    }
    Ok(n / (p - 1))
}

/// Outcome of a `n! * mu_td(m) | mu_td(n+m-1)` check, with the violating
/// prime as witness on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDivisibility {
    pub n: u64,
    pub m: u64,
    pub violating_prime: Option<u64>,
}

impl ChainDivisibility {
    pub fn holds(&self) -> bool {
        self.violating_prime.is_none()
    }
}

/// Checks `n! * mu_td(m) | mu_td(n+m-1)` prime-by-prime on valuations:
/// `v_p(n!) + floor(m/(p-1)) <= floor((n+m-1)/(p-1))` for every prime
/// `p <= n+m`.
pub fn check_divides_chain(n: u64, m: u64) -> ChainDivisibility {
    assert!(n >= 1 && m >= 1, "chain identity requires n, m >= 1");
    let target = n + m - 1;
    for p in primes_up_to(target + 1) {
        if factorial_valuation(n, p) + m / (p - 1) > target / (p - 1) {
            return ChainDivisibility {
                n,
                m,
                violating_prime: Some(p),
            };
        }
    }
    ChainDivisibility {
        n,
        m,
        violating_prime: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use num_traits::Zero;

    #[test]
    fn opening_values() {
        assert_eq!(mu_td(0), BigUint::one());
        assert_eq!(mu_td(1), BigUint::from(2u32));
        assert_eq!(mu_td(2), BigUint::from(12u32));
        assert_eq!(mu_td(3), BigUint::from(24u32));
        assert_eq!(mu_td(4), BigUint::from(720u32));
        assert_eq!(mu_td(5), BigUint::from(1440u32)); // 2^5 · 3^2 · 5
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(mu_td_valuation(4, 2), Ok(4));
        assert_eq!(mu_td_valuation(4, 7), Ok(0));
        assert_eq!(mu_td_valuation(2, 3), Ok(1));
        assert_eq!(mu_td_valuation(4, 6), Err(ToddError::NotPrime(6)));
    }

    #[test]
    fn factored_form_invariants() {
        for n in 0..=50 {
            let td = ToddDenominator::new(n);
            for (p, e) in td.factors() {
                assert!(e > 0, "stored exponent must be positive");
                assert!(p <= n + 1, "prime {p} out of range for n={n}");
                assert_eq!(e, mu_td_valuation(n, p).unwrap());
            }
            // expansion of the factorization reproduces the product exactly
            assert_eq!(td.value(), mu_td(n));
        }
    }

    #[test]
    fn monotone_divisibility() {
        for n in 0..=20u64 {
            for m in n..=20 {
                assert!(
                    mu_td(m).is_multiple_of(&mu_td(n)),
                    "mu_td({n}) should divide mu_td({m})"
                );
            }
        }
    }

    #[test]
    fn factorial_divides_todd_denominator() {
        for n in 0..=20u64 {
            for p in primes_up_to(n + 1) {
                assert!(factorial_valuation(n, p) <= n / (p - 1));
            }
            let fact: BigUint = (1..=n)
                .map(BigUint::from)
                .product::<BigUint>()
                .max(BigUint::one());
            assert!(
                mu_td(n).is_multiple_of(&fact),
                "{n}! should divide mu_td({n})"
            );
        }
    }

    #[test]
    fn chain_identity_examples() {
        // 2! · mu_td(2) = 24 divides mu_td(3) = 24
        assert!(check_divides_chain(2, 2).holds());
        // 1! · mu_td(m) divides mu_td(m)
        for m in 1..=30 {
            assert!(check_divides_chain(1, m).holds());
        }
        // 4! · mu_td(3) = 576 divides mu_td(6) = 60480
        assert!(check_divides_chain(4, 3).holds());
        assert_eq!(mu_td(6), BigUint::from(60480u32));
        assert!((mu_td(6) % BigUint::from(576u32)).is_zero());
    }

    #[test]
    fn chain_identity_exhaustive_small() {
        for n in 1..=12 {
            for m in 1..=12 {
                let check = check_divides_chain(n, m);
                assert!(
                    check.holds(),
                    "violated at n={n} m={m}: {:?}",
                    check.violating_prime
                );
                // cross-check on expanded integers
                let fact: BigUint = (1..=n).map(BigUint::from).product();
                assert!(mu_td(n + m - 1).is_multiple_of(&(fact * mu_td(m))));
            }
        }
    }

    #[test]
    fn display_factored() {
        assert_eq!(ToddDenominator::new(4).to_string(), "2^4 · 3^2 · 5^1");
        assert_eq!(ToddDenominator::new(0).to_string(), "1");
    }
}
