//! Ideals of the integers in canonical form.
//!
//! Every ideal of ℤ is principal, so an ideal is stored as its unique
//! nonnegative generator: `0` encodes the zero ideal (which by convention is
//! also the value of `elw_{-1}`), `1` the unit ideal. Equality of ideals is
//! equality of generators, the sum of two ideals is the gcd of their
//! generators, and containment is divisibility the "wrong way round":
//! `(a) ⊇ (b)` iff `a | b`, so `(0)` contains only `(0)` and `(1)` contains
//! everything.

use crate::arith::is_prime;
use crate::serde_int;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use std::fmt;

/// An ideal of ℤ, identified with its nonnegative generator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZIdeal {
    generator: BigUint,
}

/// The `ell`-adic valuation of an ideal: finite for nonzero ideals, infinite
/// for the zero ideal. `Infinite` compares greater than every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZIdealError {
    #[error("{0} is not prime")]
    NotPrime(u64),
}

impl ZIdeal {
    /// The zero ideal `(0)`.
    pub fn zero() -> Self {
        ZIdeal {
            generator: BigUint::zero(),
        }
    }

    /// The unit ideal `(1)` = ℤ.
    pub fn unit() -> Self {
        ZIdeal {
            generator: BigUint::one(),
        }
    }

    /// The ideal `(g)`.
    pub fn new(g: impl Into<BigUint>) -> Self {
        ZIdeal {
            generator: g.into(),
        }
    }

    /// The ideal generated by all the inputs: the gcd of their absolute
    /// values. An empty generating set gives the zero ideal.
    pub fn from_generators<I>(gens: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
    {
        let mut g = BigUint::zero();
        for x in gens {
            g = g.gcd(x.into().magnitude());
            if g.is_one() {
                break;
            }
        }
        ZIdeal { generator: g }
    }

    pub fn generator(&self) -> &BigUint {
        &self.generator
    }

    pub fn is_zero(&self) -> bool {
        self.generator.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.generator.is_one()
    }

    /// Ideal sum `(a) + (b) = (gcd(a, b))`, the smallest ideal containing both.
    pub fn sum(&self, other: &ZIdeal) -> ZIdeal {
        ZIdeal {
            generator: self.generator.gcd(&other.generator),
        }
    }

    /// Whether `self ⊇ other`, i.e. the generator of `self` divides the
    /// generator of `other`.
    pub fn contains(&self, other: &ZIdeal) -> bool {
        if self.generator.is_zero() {
            return other.generator.is_zero();
        }
        (&other.generator % &self.generator).is_zero()
    }

    /// Membership `n ∈ self`. Membership in `(0)` means `n = 0` exactly.
    pub fn contains_int(&self, n: &BigInt) -> bool {
        if self.generator.is_zero() {
            return n.is_zero();
        }
        (n.magnitude() % &self.generator).is_zero()
    }

    /// The product ideal `(k) · (g) = (k·g)`.
    pub fn scale(&self, k: &BigUint) -> ZIdeal {
        ZIdeal {
            generator: k * &self.generator,
        }
    }

    /// The `ell`-adic valuation of the generator; the zero ideal has infinite
    /// valuation, the unit ideal valuation 0.
    pub fn ord_ell(&self, ell: u64) -> Result<Valuation, ZIdealError> {
        if !is_prime(ell) {
            return Err(ZIdealError::NotPrime(ell));
        }
        if self.generator.is_zero() {
            return Ok(Valuation::Infinite);
        }
        let p = BigUint::from(ell);
        let mut g = self.generator.clone();
        let mut v = 0u64;
        while (&g % &p).is_zero() {
            g /= &p;
            v += 1;
        }
        Ok(Valuation::Finite(v))
    }
}

impl fmt::Display for ZIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator)
    }
}

impl fmt::Debug for ZIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZIdeal({})", self.generator)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl From<u64> for ZIdeal {
    fn from(g: u64) -> Self {
        ZIdeal::new(g)
    }
}

// A ZIdeal serializes as its bare generator (number, or string past 53 bits).
impl Serialize for ZIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde_int::serialize_biguint(&self.generator, s)
    }
}

impl<'de> Deserialize<'de> for ZIdeal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(ZIdeal {
            generator: serde_int::deserialize_biguint(d)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ideal(g: u64) -> ZIdeal {
        ZIdeal::new(g)
    }

    #[test]
    fn from_generators_examples() {
        assert_eq!(ZIdeal::from_generators([6i64, -4]), ideal(2));
        assert_eq!(ZIdeal::from_generators(Vec::<i64>::new()), ZIdeal::zero());
        assert_eq!(ZIdeal::from_generators([1i64, 100]), ZIdeal::unit());
    }

    #[test]
    fn sum_examples() {
        assert_eq!(ideal(4).sum(&ideal(6)), ideal(2));
        assert_eq!(ZIdeal::zero().sum(&ideal(5)), ideal(5));
        assert_eq!(ideal(3).sum(&ZIdeal::unit()), ZIdeal::unit());
    }

    #[test]
    fn contains_examples() {
        assert!(ideal(2).contains(&ideal(6)));
        assert!(!ideal(6).contains(&ideal(2)));
        assert!(ZIdeal::zero().contains(&ZIdeal::zero()));
        assert!(!ZIdeal::zero().contains(&ideal(2)));
        assert!(ZIdeal::unit().contains(&ZIdeal::zero()));
    }

    #[test]
    fn ord_ell_examples() {
        assert_eq!(ideal(12).ord_ell(2), Ok(Valuation::Finite(2)));
        assert_eq!(ZIdeal::unit().ord_ell(7), Ok(Valuation::Finite(0)));
        assert_eq!(ZIdeal::zero().ord_ell(3), Ok(Valuation::Infinite));
        assert_eq!(ideal(12).ord_ell(4), Err(ZIdealError::NotPrime(4)));
    }

    #[test]
    fn valuation_ordering() {
        assert!(Valuation::Finite(100) < Valuation::Infinite);
        assert!(Valuation::Finite(0) < Valuation::Finite(1));
        assert!(Valuation::Infinite <= Valuation::Infinite);
    }

    /// Membership oracle: n ∈ (g) decided by scanning multiples of g up to |n|.
    fn member_by_scan(n: i64, g: u64) -> bool {
        if g == 0 {
            return n == 0;
        }
        let target = n.unsigned_abs();
        let mut m = 0u64;
        while m < target {
            m += g;
        }
        m == target
    }

    proptest! {
        #[test]
        fn from_generators_sign_and_order_insensitive(mut xs in proptest::collection::vec(-1000i64..1000, 0..8)) {
            let a = ZIdeal::from_generators(xs.clone());
            xs.reverse();
            let b = ZIdeal::from_generators(xs.iter().map(|x| -x));
            prop_assert_eq!(a, b);
        }

        #[test]
        fn sum_laws(a in 0u64..5000, b in 0u64..5000, c in 0u64..5000) {
            let (a, b, c) = (ideal(a), ideal(b), ideal(c));
            prop_assert_eq!(a.sum(&b), b.sum(&a));
            prop_assert_eq!(a.sum(&b).sum(&c), a.sum(&b.sum(&c)));
            // the sum is the smallest ideal containing both summands
            prop_assert!(a.sum(&b).contains(&a));
            prop_assert!(a.sum(&b).contains(&b));
        }

        #[test]
        fn containment_is_absorption(a in 0u64..5000, b in 0u64..5000) {
            let (a, b) = (ideal(a), ideal(b));
            prop_assert_eq!(a.contains(&b), a.sum(&b) == a);
        }

        #[test]
        fn ord_of_sum_is_min(a in 0u64..100000, b in 0u64..100000, ell in prop_oneof![Just(2u64), Just(3), Just(5), Just(7), Just(11)]) {
            let (a, b) = (ideal(a), ideal(b));
            let lhs = a.sum(&b).ord_ell(ell).unwrap();
            let rhs = a.ord_ell(ell).unwrap().min(b.ord_ell(ell).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn membership_matches_scan_oracle(n in -1000i64..1000, g in 0u64..1000) {
            prop_assert_eq!(ideal(g).contains_int(&BigInt::from(n)), member_by_scan(n, g));
        }
    }

    #[test]
    fn serde_forms() {
        let small: ZIdeal = serde_json::from_str("12").unwrap();
        assert_eq!(small, ideal(12));
        assert_eq!(serde_json::to_string(&small).unwrap(), "12");
        let big: ZIdeal = serde_json::from_str("\"18446744073709551616\"").unwrap();
        assert_eq!(
            serde_json::to_string(&big).unwrap(),
            "\"18446744073709551616\""
        );
        assert!(serde_json::from_str::<ZIdeal>("-3").is_err());
    }
}
