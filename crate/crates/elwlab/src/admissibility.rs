//! Checkers and an enumerator for the conjectured sequence constraints.
//!
//! A sequence `(e_0, ..., e_n)` of positive integers is a candidate ELW
//! sequence when
//!
//! 1. `e_{r+1} | e_r` for every `r`, and
//! 2. `e_0 | mu_td(r) * e_r` for every `r` (including `r = n`).
//!
//! These are the known-necessary constraints; the checker implements them
//! verbatim and claims nothing about sufficiency. The K3 variant pins the
//! surface case down further: `e_2 | e_1 | e_0`, `e_2 = gcd(2, e_1)`, and
//! `e_0 | 12 e_2`, `e_0 | 2 e_1`. Zero entries are excluded throughout: the
//! ELW ideals of a nonempty proper scheme are nonzero.

use crate::arith::divisors;
use crate::todd::mu_td;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AdmissibilityError {
    #[error("empty sequence")]
    EmptyInput,
    #[error("entry e_{0} must be positive")]
    ZeroEntry(usize),
}

/// A nonempty sequence `(e_0, ..., e_n)` of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CandidateSequence {
    entries: Vec<BigUint>,
}

impl CandidateSequence {
    pub fn new(entries: Vec<BigUint>) -> Result<Self, AdmissibilityError> {
        if entries.is_empty() {
            return Err(AdmissibilityError::EmptyInput);
        }
        if let Some(i) = entries.iter().position(BigUint::is_zero) {
            return Err(AdmissibilityError::ZeroEntry(i));
        }
        Ok(CandidateSequence { entries })
    }

    pub fn from_u64s(entries: &[u64]) -> Result<Self, AdmissibilityError> {
        Self::new(entries.iter().map(|&e| BigUint::from(e)).collect())
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.entries
    }

    /// The dimension `n` of a scheme the sequence would belong to.
    pub fn dimension(&self) -> u64 {
        self.entries.len() as u64 - 1
    }
}

impl fmt::Display for CandidateSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.entries {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

/// First violated constraint: which condition, at which index, and the
/// failed divisibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeViolation {
    /// 1 for the divisor chain, 2 for the Todd divisibility.
    pub condition: u8,
    pub index: u64,
    pub divisor: BigUint,
    pub dividend: BigUint,
}

impl fmt::Display for HeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "condition ({}) fails at r={}: {} does not divide {}",
            self.condition, self.index, self.divisor, self.dividend
        )
    }
}

/// Checks both candidate-sequence conditions at every index, reporting the
/// first violation (scanning r upward, chain condition before the Todd one).
pub fn he_admissible(s: &CandidateSequence) -> Result<(), HeViolation> {
    let entries = s.entries();
    let e0 = &entries[0];
    for (r, e) in entries.iter().enumerate() {
        if let Some(next) = entries.get(r + 1) {
            if !e.is_multiple_of(next) {
                return Err(HeViolation {
                    condition: 1,
                    index: r as u64,
                    divisor: next.clone(),
                    dividend: e.clone(),
                });
            }
        }
        let scaled = mu_td(r as u64) * e;
        if !scaled.is_multiple_of(e0) {
            return Err(HeViolation {
                condition: 2,
                index: r as u64,
                divisor: e0.clone(),
                dividend: scaled,
            });
        }
    }
    Ok(())
}

/// A violated clause of the K3 constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K3Violation {
    /// 1 = divisor chain, 2 = 2-torsion pin, 3 = bound by 12e_2 and 2e_1.
    pub clause: u8,
    pub detail: String,
}

impl fmt::Display for K3Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "clause ({}) fails: {}", self.clause, self.detail)
    }
}

/// Checks the three K3-surface constraints on `(e_0, e_1, e_2)`.
pub fn k3_admissible(e0: &BigUint, e1: &BigUint, e2: &BigUint) -> Result<(), K3Violation> {
    assert!(
        !e0.is_zero() && !e1.is_zero() && !e2.is_zero(),
        "entries must be positive"
    );
    if !e1.is_multiple_of(e2) || !e0.is_multiple_of(e1) {
        return Err(K3Violation {
            clause: 1,
            detail: format!("{e2} | {e1} | {e0} is not a divisor chain"),
        });
    }
    let two = BigUint::from(2u32);
    if *e2 != two.gcd(e1) {
        return Err(K3Violation {
            clause: 2,
            detail: format!("e_2 = {e2} but gcd(2, e_1) = {}", two.gcd(e1)),
        });
    }
    if !(e2 * 12u32).is_multiple_of(e0) {
        return Err(K3Violation {
            clause: 3,
            detail: format!("e_0 = {e0} does not divide 12·e_2 = {}", e2 * 12u32),
        });
    }
    if !(e1 * 2u32).is_multiple_of(e0) {
        return Err(K3Violation {
            clause: 3,
            detail: format!("e_0 = {e0} does not divide 2·e_1 = {}", e1 * 2u32),
        });
    }
    Ok(())
}

/// All admissible sequences of length `n + 1` with `e_0 <= bound`, in
/// lexicographic order. Since every later entry divides `e_0`, the bound on
/// `e_0` bounds the whole sequence; the search walks divisor chains
/// downward from each `e_0` and prunes a branch as soon as the Todd
/// condition fails at its level, so the emitted order is lexicographic with
/// no sorting pass.
pub fn enumerate_he(n: u64, bound: u64) -> Vec<CandidateSequence> {
    assert!(bound >= 1, "bound must be positive");
    let todd: Vec<BigUint> = (0..=n).map(mu_td).collect();
    let mut out = Vec::new();
    let mut chain: Vec<u64> = Vec::with_capacity(n as usize + 1);

    fn descend(chain: &mut Vec<u64>, n: u64, todd: &[BigUint], out: &mut Vec<CandidateSequence>) {
        let r = chain.len() - 1;
        let e0 = chain[0];
        let scaled = &todd[r] * BigUint::from(chain[r]);
        if !scaled.is_multiple_of(&BigUint::from(e0)) {
            return;
        }
        if r as u64 == n {
            out.push(CandidateSequence::from_u64s(chain).expect("entries are positive"));
            return;
        }
        for d in divisors(chain[r]) {
            chain.push(d);
            descend(chain, n, todd, out);
            chain.pop();
        }
    }

    for e0 in 1..=bound {
        chain.push(e0);
        descend(&mut chain, n, &todd, &mut out);
        chain.pop();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(entries: &[u64]) -> CandidateSequence {
        CandidateSequence::from_u64s(entries).unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn construction_guards() {
        assert_eq!(
            CandidateSequence::from_u64s(&[]),
            Err(AdmissibilityError::EmptyInput)
        );
        assert_eq!(
            CandidateSequence::from_u64s(&[2, 0]),
            Err(AdmissibilityError::ZeroEntry(1))
        );
    }

    #[test]
    fn he_examples() {
        assert_eq!(he_admissible(&seq(&[2, 1])), Ok(()));
        let violation = he_admissible(&seq(&[4, 1])).unwrap_err();
        assert_eq!((violation.condition, violation.index), (2, 1));
        assert_eq!(
            violation.to_string(),
            "condition (2) fails at r=1: 4 does not divide 2"
        );
        assert_eq!(he_admissible(&seq(&[1, 1, 1, 1, 1])), Ok(()));
    }

    #[test]
    fn he_chain_violation() {
        let violation = he_admissible(&seq(&[4, 3])).unwrap_err();
        assert_eq!((violation.condition, violation.index), (1, 0));
    }

    #[test]
    fn he_accepts_classical_families() {
        for p in [2u64, 3, 5] {
            let mut pattern = vec![p; p as usize - 1];
            pattern.push(1);
            assert_eq!(he_admissible(&seq(&pattern)), Ok(()), "severi-brauer {p}");
        }
        for n in 1..=5usize {
            let mut conic = vec![2u64; n];
            conic.push(1);
            assert_eq!(he_admissible(&seq(&conic)), Ok(()), "conic product {n}");
            let mut real = vec![2u64];
            real.extend(vec![1u64; n]);
            assert_eq!(he_admissible(&seq(&real)), Ok(()), "real curves {n}");
        }
        assert_eq!(he_admissible(&seq(&[2, 2, 1])), Ok(()));
    }

    #[test]
    fn k3_examples() {
        assert_eq!(k3_admissible(&big(1), &big(1), &big(1)), Ok(()));
        assert_eq!(k3_admissible(&big(12), &big(6), &big(2)), Ok(()));
        let violation = k3_admissible(&big(12), &big(2), &big(2)).unwrap_err();
        assert_eq!(violation.clause, 3);
        let violation = k3_admissible(&big(4), &big(4), &big(1)).unwrap_err();
        assert_eq!(violation.clause, 2);
        let violation = k3_admissible(&big(4), &big(3), &big(1)).unwrap_err();
        assert_eq!(violation.clause, 1);
    }

    #[test]
    fn k3_implies_he_up_to_48() {
        for e0 in 1..=48u64 {
            for e1 in 1..=48 {
                for e2 in 1..=48 {
                    if k3_admissible(&big(e0), &big(e1), &big(e2)).is_ok() {
                        assert_eq!(
                            he_admissible(&seq(&[e0, e1, e2])),
                            Ok(()),
                            "({e0},{e1},{e2})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        let dim0: Vec<String> = enumerate_he(0, 3).iter().map(|s| s.to_string()).collect();
        assert_eq!(dim0, vec!["1", "2", "3"]);
        let dim1: Vec<String> = enumerate_he(1, 2).iter().map(|s| s.to_string()).collect();
        assert_eq!(dim1, vec!["1,1", "2,1", "2,2"]);
        for s in enumerate_he(2, 12) {
            assert_eq!(he_admissible(&s), Ok(()), "{s}");
        }
    }

    /// Brute-force oracle: every tuple with entries up to the bound, filtered
    /// by a from-scratch evaluation of the two conditions (naive mu_td).
    fn oracle_enumerate(n: u64, bound: u64) -> Vec<Vec<u64>> {
        fn naive_mu_td(n: u64) -> u64 {
            let mut out = 1u64;
            for p in 2..=(n + 1) {
                let is_p = p >= 2 && (2..p).all(|d| p % d != 0);
                if is_p {
                    for _ in 0..(n / (p - 1)) {
                        out *= p;
                    }
                }
            }
            out
        }
        let len = n as usize + 1;
        let mut tuple = vec![1u64; len];
        let mut out = Vec::new();
        loop {
            let chain_ok = tuple.windows(2).all(|w| w[0] % w[1] == 0);
            let todd_ok =
                (0..len).all(|r| (naive_mu_td(r as u64) * tuple[r]).is_multiple_of(tuple[0]));
            if chain_ok && todd_ok {
                out.push(tuple.clone());
            }
            // odometer increment in lexicographic order
            let mut i = len;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if tuple[i] < bound {
                    tuple[i] += 1;
                    for slot in tuple.iter_mut().skip(i + 1) {
                        *slot = 1;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn enumerate_matches_brute_force() {
        for (n, bound) in [(0u64, 10u64), (1, 8), (2, 10), (3, 6)] {
            let fast: Vec<Vec<u64>> = enumerate_he(n, bound)
                .iter()
                .map(|s| {
                    s.entries()
                        .iter()
                        .map(|e| u64::try_from(e).unwrap())
                        .collect()
                })
                .collect();
            let slow = oracle_enumerate(n, bound);
            assert_eq!(fast, slow, "n={n} bound={bound}");
        }
    }
}
