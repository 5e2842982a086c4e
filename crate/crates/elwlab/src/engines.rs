//! Closed-form Euler-characteristic engines and worked-example builders.
//!
//! The chi values here come from Riemann-Roch in its cheapest forms: on a
//! curve `chi(L) = deg L + 1 - g`, on a product of curves `chi` multiplies
//! across the factors, on a K3 surface `chi(aH) = a^2 (H^2)/2 + 2`, and for a
//! double plane ramified in degree `2d` the pushforward splits off
//! `O(-d)`. Each builder packages the conclusions of one example family as a
//! [`CycleCatalog`] together with the sequence the family is known to have,
//! so the computed sequence can be compared against the expected one.

use crate::arith::is_prime;
use crate::catalog::{CatalogError, CycleCatalog, CycleGenerator, ElwSequence, Flag};
use crate::zideal::ZIdeal;
use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degree {0} is not congruent to 2 mod 4")]
    BadCongruence(u64),
    #[error("self-intersection {0} must be a positive even integer")]
    OddSelfIntersection(u64),
}

/// A curve hypothesis for the product examples: its genus and the integer
/// `m` with `elw_0(C) ⊂ (m)`, so every line-bundle degree on `C` is a
/// multiple of `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveSpec {
    pub genus: u64,
    pub index_multiple: u64,
}

impl CurveSpec {
    pub fn new(genus: u64, index_multiple: u64) -> Self {
        assert!(index_multiple >= 1, "index multiple must be positive");
        CurveSpec {
            genus,
            index_multiple,
        }
    }

    /// `chi` of a line bundle of degree `k * m` on this curve.
    pub fn line_bundle_chi(&self, k: i64) -> BigInt {
        curve_chi(self.genus, k * self.index_multiple as i64)
    }
}

/// Riemann-Roch on a curve: `chi(L) = deg L + 1 - g`.
pub fn curve_chi(genus: u64, degree: i64) -> BigInt {
    BigInt::from(degree) + 1 - BigInt::from(genus)
}

/// `chi` of an external tensor product of line bundles on a product of
/// curves: the product of the factor chi values.
pub fn product_curve_chi(factors: &[(u64, i64)]) -> Result<BigInt, EngineError> {
    if factors.is_empty() {
        return Err(EngineError::EmptyInput("product of curves needs factors"));
    }
    Ok(factors.iter().map(|&(g, d)| curve_chi(g, d)).product())
}

/// A builder's output: the presentation plus the sequence the underlying
/// family is known to have.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkedExample {
    pub catalog: CycleCatalog,
    pub expected: ElwSequence,
}

impl WorkedExample {
    /// Whether the computed sequence of the catalog matches the expected one.
    pub fn verify(&self) -> Result<bool, CatalogError> {
        Ok(self.catalog.elw_sequence()? == self.expected)
    }
}

fn generator(name: String, dim: u64, chi: BigInt) -> CycleGenerator {
    CycleGenerator { name, dim, chi }
}

fn constant_then_unit(constant: u64, len: u64) -> ElwSequence {
    // ((c),...,(c),(1)) of the given total length
    let mut ideals = vec![ZIdeal::new(constant); len as usize - 1];
    ideals.push(ZIdeal::unit());
    ElwSequence::from_ideals(ideals).expect("constant-then-unit chain is valid")
}

/// Product of `n` pointless conics over a field where their Brauer classes
/// are independent: sequence `((2),...,(2),(1))`.
///
/// The presentation lists a degree-2 point, for each intermediate dimension a
/// conjugate pair of `i`-fold subproducts (twice a product of even-degree
/// curve chi values, hence even), and the product itself with
/// `chi(O) = 1`.
pub fn conic_product_catalog(n: u64) -> WorkedExample {
    assert!(n >= 1, "a product needs at least one conic");
    let mut gens = vec![generator("pt2".into(), 0, BigInt::from(2))];
    for i in 1..n {
        let pair_chi: BigInt = 2 * product_curve_chi(&vec![(0u64, 2i64); i as usize]).unwrap();
        gens.push(generator(format!("Z{i}"), i, pair_chi));
    }
    gens.push(generator("Y".into(), n, BigInt::one()));
    let catalog = CycleCatalog {
        name: format!("conic-product-{n}"),
        dimension: n,
        flags: BTreeSet::from([Flag::Integral, Flag::Regular, Flag::CharZero, Flag::Smooth]),
        global_chi: Some(BigInt::one()),
        generators: gens,
    };
    WorkedExample {
        catalog,
        expected: constant_then_unit(2, n + 1),
    }
}

/// Nontrivial Severi-Brauer variety of dimension `p - 1`: sequence
/// `((p),...,(p),(1))`. The dimension-`i` generator is the sum of the `p`
/// conjugates of a linear subspace over a splitting field of degree `p`,
/// whose normalization has `chi = p`.
pub fn severi_brauer_catalog(p: u64) -> Result<WorkedExample, EngineError> {
    if !is_prime(p) {
        return Err(EngineError::NotPrime(p));
    }
    let dim = p - 1;
    let mut gens = Vec::new();
    for i in 0..dim {
        gens.push(generator(format!("L{i}"), i, BigInt::from(p)));
    }
    gens.push(generator("X".into(), dim, BigInt::one()));
    let catalog = CycleCatalog {
        name: format!("severi-brauer-{p}"),
        dimension: dim,
        flags: BTreeSet::from([Flag::Integral, Flag::Regular, Flag::CharZero, Flag::Smooth]),
        global_chi: Some(BigInt::one()),
        generators: gens,
    };
    Ok(WorkedExample {
        catalog,
        expected: constant_then_unit(p, p),
    })
}

/// The chi values of a double plane ramified along a degree-`2d` curve:
/// `chi(S, O_S) = 1 + (d-1)(d-2)/2`, and for a curve `C ~ rH` on it
/// `chi(C, O_C) = r(r + d - 3)` (self-intersection `H^2 = 2`).
pub fn double_cover_chi(d: u64, r: i64) -> (BigInt, BigInt) {
    assert!(d >= 1, "covering degree parameter must be positive");
    let d = d as i128;
    let halved = (d - 1) * (d - 2);
    debug_assert!(halved % 2 == 0);
    let surface = BigInt::from(1 + halved / 2);
    let r = r as i128;
    let curve = BigInt::from(r * (r + d - 3));
    (surface, curve)
}

/// Double plane over a real closed field with no rational points,
/// `d ≡ 2 mod 4` and Picard group generated by `H`: sequence `((2),(2),(1))`.
pub fn real_double_cover_catalog(d: u64, r_max: u64) -> Result<WorkedExample, EngineError> {
    if d % 4 != 2 {
        return Err(EngineError::BadCongruence(d));
    }
    assert!(r_max >= 1, "need at least one curve generator");
    let (surface_chi, _) = double_cover_chi(d, 1);
    let mut gens = vec![generator("pt2".into(), 0, BigInt::from(2))];
    for r in 1..=r_max {
        let (_, curve) = double_cover_chi(d, r as i64);
        // d ≡ 2 mod 4 makes r(r+d-3) even for every r, so the sequence is
        // insensitive to r_max
        debug_assert!(&curve % 2 == BigInt::from(0));
        gens.push(generator(format!("C{r}"), 1, curve));
    }
    gens.push(generator("S".into(), 2, surface_chi.clone()));
    let catalog = CycleCatalog {
        name: format!("double-cover-{d}"),
        dimension: 2,
        flags: BTreeSet::from([Flag::Integral, Flag::Regular, Flag::CharZero, Flag::Smooth]),
        global_chi: Some(surface_chi),
        generators: gens,
    };
    let expected =
        ElwSequence::from_ideals(vec![ZIdeal::new(2u64), ZIdeal::new(2u64), ZIdeal::unit()])
            .expect("chain (2),(2),(1)");
    Ok(WorkedExample { catalog, expected })
}

/// `chi(O)` of a smooth curve of bidegree `(a, b)` on a quadric surface:
/// `1 - (a-1)(b-1)` by the adjunction genus formula.
pub fn quadric_bidegree_chi(a: u64, b: u64) -> BigInt {
    assert!(a >= 1 && b >= 1, "bidegree components must be positive");
    BigInt::one() - BigInt::from((a - 1) * (b - 1))
}

/// The empty real quadric threefold `(x_0^2 + ... + x_4^2 = 0)`: sequence
/// `((2),(1),(1),(1))`, with the bidegree-(1,1) and -(1,3) rational curves
/// `C2`, `C4` whose classes the residue map separates. The unit levels are
/// certified by rational hyperplane-section generators with `chi = 1`.
pub fn quadric3_catalog() -> WorkedExample {
    let gens = vec![
        generator("pt2".into(), 0, BigInt::from(2)),
        generator("C2".into(), 1, quadric_bidegree_chi(1, 1)),
        generator("C4".into(), 1, quadric_bidegree_chi(1, 3)),
        generator("H".into(), 2, BigInt::one()),
        generator("Q3".into(), 3, BigInt::one()),
    ];
    let catalog = CycleCatalog {
        name: "quadric3".into(),
        dimension: 3,
        flags: BTreeSet::from([Flag::Integral, Flag::Regular, Flag::CharZero, Flag::Smooth]),
        global_chi: Some(BigInt::one()),
        generators: gens,
    };
    let expected = ElwSequence::from_ideals(vec![
        ZIdeal::new(2u64),
        ZIdeal::unit(),
        ZIdeal::unit(),
        ZIdeal::unit(),
    ])
    .expect("chain (2),(1),(1),(1)");
    WorkedExample { catalog, expected }
}

/// Product of `n` pointless real curves of even genus: `elw_0 = (2)` and
/// everything above is the unit ideal (each factor has odd `chi(O) = 1 - g`).
pub fn real_curve_product_sequence(n: u64) -> ElwSequence {
    assert!(n >= 1);
    let mut ideals = vec![ZIdeal::new(2u64)];
    ideals.extend(vec![ZIdeal::unit(); n as usize]);
    ElwSequence::from_ideals(ideals).expect("chain (2),(1),...,(1)")
}

/// Product of `n` very general hyperelliptic curves of odd half-degree `m`
/// over C(t): the same `((2),...,(2),(1))` pattern as products of conics.
pub fn hyperelliptic_product_sequence(n: u64) -> ElwSequence {
    assert!(n >= 1);
    constant_then_unit(2, n + 1)
}

/// Riemann-Roch on a K3 surface with `Pic = Z[H]`:
/// `chi(aH) = a^2 (H^2)/2 + 2`, so `chi(aH) - chi(O)` is divisible by
/// `m = (H^2)/2` for every `a`.
pub fn k3_line_bundle_chi(h_squared: u64, a: i64) -> Result<BigInt, EngineError> {
    if h_squared == 0 || !h_squared.is_multiple_of(2) {
        return Err(EngineError::OddSelfIntersection(h_squared));
    }
    let a = BigInt::from(a);
    Ok(&a * &a * BigInt::from(h_squared / 2) + 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{check_top_relation, todd_divisibility_check, Outcome};
    use proptest::prelude::*;

    fn seq(gens: &[u64]) -> ElwSequence {
        ElwSequence::from_ideals(gens.iter().map(|&g| ZIdeal::new(g)).collect()).unwrap()
    }

    #[test]
    fn curve_chi_examples() {
        assert_eq!(curve_chi(0, 0), BigInt::from(1));
        assert_eq!(curve_chi(2, 0), BigInt::from(-1));
        assert_eq!(curve_chi(1, 3), BigInt::from(3));
    }

    #[test]
    fn product_curve_chi_examples() {
        assert_eq!(
            product_curve_chi(&[(0, 0), (0, 0), (0, 0)]).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            product_curve_chi(&[(0, 2), (0, 0)]).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            product_curve_chi(&[(3, 5), (1, 0), (0, 2)]).unwrap(),
            BigInt::from(0)
        );
        assert!(matches!(
            product_curve_chi(&[]),
            Err(EngineError::EmptyInput(_))
        ));
    }

    #[test]
    fn conic_products() {
        assert_eq!(
            conic_product_catalog(1).catalog.elw_sequence().unwrap(),
            seq(&[2, 1])
        );
        assert_eq!(
            conic_product_catalog(3).catalog.elw_sequence().unwrap(),
            seq(&[2, 2, 2, 1])
        );
        for n in 1..=8 {
            let built = conic_product_catalog(n);
            assert!(built.verify().unwrap(), "n={n}");
            assert_eq!(
                check_top_relation(&built.catalog).unwrap().outcome,
                Outcome::Verified
            );
        }
    }

    #[test]
    fn severi_brauer_patterns() {
        assert_eq!(
            severi_brauer_catalog(2)
                .unwrap()
                .catalog
                .elw_sequence()
                .unwrap(),
            seq(&[2, 1])
        );
        assert_eq!(
            severi_brauer_catalog(5)
                .unwrap()
                .catalog
                .elw_sequence()
                .unwrap(),
            seq(&[5, 5, 5, 5, 1])
        );
        assert!(matches!(
            severi_brauer_catalog(6),
            Err(EngineError::NotPrime(6))
        ));
        for p in [2u64, 3, 5, 7, 11] {
            assert!(severi_brauer_catalog(p).unwrap().verify().unwrap());
        }
    }

    #[test]
    fn double_cover_chi_values() {
        assert_eq!(double_cover_chi(6, 0).0, BigInt::from(11));
        assert_eq!(double_cover_chi(6, 1).1, BigInt::from(4));
        assert_eq!(double_cover_chi(3, 1).1, BigInt::from(1));
    }

    #[test]
    fn real_double_cover_example() {
        let built = real_double_cover_catalog(6, 3).unwrap();
        assert!(built.verify().unwrap());
        let curve_chis: Vec<BigInt> = built
            .catalog
            .generators
            .iter()
            .filter(|g| g.dim == 1)
            .map(|g| g.chi.clone())
            .collect();
        assert_eq!(
            curve_chis,
            vec![BigInt::from(4), BigInt::from(10), BigInt::from(18)]
        );
        assert_eq!(
            check_top_relation(&built.catalog).unwrap().outcome,
            Outcome::Verified
        );

        // d = 2 degenerates gracefully: curve chi 0, surface chi 1
        let small = real_double_cover_catalog(2, 1).unwrap();
        assert!(small.verify().unwrap());
        assert_eq!(small.catalog.global_chi, Some(BigInt::one()));

        assert!(matches!(
            real_double_cover_catalog(8, 1),
            Err(EngineError::BadCongruence(8))
        ));
        assert!(matches!(
            real_double_cover_catalog(5, 1),
            Err(EngineError::BadCongruence(5))
        ));
    }

    #[test]
    fn sequence_insensitive_to_r_max() {
        let base = real_double_cover_catalog(6, 1).unwrap();
        for r_max in 2..=12 {
            let more = real_double_cover_catalog(6, r_max).unwrap();
            assert_eq!(
                more.catalog.elw_sequence().unwrap(),
                base.catalog.elw_sequence().unwrap()
            );
        }
    }

    #[test]
    fn quadric_bidegree_examples() {
        assert_eq!(quadric_bidegree_chi(1, 1), BigInt::one());
        assert_eq!(quadric_bidegree_chi(1, 3), BigInt::one());
        assert_eq!(quadric_bidegree_chi(2, 2), BigInt::from(0));
    }

    #[test]
    fn quadric3_sequence() {
        let built = quadric3_catalog();
        assert!(built.verify().unwrap());
        assert_eq!(built.catalog.elw_sequence().unwrap(), seq(&[2, 1, 1, 1]));
    }

    #[test]
    fn real_curve_and_hyperelliptic_patterns() {
        assert_eq!(real_curve_product_sequence(1), seq(&[2, 1]));
        assert_eq!(real_curve_product_sequence(4), seq(&[2, 1, 1, 1, 1]));
        assert_eq!(hyperelliptic_product_sequence(1), seq(&[2, 1]));
        assert_eq!(hyperelliptic_product_sequence(2), seq(&[2, 2, 1]));
        for n in 1..=6 {
            assert_eq!(
                hyperelliptic_product_sequence(n),
                conic_product_catalog(n).expected
            );
        }
    }

    #[test]
    fn k3_chi_values() {
        assert_eq!(k3_line_bundle_chi(10, 0).unwrap(), BigInt::from(2));
        assert_eq!(k3_line_bundle_chi(4, 1).unwrap(), BigInt::from(4));
        assert_eq!(k3_line_bundle_chi(6, 2).unwrap(), BigInt::from(14));
        assert!(matches!(
            k3_line_bundle_chi(5, 1),
            Err(EngineError::OddSelfIntersection(5))
        ));
        assert!(matches!(
            k3_line_bundle_chi(0, 1),
            Err(EngineError::OddSelfIntersection(0))
        ));
    }

    #[test]
    fn k3_difference_divisible_by_m() {
        for m in 1u64..=50 {
            for a in -50i64..=50 {
                let chi = k3_line_bundle_chi(2 * m, a).unwrap();
                let diff = chi - 2;
                assert!((diff % BigInt::from(m)) == BigInt::from(0), "m={m} a={a}");
            }
        }
    }

    fn all_builders() -> Vec<WorkedExample> {
        let mut outputs = vec![quadric3_catalog()];
        outputs.extend((1..=6).map(conic_product_catalog));
        outputs.extend([2u64, 3, 5, 7].map(|p| severi_brauer_catalog(p).unwrap()));
        outputs.extend([2u64, 6, 10].map(|d| real_double_cover_catalog(d, 3).unwrap()));
        outputs
    }

    #[test]
    fn builders_pass_todd_divisibility() {
        for built in all_builders() {
            assert!(built.catalog.has_flag(Flag::CharZero));
            let report = todd_divisibility_check(&built.catalog).unwrap();
            assert!(report.all_hold(), "{}", built.catalog.name);
        }
    }

    #[test]
    fn builder_catalogs_round_trip_through_json() {
        for built in all_builders() {
            let json = serde_json::to_string(&built.catalog).unwrap();
            let back: CycleCatalog = serde_json::from_str(&json).unwrap();
            assert_eq!(back, built.catalog, "{}", built.catalog.name);
            assert_eq!(
                back.elw_sequence().unwrap(),
                built.catalog.elw_sequence().unwrap()
            );
        }
    }

    proptest! {
        /// The congruence behind the product example: with every degree a
        /// multiple of m, chi(L) ≡ chi(O) mod m on the product.
        #[test]
        fn product_chi_congruence(
            m in 1u64..12,
            factors in proptest::collection::vec((0u64..8, -6i64..=6), 1..5)
        ) {
            let curves: Vec<CurveSpec> = factors.iter().map(|&(g, _)| CurveSpec::new(g, m)).collect();
            let with_bundles: Vec<(u64, i64)> = factors
                .iter()
                .map(|&(g, k)| (g, k * m as i64))
                .collect();
            let trivial: Vec<(u64, i64)> = factors.iter().map(|&(g, _)| (g, 0)).collect();
            let chi_l = product_curve_chi(&with_bundles).unwrap();
            let chi_o = product_curve_chi(&trivial).unwrap();
            prop_assert_eq!(
                (chi_l - chi_o) % BigInt::from(m),
                BigInt::from(0)
            );
            // the per-factor engine agrees with the CurveSpec view
            for (spec, &(g, k)) in curves.iter().zip(&factors) {
                prop_assert_eq!(spec.line_bundle_chi(k), curve_chi(g, k * m as i64));
            }
        }
    }
}
