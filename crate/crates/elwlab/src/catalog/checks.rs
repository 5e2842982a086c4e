//! Verifiers for the lemmas that constrain ELW sequences.
//!
//! Each check takes presentation data and reports whether the corresponding
//! statement holds on it. A violation is a consistency diagnosis (the
//! presentation cannot come from a scheme of the flagged class), not a
//! program error, so violations are values, never `Err`. Checks whose
//! hypotheses fail on the given data report `Vacuous` rather than silently
//! passing, since the hypotheses genuinely fail on many concrete instances.

use super::{
    CatalogError, CycleCatalog, CycleClass, ElwSequence, Flag, MorphismKind, MorphismModel,
    SheafModel,
};
use crate::arith::is_prime;
use crate::serde_int;
use crate::todd::mu_td;
use crate::zideal::{ZIdeal, ZIdealError};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;
use std::fmt;

impl From<ZIdealError> for CatalogError {
    fn from(e: ZIdealError) -> Self {
        match e {
            ZIdealError::NotPrime(p) => CatalogError::NotPrime(p),
        }
    }
}

/// How a single lemma check came out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// Hypotheses held and the conclusion was confirmed.
    Verified,
    /// Hypotheses failed on this data; nothing was asserted.
    Vacuous,
    /// Hypotheses held but the conclusion is false.
    Violated,
}

/// A named check outcome with an optional human-readable witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub name: String,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl LemmaCheck {
    fn verified(name: &str) -> Self {
        LemmaCheck {
            name: name.into(),
            outcome: Outcome::Verified,
            witness: None,
        }
    }

    fn vacuous(name: &str, reason: impl Into<String>) -> Self {
        LemmaCheck {
            name: name.into(),
            outcome: Outcome::Vacuous,
            witness: Some(reason.into()),
        }
    }

    fn violated(name: &str, witness: impl Into<String>) -> Self {
        LemmaCheck {
            name: name.into(),
            outcome: Outcome::Violated,
            witness: Some(witness.into()),
        }
    }

    /// True unless the conclusion was refuted (vacuous counts as holding).
    pub fn holds(&self) -> bool {
        self.outcome != Outcome::Violated
    }
}

/// Checks `elw_n(X) = (elw_{n-1}(X), chi(X, O_X))` for an integral catalog.
/// For `n = 0` the right side degenerates to `(chi)` since `elw_{-1} = (0)`.
pub fn check_top_relation(c: &CycleCatalog) -> Result<LemmaCheck, CatalogError> {
    c.require_flag(Flag::Integral)?;
    let seq = c.elw_sequence()?;
    let chi = c
        .global_chi
        .clone()
        .expect("validated integral catalog has global_chi");
    let n = c.dimension as i64;
    let top = seq.level(n);
    let expected = seq
        .level(n - 1)
        .sum(&ZIdeal::from_generators([chi.clone()]));
    if top == expected {
        Ok(LemmaCheck::verified("top_relation"))
    } else {
        Ok(LemmaCheck::violated(
            "top_relation",
            format!(
                "elw_{n} = {top} but (elw_{}, chi) = (elw_{}, {chi}) = {expected}",
                n - 1,
                n - 1
            ),
        ))
    }
}

/// Checks `ord_ell elw_n(X) = ord_ell chi(X, O_X)` whenever the valuation
/// actually drops at the top, i.e. `ord_ell elw_n < ord_ell elw_{n-1}`.
/// Without a drop the statement is vacuous and reported as such.
pub fn check_ord_relation(c: &CycleCatalog, ell: u64) -> Result<LemmaCheck, CatalogError> {
    c.require_flag(Flag::Integral)?;
    let seq = c.elw_sequence()?;
    let chi = c
        .global_chi
        .clone()
        .expect("validated integral catalog has global_chi");
    let n = c.dimension as i64;
    let v_top = seq.level(n).ord_ell(ell)?;
    let v_prev = seq.level(n - 1).ord_ell(ell)?;
    let name = "ord_relation";
    if v_top >= v_prev {
        return Ok(LemmaCheck::vacuous(
            name,
            format!(
                "no drop at ell={ell}: ord elw_{n} = {v_top} >= ord elw_{} = {v_prev}",
                n - 1
            ),
        ));
    }
    let v_chi = ZIdeal::from_generators([chi.clone()]).ord_ell(ell)?;
    if v_top == v_chi {
        Ok(LemmaCheck::verified(name))
    } else {
        Ok(LemmaCheck::violated(
            name,
            format!("ord_{ell} elw_{n} = {v_top} but ord_{ell}({chi}) = {v_chi}"),
        ))
    }
}

/// Checks the devissage congruence for a sheaf given by its top-dimensional
/// components: `chi(X, F) - sum(len_i * chi(Z_i))` must lie in
/// `elw_{dim F - 1}(X)`. For a zero-dimensional sheaf membership in
/// `elw_{-1} = (0)` forces exact equality.
pub fn sheaf_chi_check(c: &CycleCatalog, f: &SheafModel) -> Result<bool, CatalogError> {
    c.validate()?;
    if f.dim > c.dimension {
        return Err(CatalogError::DimensionMismatch(format!(
            "sheaf of dim {} on a catalog of dimension {}",
            f.dim, c.dimension
        )));
    }
    let mut leading = BigInt::zero();
    for comp in &f.components {
        let g = c
            .generator(&comp.generator)
            .ok_or_else(|| CatalogError::UnknownGenerator(comp.generator.clone()))?;
        if g.dim != f.dim {
            return Err(CatalogError::DimensionMismatch(format!(
                "component {:?} has dim {} but the sheaf has dim {}",
                comp.generator, g.dim, f.dim
            )));
        }
        if comp.length == 0 {
            return Err(CatalogError::InvalidSheaf(format!(
                "component {:?} has length 0",
                comp.generator
            )));
        }
        leading += BigInt::from(comp.length) * &g.chi;
    }
    let defect = &f.total_chi - leading;
    let seq = c.elw_sequence()?;
    Ok(seq.level(f.dim as i64 - 1).contains_int(&defect))
}

/// Report of all checks applicable to a declared morphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub checks: Vec<LemmaCheck>,
}

impl MorphismReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(LemmaCheck::holds)
    }
}

/// Runs every lemma applicable to the declared morphism:
///
/// * containment `elw_i(source) ⊂ elw_i(target)` for every `i` (all kinds);
/// * for a generically finite map of integral catalogs,
///   `chi(X) - deg * chi(Y) ∈ elw_{dim Y - 1}(Y)`;
/// * for a birational map, `chi(X) - chi(Y) ∈ elw_{dim Y - 1}(Y)`;
/// * for a birational map of normal catalogs, the same difference already
///   lies in `elw_{dim Y - 2}(Y)`.
pub fn morphism_checks(m: &MorphismModel) -> Result<MorphismReport, CatalogError> {
    m.validate()?;
    let sx = m.source.elw_sequence()?;
    let sy = m.target.elw_sequence()?;
    let mut checks = Vec::new();

    let max = sx.dimension().max(sy.dimension()) as i64;
    let mut containment = LemmaCheck::verified("containment");
    for i in 0..=max {
        let (a, b) = (sx.level(i), sy.level(i));
        if !b.contains(&a) {
            containment = LemmaCheck::violated(
                "containment",
                format!("elw_{i}(source) = {a} ⊄ elw_{i}(target) = {b}"),
            );
            break;
        }
    }
    checks.push(containment);

    let dim_y = m.target.dimension as i64;
    let chi_defect = |scale: u64| -> Option<BigInt> {
        let chi_x = m.source.global_chi.as_ref()?;
        let chi_y = m.target.global_chi.as_ref()?;
        Some(chi_x - BigInt::from(scale) * chi_y)
    };
    match m.kind {
        MorphismKind::General => {}
        MorphismKind::GenericallyFinite => {
            let name = "degree_chi_defect";
            let both_integral =
                m.source.has_flag(Flag::Integral) && m.target.has_flag(Flag::Integral);
            match chi_defect(m.degree) {
                Some(defect) if both_integral => {
                    let ideal = sy.level(dim_y - 1);
                    if ideal.contains_int(&defect) {
                        checks.push(LemmaCheck::verified(name));
                    } else {
                        checks.push(LemmaCheck::violated(
                            name,
                            format!("chi defect {defect} ∉ elw_{}(target) = {ideal}", dim_y - 1),
                        ));
                    }
                }
                _ => checks.push(LemmaCheck::vacuous(name, "needs both catalogs integral")),
            }
        }
        MorphismKind::Birational | MorphismKind::BirationalNormal => {
            let level = if m.kind == MorphismKind::Birational {
                dim_y - 1
            } else {
                dim_y - 2
            };
            let name = if m.kind == MorphismKind::Birational {
                "birational_chi_defect"
            } else {
                "normal_birational_chi_defect"
            };
            match chi_defect(1) {
                Some(defect) => {
                    let ideal = sy.level(level);
                    if ideal.contains_int(&defect) {
                        checks.push(LemmaCheck::verified(name));
                    } else {
                        checks.push(LemmaCheck::violated(
                            name,
                            format!("chi defect {defect} ∉ elw_{level}(target) = {ideal}"),
                        ));
                    }
                }
                None => checks.push(LemmaCheck::vacuous(
                    name,
                    "global chi not declared on both sides",
                )),
            }
        }
    }
    Ok(MorphismReport { checks })
}

/// Whether two regular catalogs of equal dimension have identical ELW
/// sequences, as birational regular schemes must.
pub fn check_birational_invariance(
    a: &CycleCatalog,
    b: &CycleCatalog,
) -> Result<bool, CatalogError> {
    a.require_flag(Flag::Regular)?;
    b.require_flag(Flag::Regular)?;
    if a.dimension != b.dimension {
        return Err(CatalogError::DimensionMismatch(format!(
            "catalogs of dimensions {} and {}",
            a.dimension, b.dimension
        )));
    }
    Ok(a.elw_sequence()? == b.elw_sequence()?)
}

/// The degree formula at level `i`:
/// `deg(X/Y) * elw_i(Y) ⊂ elw_i(X) + elw_{i-1}(Y)`, with `elw_{-1}(Y) = (0)`
/// at `i = 0`. The caller attests that `seq_y` comes from an integral regular
/// target.
pub fn degree_formula_check(
    seq_x: &ElwSequence,
    seq_y: &ElwSequence,
    degree: u64,
    i: u64,
) -> Result<bool, CatalogError> {
    assert!(degree >= 1, "degree must be positive");
    let max = seq_x.dimension().min(seq_y.dimension());
    if i > max {
        return Err(CatalogError::IndexOutOfRange { index: i, max });
    }
    let scaled = seq_y.level(i as i64).scale(&BigUint::from(degree));
    let rhs = seq_x.level(i as i64).sum(&seq_y.level(i as i64 - 1));
    Ok(rhs.contains(&scaled))
}

/// The valuation consequence of the degree formula: when `ell` does not
/// divide the degree and the target's valuation drops at level `i`
/// (`ord_ell elw_{i-1}(Y) > ord_ell elw_i(Y)`), source and target must agree:
/// `ord_ell elw_i(X) = ord_ell elw_i(Y)`. Reports which branch was taken.
pub fn rost_corollary_check(
    seq_x: &ElwSequence,
    seq_y: &ElwSequence,
    degree: u64,
    ell: u64,
    i: u64,
) -> Result<LemmaCheck, CatalogError> {
    if !is_prime(ell) {
        return Err(CatalogError::NotPrime(ell));
    }
    let max = seq_x.dimension().min(seq_y.dimension());
    if i > max {
        return Err(CatalogError::IndexOutOfRange { index: i, max });
    }
    let name = "rost_corollary";
    if degree.is_multiple_of(ell) {
        return Ok(LemmaCheck::vacuous(
            name,
            format!("{ell} divides the degree {degree}"),
        ));
    }
    let i = i as i64;
    let vy_prev = seq_y.level(i - 1).ord_ell(ell)?;
    let vy = seq_y.level(i).ord_ell(ell)?;
    if vy_prev <= vy {
        return Ok(LemmaCheck::vacuous(
            name,
            format!(
                "no drop: ord_{ell} elw_{}(Y) = {vy_prev} <= ord_{ell} elw_{i}(Y) = {vy}",
                i - 1
            ),
        ));
    }
    let vx = seq_x.level(i).ord_ell(ell)?;
    if vx == vy {
        Ok(LemmaCheck::verified(name))
    } else {
        Ok(LemmaCheck::violated(
            name,
            format!("ord_{ell} elw_{i}(X) = {vx} but ord_{ell} elw_{i}(Y) = {vy}"),
        ))
    }
}

/// The class of a formal cycle under the Euler-characteristic map
/// `B_r(X) -> elw_r(X)/elw_{r-1}(X)`: the combination of `chi` values reduced
/// modulo the generator of `elw_{r-1}`, or kept exact when that ideal is zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleResidue {
    #[serde(with = "serde_int::bigint")]
    pub value: BigInt,
    pub modulus: ZIdeal,
}

impl CycleResidue {
    /// Whether the residue is an exact integer (modulus was the zero ideal).
    pub fn is_exact(&self) -> bool {
        self.modulus.is_zero()
    }
}

impl fmt::Display for CycleResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{} (exact)", self.value)
        } else {
            write!(f, "{} (mod {})", self.value, self.modulus.generator())
        }
    }
}

/// Evaluates `chi` on a formal `r`-cycle modulo `elw_{r-1}`. Distinct
/// residues certify that two cycles cannot be algebraically equivalent.
pub fn cycle_residue(c: &CycleCatalog, z: &CycleClass) -> Result<CycleResidue, CatalogError> {
    c.validate()?;
    let mut value = BigInt::zero();
    for term in &z.terms {
        let g = c
            .generator(&term.generator)
            .ok_or_else(|| CatalogError::UnknownGenerator(term.generator.clone()))?;
        if g.dim != z.dim {
            return Err(CatalogError::DimensionMismatch(format!(
                "term {:?} has dim {} in a {}-cycle",
                term.generator, g.dim, z.dim
            )));
        }
        value += &term.coefficient * &g.chi;
    }
    let modulus = c.elw_sequence()?.level(z.dim as i64 - 1);
    if !modulus.is_zero() {
        value = value.mod_floor(&BigInt::from(modulus.generator().clone()));
    }
    Ok(CycleResidue { value, modulus })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ToddLevelCheck {
    pub r: u64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToddDivisibilityReport {
    pub levels: Vec<ToddLevelCheck>,
}

impl ToddDivisibilityReport {
    pub fn all_hold(&self) -> bool {
        self.levels.iter().all(|l| l.ok)
    }

    pub fn first_violation(&self) -> Option<u64> {
        self.levels.iter().find(|l| !l.ok).map(|l| l.r)
    }
}

/// Checks `mu_td(r) * elw_r(X) ⊂ elw_0(X)`. Over characteristic zero the
/// containment holds at every `r`, so a `char_zero` catalog is checked over
/// the full range; a merely `regular` catalog is checked at `r = n - 1` only.
/// A failing level means the presentation cannot come from a scheme of the
/// flagged class.
pub fn todd_divisibility_check(c: &CycleCatalog) -> Result<ToddDivisibilityReport, CatalogError> {
    let range: Vec<u64> = if c.has_flag(Flag::CharZero) {
        (0..=c.dimension).collect()
    } else if c.has_flag(Flag::Regular) {
        if c.dimension >= 1 {
            vec![c.dimension - 1]
        } else {
            Vec::new()
        }
    } else {
        return Err(CatalogError::MissingFlag {
            name: c.name.clone(),
            needed: "char_zero (full range) or regular (level n-1)".into(),
        });
    };
    let seq = c.elw_sequence()?;
    let elw0 = seq.level(0);
    let levels = range
        .into_iter()
        .map(|r| {
            let scaled = seq.level(r as i64).scale(&mu_td(r));
            ToddLevelCheck {
                r,
                ok: elw0.contains(&scaled),
            }
        })
        .collect();
    Ok(ToddDivisibilityReport { levels })
}

/// Special-fiber divisibility over a Henselian base: the generic fiber's
/// `chi` must lie in the ideal generated by the component multiplicities.
pub fn henselian_fiber_check(
    chi_generic: &BigInt,
    multiplicities: &[u64],
) -> Result<bool, CatalogError> {
    if multiplicities.is_empty() {
        return Err(CatalogError::EmptyInput("multiplicities"));
    }
    assert!(
        multiplicities.iter().all(|&m| m > 0),
        "multiplicities must be positive"
    );
    let ideal = ZIdeal::from_generators(multiplicities.iter().map(|&m| BigInt::from(m)));
    Ok(ideal.contains_int(chi_generic))
}

/// Over a finite field every level of the sequence is the same ideal; a
/// catalog flagged `finite_field` whose sequence is not constant cannot be
/// realized there.
pub fn finite_field_check(c: &CycleCatalog) -> Result<bool, CatalogError> {
    c.require_flag(Flag::FiniteField)?;
    let seq = c.elw_sequence()?;
    Ok(seq.ideals().windows(2).all(|w| w[0] == w[1]))
}
