//! Cycle catalogs: finite presentations of proper schemes.
//!
//! A catalog lists integral subvarieties as `(dim, chi)` generators. That is
//! exactly the data devissage needs: the index `elw_i` is the ideal generated
//! by the `chi` values of all generators of dimension at most `i`. A catalog
//! is a *presentation*, not a scheme: nothing here deduces the existence of
//! subvarieties, and the verifier operations in [`checks`] diagnose whether a
//! presentation is consistent with coming from a scheme of the flagged class
//! rather than raising errors when a lemma fails.

use crate::serde_int;
use crate::zideal::ZIdeal;
use num_bigint::BigInt;
use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

mod checks;

pub use checks::{
    check_birational_invariance, check_ord_relation, check_top_relation, cycle_residue,
    degree_formula_check, finite_field_check, henselian_fiber_check, morphism_checks,
    rost_corollary_check, sheaf_chi_check, todd_divisibility_check, CycleResidue, LemmaCheck,
    MorphismReport, Outcome, ToddDivisibilityReport, ToddLevelCheck,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("invalid catalog {name:?}: {reason}")]
    InvalidCatalog { name: String, reason: String },
    #[error("catalog {name:?} is missing required flag: {needed}")]
    MissingFlag { name: String, needed: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("level {index} out of range (sequences end at level {max})")]
    IndexOutOfRange { index: u64, max: u64 },
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("invalid sheaf model: {0}")]
    InvalidSheaf(String),
    #[error("broken chain: elw_{level} does not contain elw_{}", level - 1)]
    BrokenChain { level: u64 },
}

/// Class flags a presentation claims for its scheme. The verifiers use them
/// as preconditions: a failed check under a flag means no scheme of that
/// class has this presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    Integral,
    Regular,
    CharZero,
    FiniteField,
    Smooth,
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flag::Integral => "integral",
            Flag::Regular => "regular",
            Flag::CharZero => "char_zero",
            Flag::FiniteField => "finite_field",
            Flag::Smooth => "smooth",
        })
    }
}

/// One integral subvariety `Z` of the presentation: its dimension and
/// `chi(Z, O_Z)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleGenerator {
    pub name: String,
    pub dim: u64,
    #[serde(with = "serde_int::bigint")]
    pub chi: BigInt,
}

/// Finite presentation of a proper scheme `X`: ambient dimension, class
/// flags, `chi(X, O_X)` when `X` is integral, and the generator list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCatalog {
    pub name: String,
    pub dimension: u64,
    #[serde(default)]
    pub flags: BTreeSet<Flag>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "serde_int::bigint_opt"
    )]
    pub global_chi: Option<BigInt>,
    pub generators: Vec<CycleGenerator>,
}

impl CycleCatalog {
    pub fn has_flag(&self, flag: Flag) -> bool {
        self.flags.contains(&flag)
    }

    /// First generator with the given name, if any.
    pub fn generator(&self, name: &str) -> Option<&CycleGenerator> {
        self.generators.iter().find(|g| g.name == name)
    }

    pub(crate) fn require_flag(&self, flag: Flag) -> Result<(), CatalogError> {
        if self.has_flag(flag) {
            Ok(())
        } else {
            Err(CatalogError::MissingFlag {
                name: self.name.clone(),
                needed: flag.to_string(),
            })
        }
    }

    /// Checks the presentation invariants: every generator fits inside the
    /// ambient dimension, and an integral catalog declares `chi(X, O_X)`
    /// together with a top-dimensional generator carrying that value (`X` is
    /// its own integral subvariety).
    pub fn validate(&self) -> Result<(), CatalogError> {
        let fail = |reason: String| CatalogError::InvalidCatalog {
            name: self.name.clone(),
            reason,
        };
        for g in &self.generators {
            if g.dim > self.dimension {
                return Err(fail(format!(
                    "generator {:?} has dim {} above the catalog dimension {}",
                    g.name, g.dim, self.dimension
                )));
            }
        }
        if self.has_flag(Flag::Integral) {
            let chi = self
                .global_chi
                .as_ref()
                .ok_or_else(|| fail("integral catalog without global_chi".into()))?;
            let top_present = self
                .generators
                .iter()
                .any(|g| g.dim == self.dimension && &g.chi == chi);
            if !top_present {
                return Err(fail(format!(
                    "integral catalog lacks a generator with dim {} and chi {}",
                    self.dimension, chi
                )));
            }
        }
        Ok(())
    }

    /// The ELW sequence of the presentation: level `i` is the ideal generated
    /// by the `chi` of every generator of dimension at most `i`. A level with
    /// no generators below it is the zero ideal. The chain invariant holds by
    /// construction since the generating sets are nested.
    pub fn elw_sequence(&self) -> Result<ElwSequence, CatalogError> {
        self.validate()?;
        let mut ideals = Vec::with_capacity(self.dimension as usize + 1);
        let mut running = ZIdeal::zero();
        for i in 0..=self.dimension {
            let at_level = self
                .generators
                .iter()
                .filter(|g| g.dim == i)
                .map(|g| g.chi.clone());
            running = running.sum(&ZIdeal::from_generators(at_level));
            ideals.push(running.clone());
        }
        Ok(ElwSequence { ideals })
    }
}

/// The chain `elw_0 ⊂ elw_1 ⊂ ... ⊂ elw_n` as a vector of ideals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElwSequence {
    ideals: Vec<ZIdeal>,
}

impl ElwSequence {
    /// Builds a sequence from explicit ideals, checking the chain invariant.
    pub fn from_ideals(ideals: Vec<ZIdeal>) -> Result<Self, CatalogError> {
        if ideals.is_empty() {
            return Err(CatalogError::EmptyInput("a sequence needs at least elw_0"));
        }
        for (i, pair) in ideals.windows(2).enumerate() {
            if !pair[1].contains(&pair[0]) {
                return Err(CatalogError::BrokenChain {
                    level: i as u64 + 1,
                });
            }
        }
        Ok(ElwSequence { ideals })
    }

    pub fn dimension(&self) -> u64 {
        self.ideals.len() as u64 - 1
    }

    pub fn ideals(&self) -> &[ZIdeal] {
        &self.ideals
    }

    pub fn ideal(&self, i: u64) -> Option<&ZIdeal> {
        self.ideals.get(i as usize)
    }

    /// `elw_i` with the standard conventions outside the range: negative `i`
    /// gives the zero ideal (`elw_{-1} = (0)`), and `i` above the dimension
    /// clamps to the top (sheaf dimensions cannot exceed `dim X`).
    pub fn level(&self, i: i64) -> ZIdeal {
        if i < 0 {
            ZIdeal::zero()
        } else {
            let i = (i as usize).min(self.ideals.len() - 1);
            self.ideals[i].clone()
        }
    }

    pub fn top(&self) -> &ZIdeal {
        self.ideals.last().expect("sequence is nonempty")
    }
}

impl fmt::Display for ElwSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ideal in &self.ideals {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{ideal}")?;
            first = false;
        }
        Ok(())
    }
}

// Serializes as the bare array of generators, elw_0 first.
impl Serialize for ElwSequence {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.ideals.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ElwSequence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let ideals = Vec::<ZIdeal>::deserialize(d)?;
        ElwSequence::from_ideals(ideals).map_err(serde::de::Error::custom)
    }
}

/// A coherent sheaf presented by its top-dimensional components (with
/// lengths at the generic points) and its total Euler characteristic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheafModel {
    pub dim: u64,
    pub components: Vec<SheafComponent>,
    #[serde(with = "serde_int::bigint")]
    pub total_chi: BigInt,
}

/// One maximal-dimensional component: a generator reference and the length
/// of the sheaf at its generic point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheafComponent {
    pub generator: String,
    pub length: u64,
}

/// Kind of a declared map between catalogs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MorphismKind {
    General,
    GenericallyFinite,
    Birational,
    BirationalNormal,
}

impl fmt::Display for MorphismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MorphismKind::General => "general",
            MorphismKind::GenericallyFinite => "generically_finite",
            MorphismKind::Birational => "birational",
            MorphismKind::BirationalNormal => "birational_normal",
        })
    }
}

/// A declared morphism `source -> target` against which the degree and
/// containment lemmas are verified. Normalizations and birational transforms
/// are user-declared here, never computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismModel {
    pub source: CycleCatalog,
    pub target: CycleCatalog,
    pub kind: MorphismKind,
    pub degree: u64,
}

impl MorphismModel {
    pub fn validate(&self) -> Result<(), CatalogError> {
        self.source.validate()?;
        self.target.validate()?;
        if self.degree == 0 {
            return Err(CatalogError::InvalidMorphism(
                "degree must be positive".into(),
            ));
        }
        if self.kind != MorphismKind::General && self.source.dimension != self.target.dimension {
            return Err(CatalogError::InvalidMorphism(format!(
                "{} morphism between dimensions {} and {}",
                self.kind, self.source.dimension, self.target.dimension
            )));
        }
        if matches!(
            self.kind,
            MorphismKind::Birational | MorphismKind::BirationalNormal
        ) && self.degree != 1
        {
            return Err(CatalogError::InvalidMorphism(format!(
                "{} morphism must have degree 1, got {}",
                self.kind, self.degree
            )));
        }
        Ok(())
    }
}

/// A formal `r`-cycle: integer combination of generators, all of dimension `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleClass {
    pub dim: u64,
    pub terms: Vec<CycleTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleTerm {
    pub generator: String,
    #[serde(with = "serde_int::bigint")]
    pub coefficient: BigInt,
}
