//! Exact arithmetic on Esnault-Levine-Wittenberg index sequences.
//!
//! For a proper scheme `X` over a field, the ELW index `elw_i(X)` is the ideal
//! of the integers generated by the Euler characteristics `chi(X, F)` of
//! coherent sheaves of dimension at most `i`. By devissage this ideal is
//! already generated by the `chi(Z, O_Z)` of integral subvarieties `Z` of
//! dimension at most `i`, so the whole chain
//!
//! ```text
//! elw_0(X) ⊂ elw_1(X) ⊂ ... ⊂ elw_dim(X)
//! ```
//!
//! is computable from a finite list of `(dim Z, chi(Z, O_Z))` pairs. This
//! crate works with exactly that data:
//!
//! * [`zideal`]: ideals of ℤ in canonical nonnegative-generator form, the
//!   value type of every index;
//! * [`todd`]: the Todd-class denominator `mu_td(n)` and its divisibility
//!   identities;
//! * [`catalog`]: cycle catalogs (finite presentations of proper schemes),
//!   ELW sequence computation, and verifiers for the divisibility and
//!   congruence lemmas that constrain sequences of honest schemes;
//! * [`engines`]: closed-form Euler-characteristic calculators and builders
//!   reconstructing the worked example families (Severi-Brauer varieties,
//!   products of conics and curves, real double covers, the real quadric
//!   threefold, K3 line bundles);
//! * [`admissibility`]: checkers and an enumerator for the conjectured
//!   constraints on which sequences can occur at all.
//!
//! All arithmetic is exact; integers are arbitrary precision throughout.
//!
//! ```
//! use elwlab::engines::conic_product_catalog;
//!
//! let built = conic_product_catalog(3);
//! let seq = built.catalog.elw_sequence()?;
//! assert_eq!(seq.to_string(), "(2),(2),(2),(1)");
//! assert_eq!(seq, built.expected);
//! # Ok::<(), elwlab::catalog::CatalogError>(())
//! ```

pub mod admissibility;
pub mod arith;
pub mod catalog;
pub mod engines;
pub mod todd;
pub mod zideal;

mod serde_int;

pub use catalog::{
    CycleCatalog, CycleClass, CycleGenerator, ElwSequence, Flag, MorphismKind, MorphismModel,
    SheafModel,
};
pub use zideal::{Valuation, ZIdeal};
