//! Finite p-groups with derived subgroup of order p, and the normalized unit
//! groups of their modular group algebras.
//!
//! The group class: p an odd prime, nilpotency class at most 2, derived
//! subgroup of order p, and center containing a subgroup N isomorphic to
//! Z_{p^n} x Z_{p^m} such that the quotient G/center is elementary abelian.
//! Such groups decompose into central products of two-generator building
//! blocks, enumerated here as a catalog of nineteen parameterized types.
//!
//! Module map:
//! - [`fp`]: arithmetic mod p and small exact linear algebra.
//! - [`pcgroup`]: polycyclic presentations, element enumeration, symplectic
//!   structure on G/center, central products, isomorphism fingerprints.
//! - [`catalog`]: the nineteen types, admissible parameter sweeps,
//!   per-entry verification, and a serialized catalog format.
//! - [`algebra`]: the modular group algebra F_p[G], its augmentation
//!   ideals, class sums, Lie structure, and normalized units.
//! - [`theorems`]: seeded and exhaustive checks of the structural results
//!   about V(F_p[G]): center order, power maps, the direct decomposition
//!   of central units, and the omega layers.
//! - [`cli`]: the `pgu` command line (catalog, group, verify).
//! - [`rng`]: deterministic seed derivation for reproducible reports.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod fp;
pub mod pcgroup;
pub mod rng;
pub mod theorems;
