//! Finite p-groups of class at most 2 with derived subgroup of order p:
//! presentations, element enumeration, invariants, and constructions.

pub mod central_product;
pub mod classify;
pub mod enumeration;
pub mod fingerprint;
pub mod inner_abelian;
pub mod presentation;
pub mod symplectic;

pub use central_product::{central_product, direct_product, CentralProductError};
pub use classify::{classify_center, CenterClass, CenterClassification, ClassifyError};
pub use enumeration::{Enumeration, EnumerationError, Subgroup};
pub use fingerprint::{
    fingerprint, is_isomorphic_bruteforce, minimal_generators, Fingerprint, OracleError,
    DEFAULT_ISO_BOUND,
};
pub use symplectic::{darboux_pairs, symplectic_basis, symplectic_form, SymplecticError, SymplecticForm};
pub use inner_abelian::{abelian, cyclic, mp, mp1, BuildError};
pub use presentation::{
    ConsistencyViolation, Generator, GroupElement, PcPresentation, PresentationError,
};
