//! Exact computations with involutive knot Floer complexes over `F2[U, U^-1]`.
//!
//! The crate validates ι-complexes, builds duals, direct sums and the two
//! tensor products, decides local equivalence with checkable certificates,
//! and splits a locally trivial complex into a unit summand plus an acyclic
//! summand with an involution that respects the splitting.
//!
//! Everything reduces to linear algebra over F2 (see [`gf2`]): the power of
//! `U` on every matrix coefficient is fixed by the gradings, so it is never
//! stored.

pub mod cli;
pub mod complex;
pub mod constructions;
pub mod corpus;
pub mod gf2;
pub mod io;
pub mod localeq;
pub mod random;
pub mod splitting;

pub use complex::{
    homology_type, phi, psi, validate, Character, Generator, GradedMap, HomologyTag, HomologyType,
    IotaComplex, Parity, RawComplex, ValidationError, ValidationLevel,
};
pub use constructions::{direct_sum, dual, identity_complex, tensor, Variant};
pub use localeq::{decide_local_equivalence, LocalEquivCertificate, LocalEquivalence};
pub use splitting::{split_complex, split_involution, stable_witness, SplitResult};
