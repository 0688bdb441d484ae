//! Construction and verification of oriented regular representations
//! of finite groups.
//!
//! A Cayley digraph Cay(G, S) has one vertex per group element and an
//! arc from x to s·x for every s in the connection set S. The digraph is
//! an oriented regular representation (ORR) of G when S ∩ S⁻¹ = ∅ (no
//! digons) and the full automorphism group of the digraph is exactly the
//! right regular action of G, or equivalently the stabilizer of the
//! identity vertex is trivial and S generates G.
//!
//! The crate accepts groups as multiplication tables or permutation
//! generators, analyzes their structure, builds candidate connection
//! sets from a library of case-by-case constructions, certifies every
//! positive answer with an automorphism-group search, and falls back to
//! exhaustive enumeration of oriented sets at small order. A short list
//! of groups admits no ORR at all; these are recognized explicitly.

pub mod aut;
pub mod bits;
pub mod cayley;
pub mod construct;
pub mod error;
pub mod genset;
pub mod group;
pub mod oracle;
pub mod report;

pub use error::{OrrError, Result};
pub use group::{Elem, GroupTable, StructureReport};
