//! Relevant consequence relations over finite multisets.
//!
//! Tree proofs and symmetric derivations in axiomatic systems, semantic
//! oracles (finite matrices, integer Abelian logic), an executable battery of
//! structural laws, and the monoid of principal theories.

pub mod json;
pub mod laws;
pub mod multiset;
pub mod oracle;
pub mod semantics;
pub mod symmetric;
pub mod syntax;
pub mod theory;
pub mod treeproof;

pub use multiset::FMultiset;
pub use oracle::{ConsequenceOracle, SymmetricOracle, Verdict};
pub use syntax::{Formula, Multiset};

/// Seed used when neither a flag nor `RELCON_SEED` supplies one.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;
