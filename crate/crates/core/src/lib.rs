//! Finite Heyting algebras, their centrally supplemented extensions and
//! hyper-MacNeille completions.
//!
//! Every algebra is finite and stored as precomputed operation tables over a
//! canonical element ordering (see [`lattice`]). The higher modules build on
//! one another:
//!
//! - [`duality`]: prime filters, the minimal prime filters `Y`, the quotients
//!   `A_y` and the subdirect embedding `A ≤ ∏_Y A_y`.
//! - [`extension`]: the centrally supplemented extension `S(A)` inside that
//!   product, with its distinguished sublattices and S-homomorphisms.
//! - [`frames`]: polarities, Heyting frames and their Galois-closed sets; the
//!   hyper-MacNeille completion `A⁺`.
//! - [`macneille`]: an independent cut-based Dedekind–MacNeille oracle.
//! - [`terms`]: equations over the Heyting-with-supplement signature.
//! - [`products`]: weak Boolean product predicates and stalks.
//! - [`corpus`]: enumeration, fixtures and persistence of test algebras.
//! - [`suite`]: the corpus-wide property checks behind the `hmn suite` command.

pub mod bitset;
pub mod corpus;
pub mod duality;
pub mod error;
pub mod extension;
pub mod frames;
pub mod iso;
pub mod lattice;
pub mod macneille;
pub mod order;
pub mod products;
pub mod report;
pub mod suite;
pub mod terms;

/// Index of an element in an algebra's canonical carrier ordering.
pub type Elem = usize;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use lattice::{FiniteLattice, HeytingAlgebra};
pub use order::Poset;

#[cfg(test)]
pub(crate) mod testing {
    pub use crate::corpus::fixtures::*;
}
