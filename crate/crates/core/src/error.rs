use std::path::PathBuf;

use thiserror::Error;

use crate::Elem;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),

    #[error("no {op} for elements {a} and {b}")]
    NotALattice { op: &'static str, a: Elem, b: Elem },

    #[error("distributivity fails at ({x}, {y}, {z}): x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)")]
    NotDistributive { x: Elem, y: Elem, z: Elem },

    #[error("element {0} is not central")]
    NotCentral(Elem),

    #[error("map is not a bounded lattice homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error(
        "map is not an S-homomorphism: {a} and {b} share a co-annihilator but their images do not"
    )]
    NotSHom { a: Elem, b: Elem },

    #[error("algebra is not centrally supplemented: (x ∨ y)⁺ ≠ x⁺ ∧ y⁺ at ({x}, {y})")]
    NotCentrallySupplemented { x: Elem, y: Elem },

    #[error("frame axiom ({axiom}) fails at w={w}, v={v}, u={u}")]
    FrameAxiomViolation {
        axiom: u8,
        w: usize,
        v: usize,
        u: usize,
    },

    #[error("operation {0} is not available on this structure")]
    UnsupportedOperation(&'static str),

    #[error("invariant `{check}` violated: {witness}")]
    InvariantBreach { check: String, witness: String },

    #[error("resource limit exceeded: {what} would exceed {limit}")]
    ResourceLimit { what: &'static str, limit: usize },

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{}: bad `{field}`: {msg}", file.display())]
    Format {
        file: PathBuf,
        field: String,
        msg: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn breach(check: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::InvariantBreach {
            check: check.into(),
            witness: witness.into(),
        }
    }
}
