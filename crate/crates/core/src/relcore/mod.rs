//! Finite relational structures: restriction, local isomorphisms, and exact
//! isomorphism / embedding / automorphism search.

mod canonical;
mod enumerate;
mod iso;
mod structure;

pub use canonical::{canonical_key, CanonKey};
pub use enumerate::{
    enumerate_structures, graphs, ordered_graphs, random_structures, EnumOptions, StructureIter,
    DEFAULT_ENUM_BUDGET_BITS,
};
pub use iso::{
    automorphisms, find_embedding, find_isomorphism, is_local_iso, PartialMap,
    DEFAULT_AUTOMORPHISM_BOUND,
};
pub use structure::{
    digraph, graph, RelStruct, RelationFile, RelationSymbol, Signature, StructureFile, Tuple,
    DEFAULT_ARITY_CEILING,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelError {
    #[error("relation `{name}` has arity {arity}, allowed range is 1..={ceiling}")]
    BadArity {
        name: String,
        arity: usize,
        ceiling: usize,
    },
    #[error("duplicate relation name `{0}`")]
    DuplicateName(String),
    #[error("no relation with index {0}")]
    UnknownRelation(usize),
    #[error("expected {expected} relation tables, got {got}")]
    TableCount { expected: usize, got: usize },
    #[error("tuple for `{name}` has length {got}, arity is {arity}")]
    TupleLength {
        name: String,
        arity: usize,
        got: usize,
    },
    #[error("element {index} out of range for domain of size {n}")]
    OutOfRange { index: usize, n: usize },
    #[error("element {0} listed twice")]
    DuplicateElement(usize),
    #[error("partial map is not injective (image {0} repeated)")]
    NotInjective(usize),
    #[error("signatures differ")]
    SignatureMismatch,
    #[error("{what}: {got} exceeds bound {bound}")]
    BoundExceeded {
        what: &'static str,
        got: usize,
        bound: usize,
    },
    #[error("malformed structure json: {0}")]
    Json(String),
}
