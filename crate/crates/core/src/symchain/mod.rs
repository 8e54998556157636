//! Symbolic countable linear orders built as finite sums of `n`, `ω`, `ω*`
//! and `η`, with normalization, finite-distance condensation, isomorphism and
//! embeddability decisions, and the sibling family `η + Σ C_i + η`.

mod decide;
mod family;
mod term;

pub use decide::{condensation, embeds, iso_decide, CondClass, Condensation, EmbedVerdict, IsoVerdict};
pub use family::{
    pairwise_noniso, sample_finite, sibling_chain, sibling_chain_with, PairVerdict, SiblingEnds,
    SiblingReport,
};
pub use term::{Atom, OrderTerm, Rule};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("finite blocks must have at least one point")]
    EmptyFinite,
    #[error("term contains η, condensation is defined on scattered terms only")]
    NotScattered,
    #[error("sibling strings must be nonempty")]
    EmptyString,
    #[error("sibling strings are binary, found `{0}`")]
    NotBinary(char),
    #[error("sample of size {size} needs at least {needed} points")]
    SampleTooSmall { size: usize, needed: usize },
    #[error("finite term has {max} points, {size} requested")]
    SampleTooLarge { size: usize, max: usize },
    #[error("cannot parse order term `{0}`")]
    Parse(String),
}
