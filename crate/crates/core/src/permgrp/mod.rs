//! Explicit permutation groups on small domains.

mod duality;
mod families;
mod group;
mod perm;

pub use duality::{example_pair_structure, sorting_perm, verify_duality, DualityReport, PairKind};
pub use families::{canonical_group, classify, classify_sequence, GroupLabel, MIN_SEQUENCE_LEN};
pub use group::{closure, PermGroup, DEFAULT_ORDER_BOUND};
pub use perm::{Perm, MAX_DEGREE};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("image vector {0:?} is not a permutation")]
    NotBijective(Vec<usize>),
    #[error("degree {0} exceeds the supported maximum")]
    DegreeTooLarge(usize),
    #[error("expected degree {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("point {point} out of range for degree {n}")]
    PointOutOfRange { point: usize, n: usize },
    #[error("group order exceeds bound {bound}")]
    OrderBound { bound: usize },
    #[error("set {0:?} is not invariant under the group")]
    NotInvariant(Vec<usize>),
    #[error("sequence of length {len} is shorter than {min}")]
    SequenceTooShort { len: usize, min: usize },
    #[error("{0}")]
    InvalidParameter(String),
}
