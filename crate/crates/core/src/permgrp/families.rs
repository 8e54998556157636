//! The five canonical group families on `0..n`: symmetric, trivial, reversal,
//! cyclic and dihedral, and classification against them.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{closure, Perm, PermError, PermGroup, DEFAULT_ORDER_BOUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupLabel {
    /// Full symmetric group.
    S,
    /// Identity only.
    I,
    /// Identity and the reversal `k ↦ n-1-k`.
    J,
    /// Rotations.
    T,
    /// Rotations and reflections.
    D,
}

impl GroupLabel {
    pub const ALL: [GroupLabel; 5] = [
        GroupLabel::S,
        GroupLabel::I,
        GroupLabel::J,
        GroupLabel::T,
        GroupLabel::D,
    ];

    /// Order of the family member of degree `n`.
    pub fn order(self, n: usize) -> usize {
        match self {
            GroupLabel::S => (1..=n).product(),
            GroupLabel::I => 1,
            GroupLabel::J => {
                if n >= 2 {
                    2
                } else {
                    1
                }
            }
            GroupLabel::T => n.max(1),
            GroupLabel::D => match n {
                0 | 1 => 1,
                2 => 2,
                _ => 2 * n,
            },
        }
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupLabel::S => "S",
            GroupLabel::I => "I",
            GroupLabel::J => "J",
            GroupLabel::T => "T",
            GroupLabel::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for GroupLabel {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "S" | "s" => Ok(GroupLabel::S),
            "I" | "i" => Ok(GroupLabel::I),
            "J" | "j" => Ok(GroupLabel::J),
            "T" | "t" => Ok(GroupLabel::T),
            "D" | "d" => Ok(GroupLabel::D),
            other => Err(PermError::InvalidParameter(format!(
                "unknown group label `{other}`"
            ))),
        }
    }
}

/// The member of degree `n` of the family `label`.
pub fn canonical_group(label: GroupLabel, n: usize) -> Result<PermGroup, PermError> {
    let gens: Vec<Perm> = match label {
        GroupLabel::S if n >= 2 => vec![Perm::transposition(n, 0, 1), Perm::rotation(n, 1)],
        GroupLabel::J if n >= 2 => vec![Perm::reversal(n)],
        GroupLabel::T if n >= 2 => vec![Perm::rotation(n, 1)],
        GroupLabel::D if n >= 2 => vec![Perm::rotation(n, 1), Perm::reversal(n)],
        _ => Vec::new(),
    };
    closure(n, &gens, DEFAULT_ORDER_BOUND)
}

/// All labels whose family member of the same degree equals `g`; empty means
/// "other".
pub fn classify(g: &PermGroup) -> BTreeSet<GroupLabel> {
    let n = g.degree();
    GroupLabel::ALL
        .into_iter()
        .filter(|&label| {
            label.order(n) == g.order()
                && canonical_group(label, n).is_ok_and(|c| c == *g)
        })
        .collect()
}

/// Minimum sequence length for [`classify_sequence`]: at degree 4 the five
/// family orders (24, 1, 2, 4, 8) are pairwise distinct.
pub const MIN_SEQUENCE_LEN: usize = 4;

/// The unique family matching `seq` termwise (degrees `1..=len`), or `None`.
pub fn classify_sequence(seq: &[PermGroup]) -> Result<Option<GroupLabel>, PermError> {
    if seq.len() < MIN_SEQUENCE_LEN {
        return Err(PermError::SequenceTooShort {
            len: seq.len(),
            min: MIN_SEQUENCE_LEN,
        });
    }
    for (i, g) in seq.iter().enumerate() {
        if g.degree() != i + 1 {
            return Err(PermError::DegreeMismatch {
                expected: i + 1,
                got: g.degree(),
            });
        }
    }
    let labels: Vec<BTreeSet<GroupLabel>> = seq.iter().map(classify).collect();
    let matching: Vec<GroupLabel> = GroupLabel::ALL
        .into_iter()
        .filter(|l| labels.iter().all(|set| set.contains(l)))
        .collect();
    debug_assert!(matching.len() <= 1);
    Ok(matching.first().copied())
}
