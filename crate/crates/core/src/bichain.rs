//! Bichains and their indicative groups.
//!
//! A bichain on `0..n` carries the natural order and a second order given by
//! the rank of each element. For an `m`-subset `a_0 < … < a_{m-1}` the reorder
//! permutation `σ` lists positions by second-order rank:
//! `a_{σ(0)} <' a_{σ(1)} <' …`. The indicative group `Ind_m(B)` is generated
//! by the reorder permutations of all `m`-subsets.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::permgrp::{
    canonical_group, closure, sorting_perm, GroupLabel, Perm, PermError, PermGroup,
    DEFAULT_ORDER_BOUND, MAX_DEGREE,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BichainError {
    #[error("subset size {m} out of range 1..={n}")]
    SizeOutOfRange { m: usize, n: usize },
    #[error("unknown bichain pattern `{0}`")]
    UnknownPattern(String),
    #[error("bichain size {0} exceeds the supported maximum")]
    TooLarge(usize),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bichain {
    second: Perm,
}

impl Bichain {
    /// `ranks[x]` is the position of `x` in the second order.
    pub fn from_ranks(ranks: &[usize]) -> Result<Self, BichainError> {
        Ok(Bichain {
            second: Perm::from_images(ranks)?,
        })
    }

    pub fn identity(n: usize) -> Self {
        Bichain {
            second: Perm::identity(n),
        }
    }

    pub fn len(&self) -> usize {
        self.second.degree()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.second.images()
    }

    pub fn second(&self) -> &Perm {
        &self.second
    }

    /// Reorder permutation of a subset listed in increasing natural order.
    pub fn reorder(&self, subset: &[usize]) -> Perm {
        let ranks: Vec<usize> = subset.iter().map(|&x| self.second.apply(x)).collect();
        sorting_perm(&ranks)
    }

    /// Reorder permutation of the whole domain.
    pub fn full_reorder(&self) -> Perm {
        self.second.inverse()
    }

    /// The sub-bichain on a subset, relabelled in natural order.
    pub fn restrict(&self, subset: &[usize]) -> Result<Bichain, BichainError> {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&x) = sorted.iter().find(|&&x| x >= self.len()) {
            return Err(PermError::PointOutOfRange { point: x, n: self.len() }.into());
        }
        let ranks = self.reorder(&sorted).inverse();
        Ok(Bichain { second: ranks })
    }

    /// Places `other` above `self` in both orders.
    pub fn stack(&self, other: &Bichain) -> Bichain {
        let offset = self.len();
        let mut ranks = self.ranks();
        ranks.extend(other.ranks().into_iter().map(|r| r + offset));
        Bichain {
            second: Perm::from_images(&ranks).expect("stacked ranks are a permutation"),
        }
    }
}

/// `Ind_m(B)`.
pub fn indicative_group(b: &Bichain, m: usize) -> Result<PermGroup, BichainError> {
    let n = b.len();
    if m == 0 || m > n {
        return Err(BichainError::SizeOutOfRange { m, n });
    }
    let sigmas: BTreeSet<Perm> = (0..n)
        .into_par_iter()
        .map(|first| {
            (first + 1..n)
                .combinations(m - 1)
                .map(|rest| {
                    let mut subset = Vec::with_capacity(m);
                    subset.push(first);
                    subset.extend(rest);
                    b.reorder(&subset)
                })
                .collect::<BTreeSet<Perm>>()
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let gens: Vec<Perm> = sigmas.into_iter().collect();
    Ok(closure(m, &gens, DEFAULT_ORDER_BOUND)?)
}

/// `[Ind_1(B), …, Ind_{m_max}(B)]`.
pub fn indicative_sequence(b: &Bichain, m_max: usize) -> Result<Vec<PermGroup>, BichainError> {
    if m_max > b.len() {
        return Err(BichainError::SizeOutOfRange { m: m_max, n: b.len() });
    }
    (1..=m_max).map(|m| indicative_group(b, m)).collect()
}

/// A bichain on `0..m` whose full reorder permutation is `sigma`.
///
/// Elements are placed one at a time in the order `sigma(0), sigma(1), …`;
/// each sits between its natural-order neighbours and above everything
/// placed so far in the second order.
pub fn realize_permutation(sigma: &Perm) -> Bichain {
    let mut ranks = vec![0; sigma.degree()];
    for (placed, &x) in sigma.images().iter().enumerate() {
        ranks[x] = placed;
    }
    Bichain {
        second: Perm::from_images(&ranks).expect("each element placed once"),
    }
}

/// Generators of `S(m)`: adjacent transpositions and the `m`-cycle.
fn symmetric_generators(m: usize) -> Vec<Perm> {
    let mut gens: Vec<Perm> = (0..m.saturating_sub(1))
        .map(|i| Perm::transposition(m, i, i + 1))
        .collect();
    gens.push(Perm::rotation(m, 1));
    gens
}

/// Blocks realizing the generators of `S(m)`, stacked in both orders; the
/// result is checked to have `Ind_m = S(m)`.
pub fn realize_generating_witness(m: usize) -> Result<Bichain, BichainError> {
    if m == 0 {
        return Err(BichainError::SizeOutOfRange { m, n: 0 });
    }
    let b = symmetric_generators(m)
        .iter()
        .map(realize_permutation)
        .reduce(|acc, block| acc.stack(&block))
        .expect("at least one generator");
    let group = indicative_group(&b, m)?;
    if group != canonical_group(GroupLabel::S, m)? {
        return Err(BichainError::Invariant(format!(
            "witness for m = {m} generates a group of order {}",
            group.order()
        )));
    }
    Ok(b)
}

/// Named bichain families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pattern {
    Identity,
    Reverse,
    /// `x ↦ x + k (mod n)`.
    Rotate(usize),
    /// `x ↦ k - x (mod n)`.
    RotateReverse(usize),
    /// Consecutive blocks of the given size, each reversed.
    BlockReversal(usize),
    /// Repeated blocks realizing the generators of `S(4)`.
    DenseVsOmega,
    /// Seeded uniform permutation.
    Random,
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Identity => write!(f, "identity"),
            Pattern::Reverse => write!(f, "reverse"),
            Pattern::Rotate(k) => write!(f, "rotate:{k}"),
            Pattern::RotateReverse(k) => write!(f, "rotate-reverse:{k}"),
            Pattern::BlockReversal(k) => write!(f, "block-reversal:{k}"),
            Pattern::DenseVsOmega => write!(f, "dense-vs-omega"),
            Pattern::Random => write!(f, "random"),
        }
    }
}

impl FromStr for Pattern {
    type Err = BichainError;

    /// Accepts `rotate:k` and `rotate(k)` alike.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || BichainError::UnknownPattern(s.to_string());
        let s = s.trim();
        let (name, arg) = match s.find([':', '(']) {
            Some(i) => {
                let arg = s[i + 1..].trim_end_matches(')');
                (&s[..i], Some(arg.parse::<usize>().map_err(|_| unknown())?))
            }
            None => (s, None),
        };
        match (name, arg) {
            ("identity", None) => Ok(Pattern::Identity),
            ("reverse", None) => Ok(Pattern::Reverse),
            ("rotate", Some(k)) => Ok(Pattern::Rotate(k)),
            ("rotate", None) => Ok(Pattern::Rotate(1)),
            ("rotate-reverse" | "rotate+reverse", Some(k)) => Ok(Pattern::RotateReverse(k)),
            ("rotate-reverse" | "rotate+reverse", None) => Ok(Pattern::RotateReverse(1)),
            ("block-reversal", Some(k)) if k > 0 => Ok(Pattern::BlockReversal(k)),
            ("dense-vs-omega", None) => Ok(Pattern::DenseVsOmega),
            ("random" | "generic", None) => Ok(Pattern::Random),
            _ => Err(unknown()),
        }
    }
}

/// Deterministic sample of `pattern` on `n` points; only `Random` uses `seed`.
pub fn sample_bichain(pattern: Pattern, n: usize, seed: u64) -> Result<Bichain, BichainError> {
    if n > MAX_DEGREE {
        return Err(BichainError::TooLarge(n));
    }
    let ranks: Vec<usize> = match pattern {
        Pattern::Identity => (0..n).collect(),
        Pattern::Reverse => (0..n).rev().collect(),
        Pattern::Rotate(k) => (0..n).map(|i| (i + k) % n).collect(),
        Pattern::RotateReverse(k) => (0..n).map(|i| (k % n + n - i) % n).collect(),
        Pattern::BlockReversal(size) => (0..n)
            .map(|i| {
                let start = i / size * size;
                let end = (start + size).min(n);
                start + end - 1 - i
            })
            .collect(),
        Pattern::DenseVsOmega => {
            let blocks: Vec<Bichain> = symmetric_generators(4).iter().map(realize_permutation).collect();
            let mut ranks = Vec::with_capacity(n);
            for (i, block) in blocks.iter().cycle().enumerate() {
                let start = i * 4;
                if start >= n {
                    break;
                }
                if start + 4 <= n {
                    ranks.extend(block.ranks().into_iter().map(|r| r + start));
                } else {
                    ranks.extend(start..n);
                }
            }
            ranks
        }
        Pattern::Random => {
            let mut ranks: Vec<usize> = (0..n).collect();
            ranks.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            ranks
        }
    };
    Bichain::from_ranks(&ranks)
}

/// Whether `Ind_m(B) ⊆ label(m)` for every `m ≤ m_max`.
pub fn indicative_vs_group_sequence(
    b: &Bichain,
    label: GroupLabel,
    m_max: usize,
) -> Result<bool, BichainError> {
    for (i, g) in indicative_sequence(b, m_max)?.iter().enumerate() {
        if !g.is_subgroup_of(&canonical_group(label, i + 1)?) {
            return Ok(false);
        }
    }
    Ok(true)
}
