//! The canonical monomorphic structures on a finite chain, chainability, and
//! the group sequences they induce.
//!
//! A strict order is passed around as a list of elements from least to
//! greatest. Restricting a structure to a subset listed in that order yields
//! the order-relabelled restriction, so "every order-isomorphism between
//! `s`-subsets is a local isomorphism" becomes "all `s`-subsets have the same
//! order-relabelled restriction".

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::permgrp::{canonical_group, GroupLabel, PermError, PermGroup};
use crate::relcore::{
    automorphisms, canonical_key, RelError, RelStruct, Signature, DEFAULT_AUTOMORPHISM_BOUND,
};

/// Largest domain accepted by [`is_chainable`] and [`is_monomorphic`].
pub const DEFAULT_CHAIN_BOUND: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("order {0:?} is not a permutation of the domain")]
    InvalidOrder(Vec<usize>),
    #[error("the given order does not chain the structure")]
    NotChained,
    #[error("requested {requested} terms but the domain has {n} elements")]
    TooManyTerms { requested: usize, n: usize },
    #[error("group on {m}-subset {subset:?} differs from the one on the initial segment")]
    NotIndependent { m: usize, subset: Vec<usize> },
    #[error("unknown structure kind `{0}`")]
    UnknownKind(String),
    #[error(transparent)]
    Rel(#[from] RelError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// The strict order `{(i, j) : i < j}`.
pub fn chain_order(n: usize) -> RelStruct {
    let sig = Signature::new([("lt", 2)]).expect("valid signature");
    let mut s = RelStruct::empty(n, sig);
    for (i, j) in (0..n).tuple_combinations() {
        s.insert(0, vec![i, j]).expect("in range");
    }
    s
}

/// Triples `(x1, x2, x3)` with `x2` strictly between the other two.
pub fn betweenness(n: usize) -> RelStruct {
    pattern_relation("between", n, GroupLabel::J, 3)
}

/// Triples that are increasing up to a rotation of positions.
pub fn circular(n: usize) -> RelStruct {
    pattern_relation("cyclic", n, GroupLabel::T, 3)
}

/// Quadruples that are increasing up to a rotation or reflection of positions.
pub fn circ_betweenness(n: usize) -> RelStruct {
    pattern_relation("sep", n, GroupLabel::D, 4)
}

/// All `arity`-tuples of distinct elements whose sorting permutation lies in
/// the family group `label` of degree `arity`.
fn pattern_relation(name: &str, n: usize, label: GroupLabel, arity: usize) -> RelStruct {
    let sig = Signature::new([(name, arity)]).expect("valid signature");
    let group = canonical_group(label, arity).expect("small degree");
    let mut s = RelStruct::empty(n, sig);
    for t in (0..n).permutations(arity) {
        if group.contains(&crate::permgrp::sorting_perm(&t)) {
            s.insert(0, t).expect("in range");
        }
    }
    s
}

/// The five canonical monomorphic structures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CanonKind {
    Equality,
    Order,
    Betweenness,
    Circular,
    CircBetweenness,
}

impl CanonKind {
    pub const ALL: [CanonKind; 5] = [
        CanonKind::Equality,
        CanonKind::Order,
        CanonKind::Betweenness,
        CanonKind::Circular,
        CanonKind::CircBetweenness,
    ];

    pub fn structure(self, n: usize) -> RelStruct {
        match self {
            CanonKind::Equality => RelStruct::equality(n),
            CanonKind::Order => chain_order(n),
            CanonKind::Betweenness => betweenness(n),
            CanonKind::Circular => circular(n),
            CanonKind::CircBetweenness => circ_betweenness(n),
        }
    }

    /// The group family of its group sequence under the natural order.
    pub fn group_family(self) -> GroupLabel {
        match self {
            CanonKind::Equality => GroupLabel::S,
            CanonKind::Order => GroupLabel::I,
            CanonKind::Betweenness => GroupLabel::J,
            CanonKind::Circular => GroupLabel::T,
            CanonKind::CircBetweenness => GroupLabel::D,
        }
    }
}

impl fmt::Display for CanonKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CanonKind::Equality => "equality",
            CanonKind::Order => "order",
            CanonKind::Betweenness => "betweenness",
            CanonKind::Circular => "circular",
            CanonKind::CircBetweenness => "circbetweenness",
        })
    }
}

impl FromStr for CanonKind {
    type Err = CanonError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CanonKind::ALL
            .into_iter()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| CanonError::UnknownKind(s.to_string()))
    }
}

fn validate_order(n: usize, order: &[usize]) -> Result<(), CanonError> {
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(CanonError::InvalidOrder(order.to_vec()));
    }
    for &x in order {
        if x >= n || seen[x] {
            return Err(CanonError::InvalidOrder(order.to_vec()));
        }
        seen[x] = true;
    }
    Ok(())
}

/// Whether the order (least element first) chains `r`.
///
/// Only subsets of size at most the maximal arity are compared: a map
/// preserves a tuple iff its restriction to the tuple's support does.
pub fn chains_check(r: &RelStruct, order: &[usize]) -> Result<bool, CanonError> {
    validate_order(r.n(), order)?;
    let top = r.signature().max_arity().min(r.n());
    Ok((1..=top).all(|s| subsets_agree(r, order, s)))
}

/// All order-relabelled `s`-subset restrictions coincide.
fn subsets_agree(r: &RelStruct, order: &[usize], s: usize) -> bool {
    let reference = r.restrict(&order[..s]).expect("valid subset");
    order
        .iter()
        .copied()
        .combinations(s)
        .all(|sub| r.restrict(&sub).expect("valid subset") == reference)
}

/// Unbounded form of [`chains_check`]: every subset size is compared.
pub fn chains_check_exhaustive(r: &RelStruct, order: &[usize]) -> Result<bool, CanonError> {
    validate_order(r.n(), order)?;
    Ok((1..=r.n()).all(|s| subsets_agree(r, order, s)))
}

fn check_bound(n: usize, bound: usize, what: &'static str) -> Result<(), CanonError> {
    if n > bound {
        return Err(RelError::BoundExceeded { what, got: n, bound }.into());
    }
    Ok(())
}

/// The lexicographically least order chaining `r`, if any.
pub fn is_chainable(r: &RelStruct) -> Result<Option<Vec<usize>>, CanonError> {
    is_chainable_bounded(r, DEFAULT_CHAIN_BOUND)
}

pub fn is_chainable_bounded(r: &RelStruct, bound: usize) -> Result<Option<Vec<usize>>, CanonError> {
    let n = r.n();
    check_bound(n, bound, "chainability domain")?;
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    if !is_monomorphic_bounded(r, bound)? {
        return Ok(None);
    }
    let arity = r.signature().max_arity();
    Ok((0..n).into_par_iter().find_map_first(|first| {
        let mut prefix = vec![first];
        let mut used = vec![false; n];
        used[first] = true;
        extend_order(r, arity, &mut prefix, &mut used).then_some(prefix)
    }))
}

/// Depth-first extension of a chaining prefix in lexicographic order.
fn extend_order(r: &RelStruct, arity: usize, prefix: &mut Vec<usize>, used: &mut [bool]) -> bool {
    if !newest_consistent(r, arity, prefix) {
        return false;
    }
    if prefix.len() == r.n() {
        return true;
    }
    for x in 0..r.n() {
        if used[x] {
            continue;
        }
        used[x] = true;
        prefix.push(x);
        if extend_order(r, arity, prefix, used) {
            return true;
        }
        prefix.pop();
        used[x] = false;
    }
    false
}

/// Subsets of the prefix containing its last element agree with the initial
/// segment of the same size.
fn newest_consistent(r: &RelStruct, arity: usize, prefix: &[usize]) -> bool {
    let (&last, rest) = prefix.split_last().expect("nonempty prefix");
    for s in 1..=arity.min(prefix.len()) {
        let reference = r.restrict(&prefix[..s]).expect("valid subset");
        let ok = rest.iter().copied().combinations(s - 1).all(|mut sub| {
            sub.push(last);
            r.restrict(&sub).expect("valid subset") == reference
        });
        if !ok {
            return false;
        }
    }
    true
}

/// Whether any two subsets of equal size induce isomorphic restrictions.
pub fn is_monomorphic(r: &RelStruct) -> Result<bool, CanonError> {
    is_monomorphic_bounded(r, DEFAULT_CHAIN_BOUND)
}

pub fn is_monomorphic_bounded(r: &RelStruct, bound: usize) -> Result<bool, CanonError> {
    let n = r.n();
    check_bound(n, bound, "monomorphy domain")?;
    Ok((1..=n).all(|p| {
        let mut keys = (0..n).combinations(p).map(|sub| {
            canonical_key(&r.restrict(&sub).expect("valid subset"))
        });
        let first = keys.next().expect("at least one subset");
        keys.all(|k| k == first)
    }))
}

/// `Ind_m(R, C)` for `m = 1..=m_max`, read off the initial segments of the
/// order and checked against every other `m`-subset.
pub fn group_sequence(
    r: &RelStruct,
    order: &[usize],
    m_max: usize,
) -> Result<Vec<PermGroup>, CanonError> {
    let n = r.n();
    if m_max > n {
        return Err(CanonError::TooManyTerms { requested: m_max, n });
    }
    if !chains_check(r, order)? {
        return Err(CanonError::NotChained);
    }
    (1..=m_max)
        .map(|m| {
            let initial = r.restrict(&order[..m])?;
            let group = automorphisms(&initial, DEFAULT_AUTOMORPHISM_BOUND)?;
            for subset in order.iter().copied().combinations(m) {
                let restricted = r.restrict(&subset)?;
                if restricted != initial
                    && automorphisms(&restricted, DEFAULT_AUTOMORPHISM_BOUND)? != group
                {
                    return Err(CanonError::NotIndependent { m, subset });
                }
            }
            Ok(group)
        })
        .collect()
}
