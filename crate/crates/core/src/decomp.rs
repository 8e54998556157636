//! Monomorphic decomposition: the `≃_{≤k}` equivalences, components and
//! thresholds, strongly indiscernible partitions, and finite witnesses for
//! finite partitionability and cellularity.
//!
//! `x ≃_F y` holds when the restrictions to `{x} ∪ F` and `{y} ∪ F` are
//! isomorphic, by any isomorphism. `≃_{≤k}` quantifies over all `F` of size at
//! most `k` avoiding `x` and `y`; on an `n`-element domain every such `F` has
//! at most `n - 2` elements, so `≃_{≤ n-2}` is the full relation and its
//! classes are the monomorphic components.
//!
//! Isomorphism of restrictions is decided by comparing canonical keys, cached
//! per subset bitmask.
//!
//! Strong indiscernibility uses transpositions: `x ≈ y` iff swapping `x` and
//! `y` is an automorphism. The relation is transitive because
//! `(x z) = (x y)(y z)(x y)`, and a block all of whose transpositions are
//! automorphisms has its whole symmetric group inside `Aut(R)`, so the
//! `≈`-classes form the coarsest partition whose block-preserving
//! permutations are all automorphisms.

use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::relcore::{canonical_key, CanonKey, RelError, RelStruct};

/// Largest domain for the `≃` machinery (subsets are held as bitmasks).
pub const DEFAULT_DECOMP_BOUND: usize = 14;
/// Largest domain for [`is_monomorphic_part`], which visits every subset.
pub const DEFAULT_PART_BOUND: usize = 12;
/// Largest domain for [`cellular_witness`].
pub const DEFAULT_CELLULAR_BOUND: usize = 8;
/// Fewest columns accepted in a cellular grid.
pub const MIN_CELLULAR_COLUMNS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("element {0} lies in the parameter set F")]
    ElementInParameters(usize),
    #[error("element {index} out of range for domain of size {n}")]
    OutOfRange { index: usize, n: usize },
    #[error("relation is not transitive: {x} ~ {y} ~ {z} but not {x} ~ {z}")]
    NotTransitive { x: usize, y: usize, z: usize },
    #[error("subset meets class {class:?} in {got} elements, needs {needed}")]
    QuotaNotMet {
        class: Vec<usize>,
        got: usize,
        needed: usize,
    },
    #[error(transparent)]
    Rel(#[from] RelError),
}

/// A partition of `0..n` into nonempty blocks, each sorted, ordered by least
/// element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EquivPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl EquivPartition {
    /// Partition from a class label per element.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut by_label: HashMap<usize, Vec<usize>> = HashMap::new();
        for (x, &l) in labels.iter().enumerate() {
            by_label.entry(l).or_default().push(x);
        }
        Self::from_blocks(by_label.into_values())
    }

    pub fn from_blocks(blocks: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .filter(|b| !b.is_empty())
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort_unstable_by_key(|b| b[0]);
        EquivPartition { blocks }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing `x`.
    pub fn block_of(&self, x: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&x).is_ok())
    }

    /// Blocks intersected with `subset`, empty intersections dropped.
    pub fn restrict_to(&self, subset: &[usize]) -> EquivPartition {
        Self::from_blocks(
            self.blocks
                .iter()
                .map(|b| b.iter().copied().filter(|x| subset.contains(x)).collect()),
        )
    }

    /// Whether every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &EquivPartition) -> bool {
        self.blocks.iter().all(|b| {
            let target = coarser.block_of(b[0]);
            target.is_some() && b.iter().all(|&x| coarser.block_of(x) == target)
        })
    }
}

/// Canonical keys of restrictions, cached by subset bitmask.
struct SubsetKeys<'a> {
    r: &'a RelStruct,
    cache: HashMap<u64, CanonKey>,
}

impl<'a> SubsetKeys<'a> {
    fn new(r: &'a RelStruct) -> Self {
        SubsetKeys {
            r,
            cache: HashMap::new(),
        }
    }

    fn key(&mut self, mask: u64) -> &CanonKey {
        let r = self.r;
        self.cache
            .entry(mask)
            .or_insert_with(|| canonical_key(&r.restrict_mask(mask)))
    }

    fn same(&mut self, a: u64, b: u64) -> bool {
        a == b || self.key(a).clone() == *self.key(b)
    }
}

fn check_bound(n: usize, bound: usize, what: &'static str) -> Result<(), DecompError> {
    if n > bound {
        return Err(RelError::BoundExceeded { what, got: n, bound }.into());
    }
    Ok(())
}

fn mask_of(xs: &[usize]) -> u64 {
    xs.iter().fold(0, |m, &x| m | 1 << x)
}

/// `x ≃_F y`.
pub fn f_equivalent(r: &RelStruct, x: usize, y: usize, f: &[usize]) -> Result<bool, DecompError> {
    let n = r.n();
    check_bound(n, 63, "domain for subset masks")?;
    for &e in f.iter().chain([&x, &y]) {
        if e >= n {
            return Err(DecompError::OutOfRange { index: e, n });
        }
    }
    if let Some(&e) = f.iter().find(|&&e| e == x || e == y) {
        return Err(DecompError::ElementInParameters(e));
    }
    let base = mask_of(f);
    let mut keys = SubsetKeys::new(r);
    Ok(keys.same(base | 1 << x, base | 1 << y))
}

/// The partitions of `≃_{≤k}` for `k = 0..=max(n-2, 0)`; the last one is the
/// component partition. Transitivity is verified for each.
pub fn k_equiv_profile(r: &RelStruct) -> Result<Vec<EquivPartition>, DecompError> {
    let n = r.n();
    check_bound(n, DEFAULT_DECOMP_BOUND, "decomposition domain")?;
    let top = n.saturating_sub(2);
    let mut keys = SubsetKeys::new(r);
    let mut apart = vec![vec![false; n]; n];
    let mut profile = Vec::with_capacity(top + 1);
    for size in 0..=top {
        for f in (0..n).combinations(size) {
            let base = mask_of(&f);
            let outside: Vec<usize> = (0..n).filter(|x| (base >> x) & 1 == 0).collect();
            for (i, &x) in outside.iter().enumerate() {
                for &y in &outside[i + 1..] {
                    if !apart[x][y] && !keys.same(base | 1 << x, base | 1 << y) {
                        apart[x][y] = true;
                        apart[y][x] = true;
                    }
                }
            }
        }
        profile.push(partition_from_relation(n, |x, y| !apart[x][y])?);
    }
    Ok(profile)
}

/// Classes of `related`, after checking it is transitive.
fn partition_from_relation(
    n: usize,
    related: impl Fn(usize, usize) -> bool,
) -> Result<EquivPartition, DecompError> {
    for x in 0..n {
        for y in 0..n {
            if x == y || !related(x, y) {
                continue;
            }
            if let Some(z) = (0..n).find(|&z| related(y, z) && !related(x, z)) {
                return Err(DecompError::NotTransitive { x, y, z });
            }
        }
    }
    let mut label = vec![usize::MAX; n];
    for x in 0..n {
        if label[x] == usize::MAX {
            for (y, l) in label.iter_mut().enumerate().skip(x) {
                if related(x, y) {
                    *l = x;
                }
            }
        }
    }
    Ok(EquivPartition::from_labels(&label))
}

/// Classes of `≃_{≤k}`, with `k` clamped to `n - 2`.
pub fn k_equiv_partition(r: &RelStruct, k: usize) -> Result<EquivPartition, DecompError> {
    let mut profile = k_equiv_profile(r)?;
    let k = k.min(profile.len() - 1);
    profile.truncate(k + 1);
    Ok(profile.pop().expect("nonempty profile"))
}

/// Classes of `≃_R`, the monomorphic components.
pub fn components(r: &RelStruct) -> Result<EquivPartition, DecompError> {
    Ok(k_equiv_profile(r)?.pop().expect("nonempty profile"))
}

/// Least `k` with `≃_{≤k} = ≃_R`.
pub fn threshold(r: &RelStruct) -> Result<usize, DecompError> {
    let profile = k_equiv_profile(r)?;
    let last = profile.last().expect("nonempty profile");
    Ok(profile.iter().position(|p| p == last).expect("last matches itself"))
}

/// Result of a threshold scan: the maximum and the first structure reaching it.
#[derive(Clone, Debug)]
pub struct ThresholdScan {
    pub max: usize,
    pub witness: RelStruct,
    pub scanned: usize,
}

/// Maximum threshold over `structures`, computed in parallel; ties go to the
/// earliest structure.
pub fn scan_thresholds(structures: Vec<RelStruct>) -> Result<Option<ThresholdScan>, DecompError> {
    let scanned = structures.len();
    let best = structures
        .par_iter()
        .enumerate()
        .map(|(i, s)| threshold(s).map(|t| (t, i)))
        .try_reduce_with(|a, b| {
            Ok(if (b.0, std::cmp::Reverse(b.1)) > (a.0, std::cmp::Reverse(a.1)) {
                b
            } else {
                a
            })
        })
        .transpose()?;
    Ok(best.map(|(max, i)| ThresholdScan {
        max,
        witness: structures[i].clone(),
        scanned,
    }))
}

/// Whether `a` is a monomorphic part: any two equal-size subsets with the
/// same exterior `X \ A` induce isomorphic restrictions.
pub fn is_monomorphic_part(r: &RelStruct, a: &[usize]) -> Result<bool, DecompError> {
    let n = r.n();
    check_bound(n, DEFAULT_PART_BOUND, "monomorphic part domain")?;
    if let Some(&e) = a.iter().find(|&&e| e >= n) {
        return Err(DecompError::OutOfRange { index: e, n });
    }
    let a_mask = mask_of(a);
    let mut keys = SubsetKeys::new(r);
    let mut first: HashMap<(u32, u64), u64> = HashMap::new();
    for x in 0..1u64 << n {
        let group = (x.count_ones(), x & !a_mask);
        match first.get(&group) {
            Some(&rep) => {
                if !keys.same(rep, x) {
                    return Ok(false);
                }
            }
            None => {
                first.insert(group, x);
            }
        }
    }
    Ok(true)
}

/// Whether `≃_{≤k}` on the restriction to `sub` equals the restriction of
/// `≃_{≤k}` to `sub`. Inputs must meet every class `C` in at least
/// `min(k + 2, |C|)` elements.
pub fn restriction_check(r: &RelStruct, sub: &[usize], k: usize) -> Result<bool, DecompError> {
    let n = r.n();
    let mut sub = sub.to_vec();
    sub.sort_unstable();
    sub.dedup();
    if let Some(&e) = sub.iter().find(|&&e| e >= n) {
        return Err(DecompError::OutOfRange { index: e, n });
    }
    let whole = k_equiv_partition(r, k)?;
    for class in &whole.blocks {
        let got = class.iter().filter(|x| sub.binary_search(x).is_ok()).count();
        let needed = (k + 2).min(class.len());
        if got < needed {
            return Err(DecompError::QuotaNotMet {
                class: class.clone(),
                got,
                needed,
            });
        }
    }
    let local = k_equiv_partition(&r.restrict(&sub)?, k)?;
    let lifted = EquivPartition::from_blocks(
        local
            .blocks
            .iter()
            .map(|b| b.iter().map(|&i| sub[i]).collect()),
    );
    Ok(lifted == whole.restrict_to(&sub))
}

/// Classes of `x ≈ y ⇔ (x y) ∈ Aut(R)`.
pub fn strongly_indiscernible_partition(r: &RelStruct) -> EquivPartition {
    let n = r.n();
    let mut label = vec![usize::MAX; n];
    for x in 0..n {
        if label[x] != usize::MAX {
            continue;
        }
        label[x] = x;
        for (y, l) in label.iter_mut().enumerate().skip(x + 1) {
            if *l == usize::MAX && r.transposition_is_automorphism(x, y) {
                *l = x;
            }
        }
    }
    EquivPartition::from_labels(&label)
}

/// The fewest-block partition whose block-preserving permutations are all
/// automorphisms, with its block count.
pub fn finitely_partitionable_witness(r: &RelStruct) -> (EquivPartition, usize) {
    let p = strongly_indiscernible_partition(r);
    let count = p.len();
    (p, count)
}

/// A grid decomposition of `E \ F` into `rows × columns` cells such that every
/// permutation of the columns (applied to all rows at once, identity on `F`)
/// is an automorphism. `grid[v][l]` is the element in row `v`, column `l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellularWitness {
    pub fixed: Vec<usize>,
    pub rows: usize,
    pub columns: usize,
    pub grid: Vec<Vec<usize>>,
}

impl CellularWitness {
    /// The permutation of the domain induced by the column permutation `pi`.
    pub fn induced(&self, n: usize, pi: &[usize]) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..n).collect();
        for row in &self.grid {
            for (l, &x) in row.iter().enumerate() {
                perm[x] = row[pi[l]];
            }
        }
        perm
    }
}

pub fn cellular_witness(
    r: &RelStruct,
    max_f: usize,
    max_v: usize,
) -> Result<Option<CellularWitness>, DecompError> {
    cellular_witness_bounded(r, max_f, max_v, DEFAULT_CELLULAR_BOUND)
}

/// First witness by increasing `|F|`, then increasing row count.
pub fn cellular_witness_bounded(
    r: &RelStruct,
    max_f: usize,
    max_v: usize,
    bound: usize,
) -> Result<Option<CellularWitness>, DecompError> {
    let n = r.n();
    check_bound(n, bound, "cellular search domain")?;
    for f_size in 0..=max_f.min(n) {
        for fixed in (0..n).combinations(f_size) {
            let rest: Vec<usize> = (0..n).filter(|x| !fixed.contains(x)).collect();
            for rows in 1..=max_v.min(rest.len()) {
                if !rest.len().is_multiple_of(rows) || rest.len() / rows < MIN_CELLULAR_COLUMNS {
                    continue;
                }
                if let Some(columns) = find_grid(r, &rest, rows) {
                    let grid = (0..rows)
                        .map(|v| columns.iter().map(|c| c[v]).collect())
                        .collect();
                    return Ok(Some(CellularWitness {
                        fixed,
                        rows,
                        columns: columns.len(),
                        grid,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Columns covering `rest`. Column 0 is sorted and holds the least element;
/// every other column must swap with column 0 by an automorphism, and those
/// swaps generate all column permutations.
fn find_grid(r: &RelStruct, rest: &[usize], rows: usize) -> Option<Vec<Vec<usize>>> {
    let n = r.n();
    let (&least, others) = rest.split_first()?;
    for tail in others.iter().copied().combinations(rows - 1) {
        let mut first = vec![least];
        first.extend(tail);
        let remaining: Vec<usize> = rest.iter().copied().filter(|x| !first.contains(x)).collect();
        let candidates: Vec<Vec<usize>> = remaining
            .iter()
            .copied()
            .permutations(rows)
            .filter(|col| {
                let mut perm: Vec<usize> = (0..n).collect();
                for (&a, &b) in first.iter().zip(col) {
                    perm[a] = b;
                    perm[b] = a;
                }
                r.is_automorphism(&perm)
            })
            .collect();
        let mut chosen = vec![first];
        if exact_cover(&remaining, &candidates, &mut vec![false; n], &mut chosen) {
            return Some(chosen);
        }
    }
    None
}

fn exact_cover(
    remaining: &[usize],
    candidates: &[Vec<usize>],
    covered: &mut Vec<bool>,
    chosen: &mut Vec<Vec<usize>>,
) -> bool {
    let Some(&target) = remaining.iter().find(|&&x| !covered[x]) else {
        return true;
    };
    for col in candidates {
        if col[0] != target || col.iter().any(|&x| covered[x]) {
            continue;
        }
        for &x in col {
            covered[x] = true;
        }
        chosen.push(col.clone());
        if exact_cover(remaining, candidates, covered, chosen) {
            return true;
        }
        chosen.pop();
        for &x in col {
            covered[x] = false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relcore::{digraph, find_isomorphism, graph};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn path3() -> RelStruct {
        graph(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn edge_plus_point() -> RelStruct {
        graph(3, &[(0, 1)]).unwrap()
    }

    fn blocks(p: &EquivPartition) -> Vec<Vec<usize>> {
        p.blocks.clone()
    }

    fn two_cliques(size: usize) -> RelStruct {
        let mut edges = Vec::new();
        for base in [0, size] {
            for (a, b) in (base..base + size).tuple_combinations() {
                edges.push((a, b));
            }
        }
        graph(2 * size, &edges).unwrap()
    }

    /// `≃_F` by backtracking isomorphism, independent of canonical keys.
    fn f_equivalent_by_search(r: &RelStruct, x: usize, y: usize, f: &[usize]) -> bool {
        let mut a = f.to_vec();
        a.push(x);
        let mut b = f.to_vec();
        b.push(y);
        find_isomorphism(&r.restrict(&a).unwrap(), &r.restrict(&b).unwrap())
            .unwrap()
            .is_some()
    }

    #[test]
    fn f_equivalence_examples() {
        assert!(f_equivalent(&path3(), 0, 2, &[1]).unwrap());
        assert!(f_equivalent(&path3(), 1, 1, &[0]).unwrap());
        assert!(!f_equivalent(&edge_plus_point(), 0, 2, &[1]).unwrap());
        assert_eq!(
            f_equivalent(&path3(), 0, 1, &[1]),
            Err(DecompError::ElementInParameters(1))
        );
    }

    #[test]
    fn partitions_of_small_graphs() {
        let p = path3();
        assert_eq!(blocks(&k_equiv_partition(&p, 0).unwrap()), vec![vec![0, 1, 2]]);
        assert_eq!(blocks(&k_equiv_partition(&p, 1).unwrap()), vec![vec![0, 2], vec![1]]);
        assert_eq!(blocks(&components(&p).unwrap()), vec![vec![0, 2], vec![1]]);
        assert_eq!(
            blocks(&components(&edge_plus_point()).unwrap()),
            vec![vec![0, 1], vec![2]]
        );
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        for k in 0..4 {
            assert_eq!(k_equiv_partition(&k4, k).unwrap().len(), 1);
        }
        assert_eq!(components(&graph(5, &[]).unwrap()).unwrap().len(), 1);
    }

    #[test]
    fn thresholds() {
        assert_eq!(threshold(&path3()).unwrap(), 1);
        assert_eq!(threshold(&graph(2, &[(0, 1)]).unwrap()).unwrap(), 0);
        assert_eq!(threshold(&RelStruct::equality(1)).unwrap(), 0);
        assert_eq!(threshold(&RelStruct::equality(0)).unwrap(), 0);
    }

    #[test]
    fn monomorphic_parts() {
        let p = path3();
        assert!(is_monomorphic_part(&p, &[1]).unwrap());
        assert!(is_monomorphic_part(&p, &[0, 2]).unwrap());
        assert!(!is_monomorphic_part(&p, &[0, 1]).unwrap());
    }

    #[test]
    fn restriction_examples() {
        let p = path3();
        assert!(restriction_check(&p, &[0, 1, 2], 1).unwrap());
        let kk = two_cliques(5);
        assert_eq!(k_equiv_partition(&kk, 1).unwrap().len(), 2);
        assert!(restriction_check(&kk, &[0, 1, 2, 5, 6, 7], 1).unwrap());
        assert!(matches!(
            restriction_check(&kk, &[0, 1, 5, 6, 7], 1),
            Err(DecompError::QuotaNotMet { .. })
        ));
    }

    #[test]
    fn indiscernible_partitions() {
        assert_eq!(
            blocks(&strongly_indiscernible_partition(&edge_plus_point())),
            vec![vec![0, 1], vec![2]]
        );
        assert_eq!(
            blocks(&strongly_indiscernible_partition(&path3())),
            vec![vec![0, 2], vec![1]]
        );
        let chain = digraph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(strongly_indiscernible_partition(&chain).len(), 4);
        assert_eq!(finitely_partitionable_witness(&graph(6, &[]).unwrap()).1, 1);
        assert_eq!(finitely_partitionable_witness(&two_cliques(5)).1, 2);
        let tournament = digraph(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(finitely_partitionable_witness(&tournament).1, 3);
    }

    #[test]
    fn cellular_examples() {
        let w = cellular_witness(&graph(6, &[]).unwrap(), 2, 6).unwrap().unwrap();
        assert_eq!((w.fixed.len(), w.rows, w.columns), (0, 1, 6));

        let k2x3 = graph(6, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        let w = cellular_witness(&k2x3, 2, 6).unwrap().unwrap();
        assert_eq!((w.fixed.len(), w.rows, w.columns), (0, 2, 3));
        let mut cols: Vec<Vec<usize>> = (0..3)
            .map(|l| {
                let mut c: Vec<usize> = w.grid.iter().map(|row| row[l]).collect();
                c.sort_unstable();
                c
            })
            .collect();
        cols.sort();
        assert_eq!(cols, vec![vec![0, 1], vec![2, 3], vec![4, 5]]);

        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(cellular_witness(&p4, 1, 4).unwrap(), None);
        assert!(cellular_witness(&graph(9, &[]).unwrap(), 0, 1).is_err());
    }

    #[test]
    fn cellular_witnesses_admit_every_column_permutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut found = 0;
        for _ in 0..60 {
            let n = rng.gen_range(3..=7);
            // Disjoint copies of a random pattern on `rows` points, plus noise.
            let rows = rng.gen_range(1..=2);
            let copies = n / rows;
            let mut edges = Vec::new();
            for a in 0..rows {
                for b in a + 1..rows {
                    if rng.gen_bool(0.5) {
                        for c in 0..copies {
                            edges.push((c * rows + a, c * rows + b));
                        }
                    }
                }
            }
            let r = graph(n, &edges).unwrap();
            if let Some(w) = cellular_witness(&r, 2, 3).unwrap() {
                found += 1;
                let mut cover: Vec<usize> = w.fixed.clone();
                cover.extend(w.grid.iter().flatten());
                cover.sort_unstable();
                assert_eq!(cover, (0..n).collect::<Vec<_>>());
                for pi in (0..w.columns).permutations(w.columns) {
                    assert!(r.is_automorphism(&w.induced(n, &pi)));
                }
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn keys_agree_with_search_on_f_equivalence() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(2..=6);
            let mut arcs = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if a != b && rng.gen_bool(0.35) {
                        arcs.push((a, b));
                    }
                }
            }
            let r = digraph(n, &arcs).unwrap();
            let x = rng.gen_range(0..n);
            let y = rng.gen_range(0..n);
            let f: Vec<usize> = (0..n).filter(|&e| e != x && e != y && rng.gen_bool(0.5)).collect();
            assert_eq!(
                f_equivalent(&r, x, y, &f).unwrap(),
                f_equivalent_by_search(&r, x, y, &f)
            );
        }
    }

    #[test]
    fn profile_refines_and_matches_pairwise_definition() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let n = rng.gen_range(1..=6);
            let mut edges = Vec::new();
            for (a, b) in (0..n).tuple_combinations() {
                if rng.gen_bool(0.5) {
                    edges.push((a, b));
                }
            }
            let r = graph(n, &edges).unwrap();
            let profile = k_equiv_profile(&r).unwrap();
            for w in profile.windows(2) {
                assert!(w[1].refines(&w[0]));
            }
            for (k, part) in profile.iter().enumerate() {
                for x in 0..n {
                    for y in 0..n {
                        let direct = (0..n)
                            .filter(|&e| e != x && e != y)
                            .powerset()
                            .filter(|f| f.len() <= k)
                            .all(|f| f_equivalent_by_search(&r, x, y, &f));
                        assert_eq!(part.block_of(x) == part.block_of(y), direct);
                    }
                }
            }
        }
    }

    #[test]
    fn scan_picks_earliest_maximum() {
        let structures = vec![graph(3, &[]).unwrap(), path3(), path3().relabel(&[1, 0, 2])];
        let scan = scan_thresholds(structures).unwrap().unwrap();
        assert_eq!((scan.max, scan.scanned), (1, 3));
        assert_eq!(scan.witness, path3());
        assert!(scan_thresholds(Vec::new()).unwrap().is_none());
    }
}
