//! Stabilizer duality for a group acting on two complementary invariant sets.
//!
//! For `G` leaving `A` and `B = E \ A` invariant, let `H` be generated by the
//! pointwise stabilizers of `A` and of `B`. Then `H` is normal in `G`, and the
//! quotients `G|A / G_(B)|A` and `G|B / G_(A)|B` both have order `|G| / |H|`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{canonical_group, closure, GroupLabel, Perm, PermError, PermGroup, DEFAULT_ORDER_BOUND};
use crate::relcore::{RelStruct, Signature};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    #[serde(rename = "orderG")]
    pub order_g: usize,
    #[serde(rename = "orderH")]
    pub order_h: usize,
    #[serde(rename = "H0")]
    pub h0: usize,
    #[serde(rename = "H1")]
    pub h1: usize,
    pub normal: bool,
    /// The restricted pointwise stabilizers are normal in the restricted groups.
    pub restricted_normal: bool,
    pub equivalences_ok: bool,
}

impl DualityReport {
    /// `|H0| = |H1| = |G| / |H|`, with `H` normal and the three membership
    /// conditions equivalent for every element.
    pub fn holds(&self) -> bool {
        self.normal
            && self.restricted_normal
            && self.equivalences_ok
            && self.order_g.is_multiple_of(self.order_h)
            && self.h0 == self.order_g / self.order_h
            && self.h1 == self.h0
    }

    pub fn quotient(&self) -> usize {
        self.order_g / self.order_h
    }
}

pub fn verify_duality(g: &PermGroup, a: &[usize]) -> Result<DualityReport, PermError> {
    let n = g.degree();
    let mut a_set: Vec<usize> = a.to_vec();
    a_set.sort_unstable();
    a_set.dedup();
    if let Some(&bad) = a_set.iter().find(|&&x| x >= n) {
        return Err(PermError::PointOutOfRange { point: bad, n });
    }
    let b_set: Vec<usize> = (0..n).filter(|x| a_set.binary_search(x).is_err()).collect();
    if !g.elements().all(|f| f.stabilizes(&a_set)) {
        return Err(PermError::NotInvariant(a_set));
    }

    let fix_a = g.pointwise_stabilizer(&a_set);
    let fix_b = g.pointwise_stabilizer(&b_set);
    let mut h_gens: Vec<Perm> = fix_a.generators().to_vec();
    h_gens.extend(fix_b.generators().iter().cloned());
    let h = closure(n, &h_gens, DEFAULT_ORDER_BOUND)?;

    let g_on_a = g.restrict_to(&a_set)?;
    let g_on_b = g.restrict_to(&b_set)?;
    let fix_b_on_a = fix_b.restrict_to(&a_set)?;
    let fix_a_on_b = fix_a.restrict_to(&b_set)?;

    let equivalences_ok = g.elements().all(|f| {
        let on_a = restrict_perm(f, &a_set);
        let on_b = restrict_perm(f, &b_set);
        let extends_fixing_b = fix_b_on_a.contains(&on_a);
        let extends_fixing_a = fix_a_on_b.contains(&on_b);
        let in_h = h.contains(f);
        extends_fixing_b == extends_fixing_a && extends_fixing_a == in_h
    });

    Ok(DualityReport {
        order_g: g.order(),
        order_h: h.order(),
        h0: g_on_a.order() / fix_b_on_a.order(),
        h1: g_on_b.order() / fix_a_on_b.order(),
        normal: h.is_subgroup_of(g) && g.normalizes(&h),
        restricted_normal: g_on_a.normalizes(&fix_b_on_a) && g_on_b.normalizes(&fix_a_on_b),
        equivalences_ok,
    })
}

/// `f` restricted to the invariant sorted set `subset`, re-indexed.
fn restrict_perm(f: &Perm, subset: &[usize]) -> Perm {
    let images: Vec<usize> = subset
        .iter()
        .map(|&x| subset.binary_search(&f.apply(x)).expect("invariant subset"))
        .collect();
    Perm::from_images(&images).expect("restriction of a bijection")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairKind {
    /// 4-ary relation linking the orders on the two halves.
    OrderPair,
    /// 6-ary relation linking the circular orientations on the two halves.
    CircularPair,
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairKind::OrderPair => "order-pair",
            PairKind::CircularPair => "circular-pair",
        })
    }
}

impl FromStr for PairKind {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "order-pair" => Ok(PairKind::OrderPair),
            "circular-pair" => Ok(PairKind::CircularPair),
            other => Err(PermError::InvalidParameter(format!(
                "unknown pair kind `{other}`"
            ))),
        }
    }
}

/// Two-halves structure on `2m` points: `A = 0..m`, `B = m..2m`, with unary
/// markers `inA`, `inB` and the linking relation `rho`.
///
/// * order-pair: `rho(x, y, z, w)` for distinct `x, y ∈ A`, distinct
///   `z, w ∈ B` with `x < y ⇔ z < w`.
/// * circular-pair: `rho(u, v)` for `u ∈ A³`, `v ∈ B³` with distinct entries
///   and `(σ_u, σ_v) ∈ T(3)² ∪ (D(3) \ T(3))²`, where `σ_u` sorts `u`.
pub fn example_pair_structure(kind: PairKind, m: usize) -> Result<RelStruct, PermError> {
    let min = match kind {
        PairKind::OrderPair => 2,
        PairKind::CircularPair => 3,
    };
    if m < min {
        return Err(PermError::InvalidParameter(format!(
            "{kind} needs m >= {min}, got {m}"
        )));
    }
    let n = 2 * m;
    let a: Vec<usize> = (0..m).collect();
    let b: Vec<usize> = (m..n).collect();
    let arity = match kind {
        PairKind::OrderPair => 4,
        PairKind::CircularPair => 6,
    };
    let sig = Signature::with_arity_ceiling([("rho", arity), ("inA", 1), ("inB", 1)], arity)
        .expect("valid signature");
    let mut s = RelStruct::empty(n, sig);
    for &x in &a {
        s.insert(1, vec![x]).expect("in range");
    }
    for &x in &b {
        s.insert(2, vec![x]).expect("in range");
    }
    match kind {
        PairKind::OrderPair => {
            for (x, y) in ordered_pairs(&a) {
                for (z, w) in ordered_pairs(&b) {
                    if (x < y) == (z < w) {
                        s.insert(0, vec![x, y, z, w]).expect("in range");
                    }
                }
            }
        }
        PairKind::CircularPair => {
            let t3 = canonical_group(GroupLabel::T, 3)?;
            let d3 = canonical_group(GroupLabel::D, 3)?;
            let reflections: BTreeSet<Perm> =
                d3.elements().filter(|p| !t3.contains(p)).cloned().collect();
            let in_h = |p: &Perm, q: &Perm| {
                (t3.contains(p) && t3.contains(q))
                    || (reflections.contains(p) && reflections.contains(q))
            };
            let triples_a = arrangements3(&a);
            let triples_b = arrangements3(&b);
            for u in &triples_a {
                let su = sorting_perm(u);
                for v in &triples_b {
                    if in_h(&su, &sorting_perm(v)) {
                        let mut t = u.clone();
                        t.extend_from_slice(v);
                        s.insert(0, t).expect("in range");
                    }
                }
            }
        }
    }
    Ok(s)
}

fn ordered_pairs(xs: &[usize]) -> Vec<(usize, usize)> {
    xs.iter()
        .flat_map(|&x| xs.iter().filter(move |&&y| y != x).map(move |&y| (x, y)))
        .collect()
}

fn arrangements3(xs: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for &x in xs {
        for &y in xs {
            for &z in xs {
                if x != y && y != z && x != z {
                    out.push(vec![x, y, z]);
                }
            }
        }
    }
    out
}

/// The permutation `σ` with `u[σ(0)] < u[σ(1)] < …`.
pub fn sorting_perm(u: &[usize]) -> Perm {
    let mut idx: Vec<usize> = (0..u.len()).collect();
    idx.sort_by_key(|&i| u[i]);
    Perm::from_images(&idx).expect("argsort is a permutation")
}
