use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Atom, OrderTerm, SymError};

/// A class of the finite-distance condensation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CondClass {
    W,
    Wstar,
    FinC(usize),
    Zeta,
}

impl fmt::Display for CondClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CondClass::W => write!(f, "W"),
            CondClass::Wstar => write!(f, "Wstar"),
            CondClass::FinC(k) => write!(f, "FinC({k})"),
            CondClass::Zeta => write!(f, "Zeta"),
        }
    }
}

/// The finite-distance classes of a scattered term, in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Condensation(pub Vec<CondClass>);

impl fmt::Display for Condensation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Condensation of the normal form. In a normal scattered term the only
/// adjacent blocks at finite distance are `ω* + ω`, which merge into `ζ`.
pub fn condensation(t: &OrderTerm) -> Result<Condensation, SymError> {
    let t = t.normalize();
    if t.has_eta() {
        return Err(SymError::NotScattered);
    }
    let mut out = Vec::with_capacity(t.len());
    let mut blocks = t.blocks().iter().peekable();
    while let Some(&a) = blocks.next() {
        out.push(match a {
            Atom::Fin(k) => CondClass::FinC(k),
            Atom::Omega => CondClass::W,
            Atom::OmegaStar if blocks.peek() == Some(&&Atom::Omega) => {
                blocks.next();
                CondClass::Zeta
            }
            Atom::OmegaStar => CondClass::Wstar,
            Atom::Eta => unreachable!("scattered term"),
        });
    }
    Ok(Condensation(out))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IsoVerdict {
    Iso,
    NonIso,
    Unknown,
}

impl fmt::Display for IsoVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsoVerdict::Iso => "Iso",
            IsoVerdict::NonIso => "NonIso",
            IsoVerdict::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EmbedVerdict {
    Yes,
    No,
    Unknown,
}

fn verdict(same: bool) -> IsoVerdict {
    if same {
        IsoVerdict::Iso
    } else {
        IsoVerdict::NonIso
    }
}

/// Splits off a leading `k + η` pair's finite part.
fn leading_finite_before_eta(b: &[Atom]) -> Option<usize> {
    match b {
        [Atom::Fin(k), Atom::Eta, ..] => Some(*k),
        _ => None,
    }
}

fn trailing_finite_after_eta(b: &[Atom]) -> Option<usize> {
    match b {
        [.., Atom::Eta, Atom::Fin(k)] => Some(*k),
        _ => None,
    }
}

/// The scattered middle of `η + M + η`, if the term has that shape.
fn family_middle(b: &[Atom]) -> Option<&[Atom]> {
    match b {
        [Atom::Eta] => Some(&[]),
        [Atom::Eta, middle @ .., Atom::Eta] if !middle.contains(&Atom::Eta) => Some(middle),
        _ => None,
    }
}

/// Decides isomorphism where an invariant settles it.
///
/// Complete on scattered terms (by condensation) and on terms of the shape
/// `k + η + M + η + l` with `M` scattered (by the condensation of `M`, after
/// matching the finite end pieces). Elsewhere the answer is `NonIso` when
/// scatteredness or the existence of endpoints differ, and `Unknown`
/// otherwise.
pub fn iso_decide(t1: &OrderTerm, t2: &OrderTerm) -> IsoVerdict {
    let a = t1.normalize();
    let b = t2.normalize();
    if a == b {
        return IsoVerdict::Iso;
    }
    match (a.has_eta(), b.has_eta()) {
        (false, false) => {
            let ca = condensation(&a).expect("scattered");
            let cb = condensation(&b).expect("scattered");
            return verdict(ca == cb);
        }
        (true, false) | (false, true) => return IsoVerdict::NonIso,
        (true, true) => {}
    }
    let mut x = a.blocks();
    let mut y = b.blocks();
    // A finite piece followed by η is the first finite-distance class.
    match (leading_finite_before_eta(x), leading_finite_before_eta(y)) {
        (Some(k), Some(l)) if k != l => return IsoVerdict::NonIso,
        (Some(_), Some(_)) => {
            x = &x[1..];
            y = &y[1..];
        }
        _ => {}
    }
    match (trailing_finite_after_eta(x), trailing_finite_after_eta(y)) {
        (Some(k), Some(l)) if k != l => return IsoVerdict::NonIso,
        (Some(_), Some(_)) => {
            x = &x[..x.len() - 1];
            y = &y[..y.len() - 1];
        }
        _ => {}
    }
    if let (Some(mx), Some(my)) = (family_middle(x), family_middle(y)) {
        let cx = condensation(&OrderTerm::new(mx.to_vec()).expect("valid atoms"));
        let cy = condensation(&OrderTerm::new(my.to_vec()).expect("valid atoms"));
        return verdict(cx == cy);
    }
    if a.has_min() != b.has_min() || a.has_max() != b.has_max() {
        return IsoVerdict::NonIso;
    }
    IsoVerdict::Unknown
}

/// What is left of the current target block during greedy embedding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rest {
    /// `k ≥ 1` points of a finite block.
    Points(usize),
    /// A copy of `ω`.
    Omega,
    /// A whole, unused `ω*`.
    OmegaStar,
    /// A final segment of `ω*` after an image: finite, as large as needed.
    AnyFinite,
}

fn fresh(a: Atom) -> Rest {
    match a {
        Atom::Fin(k) => Rest::Points(k),
        Atom::Omega => Rest::Omega,
        Atom::OmegaStar => Rest::OmegaStar,
        Atom::Eta => unreachable!("scattered target"),
    }
}

/// Decides whether `t1` embeds into `t2`.
///
/// Every countable order embeds in `η`, so a target containing `η` accepts
/// everything; a scattered target rejects any source containing `η`. Between
/// scattered terms the source blocks are placed greedily, each as early as
/// possible: `ω` needs an `ω` block of its own (it is additively
/// indecomposable), `ω*` needs an unused `ω*` block and leaves only a finite
/// remainder of it, and finite blocks take points from wherever the cursor is.
pub fn embeds(t1: &OrderTerm, t2: &OrderTerm) -> EmbedVerdict {
    let source = t1.normalize();
    let target = t2.normalize();
    if source.is_empty() || target.has_eta() {
        return EmbedVerdict::Yes;
    }
    if source.has_eta() {
        return EmbedVerdict::No;
    }
    let blocks = target.blocks();
    let mut j = 0;
    let mut rest = blocks.first().map(|&a| fresh(a));
    let advance = |j: &mut usize, rest: &mut Option<Rest>| {
        *j += 1;
        *rest = blocks.get(*j).map(|&a| fresh(a));
    };
    for &item in source.blocks() {
        match item {
            Atom::Fin(mut need) => loop {
                match rest {
                    None => return EmbedVerdict::No,
                    Some(Rest::Points(have)) if have > need => {
                        rest = Some(Rest::Points(have - need));
                        break;
                    }
                    Some(Rest::Points(have)) => {
                        need -= have;
                        advance(&mut j, &mut rest);
                        if need == 0 {
                            break;
                        }
                    }
                    Some(Rest::Omega | Rest::AnyFinite) => break,
                    Some(Rest::OmegaStar) => {
                        rest = Some(Rest::AnyFinite);
                        break;
                    }
                }
            },
            Atom::Omega => loop {
                match rest {
                    None => return EmbedVerdict::No,
                    Some(Rest::Omega) => {
                        advance(&mut j, &mut rest);
                        break;
                    }
                    Some(_) => advance(&mut j, &mut rest),
                }
            },
            Atom::OmegaStar => loop {
                match rest {
                    None => return EmbedVerdict::No,
                    Some(Rest::OmegaStar) => {
                        rest = Some(Rest::AnyFinite);
                        break;
                    }
                    Some(_) => advance(&mut j, &mut rest),
                }
            },
            Atom::Eta => unreachable!("scattered source"),
        }
    }
    EmbedVerdict::Yes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symchain::sibling_chain;
    use proptest::prelude::*;
    use std::collections::{BTreeMap, BTreeSet};

    fn t(s: &str) -> OrderTerm {
        s.parse().unwrap()
    }

    fn cond(s: &str) -> String {
        condensation(&t(s)).unwrap().to_string()
    }

    #[test]
    fn condensation_examples() {
        assert_eq!(cond("OmegaStar+Omega"), "[Zeta]");
        assert_eq!(cond("Omega+Omega"), "[W,W]");
        assert_eq!(cond("Omega"), "[W]");
        assert_eq!(cond("OmegaStar+3+Omega+2"), "[Zeta,FinC(2)]");
        assert_eq!(condensation(&t("Eta")), Err(SymError::NotScattered));
    }

    #[test]
    fn iso_examples() {
        let x = t("Omega+2+OmegaStar");
        assert_eq!(iso_decide(&x, &x), IsoVerdict::Iso);
        assert_eq!(iso_decide(&t("Eta"), &t("Eta+Eta")), IsoVerdict::Iso);
        let s01 = sibling_chain("01").unwrap();
        let s10 = sibling_chain("10").unwrap();
        assert_eq!(iso_decide(&s01, &s10), IsoVerdict::NonIso);
        assert_eq!(iso_decide(&t("Eta"), &t("Eta+1")), IsoVerdict::NonIso);
        assert_eq!(iso_decide(&t("Omega"), &t("Eta")), IsoVerdict::NonIso);
        assert_eq!(iso_decide(&t("1+Eta+Omega+Eta"), &t("1+Eta+Omega+Eta+2")), IsoVerdict::NonIso);
        assert_eq!(iso_decide(&t("2+Eta+Omega+Eta"), &t("3+Eta+Omega+Eta")), IsoVerdict::NonIso);
        assert_eq!(iso_decide(&t("2+Eta+Omega+Eta"), &t("2+Eta+Omega+1+Eta")), IsoVerdict::NonIso);
        assert_eq!(iso_decide(&t("Eta+Omega"), &t("Eta+OmegaStar")), IsoVerdict::NonIso);
        assert_eq!(iso_decide(&t("Eta+Omega+Eta+Omega"), &t("Eta+Omega")), IsoVerdict::Unknown);
    }

    #[test]
    fn embed_examples() {
        assert_eq!(embeds(&t("Omega"), &t("Eta")), EmbedVerdict::Yes);
        assert_eq!(embeds(&t("OmegaStar"), &t("Omega")), EmbedVerdict::No);
        assert_eq!(embeds(&t("Eta"), &sibling_chain("0110").unwrap()), EmbedVerdict::Yes);
        assert_eq!(embeds(&t("Eta"), &t("Omega+OmegaStar")), EmbedVerdict::No);
        assert_eq!(embeds(&t("Omega+1"), &t("Omega+2")), EmbedVerdict::Yes);
        assert_eq!(embeds(&t("Omega+2"), &t("Omega+1")), EmbedVerdict::No);
        assert_eq!(embeds(&t("3"), &t("1+1")), EmbedVerdict::No);
        assert_eq!(embeds(&t("3"), &t("OmegaStar")), EmbedVerdict::Yes);
        assert_eq!(embeds(&t("5+OmegaStar"), &t("OmegaStar")), EmbedVerdict::No);
        assert_eq!(embeds(&t("OmegaStar+5"), &t("OmegaStar")), EmbedVerdict::Yes);
        assert_eq!(embeds(&t("Omega"), &t("OmegaStar+Omega")), EmbedVerdict::Yes);
        assert_eq!(embeds(&t("Empty"), &t("Empty")), EmbedVerdict::Yes);
        assert_eq!(embeds(&t("1"), &t("Empty")), EmbedVerdict::No);
    }

    #[test]
    fn equimorphic_but_not_isomorphic() {
        let (a, b) = (t("Eta"), t("Eta+1"));
        assert_eq!(
            (embeds(&a, &b), embeds(&b, &a), iso_decide(&a, &b)),
            (EmbedVerdict::Yes, EmbedVerdict::Yes, IsoVerdict::NonIso)
        );
    }

    /// Scattered term materialized with `size` points per infinite block;
    /// points are `(block, index)` with index counted away from the block's
    /// finite end, so a point keeps its identity as `size` grows.
    fn materialize(x: &OrderTerm, size: usize) -> Vec<(usize, usize)> {
        let mut pts = Vec::new();
        for (i, a) in x.blocks().iter().enumerate() {
            match a {
                Atom::Fin(k) => pts.extend((0..*k).map(|j| (i, j))),
                Atom::Omega => pts.extend((0..size).map(|j| (i, j))),
                Atom::OmegaStar => pts.extend((0..size).rev().map(|j| (i, j))),
                Atom::Eta => panic!("scattered terms only"),
            }
        }
        pts
    }

    /// Finite-distance classes recovered from growth: neighbouring pairs that
    /// stay neighbours as every infinite block grows are at finite distance.
    /// A class is open on a side when its end point there changes.
    fn growth_classes(x: &OrderTerm) -> Vec<CondClass> {
        let sizes = [40, 80, 160];
        let samples: Vec<Vec<(usize, usize)>> = sizes.iter().map(|&s| materialize(x, s)).collect();
        let adjacent = |pts: &Vec<(usize, usize)>| -> BTreeSet<((usize, usize), (usize, usize))> {
            pts.windows(2).map(|w| (w[0], w[1])).collect()
        };
        let classes_at = |pts: &Vec<(usize, usize)>, grown: &Vec<(usize, usize)>| -> Vec<Vec<(usize, usize)>> {
            let stable = adjacent(grown);
            let mut out: Vec<Vec<(usize, usize)>> = Vec::new();
            for (i, &p) in pts.iter().enumerate() {
                if i > 0 && stable.contains(&(pts[i - 1], p)) {
                    out.last_mut().unwrap().push(p);
                } else {
                    out.push(vec![p]);
                }
            }
            out
        };
        let small = classes_at(&samples[0], &samples[1]);
        let large = classes_at(&samples[1], &samples[2]);
        // Classes are identified by any point they share.
        let mut owner: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (ci, c) in large.iter().enumerate() {
            for &p in c {
                owner.insert(p, ci);
            }
        }
        small
            .iter()
            .map(|c| {
                let big = &large[owner[&c[0]]];
                let left_open = big.first() != c.first();
                let right_open = big.last() != c.last();
                match (left_open, right_open) {
                    (false, false) => CondClass::FinC(c.len()),
                    (false, true) => CondClass::W,
                    (true, false) => CondClass::Wstar,
                    (true, true) => CondClass::Zeta,
                }
            })
            .collect()
    }

    fn arb_scattered(max_len: usize) -> impl Strategy<Value = OrderTerm> {
        let atom = prop_oneof![
            (1usize..4).prop_map(Atom::Fin),
            Just(Atom::Omega),
            Just(Atom::OmegaStar),
        ];
        prop::collection::vec(atom, 0..=max_len).prop_map(|b| OrderTerm::new(b).unwrap())
    }

    #[test]
    fn condensation_matches_growth_on_all_short_sequences() {
        let atoms = [Atom::Fin(1), Atom::Fin(2), Atom::Omega, Atom::OmegaStar];
        let mut terms = vec![OrderTerm::empty()];
        for len in 1..=5 {
            for combo in itertools::Itertools::multi_cartesian_product((0..len).map(|_| atoms.iter())) {
                terms.push(OrderTerm::new(combo.into_iter().copied().collect()).unwrap());
            }
        }
        for x in &terms {
            assert_eq!(condensation(x).unwrap().0, growth_classes(x), "{x}");
        }
    }

    /// Embedding by exhaustive choice of where each source block goes.
    fn embeds_by_search(src: &[Atom], tgt: &[Atom]) -> bool {
        // States are (block index, what is left of it).
        fn go(src: &[Atom], tgt: &[Atom], j: usize, rest: Option<Rest>) -> bool {
            let Some((&item, more)) = src.split_first() else {
                return true;
            };
            let at = |k: usize| tgt.get(k).map(|&a| fresh(a));
            // Skipping the rest of the current block is always allowed.
            if rest.is_some() && go(src, tgt, j + 1, at(j + 1)) {
                return true;
            }
            let Some(r) = rest else { return false };
            match item {
                Atom::Fin(1) => match r {
                    Rest::Points(1) => go(more, tgt, j + 1, at(j + 1)),
                    Rest::Points(h) => go(more, tgt, j, Some(Rest::Points(h - 1))),
                    Rest::Omega => go(more, tgt, j, Some(Rest::Omega)),
                    Rest::OmegaStar | Rest::AnyFinite => go(more, tgt, j, Some(Rest::AnyFinite)),
                },
                Atom::Fin(k) => {
                    let mut split = vec![Atom::Fin(1); k];
                    split.extend_from_slice(more);
                    go(&split, tgt, j, rest)
                }
                Atom::Omega => r == Rest::Omega && go(more, tgt, j + 1, at(j + 1)),
                Atom::OmegaStar => {
                    r == Rest::OmegaStar && go(more, tgt, j, Some(Rest::AnyFinite))
                }
                Atom::Eta => false,
            }
        }
        go(src, tgt, 0, tgt.first().map(|&a| fresh(a)))
    }

    proptest! {
        #[test]
        fn greedy_embedding_matches_search(a in arb_scattered(4), b in arb_scattered(5)) {
            let fast = embeds(&a, &b) == EmbedVerdict::Yes;
            let slow = embeds_by_search(a.blocks(), b.blocks());
            prop_assert_eq!(fast, slow);
        }

        #[test]
        fn embedding_is_reflexive_and_transitive(
            a in crate::symchain::term::tests::arb_term(4),
            b in crate::symchain::term::tests::arb_term(4),
            c in crate::symchain::term::tests::arb_term(4),
        ) {
            prop_assert_eq!(embeds(&a, &a), EmbedVerdict::Yes);
            if embeds(&a, &b) == EmbedVerdict::Yes && embeds(&b, &c) == EmbedVerdict::Yes {
                prop_assert_eq!(embeds(&a, &c), EmbedVerdict::Yes);
            }
        }

        #[test]
        fn iso_is_an_equivalence_where_decided(
            a in crate::symchain::term::tests::arb_term(4),
            b in crate::symchain::term::tests::arb_term(4),
            c in crate::symchain::term::tests::arb_term(4),
        ) {
            prop_assert_eq!(iso_decide(&a, &a), IsoVerdict::Iso);
            prop_assert_eq!(iso_decide(&a, &b), iso_decide(&b, &a));
            let ab = iso_decide(&a, &b);
            let bc = iso_decide(&b, &c);
            let ac = iso_decide(&a, &c);
            if ab == IsoVerdict::Iso && bc == IsoVerdict::Iso {
                prop_assert_eq!(ac, IsoVerdict::Iso);
            }
            if ab == IsoVerdict::Iso && bc == IsoVerdict::NonIso {
                prop_assert_eq!(ac, IsoVerdict::NonIso);
            }
        }

        #[test]
        fn isomorphic_terms_are_equimorphic(a in crate::symchain::term::tests::arb_term(4), b in crate::symchain::term::tests::arb_term(4)) {
            if iso_decide(&a, &b) == IsoVerdict::Iso {
                prop_assert_eq!(embeds(&a, &b), EmbedVerdict::Yes);
                prop_assert_eq!(embeds(&b, &a), EmbedVerdict::Yes);
            }
        }

        #[test]
        fn scattered_iso_matches_growth(a in arb_scattered(5), b in arb_scattered(5)) {
            let oracle = growth_classes(&a) == growth_classes(&b);
            prop_assert_eq!(iso_decide(&a, &b) == IsoVerdict::Iso, oracle);
        }
    }
}
