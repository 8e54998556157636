use std::collections::BTreeSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{condensation, embeds, iso_decide, Atom, EmbedVerdict, IsoVerdict, OrderTerm, SymError};

/// How the two dense ends of a sibling chain are modelled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum SiblingEnds {
    /// `η` on both sides.
    #[default]
    Open,
    /// `1 + η` on the left and `η + 1` on the right.
    Closed,
}

/// `η + C_0 + … + C_{len-1} + η` with `C_i = ω` for `'0'` and `ω*` for `'1'`.
pub fn sibling_chain(s: &str) -> Result<OrderTerm, SymError> {
    sibling_chain_with(s, SiblingEnds::Open)
}

pub fn sibling_chain_with(s: &str, ends: SiblingEnds) -> Result<OrderTerm, SymError> {
    if s.is_empty() {
        return Err(SymError::EmptyString);
    }
    let mut blocks = Vec::with_capacity(s.len() + 4);
    if ends == SiblingEnds::Closed {
        blocks.push(Atom::Fin(1));
    }
    blocks.push(Atom::Eta);
    for c in s.chars() {
        blocks.push(match c {
            '0' => Atom::Omega,
            '1' => Atom::OmegaStar,
            other => return Err(SymError::NotBinary(other)),
        });
    }
    blocks.push(Atom::Eta);
    if ends == SiblingEnds::Closed {
        blocks.push(Atom::Fin(1));
    }
    OrderTerm::new(blocks)
}

/// The scattered middle of a sibling chain.
fn middle(t: &OrderTerm) -> OrderTerm {
    let inner: Vec<Atom> = t.blocks().iter().copied().filter(|a| *a != Atom::Eta && *a != Atom::Fin(1)).collect();
    OrderTerm::new(inner).expect("valid atoms")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub s1: String,
    pub s2: String,
    pub verdict: IsoVerdict,
    pub condensation1: String,
    pub condensation2: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiblingReport {
    pub pairs: Vec<PairVerdict>,
    /// Strings listed more than once; they are compared once.
    pub duplicates: Vec<String>,
    /// Pairs not decided `NonIso`.
    pub violations: Vec<(String, String)>,
    /// Strings whose chain does not receive an embedding of `η`.
    pub eta_failures: Vec<String>,
}

impl SiblingReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty() && self.eta_failures.is_empty()
    }
}

/// Compares the sibling chains of every pair of distinct strings.
pub fn pairwise_noniso(strings: &[String]) -> Result<SiblingReport, SymError> {
    let mut seen = BTreeSet::new();
    let mut duplicates = BTreeSet::new();
    let mut distinct = Vec::new();
    for s in strings {
        if seen.insert(s.clone()) {
            distinct.push(s.clone());
        } else {
            duplicates.insert(s.clone());
        }
    }
    let chains: Vec<(OrderTerm, String)> = distinct
        .iter()
        .map(|s| {
            let c = sibling_chain(s)?;
            let cond = condensation(&middle(&c))?.to_string();
            Ok((c, cond))
        })
        .collect::<Result<_, SymError>>()?;
    let eta = OrderTerm::atom(Atom::Eta);
    let eta_failures = distinct
        .iter()
        .zip(&chains)
        .filter(|(_, (c, _))| embeds(&eta, c) != EmbedVerdict::Yes)
        .map(|(s, _)| s.clone())
        .collect();
    let index_pairs: Vec<(usize, usize)> = (0..distinct.len()).tuple_combinations().collect();
    let pairs: Vec<PairVerdict> = index_pairs
        .par_iter()
        .map(|&(i, j)| PairVerdict {
            s1: distinct[i].clone(),
            s2: distinct[j].clone(),
            verdict: iso_decide(&chains[i].0, &chains[j].0),
            condensation1: chains[i].1.clone(),
            condensation2: chains[j].1.clone(),
        })
        .collect();
    let violations = pairs
        .iter()
        .filter(|p| p.verdict != IsoVerdict::NonIso)
        .map(|p| (p.s1.clone(), p.s2.clone()))
        .collect();
    Ok(SiblingReport {
        pairs,
        duplicates: duplicates.into_iter().collect(),
        violations,
        eta_failures,
    })
}

/// Ranks of a `size`-point suborder of `t`, one contiguous rank range per
/// block in block order: `ω` increasing, `ω*` decreasing, `Fin(k)` exactly
/// `k` increasing ranks, `η` a seeded shuffle. Points left after the finite
/// blocks are shared evenly among the infinite ones, earlier blocks first.
pub fn sample_finite(t: &OrderTerm, size: usize, seed: u64) -> Result<Vec<usize>, SymError> {
    let blocks = t.blocks();
    let fixed: usize = blocks
        .iter()
        .map(|a| if let Atom::Fin(k) = a { *k } else { 0 })
        .sum();
    let infinite = blocks.iter().filter(|a| a.is_infinite()).count();
    let needed = fixed + infinite;
    if size < needed.max(blocks.len()).max(1) {
        return Err(SymError::SampleTooSmall {
            size,
            needed: needed.max(1),
        });
    }
    if infinite == 0 && size > fixed {
        return Err(SymError::SampleTooLarge { size, max: fixed });
    }
    let spare = size - fixed;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ranks = Vec::with_capacity(size);
    let mut next_inf = 0;
    for &a in blocks {
        let count = match a {
            Atom::Fin(k) => k,
            _ => {
                let c = spare / infinite + usize::from(next_inf < spare % infinite);
                next_inf += 1;
                c
            }
        };
        let base = ranks.len();
        let range = base..base + count;
        match a {
            Atom::Fin(_) | Atom::Omega => ranks.extend(range),
            Atom::OmegaStar => ranks.extend(range.rev()),
            Atom::Eta => {
                let mut part: Vec<usize> = range.collect();
                part.shuffle(&mut rng);
                ranks.extend(part);
            }
        }
    }
    Ok(ranks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings_up_to(max_len: usize) -> Vec<String> {
        (1..=max_len)
            .flat_map(|len| (0..1u32 << len).map(move |bits| format!("{bits:0len$b}")))
            .collect()
    }

    #[test]
    fn chains() {
        assert_eq!(sibling_chain("0").unwrap().to_string(), "Eta+Omega+Eta");
        assert_eq!(sibling_chain("1").unwrap().to_string(), "Eta+OmegaStar+Eta");
        assert_eq!(sibling_chain("10").unwrap().to_string(), "Eta+OmegaStar+Omega+Eta");
        assert_eq!(sibling_chain(""), Err(SymError::EmptyString));
        assert_eq!(sibling_chain("012"), Err(SymError::NotBinary('2')));
        assert_eq!(
            sibling_chain_with("0", SiblingEnds::Closed).unwrap().to_string(),
            "Fin(1)+Eta+Omega+Eta+Fin(1)"
        );
    }

    #[test]
    fn short_strings_are_pairwise_non_isomorphic() {
        let strings = strings_up_to(3);
        let report = pairwise_noniso(&strings).unwrap();
        assert_eq!(report.pairs.len(), 14 * 13 / 2);
        assert!(report.ok(), "{:?}", report.violations);

        let two = pairwise_noniso(&["0".to_string(), "1".to_string()]).unwrap();
        assert_eq!(two.pairs[0].verdict, IsoVerdict::NonIso);
        assert_eq!((two.pairs[0].condensation1.as_str(), two.pairs[0].condensation2.as_str()), ("[W]", "[Wstar]"));

        let dup = pairwise_noniso(&["01".to_string(), "01".to_string()]).unwrap();
        assert!(dup.ok());
        assert_eq!(dup.duplicates, vec!["01".to_string()]);
        assert!(dup.pairs.is_empty());
    }

    #[test]
    fn closed_ends_also_separate() {
        let strings = strings_up_to(4);
        for (a, b) in strings.iter().tuple_combinations() {
            let x = sibling_chain_with(a, SiblingEnds::Closed).unwrap();
            let y = sibling_chain_with(b, SiblingEnds::Closed).unwrap();
            assert_eq!(iso_decide(&x, &y), IsoVerdict::NonIso, "{a} vs {b}");
        }
    }

    /// Expanding each ζ back into ω* + ω recovers the string.
    #[test]
    fn zeta_merge_is_injective() {
        for s in strings_up_to(6) {
            let c = condensation(&middle(&sibling_chain(&s).unwrap())).unwrap();
            let back: String = c
                .0
                .iter()
                .map(|k| match k {
                    super::super::CondClass::W => "0",
                    super::super::CondClass::Wstar => "1",
                    super::super::CondClass::Zeta => "10",
                    super::super::CondClass::FinC(_) => unreachable!(),
                })
                .collect();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn samples() {
        let t = |s: &str| s.parse::<OrderTerm>().unwrap();
        assert_eq!(sample_finite(&t("Omega"), 5, 0).unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(sample_finite(&t("OmegaStar"), 4, 0).unwrap(), vec![3, 2, 1, 0]);
        assert_eq!(sample_finite(&t("Omega+OmegaStar"), 6, 0).unwrap(), vec![0, 1, 2, 5, 4, 3]);
        assert_eq!(sample_finite(&t("2+Omega"), 4, 0).unwrap(), vec![0, 1, 2, 3]);
        let eta = sample_finite(&t("Eta+Omega+Eta"), 9, 7).unwrap();
        assert_eq!(eta, sample_finite(&t("Eta+Omega+Eta"), 9, 7).unwrap());
        let mut sorted = eta.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..9).collect::<Vec<_>>());
        assert_eq!(&eta[3..6], &[3, 4, 5]);
        assert!(matches!(
            sample_finite(&t("Eta+Omega+Eta"), 2, 0),
            Err(SymError::SampleTooSmall { .. })
        ));
        assert!(matches!(sample_finite(&t("3"), 4, 0), Err(SymError::SampleTooLarge { .. })));
    }
}
