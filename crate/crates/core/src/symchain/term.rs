use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SymError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Atom {
    /// A finite chain with `k ≥ 1` points.
    Fin(usize),
    /// `ω`.
    Omega,
    /// `ω*`.
    OmegaStar,
    /// `η`, the rationals.
    Eta,
}

impl Atom {
    pub fn is_infinite(self) -> bool {
        !matches!(self, Atom::Fin(_))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Fin(k) => write!(f, "Fin({k})"),
            Atom::Omega => write!(f, "Omega"),
            Atom::OmegaStar => write!(f, "OmegaStar"),
            Atom::Eta => write!(f, "Eta"),
        }
    }
}

/// Ordered sum of atoms, left to right; the empty sum is the empty order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrderTerm {
    blocks: Vec<Atom>,
}

/// Rewrite rules used by [`OrderTerm::normalize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `a + b → (a+b)` for finite blocks.
    MergeFinite,
    /// `k + ω → ω`.
    AbsorbIntoOmega,
    /// `ω* + k → ω*`.
    AbsorbIntoOmegaStar,
    /// `η + η → η`.
    MergeEta,
    /// `η + 1 + η → η`.
    CollapsePoint,
}

impl Rule {
    /// Blocks consumed by the rule.
    fn width(self) -> usize {
        match self {
            Rule::CollapsePoint => 3,
            _ => 2,
        }
    }
}

impl OrderTerm {
    pub fn new(blocks: Vec<Atom>) -> Result<Self, SymError> {
        if blocks.contains(&Atom::Fin(0)) {
            return Err(SymError::EmptyFinite);
        }
        Ok(OrderTerm { blocks })
    }

    pub fn empty() -> Self {
        OrderTerm::default()
    }

    pub fn atom(a: Atom) -> Self {
        OrderTerm::new(vec![a]).expect("nonempty atom")
    }

    pub fn blocks(&self) -> &[Atom] {
        &self.blocks
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    /// `self + other`.
    pub fn concat(&self, other: &OrderTerm) -> OrderTerm {
        let mut blocks = self.blocks.clone();
        blocks.extend_from_slice(&other.blocks);
        OrderTerm { blocks }
    }

    pub fn has_eta(&self) -> bool {
        self.blocks.contains(&Atom::Eta)
    }

    /// Number of points, or `None` when infinite.
    pub fn finite_size(&self) -> Option<usize> {
        self.blocks.iter().try_fold(0, |acc, a| match a {
            Atom::Fin(k) => Some(acc + k),
            _ => None,
        })
    }

    /// Whether the order has a least element.
    pub fn has_min(&self) -> bool {
        matches!(self.blocks.first(), Some(Atom::Fin(_) | Atom::Omega))
    }

    /// Whether the order has a greatest element.
    pub fn has_max(&self) -> bool {
        matches!(self.blocks.last(), Some(Atom::Fin(_) | Atom::OmegaStar))
    }

    /// Every position where a rule applies, with that rule.
    pub fn redexes(&self) -> Vec<(usize, Rule)> {
        let b = &self.blocks;
        let mut out = Vec::new();
        for i in 0..b.len() {
            let next = b.get(i + 1);
            match (b[i], next) {
                (Atom::Fin(_), Some(Atom::Fin(_))) => out.push((i, Rule::MergeFinite)),
                (Atom::Fin(_), Some(Atom::Omega)) => out.push((i, Rule::AbsorbIntoOmega)),
                (Atom::OmegaStar, Some(Atom::Fin(_))) => out.push((i, Rule::AbsorbIntoOmegaStar)),
                (Atom::Eta, Some(Atom::Eta)) => out.push((i, Rule::MergeEta)),
                (Atom::Eta, Some(Atom::Fin(1))) if b.get(i + 2) == Some(&Atom::Eta) => {
                    out.push((i, Rule::CollapsePoint))
                }
                _ => {}
            }
        }
        out
    }

    /// Applies `rule` at position `at`; `None` if it does not match there.
    pub fn rewrite(&self, at: usize, rule: Rule) -> Option<OrderTerm> {
        if !self.redexes().contains(&(at, rule)) {
            return None;
        }
        let replacement = match (rule, self.blocks[at], self.blocks[at + 1]) {
            (Rule::MergeFinite, Atom::Fin(a), Atom::Fin(b)) => Atom::Fin(a + b),
            (Rule::AbsorbIntoOmega, _, _) => Atom::Omega,
            (Rule::AbsorbIntoOmegaStar, _, _) => Atom::OmegaStar,
            (Rule::MergeEta | Rule::CollapsePoint, _, _) => Atom::Eta,
            _ => unreachable!("redex checked above"),
        };
        let mut blocks = self.blocks[..at].to_vec();
        blocks.push(replacement);
        blocks.extend_from_slice(&self.blocks[at + rule.width()..]);
        Some(OrderTerm { blocks })
    }

    /// Rewrites to the unique fixed point. Each step removes at least one
    /// block, so this terminates.
    pub fn normalize(&self) -> OrderTerm {
        let mut t = self.clone();
        while let Some(&(at, rule)) = t.redexes().first() {
            t = t.rewrite(at, rule).expect("listed redex applies");
        }
        t
    }

    pub fn is_normal(&self) -> bool {
        self.redexes().is_empty()
    }
}

impl fmt::Display for OrderTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "Empty");
        }
        for (i, a) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for OrderTerm {
    type Err = SymError;

    /// Parses sums such as `Eta+Fin(2)+Omega`; `3`, `omega`, `omega*` and
    /// `eta` are accepted as shorthands.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s.eq_ignore_ascii_case("empty") {
            return Ok(OrderTerm::empty());
        }
        let bad = || SymError::Parse(s.to_string());
        let blocks = s
            .split('+')
            .map(|part| {
                let p = part.trim();
                let lower = p.to_ascii_lowercase();
                match lower.as_str() {
                    "omega" | "w" => Ok(Atom::Omega),
                    "omegastar" | "omega*" | "w*" => Ok(Atom::OmegaStar),
                    "eta" => Ok(Atom::Eta),
                    _ => {
                        let digits = lower
                            .strip_prefix("fin(")
                            .and_then(|r| r.strip_suffix(')'))
                            .unwrap_or(&lower);
                        digits.parse::<usize>().map(Atom::Fin).map_err(|_| bad())
                    }
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        OrderTerm::new(blocks)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(s: &str) -> OrderTerm {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(t("Fin(2)+Omega").normalize(), t("Omega"));
        assert_eq!(t("Eta+Fin(1)+Eta").normalize(), t("Eta"));
        assert_eq!(t("OmegaStar+Fin(5)+Omega").normalize(), t("OmegaStar+Omega"));
        assert_eq!(t("Eta+Fin(2)+Eta").normalize(), t("Eta+Fin(2)+Eta"));
        assert_eq!(t("1+1+Eta+Eta").normalize(), t("Fin(2)+Eta"));
        assert_eq!(t("Eta+1+Eta+1+Eta").normalize(), t("Eta"));
        assert_eq!(OrderTerm::empty().normalize(), OrderTerm::empty());
    }

    #[test]
    fn parse_and_display() {
        let x = t("eta + 3 + omega*");
        assert_eq!(x.blocks(), &[Atom::Eta, Atom::Fin(3), Atom::OmegaStar]);
        assert_eq!(x.to_string(), "Eta+Fin(3)+OmegaStar");
        assert_eq!(x.to_string().parse::<OrderTerm>().unwrap(), x);
        assert_eq!("0".parse::<OrderTerm>(), Err(SymError::EmptyFinite));
        assert!("zeta".parse::<OrderTerm>().is_err());
        assert_eq!(t("Empty"), OrderTerm::empty());
    }

    #[test]
    fn endpoints() {
        assert!(t("Omega").has_min() && !t("Omega").has_max());
        assert!(t("Eta+1").has_max() && !t("Eta+1").has_min());
        assert_eq!(t("2+3").finite_size(), Some(5));
        assert_eq!(t("2+Eta").finite_size(), None);
    }

    pub(crate) fn arb_atom() -> impl Strategy<Value = Atom> {
        prop_oneof![
            (1usize..4).prop_map(Atom::Fin),
            Just(Atom::Fin(1)),
            Just(Atom::Omega),
            Just(Atom::OmegaStar),
            Just(Atom::Eta),
        ]
    }

    pub(crate) fn arb_term(max_len: usize) -> impl Strategy<Value = OrderTerm> {
        prop::collection::vec(arb_atom(), 0..=max_len).prop_map(|b| OrderTerm::new(b).unwrap())
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(x in arb_term(8)) {
            let n = x.normalize();
            prop_assert!(n.is_normal());
            prop_assert_eq!(n.normalize(), n);
        }

        #[test]
        fn rewriting_order_does_not_matter(x in arb_term(8), picks in prop::collection::vec(any::<prop::sample::Index>(), 16)) {
            let mut cur = x.clone();
            let mut picks = picks.into_iter().cycle();
            loop {
                let redexes = cur.redexes();
                if redexes.is_empty() {
                    break;
                }
                let (at, rule) = redexes[picks.next().unwrap().index(redexes.len())];
                let next = cur.rewrite(at, rule).unwrap();
                prop_assert!(next.len() < cur.len());
                cur = next;
            }
            prop_assert_eq!(cur, x.normalize());
        }

        #[test]
        fn normalization_preserves_finite_size(x in prop::collection::vec((1usize..5).prop_map(Atom::Fin), 0..6)) {
            let x = OrderTerm::new(x).unwrap();
            prop_assert_eq!(x.normalize().finite_size(), x.finite_size());
        }
    }
}
