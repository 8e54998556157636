use std::collections::{BTreeSet, HashSet, VecDeque};

use super::{Perm, PermError};

/// Default cap on the order of groups built by [`closure`].
pub const DEFAULT_ORDER_BOUND: usize = 3_628_800;

/// A permutation group on `0..n`, held as its full element set together with
/// a generating set.
#[derive(Clone, Debug)]
pub struct PermGroup {
    n: usize,
    generators: Vec<Perm>,
    elements: BTreeSet<Perm>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

/// The subgroup of `Sym(n)` generated by `gens`.
pub fn closure(n: usize, gens: &[Perm], bound: usize) -> Result<PermGroup, PermError> {
    if let Some(g) = gens.iter().find(|g| g.degree() != n) {
        return Err(PermError::DegreeMismatch {
            expected: n,
            got: g.degree(),
        });
    }
    let elements = close(n, [Perm::identity(n)], gens, bound)?;
    let generators = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    Ok(PermGroup {
        n,
        generators,
        elements: elements.into_iter().collect(),
    })
}

/// Breadth-first closure of `seed` under right multiplication by `gens`.
fn close(
    n: usize,
    seed: impl IntoIterator<Item = Perm>,
    gens: &[Perm],
    bound: usize,
) -> Result<HashSet<Perm>, PermError> {
    let mut elements: HashSet<Perm> = HashSet::new();
    let mut queue = VecDeque::new();
    for p in seed {
        if elements.insert(p.clone()) {
            queue.push_back(p);
        }
    }
    if elements.is_empty() {
        elements.insert(Perm::identity(n));
        queue.push_back(Perm::identity(n));
    }
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g);
            if !elements.contains(&y) {
                if elements.len() >= bound {
                    return Err(PermError::OrderBound { bound });
                }
                elements.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(elements)
}

impl PermGroup {
    pub fn trivial(n: usize) -> Self {
        PermGroup {
            n,
            generators: Vec::new(),
            elements: BTreeSet::from([Perm::identity(n)]),
        }
    }

    /// Wraps an element set already known to be a group and picks a small
    /// generating set for it.
    pub fn from_closed_elements(n: usize, elements: impl IntoIterator<Item = Perm>) -> Self {
        let elements: BTreeSet<Perm> = elements.into_iter().collect();
        let mut generators = Vec::new();
        let mut sub: HashSet<Perm> = HashSet::from([Perm::identity(n)]);
        for g in &elements {
            if sub.len() == elements.len() {
                break;
            }
            if !sub.contains(g) {
                generators.push(g.clone());
                sub = close(n, sub, &generators, usize::MAX)
                    .expect("unbounded closure");
            }
        }
        debug_assert_eq!(sub.len(), elements.len(), "element set is not a group");
        PermGroup {
            n,
            generators,
            elements,
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = &Perm> {
        self.elements.iter()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.contains(p)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.n == other.n && self.elements.is_subset(&other.elements)
    }

    /// Identity, closure under composition, and inverses, checked exhaustively.
    pub fn satisfies_group_axioms(&self) -> bool {
        self.contains(&Perm::identity(self.n))
            && self.elements.iter().all(|a| self.contains(&a.inverse()))
            && self
                .elements
                .iter()
                .all(|a| self.elements.iter().all(|b| self.contains(&a.compose(b))))
    }

    /// Elements fixing every point of `subset`.
    pub fn pointwise_stabilizer(&self, subset: &[usize]) -> PermGroup {
        self.filter(|g| subset.iter().all(|&a| g.apply(a) == a))
    }

    /// Elements mapping `subset` onto itself.
    pub fn setwise_stabilizer(&self, subset: &[usize]) -> PermGroup {
        self.filter(|g| g.stabilizes(subset))
    }

    fn filter(&self, keep: impl Fn(&Perm) -> bool) -> PermGroup {
        PermGroup::from_closed_elements(self.n, self.elements.iter().filter(|g| keep(g)).cloned())
    }

    /// The group induced on an invariant `subset`, re-indexed by the sorted
    /// order of `subset`.
    pub fn restrict_to(&self, subset: &[usize]) -> Result<PermGroup, PermError> {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut index = vec![usize::MAX; self.n];
        for (i, &a) in sorted.iter().enumerate() {
            if a >= self.n {
                return Err(PermError::PointOutOfRange { point: a, n: self.n });
            }
            index[a] = i;
        }
        let mut images = BTreeSet::new();
        for g in &self.elements {
            if !g.stabilizes(&sorted) {
                return Err(PermError::NotInvariant(sorted));
            }
            let img: Vec<usize> = sorted.iter().map(|&a| index[g.apply(a)]).collect();
            images.insert(Perm::from_images(&img)?);
        }
        Ok(PermGroup::from_closed_elements(sorted.len(), images))
    }

    /// Whether `sub` is normal in `self`, tested on generators.
    pub fn normalizes(&self, sub: &PermGroup) -> bool {
        let gens: Vec<&Perm> = if self.generators.is_empty() {
            self.elements.iter().collect()
        } else {
            self.generators.iter().collect()
        };
        gens.iter().all(|g| {
            let gi = g.inverse();
            sub.elements
                .iter()
                .all(|h| sub.contains(&g.compose(h).compose(&gi)))
        })
    }
}
