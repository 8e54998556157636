//! Finite relational structures and their JSON interchange format.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::RelError;

/// Default ceiling on relation arity.
pub const DEFAULT_ARITY_CEILING: usize = 4;

/// A tuple of domain elements.
pub type Tuple = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RelationSymbol {
    pub name: String,
    pub arity: usize,
}

/// Ordered list of relation symbols with unique names.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    relations: Vec<RelationSymbol>,
}

impl Signature {
    pub fn new<I, S>(relations: I) -> Result<Self, RelError>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        Self::with_arity_ceiling(relations, DEFAULT_ARITY_CEILING)
    }

    pub fn with_arity_ceiling<I, S>(relations: I, ceiling: usize) -> Result<Self, RelError>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (name, arity) in relations {
            let name = name.into();
            if arity == 0 || arity > ceiling {
                return Err(RelError::BadArity { name, arity, ceiling });
            }
            if !seen.insert(name.clone()) {
                return Err(RelError::DuplicateName(name));
            }
            out.push(RelationSymbol { name, arity });
        }
        Ok(Signature { relations: out })
    }

    /// The signature with no relations (the pure equality structure).
    pub fn empty() -> Self {
        Signature::default()
    }

    pub fn relations(&self) -> &[RelationSymbol] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn arity(&self, rel: usize) -> usize {
        self.relations[rel].arity
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.relations.iter().position(|r| r.name == name)
    }

    pub fn max_arity(&self) -> usize {
        self.relations.iter().map(|r| r.arity).max().unwrap_or(0)
    }
}

/// A relational structure on the domain `0..n`.
///
/// Tables are kept as sorted tuple sets so that iteration order, equality and
/// hashing are all deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelStruct {
    n: usize,
    signature: Signature,
    tables: Vec<BTreeSet<Tuple>>,
}

impl RelStruct {
    /// Structure with every relation empty.
    pub fn empty(n: usize, signature: Signature) -> Self {
        let tables = vec![BTreeSet::new(); signature.len()];
        RelStruct { n, signature, tables }
    }

    /// Equality structure on `n` points (no relations at all).
    pub fn equality(n: usize) -> Self {
        Self::empty(n, Signature::empty())
    }

    pub fn from_tables<I, T>(n: usize, signature: Signature, tables: I) -> Result<Self, RelError>
    where
        I: IntoIterator<Item = T>,
        T: IntoIterator<Item = Tuple>,
    {
        let mut s = Self::empty(n, signature);
        let mut count = 0;
        for (rel, table) in tables.into_iter().enumerate() {
            if rel >= s.signature.len() {
                return Err(RelError::TableCount {
                    expected: s.signature.len(),
                    got: rel + 1,
                });
            }
            for t in table {
                s.insert(rel, t)?;
            }
            count = rel + 1;
        }
        if count != s.signature.len() {
            return Err(RelError::TableCount {
                expected: s.signature.len(),
                got: count,
            });
        }
        Ok(s)
    }

    /// Adds a tuple to relation `rel`. Returns whether it was new.
    pub fn insert(&mut self, rel: usize, tuple: Tuple) -> Result<bool, RelError> {
        let sym = self
            .signature
            .relations
            .get(rel)
            .ok_or(RelError::UnknownRelation(rel))?;
        if tuple.len() != sym.arity {
            return Err(RelError::TupleLength {
                name: sym.name.clone(),
                arity: sym.arity,
                got: tuple.len(),
            });
        }
        if let Some(&bad) = tuple.iter().find(|&&x| x >= self.n) {
            return Err(RelError::OutOfRange { index: bad, n: self.n });
        }
        Ok(self.tables[rel].insert(tuple))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn table(&self, rel: usize) -> &BTreeSet<Tuple> {
        &self.tables[rel]
    }

    pub fn tables(&self) -> &[BTreeSet<Tuple>] {
        &self.tables
    }

    pub fn contains(&self, rel: usize, tuple: &[usize]) -> bool {
        self.tables[rel].contains(tuple)
    }

    pub fn tuple_count(&self) -> usize {
        self.tables.iter().map(BTreeSet::len).sum()
    }

    /// Induced substructure on `subset`; element `subset[i]` becomes `i`.
    ///
    /// Passing a sorted subset yields the canonical order-preserving
    /// relabelling.
    pub fn restrict(&self, subset: &[usize]) -> Result<RelStruct, RelError> {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &x) in subset.iter().enumerate() {
            if x >= self.n {
                return Err(RelError::OutOfRange { index: x, n: self.n });
            }
            if pos[x] != usize::MAX {
                return Err(RelError::DuplicateElement(x));
            }
            pos[x] = i;
        }
        Ok(self.restrict_with_positions(subset.len(), &pos))
    }

    /// Restriction to the elements whose bit is set in `mask`, sorted order.
    pub(crate) fn restrict_mask(&self, mask: u64) -> RelStruct {
        let mut pos = vec![usize::MAX; self.n];
        let mut m = 0;
        for (x, p) in pos.iter_mut().enumerate() {
            if (mask >> x) & 1 == 1 {
                *p = m;
                m += 1;
            }
        }
        self.restrict_with_positions(m, &pos)
    }

    fn restrict_with_positions(&self, m: usize, pos: &[usize]) -> RelStruct {
        let tables = self
            .tables
            .iter()
            .map(|table| {
                table
                    .iter()
                    .filter(|t| t.iter().all(|&x| pos[x] != usize::MAX))
                    .map(|t| t.iter().map(|&x| pos[x]).collect())
                    .collect()
            })
            .collect();
        RelStruct {
            n: m,
            signature: self.signature.clone(),
            tables,
        }
    }

    /// Image of the structure under the bijection `perm` (`x ↦ perm[x]`).
    pub fn relabel(&self, perm: &[usize]) -> RelStruct {
        let tables = self
            .tables
            .iter()
            .map(|table| {
                table
                    .iter()
                    .map(|t| t.iter().map(|&x| perm[x]).collect())
                    .collect()
            })
            .collect();
        RelStruct {
            n: self.n,
            signature: self.signature.clone(),
            tables,
        }
    }

    /// Whether the bijection `perm` maps the structure onto itself.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        self.tables.iter().all(|table| {
            table.iter().all(|t| {
                let image: Tuple = t.iter().map(|&x| perm[x]).collect();
                table.contains(&image)
            })
        })
    }

    /// Whether swapping `x` and `y` (fixing everything else) is an automorphism.
    pub fn transposition_is_automorphism(&self, x: usize, y: usize) -> bool {
        if x == y {
            return true;
        }
        let swap = |v: usize| {
            if v == x {
                y
            } else if v == y {
                x
            } else {
                v
            }
        };
        self.tables.iter().all(|table| {
            table.iter().all(|t| {
                if !t.iter().any(|&v| v == x || v == y) {
                    return true;
                }
                let image: Tuple = t.iter().map(|&v| swap(v)).collect();
                table.contains(&image)
            })
        })
    }

    pub fn to_file(&self) -> StructureFile {
        StructureFile {
            n: self.n,
            relations: self
                .signature
                .relations
                .iter()
                .zip(&self.tables)
                .map(|(sym, table)| RelationFile {
                    name: sym.name.clone(),
                    arity: sym.arity,
                    tuples: table.iter().cloned().collect(),
                })
                .collect(),
        }
    }

    pub fn from_file(file: &StructureFile, arity_ceiling: usize) -> Result<Self, RelError> {
        let signature = Signature::with_arity_ceiling(
            file.relations.iter().map(|r| (r.name.clone(), r.arity)),
            arity_ceiling,
        )?;
        RelStruct::from_tables(
            file.n,
            signature,
            file.relations.iter().map(|r| r.tuples.iter().cloned()),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("structure serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, RelError> {
        let file: StructureFile =
            serde_json::from_str(text).map_err(|e| RelError::Json(e.to_string()))?;
        RelStruct::from_file(&file, DEFAULT_ARITY_CEILING)
    }
}

/// On-disk shape of a structure: `{ "n": .., "relations": [ { "name", "arity", "tuples" } ] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFile {
    pub n: usize,
    pub relations: Vec<RelationFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFile {
    pub name: String,
    pub arity: usize,
    pub tuples: Vec<Tuple>,
}

/// Simple graph on `n` vertices from an undirected edge list.
pub fn graph(n: usize, edges: &[(usize, usize)]) -> Result<RelStruct, RelError> {
    let sig = Signature::new([("edge", 2)])?;
    let mut g = RelStruct::empty(n, sig);
    for &(a, b) in edges {
        g.insert(0, vec![a, b])?;
        g.insert(0, vec![b, a])?;
    }
    Ok(g)
}

/// Directed graph on `n` vertices from an arc list.
pub fn digraph(n: usize, arcs: &[(usize, usize)]) -> Result<RelStruct, RelError> {
    let sig = Signature::new([("arc", 2)])?;
    let mut g = RelStruct::empty(n, sig);
    for &(a, b) in arcs {
        g.insert(0, vec![a, b])?;
    }
    Ok(g)
}
