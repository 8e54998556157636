//! Exhaustive enumeration of structures on a fixed domain.

use std::collections::HashSet;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{canonical_key, CanonKey, RelError, RelStruct, Signature, Tuple};

/// Default cap on the number of free tuple slots (2^bits structures).
pub const DEFAULT_ENUM_BUDGET_BITS: usize = 24;

#[derive(Clone, Debug)]
pub struct EnumOptions {
    /// Allow tuples with repeated entries (loops for binary relations).
    pub allow_repeats: bool,
    /// Treat binary relations as undirected: each slot sets a pair both ways.
    pub symmetric: bool,
    /// Yield one representative per isomorphism class.
    pub up_to_iso: bool,
    pub budget_bits: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            allow_repeats: false,
            symmetric: false,
            up_to_iso: false,
            budget_bits: DEFAULT_ENUM_BUDGET_BITS,
        }
    }
}

/// Iterator over every structure of a signature on `n` points, in slot-mask order.
pub struct StructureIter {
    n: usize,
    signature: Signature,
    slots: Vec<(usize, Vec<Tuple>)>,
    next: u64,
    end: u64,
    seen: Option<HashSet<CanonKey>>,
}

pub fn enumerate_structures(
    signature: &Signature,
    n: usize,
    opts: &EnumOptions,
) -> Result<StructureIter, RelError> {
    let mut slots = Vec::new();
    for (rel, sym) in signature.relations().iter().enumerate() {
        if opts.symmetric && sym.arity == 2 {
            for a in 0..n {
                let lo = if opts.allow_repeats { a } else { a + 1 };
                for b in lo..n {
                    let mut ts = vec![vec![a, b]];
                    if a != b {
                        ts.push(vec![b, a]);
                    }
                    slots.push((rel, ts));
                }
            }
        } else {
            for t in all_tuples(n, sym.arity) {
                if opts.allow_repeats || distinct(&t) {
                    slots.push((rel, vec![t]));
                }
            }
        }
    }
    if slots.len() > opts.budget_bits.min(63) {
        return Err(RelError::BoundExceeded {
            what: "enumeration tuple slots",
            got: slots.len(),
            bound: opts.budget_bits.min(63),
        });
    }
    Ok(StructureIter {
        n,
        signature: signature.clone(),
        end: 1u64 << slots.len(),
        slots,
        next: 0,
        seen: opts.up_to_iso.then(HashSet::new),
    })
}

impl Iterator for StructureIter {
    type Item = RelStruct;

    fn next(&mut self) -> Option<RelStruct> {
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            let mut s = RelStruct::empty(self.n, self.signature.clone());
            for (bit, (rel, ts)) in self.slots.iter().enumerate() {
                if (mask >> bit) & 1 == 1 {
                    for t in ts {
                        s.insert(*rel, t.clone()).expect("slot tuples are valid");
                    }
                }
            }
            if let Some(seen) = &mut self.seen {
                if !seen.insert(canonical_key(&s)) {
                    continue;
                }
            }
            return Some(s);
        }
        None
    }
}

/// `count` random structures of `signature`, each on `1..=max_n` points,
/// every tuple (repeats allowed) present with probability 1/2.
pub fn random_structures(signature: &Signature, max_n: usize, count: usize, seed: u64) -> Vec<RelStruct> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n.max(1));
            let tables: Vec<Vec<Tuple>> = signature
                .relations()
                .iter()
                .map(|sym| {
                    (0..sym.arity)
                        .map(|_| 0..n)
                        .multi_cartesian_product()
                        .filter(|_| rng.gen_bool(0.5))
                        .collect()
                })
                .collect();
            RelStruct::from_tables(n, signature.clone(), tables).expect("tuples in range")
        })
        .collect()
}

/// All simple graphs on `n` vertices (relation `edge`, symmetric, loop-free).
pub fn graphs(n: usize, up_to_iso: bool) -> Result<StructureIter, RelError> {
    let sig = Signature::new([("edge", 2)])?;
    enumerate_structures(
        &sig,
        n,
        &EnumOptions {
            symmetric: true,
            up_to_iso,
            ..EnumOptions::default()
        },
    )
}

/// All ordered graphs on `n` vertices: the natural strict order `lt` plus a graph `edge`.
pub fn ordered_graphs(n: usize) -> Result<impl Iterator<Item = RelStruct>, RelError> {
    let sig = Signature::new([("lt", 2), ("edge", 2)])?;
    Ok(graphs(n, false)?.map(move |g| {
        let lt = (0..n).flat_map(|i| (i + 1..n).map(move |j| vec![i, j]));
        RelStruct::from_tables(n, sig.clone(), [lt.collect::<Vec<_>>(), g.table(0).iter().cloned().collect()])
            .expect("valid ordered graph")
    }))
}

fn distinct(t: &[usize]) -> bool {
    t.iter()
        .enumerate()
        .all(|(i, x)| !t[..i].contains(x))
}

fn all_tuples(n: usize, arity: usize) -> Vec<Tuple> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |x| {
                    let mut t2 = t.clone();
                    t2.push(x);
                    t2
                })
            })
            .collect();
    }
    out
}
