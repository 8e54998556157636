//! Local isomorphisms and backtracking isomorphism / embedding search.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use super::{RelError, RelStruct, Tuple};
use crate::permgrp::{Perm, PermGroup};

/// Largest domain for which [`automorphisms`] enumerates the full group.
pub const DEFAULT_AUTOMORPHISM_BOUND: usize = 9;

/// An injective partial function between two domains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialMap {
    pairs: Vec<(usize, usize)>,
}

impl PartialMap {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self, RelError> {
        let mut dom = BTreeMap::new();
        let mut img = BTreeMap::new();
        for &(x, y) in &pairs {
            if dom.insert(x, y).is_some() {
                return Err(RelError::DuplicateElement(x));
            }
            if img.insert(y, x).is_some() {
                return Err(RelError::NotInjective(y));
            }
        }
        Ok(PartialMap { pairs })
    }

    pub fn identity(subset: &[usize]) -> Result<Self, RelError> {
        PartialMap::new(subset.iter().map(|&x| (x, x)).collect())
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

/// Whether `f` is an isomorphism from `r` restricted to its domain onto `s`
/// restricted to its image.
pub fn is_local_iso(r: &RelStruct, s: &RelStruct, f: &PartialMap) -> Result<bool, RelError> {
    if r.signature() != s.signature() {
        return Err(RelError::SignatureMismatch);
    }
    let mut fwd = vec![None; r.n()];
    let mut back = vec![None; s.n()];
    for &(x, y) in f.pairs() {
        if x >= r.n() {
            return Err(RelError::OutOfRange { index: x, n: r.n() });
        }
        if y >= s.n() {
            return Err(RelError::OutOfRange { index: y, n: s.n() });
        }
        fwd[x] = Some(y);
        back[y] = Some(x);
    }
    Ok(maps_into(r, s, &fwd) && maps_into(s, r, &back))
}

/// Every tuple of `a` whose support lies in the domain of `map` has its image in `b`.
fn maps_into(a: &RelStruct, b: &RelStruct, map: &[Option<usize>]) -> bool {
    a.tables().iter().enumerate().all(|(rel, table)| {
        table.iter().all(|t| {
            let image: Option<Tuple> = t.iter().map(|&x| map[x]).collect();
            image.is_none_or(|img| b.contains(rel, &img))
        })
    })
}

/// Some isomorphism `r → s`, as the vector of images.
pub fn find_isomorphism(r: &RelStruct, s: &RelStruct) -> Result<Option<Vec<usize>>, RelError> {
    if r.signature() != s.signature() {
        return Err(RelError::SignatureMismatch);
    }
    if r.n() != s.n() || r.tuple_count() != s.tuple_count() {
        return Ok(None);
    }
    let mut found = None;
    Search::new(r, s, Mode::Bijection).run(&mut |m| {
        found = Some(m.to_vec());
        ControlFlow::Break(())
    });
    Ok(found)
}

/// Some injection `r → s` that is a local isomorphism onto its image.
pub fn find_embedding(r: &RelStruct, s: &RelStruct) -> Result<Option<Vec<usize>>, RelError> {
    if r.signature() != s.signature() {
        return Err(RelError::SignatureMismatch);
    }
    if r.n() > s.n() {
        return Ok(None);
    }
    let mut found = None;
    Search::new(r, s, Mode::Injection).run(&mut |m| {
        found = Some(m.to_vec());
        ControlFlow::Break(())
    });
    Ok(found)
}

/// The automorphism group of `r`, with `r.n()` at most `bound`.
pub fn automorphisms(r: &RelStruct, bound: usize) -> Result<PermGroup, RelError> {
    if r.n() > bound {
        return Err(RelError::BoundExceeded {
            what: "automorphism search domain",
            got: r.n(),
            bound,
        });
    }
    let mut elements = Vec::new();
    Search::new(r, r, Mode::Bijection).run(&mut |m| {
        elements.push(Perm::from_images(m).expect("search yields bijections"));
        ControlFlow::Continue(())
    });
    Ok(PermGroup::from_closed_elements(r.n(), elements))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Bijection,
    Injection,
}

/// Tuples incident to each vertex, as `(relation, tuple)` pairs.
fn incidence(s: &RelStruct) -> Vec<Vec<(usize, &Tuple)>> {
    let mut inc = vec![Vec::new(); s.n()];
    for (rel, table) in s.tables().iter().enumerate() {
        for t in table {
            let mut seen: Vec<usize> = t.clone();
            seen.sort_unstable();
            seen.dedup();
            for v in seen {
                inc[v].push((rel, t));
            }
        }
    }
    inc
}

/// Per-vertex counts of tuple occurrences by (relation, position).
fn vertex_invariants(s: &RelStruct) -> Vec<Vec<usize>> {
    let sig = s.signature();
    let offsets: Vec<usize> = sig
        .relations()
        .iter()
        .scan(0, |acc, r| {
            let o = *acc;
            *acc += r.arity;
            Some(o)
        })
        .collect();
    let width: usize = sig.relations().iter().map(|r| r.arity).sum();
    let mut inv = vec![vec![0; width]; s.n()];
    for (rel, table) in s.tables().iter().enumerate() {
        for t in table {
            for (p, &v) in t.iter().enumerate() {
                inv[v][offsets[rel] + p] += 1;
            }
        }
    }
    inv
}

struct Search<'a> {
    src: &'a RelStruct,
    tgt: &'a RelStruct,
    mode: Mode,
    src_inc: Vec<Vec<(usize, &'a Tuple)>>,
    tgt_inc: Vec<Vec<(usize, &'a Tuple)>>,
    src_inv: Vec<Vec<usize>>,
    tgt_inv: Vec<Vec<usize>>,
    order: Vec<usize>,
    fwd: Vec<Option<usize>>,
    back: Vec<Option<usize>>,
}

impl<'a> Search<'a> {
    fn new(src: &'a RelStruct, tgt: &'a RelStruct, mode: Mode) -> Self {
        let src_inc = incidence(src);
        let tgt_inc = incidence(tgt);
        let (src_inv, tgt_inv) = match mode {
            Mode::Bijection => (vertex_invariants(src), vertex_invariants(tgt)),
            Mode::Injection => (Vec::new(), Vec::new()),
        };
        let order = search_order(src, &src_inc);
        Search {
            src,
            tgt,
            mode,
            src_inc,
            tgt_inc,
            src_inv,
            tgt_inv,
            order,
            fwd: vec![None; src.n()],
            back: vec![None; tgt.n()],
        }
    }

    fn run(mut self, visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>) {
        if self.mode == Mode::Bijection {
            let mut a = self.src_inv.clone();
            let mut b = self.tgt_inv.clone();
            a.sort();
            b.sort();
            if a != b {
                return;
            }
        }
        let _ = self.extend(0, visit);
    }

    fn extend(
        &mut self,
        depth: usize,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if depth == self.order.len() {
            let m: Vec<usize> = self.fwd.iter().map(|x| x.expect("complete")).collect();
            return visit(&m);
        }
        let v = self.order[depth];
        for w in 0..self.tgt.n() {
            if self.back[w].is_some() {
                continue;
            }
            if self.mode == Mode::Bijection && self.src_inv[v] != self.tgt_inv[w] {
                continue;
            }
            self.fwd[v] = Some(w);
            self.back[w] = Some(v);
            if self.consistent(v, w) {
                self.extend(depth + 1, visit)?;
            }
            self.fwd[v] = None;
            self.back[w] = None;
        }
        ControlFlow::Continue(())
    }

    fn consistent(&self, v: usize, w: usize) -> bool {
        let fwd_ok = self.src_inc[v].iter().all(|&(rel, t)| {
            let image: Option<Tuple> = t.iter().map(|&x| self.fwd[x]).collect();
            image.is_none_or(|img| self.tgt.contains(rel, &img))
        });
        fwd_ok
            && self.tgt_inc[w].iter().all(|&(rel, t)| {
                let pre: Option<Tuple> = t.iter().map(|&x| self.back[x]).collect();
                pre.is_none_or(|p| self.src.contains(rel, &p))
            })
    }
}

/// Vertex order for the search: each next vertex maximises the number of tuples
/// it shares with the vertices already placed, ties broken by degree then index.
fn search_order(s: &RelStruct, inc: &[Vec<(usize, &Tuple)>]) -> Vec<usize> {
    let n = s.n();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = inc[v]
                    .iter()
                    .filter(|(_, t)| t.iter().any(|&x| x != v && placed[x]))
                    .count();
                (links, inc[v].len(), std::cmp::Reverse(v))
            })
            .expect("an unplaced vertex remains");
        placed[best] = true;
        order.push(best);
    }
    order
}
