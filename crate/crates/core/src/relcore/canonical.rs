//! Canonical forms by individualization and refinement.
//!
//! Two structures over the same signature have equal keys iff they are
//! isomorphic. Branches that differ by a transposition automorphism are
//! explored once.

use super::{RelStruct, Tuple};

/// Isomorphism-invariant encoding of a structure.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonKey(Vec<u32>);

impl CanonKey {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

pub fn canonical_key(s: &RelStruct) -> CanonKey {
    let n = s.n();
    let mut tuples: Vec<(usize, &Tuple)> = Vec::new();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (rel, table) in s.tables().iter().enumerate() {
        for t in table {
            let idx = tuples.len();
            tuples.push((rel, t));
            let mut vs = t.clone();
            vs.sort_unstable();
            vs.dedup();
            for v in vs {
                incident[v].push(idx);
            }
        }
    }
    let swap_class = transposition_classes(s);
    let ctx = Ctx {
        s,
        tuples,
        incident,
        swap_class,
    };
    let start = ctx.refine(vec![0; n]);
    let mut best = None;
    ctx.search(start, &mut best);
    CanonKey(best.unwrap_or_else(|| ctx.encode(&[])))
}

/// Class id per vertex under "the transposition (x y) is an automorphism".
fn transposition_classes(s: &RelStruct) -> Vec<usize> {
    let n = s.n();
    let mut class = vec![usize::MAX; n];
    for x in 0..n {
        if class[x] != usize::MAX {
            continue;
        }
        class[x] = x;
        for (y, c) in class.iter_mut().enumerate().skip(x + 1) {
            if *c == usize::MAX && s.transposition_is_automorphism(x, y) {
                *c = x;
            }
        }
    }
    class
}

struct Ctx<'a> {
    s: &'a RelStruct,
    tuples: Vec<(usize, &'a Tuple)>,
    incident: Vec<Vec<usize>>,
    swap_class: Vec<usize>,
}

impl Ctx<'_> {
    /// Refines an ordered partition (cell index per vertex) to a stable one.
    fn refine(&self, mut cell: Vec<usize>) -> Vec<usize> {
        let n = cell.len();
        let mut cells = count_cells(&cell);
        loop {
            let cur = &cell;
            let mut sigs: Vec<(Vec<usize>, usize)> = (0..n)
                .map(|v| {
                    let mut parts: Vec<Vec<usize>> = self.incident[v]
                        .iter()
                        .flat_map(|&i| {
                            let (rel, t) = self.tuples[i];
                            t.iter().enumerate().filter(move |&(_, &x)| x == v).map(
                                move |(pos, _)| {
                                    let mut p = vec![rel, pos];
                                    p.extend(t.iter().map(|&x| cur[x]));
                                    p
                                },
                            )
                        })
                        .collect();
                    parts.sort_unstable();
                    let mut sig = vec![cur[v]];
                    for p in parts {
                        sig.push(p.len());
                        sig.extend(p);
                    }
                    (sig, v)
                })
                .collect();
            sigs.sort_unstable();
            let mut next = vec![0; n];
            let mut rank = 0;
            for i in 0..n {
                if i > 0 && sigs[i].0 != sigs[i - 1].0 {
                    rank += 1;
                }
                next[sigs[i].1] = rank;
            }
            cell = next;
            let c = count_cells(&cell);
            if c == cells {
                return cell;
            }
            cells = c;
        }
    }

    fn search(&self, cell: Vec<usize>, best: &mut Option<Vec<u32>>) {
        let n = cell.len();
        let cells = count_cells(&cell);
        if cells == n {
            let enc = self.encode(&cell);
            if best.as_ref().is_none_or(|b| enc < *b) {
                *best = Some(enc);
            }
            return;
        }
        let mut sizes = vec![0usize; cells];
        for &c in &cell {
            sizes[c] += 1;
        }
        let target = sizes.iter().position(|&k| k > 1).expect("non-discrete");
        let mut tried_classes = Vec::new();
        for v in 0..n {
            if cell[v] != target || tried_classes.contains(&self.swap_class[v]) {
                continue;
            }
            tried_classes.push(self.swap_class[v]);
            let split: Vec<usize> = (0..n)
                .map(|x| {
                    let c = cell[x];
                    if c < target || x == v {
                        c
                    } else {
                        c + 1
                    }
                })
                .collect();
            self.search(self.refine(split), best);
        }
    }

    /// Encoding of the structure relabelled by `label`.
    fn encode(&self, label: &[usize]) -> Vec<u32> {
        let mut enc = vec![self.s.n() as u32];
        for table in self.s.tables() {
            let mut mapped: Vec<Vec<u32>> = table
                .iter()
                .map(|t| t.iter().map(|&x| label[x] as u32).collect())
                .collect();
            mapped.sort_unstable();
            enc.push(mapped.len() as u32);
            enc.extend(mapped.into_iter().flatten());
        }
        enc
    }
}

fn count_cells(cell: &[usize]) -> usize {
    cell.iter().max().map_or(0, |&m| m + 1)
}
