#![allow(dead_code)]

use proptest::prelude::*;

use monomorph::relcore::{digraph, RelStruct, Signature};

/// Loop-free digraph on `1..=max_n` vertices.
pub fn arb_digraph(max_n: usize) -> impl Strategy<Value = RelStruct> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let arcs: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| a != b && bits[a * n + b])
                .collect();
            digraph(n, &arcs).expect("arcs in range")
        })
    })
}

/// One binary and one ternary relation on `1..=max_n` points, repeats allowed.
pub fn arb_mixed(max_n: usize) -> impl Strategy<Value = RelStruct> {
    (1..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<bool>(), n * n),
            prop::collection::vec(prop::bool::weighted(0.15), n * n * n),
        )
            .prop_map(move |(pairs, triples)| {
                let sig = Signature::new([("r", 2), ("t", 3)]).expect("valid signature");
                let binary: Vec<Vec<usize>> = (0..n * n)
                    .filter(|&i| pairs[i])
                    .map(|i| vec![i / n, i % n])
                    .collect();
                let ternary: Vec<Vec<usize>> = (0..n * n * n)
                    .filter(|&i| triples[i])
                    .map(|i| vec![i / (n * n), (i / n) % n, i % n])
                    .collect();
                RelStruct::from_tables(n, sig, [binary, ternary]).expect("tuples in range")
            })
    })
}

/// A permutation of `0..n` as its image vector.
pub fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

/// Every permutation of `0..n`.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).permutations(n).collect()
}
