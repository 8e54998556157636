mod common;

use itertools::Itertools;
use monomorph::decomp::{
    components, is_monomorphic_part, k_equiv_partition, k_equiv_profile, restriction_check,
    strongly_indiscernible_partition, threshold,
};
use monomorph::relcore::RelStruct;
use proptest::prelude::*;

use common::{arb_digraph, arb_mixed};

/// Whether every permutation of `block` (fixing the rest) is an automorphism.
fn block_symmetric(r: &RelStruct, block: &[usize]) -> bool {
    block.iter().copied().permutations(block.len()).all(|images| {
        let mut perm: Vec<usize> = (0..r.n()).collect();
        for (&x, &y) in block.iter().zip(&images) {
            perm[x] = y;
        }
        r.is_automorphism(&perm)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn profiles_refine_as_k_grows(r in arb_mixed(6)) {
        let profile = k_equiv_profile(&r).unwrap();
        for (coarse, fine) in profile.iter().tuple_windows() {
            prop_assert!(fine.refines(coarse));
        }
        let n = r.n();
        for k in 0..n {
            let next = k_equiv_partition(&r, k + 1).unwrap();
            prop_assert!(next.refines(&k_equiv_partition(&r, k).unwrap()));
        }
        if n >= 2 {
            prop_assert_eq!(k_equiv_partition(&r, n).unwrap(), k_equiv_partition(&r, n - 2).unwrap());
            prop_assert!(threshold(&r).unwrap() <= n - 2);
        }
    }

    #[test]
    fn components_are_the_maximal_monomorphic_parts(r in arb_digraph(6)) {
        let parts = components(&r).unwrap();
        for block in &parts.blocks {
            prop_assert!(is_monomorphic_part(&r, block).unwrap());
        }
        for (x, y) in parts.blocks.iter().tuple_combinations() {
            let union: Vec<usize> = x.iter().chain(y).copied().collect();
            prop_assert!(!is_monomorphic_part(&r, &union).unwrap());
        }
    }

    #[test]
    fn indiscernible_blocks_are_fully_symmetric(r in arb_mixed(5)) {
        let p = strongly_indiscernible_partition(&r);
        for block in &p.blocks {
            prop_assert!(block_symmetric(&r, block));
        }
        for (x, y) in p.blocks.iter().tuple_combinations() {
            let union: Vec<usize> = x.iter().chain(y).copied().collect();
            prop_assert!(!block_symmetric(&r, &union));
        }
        // Indiscernible classes are monomorphic parts, hence refine the components.
        prop_assert!(p.refines(&components(&r).unwrap()));
    }

    #[test]
    fn restriction_commutes_with_equivalence(
        r in arb_digraph(7),
        k in 0usize..3,
        extra in any::<u8>(),
    ) {
        let whole = k_equiv_partition(&r, k).unwrap();
        let mut sub = Vec::new();
        for class in &whole.blocks {
            let needed = (k + 2).min(class.len());
            for (i, &x) in class.iter().enumerate() {
                if i < needed || extra >> (x % 8) & 1 == 1 {
                    sub.push(x);
                }
            }
        }
        prop_assert!(restriction_check(&r, &sub, k).unwrap());
    }
}
