//! Generic finite-loop machinery: Cayley tables, subloop closure, law
//! checking, isomorphism classification.

mod bitset;
mod classify;
mod iso;
mod table;

pub use bitset::SubloopSet;
pub use classify::{classify, fingerprint, Fingerprint, IsoType};
pub use iso::{are_isomorphic, generating_sequence, is_homomorphism, GenChain};
pub use table::{emit_cayley, parse_cayley, CayleyTable, TableError};

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn a4() -> CayleyTable {
        parse_cayley(include_str!("../../fixtures/a4.tab")).unwrap()
    }

    proptest! {
        /// Closure is extensive, monotone and idempotent on random seeds.
        #[test]
        fn closure_properties(mut seed in proptest::collection::vec(0usize..12, 0..5)) {
            let t = a4();
            let small = t.closure(&seed);
            prop_assert!(seed.iter().all(|&s| small.contains(s)));
            prop_assert_eq!(t.closure(&small.indices()), small.clone());
            seed.push(7);
            let big = t.closure(&seed);
            prop_assert!(small.is_subset(&big));
        }

        /// Classification is invariant under relabeling the ambient table.
        #[test]
        fn classify_is_relabel_invariant(
            seed in proptest::collection::vec(0usize..12, 0..4),
            perm in Just(()).prop_perturb(|_, mut rng| {
                let mut p: Vec<usize> = (0..12).collect();
                for i in (1..12).rev() {
                    p.swap(i, (rng.next_u32() as usize) % (i + 1));
                }
                p
            }),
        ) {
            let t = a4();
            let sub = t.closure(&seed);
            let relabeled = t.relabel(&perm);
            let image_seed: Vec<usize> = sub.iter().map(|x| perm[x]).collect();
            let image = SubloopSet::from_indices(12, &image_seed);
            prop_assert_eq!(classify(&t, &sub), classify(&relabeled, &image));
        }

        /// Emitted tables parse back bit-exactly.
        #[test]
        fn emit_parse_round_trip(
            perm in Just(()).prop_perturb(|_, mut rng| {
                let mut p: Vec<usize> = (0..12).collect();
                for i in (1..12).rev() {
                    p.swap(i, (rng.next_u32() as usize) % (i + 1));
                }
                p
            }),
        ) {
            let t = a4().relabel(&perm);
            let text = emit_cayley(&t);
            let parsed = parse_cayley(&text).unwrap();
            prop_assert_eq!(parsed, t);
        }
    }
}
