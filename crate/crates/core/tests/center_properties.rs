use proptest::prelude::*;

use so_center::center::{build_c, build_pf, build_pf_full, is_central};
use so_center::uea::{commutator, Element, Generator};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn pfaffian_alternates_under_adjacent_swaps(m in 1usize..=3, pos in 0usize..5) {
        let n = 2 * m;
        prop_assume!(pos + 1 < n);
        let mut idx: Vec<usize> = (1..=n).rev().collect();
        idx.swap(pos, pos + 1);
        prop_assert_eq!(build_pf(&idx, n).unwrap(), -&build_pf_full(m));
    }

    #[test]
    fn sub_pfaffians_alternate(perm in Just((1..=6usize).collect::<Vec<_>>()).prop_shuffle(), len in 1usize..=3, pos in 0usize..5) {
        let idx: Vec<usize> = perm[..2 * len].to_vec();
        prop_assume!(pos + 1 < idx.len());
        let mut swapped = idx.clone();
        swapped.swap(pos, pos + 1);
        prop_assert_eq!(build_pf(&swapped, 6).unwrap(), -&build_pf(&idx, 6).unwrap());
    }

    #[test]
    fn center_commutes_with_generators(n in 2usize..=6, pick in 0usize..100) {
        let gens: Vec<Generator> = Generator::all(n).collect();
        let g = gens[pick % gens.len()];
        let c = build_c(n);
        prop_assert!(commutator(&c, &Element::generator(n, g)).unwrap().is_zero());
    }
}

#[test]
fn even_pfaffians_are_central_and_odd_lists_rejected() {
    for m in 1..=3 {
        assert!(is_central(&build_pf_full(m)).is_central());
    }
    assert!(build_pf(&[3, 2, 1], 3).is_err());
    assert!(build_pf(&[2, 2], 3).is_err());
    assert!(build_pf(&[5, 1], 4).is_err());
}
