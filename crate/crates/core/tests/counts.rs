use catalan_atlas::chains::{enumerate_filter_chains, enumerate_ideal_chains};
use catalan_atlas::lattice::Dilation;
use catalan_atlas::stats::{f_from_h, h_from_f, n_plus_formula, n_total_formula, stat_report};
use catalan_atlas::{build_poset, RootSystem};
use num_bigint::BigInt;
use proptest::prelude::*;

const TYPES: [&str; 9] = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn enumerations_match_the_product_formulas(t in 0..TYPES.len(), m in 1usize..=3) {
        let rs = RootSystem::of(TYPES[t]).unwrap();
        let p = build_poset(rs.clone());
        let all = enumerate_filter_chains(&p, m).unwrap().count();
        let positive = enumerate_ideal_chains(&p, m, true).unwrap().count();
        prop_assert_eq!(BigInt::from(all), n_total_formula(&rs, m as i64).unwrap());
        prop_assert_eq!(BigInt::from(positive), n_plus_formula(&rs, m as i64).unwrap());
        prop_assert_eq!(Dilation::new(&rs, m).unwrap().points().len(), positive);
    }

    #[test]
    fn report_vectors_are_consistent(t in 0..TYPES.len(), m in 1usize..=2) {
        let rs = RootSystem::of(TYPES[t]).unwrap();
        let r = stat_report(&rs, m).unwrap();
        prop_assert_eq!(r.h.iter().sum::<u64>(), r.n);
        prop_assert_eq!(r.h_plus.iter().sum::<u64>(), r.n_plus);
        prop_assert_eq!(*r.f.last().unwrap(), r.n);
        prop_assert_eq!(*r.f_plus.last().unwrap(), r.n_plus);
        let f: Vec<i64> = r.f.iter().map(|&x| x as i64).collect();
        prop_assert_eq!(f_from_h(&h_from_f(&f)), f);
    }
}
