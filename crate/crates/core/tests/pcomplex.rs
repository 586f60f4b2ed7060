use std::collections::BTreeMap;

use pdg_core::arith::CycInt;
use pdg_core::pcomplex::*;
use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn chain_types(c: &PComplex) -> BTreeMap<(u32, i64), usize> {
    let mut out = BTreeMap::new();
    for ch in c.jordan_basis() {
        *out.entry((ch.j(), ch.bottom)).or_insert(0) += 1;
    }
    out
}

#[test]
fn decompose_recovers_disguised_sums() {
    for p in [2, 3, 5] {
        let mut rng = ChaCha8Rng::seed_from_u64(p as u64);
        for _ in 0..500 {
            let (c, truth) = disguised_sum(p, 12, &mut rng);
            assert!(c.validate().is_ok());
            let dec = c.decompose();
            assert_eq!(dec, truth);
            assert_eq!(chain_types(&c), truth.summands);
            let (a, b) = c.acyclicity_criteria();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn iota_is_a_quasi_iso() {
    for p in [2, 3, 5, 7] {
        assert!(iota(p).is_chain_map());
        assert!(iota(p).is_quasi_iso());
    }
}

#[test]
fn vtilde_symbols() {
    for p in [2, 3, 5] {
        assert_eq!(PComplex::unit(p).symbol(), CycInt::one(p));
        assert_eq!(PComplex::unit(p).shift(1, 0).symbol(), -&CycInt::one(p));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symbol_is_additive_and_multiplicative(seed in any::<u64>(), pi in 0usize..3) {
        let p = [2, 3, 5][pi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, _) = disguised_sum(p, 6, &mut rng);
        let (b, _) = disguised_sum(p, 6, &mut rng);
        prop_assert_eq!(a.direct_sum(&b).symbol(), &a.symbol() + &b.symbol());
        prop_assert_eq!(a.tensor(&b).symbol(), &a.symbol() * &b.symbol());
    }

    #[test]
    fn two_homological_shifts_are_a_grading_shift(seed in any::<u64>(), pi in 0usize..3) {
        let p = [2, 3, 5][pi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, _) = disguised_sum(p, 8, &mut rng);
        let x = a.shift(2, 0).decompose().non_contractible(p);
        let y = a.shift(0, -2 * p as i64).decompose().non_contractible(p);
        prop_assert_eq!(x, y);
        prop_assert_eq!(a.shift(1, 0).symbol(), -&a.symbol());
    }

    #[test]
    fn cone_criteria_agree(seed in any::<u64>(), pi in 0usize..3) {
        let p = [2, 3, 5][pi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, _) = disguised_sum(p, 6, &mut rng);
        let (m, inc, pr) = a.minimal_model();
        prop_assert!(inc.is_quasi_iso() && pr.is_quasi_iso());
        prop_assert!(inc.cone().unwrap().is_acyclic());
        prop_assert_eq!(m.decompose().summands, a.decompose().non_contractible(p));
        let z = a.zero_map(&a, 0);
        prop_assert_eq!(z.is_quasi_iso(), a.is_acyclic());
    }
}
