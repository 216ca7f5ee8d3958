mod common;

use fpn_core::counting::Colouring;
use fpn_core::io::{generate, GenMode};
use fpn_core::rational;
use fpn_core::regularity::{
    arl, multi_subcoset_select, two_level_select, validate_selection, validate_two_level, SelectOptions,
};
use fpn_core::{Coset, FieldMatrix, PrimeField, Space, Subspace};
use proptest::prelude::*;

use common::naive_max_modulus;

fn colouring(p: u32, n: usize, seed: u64) -> Colouring {
    let space = Space::new(PrimeField::new(p).unwrap(), n).unwrap();
    generate(space, 2, &GenMode::Uniform, seed).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn arl_partition_survives_remeasurement(seed in any::<u64>(), p in prop_oneof![Just(2u32), Just(3)]) {
        let n = if p == 2 { 7 } else { 4 };
        let phi = colouring(p, n, seed);
        let fs = phi.indicators();
        let eps = rational::ratio(3, 10);
        let full = Subspace::full(phi.space().field(), n);
        let part = arl(&fs, &eps, &full, n).unwrap();
        prop_assert!(part.is_regular());
        let h = &part.subspace;
        let reps = h.coset_reps().unwrap();
        let irregular = reps
            .iter()
            .filter(|r| {
                let c = Coset::new(h, r).unwrap();
                fs.iter().any(|f| naive_max_modulus(f, &c) > 0.3 + 1e-9)
            })
            .count();
        prop_assert_eq!(rational::ratio(irregular as i64, reps.len() as i64), part.irregular_fraction.clone());
        let eps_sq = 0.09;
        for step in &part.trace {
            prop_assert!(rational::to_f64(&step.local_gain) >= eps_sq / 2.0 - 1e-9);
            prop_assert!(step.energy_after >= step.energy_before);
            prop_assert!(step.modulus > 0.3);
        }
        prop_assert_eq!(part.codim_in_start, part.trace.len());
    }
}

#[test]
fn hyperplane_colouring_needs_one_step() {
    let f = PrimeField::new(2).unwrap();
    let space = Space::new(f, 8).unwrap();
    let phi = Colouring::from_fn(space, 2, |x| 1 + (x >> 7) as u8).unwrap();
    let fs = phi.indicators();
    let part = arl(&fs, &rational::ratio(3, 10), &Subspace::full(f, 8), 8).unwrap();
    assert_eq!(part.subspace.codim(), 1);
    assert_eq!(part.irregular_fraction, rational::integer(0));
}

#[test]
fn selections_revalidate() {
    let f = PrimeField::new(2).unwrap();
    let space = Space::new(f, 8).unwrap();
    let phi = generate(space, 2, &"sparse:2:1/20".parse().unwrap(), 11).unwrap();
    let fs = phi.indicators();
    let eps = rational::ratio(1, 4);
    let zeta = rational::ratio(1, 8);
    let h0 = Subspace::coordinate(f, 8, 3);
    let sel = two_level_select(&fs, &eps, &zeta, &h0, 5, &SelectOptions::default()).unwrap();
    let check = validate_two_level(&sel, &fs).unwrap();
    assert!(check.pass(), "{check:?}");
    assert!(h0.contains_subspace(sel.h1_subspace()));
    assert!(sel.h1_subspace().contains_subspace(sel.h2_subspace()));

    let a = FieldMatrix::from_rows(f, &[vec![1, 1, 1]]).unwrap();
    let delta = rational::ratio(1, 16);
    let multi = multi_subcoset_select(&fs, &eps, &delta, &a, sel.h2_subspace(), 1 << 20).unwrap();
    assert!(validate_selection(&multi, &fs, &eps, &delta).unwrap().pass());
    assert!(sel.h2_subspace().contains_subspace(multi.subspace()));
}
