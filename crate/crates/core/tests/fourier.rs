mod common;

use fpn_core::fourier::{coset_spectrum, inheritance_check, partition_report, uniformity};
use fpn_core::rational;
use fpn_core::{BoundedFunction, Coset, FieldMatrix, PointVector, PrimeField, Space, Subspace};
use proptest::prelude::*;

use common::naive_max_modulus;

fn setup() -> impl Strategy<Value = (u8, usize, Vec<Vec<u8>>, Vec<i64>, usize)> {
    (prop_oneof![Just(2u8), Just(3), Just(5)], 2..=4usize).prop_flat_map(|(p, n)| {
        let size = (p as usize).pow(n as u32);
        let row = proptest::collection::vec(0..p, n);
        (
            Just(p),
            Just(n),
            proptest::collection::vec(row, 0..n),
            proptest::collection::vec(-6i64..=6, size),
            0..size,
        )
    })
}

fn subspace(p: u8, n: usize, rows: &[Vec<u8>]) -> Subspace {
    let f = PrimeField::new(u32::from(p)).unwrap();
    if rows.is_empty() {
        return Subspace::zero(f, n);
    }
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&v| i64::from(v)).collect()).collect();
    Subspace::from_matrix(&FieldMatrix::from_rows(f, &rows).unwrap())
}

proptest! {
    #[test]
    fn uniformity_matches_direct_sum((p, n, rows, vals, at) in setup()) {
        let h = subspace(p, n, &rows);
        let space = Space::new(h.field(), n).unwrap();
        let f = BoundedFunction::from_values(space, vals, 6).unwrap();
        let c = Coset::new(&h, &space.point(at)).unwrap();
        let u = uniformity(&f, &c).unwrap();
        prop_assert!((u.max_modulus - naive_max_modulus(&f, &c)).abs() < 1e-9);
        if let Some(exact) = &u.max_modulus_exact {
            prop_assert!((rational::to_f64(exact) - u.max_modulus).abs() < 1e-12);
        }
    }

    #[test]
    fn parseval_on_cosets((p, n, rows, vals, at) in setup()) {
        let h = subspace(p, n, &rows);
        let space = Space::new(h.field(), n).unwrap();
        let f = BoundedFunction::from_values(space, vals, 6).unwrap();
        let c = Coset::new(&h, &space.point(at)).unwrap();
        let spec = coset_spectrum(&f, &c).unwrap();
        prop_assert_eq!(spec.classes.len() as u128, h.cardinality());
        let pts = c.member_indices(&space).unwrap();
        let mean = f.mean_over(&pts);
        let second: f64 = pts
            .iter()
            .map(|&x| rational::to_f64(&(f.value(x) - &mean)).powi(2))
            .sum::<f64>()
            / pts.len() as f64;
        prop_assert!((spec.energy() - second).abs() < 1e-9);
        prop_assert_eq!(spec.mean, mean);
    }

    #[test]
    fn inheritance_inequalities((p, n, rows, vals, at) in setup(), extra in proptest::collection::vec(0u8..5, 4)) {
        let h1 = subspace(p, n, &rows);
        let space = Space::new(h1.field(), n).unwrap();
        let f = BoundedFunction::from_values(space, vals, 6).unwrap();
        let r = PointVector::new(h1.field(), &extra[..n].iter().map(|&v| i64::from(v)).collect::<Vec<_>>());
        let h2 = h1.intersect_annihilator(&r).unwrap();
        let x = space.point(at);
        let rep = inheritance_check(&f, &Coset::new(&h1, &x).unwrap(), &Coset::new(&h2, &x).unwrap()).unwrap();
        prop_assert!(rep.uniformity_holds && rep.mean_gap_holds);
        prop_assert_eq!(rep.d, h1.dim() - h2.dim());
    }
}

#[test]
fn partition_report_matches_direct_sums() {
    let f = PrimeField::new(3).unwrap();
    let space = Space::new(f, 4).unwrap();
    let g = BoundedFunction::indicator(space, |x| (x * 7 + x / 5) % 4 == 0);
    let h = Subspace::coordinate(f, 4, 1);
    let eps = rational::ratio(1, 5);
    let report = partition_report(&[&g], &h, &eps).unwrap();
    let mut bad = 0;
    for c in &report.cosets {
        let m = naive_max_modulus(&g, &Coset::new(&h, &c.rep).unwrap());
        assert!((m - c.max_modulus).abs() < 1e-9);
        assert_eq!(c.regular, m <= 0.2 + 1e-9);
        bad += usize::from(!c.regular);
    }
    assert_eq!(report.irregular_fraction, rational::ratio(bad as i64, 3));
}

#[test]
fn character_of_linear_phase_is_detected() {
    let f = PrimeField::new(2).unwrap();
    let space = Space::new(f, 5).unwrap();
    let g = BoundedFunction::indicator(space, |x| (x & 0b10110).count_ones() % 2 == 1);
    let full = Subspace::full(f, 5);
    let u = uniformity(&g, &Coset::new(&full, &space.point(0)).unwrap()).unwrap();
    assert_eq!(u.max_modulus_exact, Some(rational::ratio(1, 2)));
    assert_eq!(u.witness_r.index(), 0b10110);
}
