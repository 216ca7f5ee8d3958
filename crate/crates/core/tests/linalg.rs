use std::collections::BTreeSet;

use fpn_core::linalg::orthogonality_duality_check;
use fpn_core::{FieldMatrix, PointVector, PrimeField, Space, Subspace};
use proptest::prelude::*;

/// Every vector of F_p^k as a coordinate list.
fn all_vectors(p: u8, k: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

fn dot(p: u8, a: &[u8], b: &[u8]) -> u8 {
    (a.iter().zip(b).map(|(&x, &y)| u32::from(x) * u32::from(y)).sum::<u32>() % u32::from(p)) as u8
}

fn apply(p: u8, rows: &[Vec<u8>], x: &[u8]) -> Vec<u8> {
    rows.iter().map(|r| dot(p, r, x)).collect()
}

fn matrix() -> impl Strategy<Value = (u8, Vec<Vec<u8>>)> {
    (prop_oneof![Just(2u8), Just(3), Just(5), Just(7)], 1..=3usize, 1..=4usize).prop_flat_map(|(p, r, c)| {
        let row = proptest::collection::vec(0..p, c);
        (Just(p), proptest::collection::vec(row, r))
    })
}

fn matrix_pair() -> impl Strategy<Value = (u8, Vec<Vec<u8>>, Vec<Vec<u8>>)> {
    (prop_oneof![Just(2u8), Just(3), Just(5)], 1..=3usize, 1..=3usize, 1..=4usize).prop_flat_map(|(p, r1, r2, c)| {
        let row = proptest::collection::vec(0..p, c);
        (Just(p), proptest::collection::vec(row.clone(), r1), proptest::collection::vec(row, r2))
    })
}

fn build(p: u8, rows: &[Vec<u8>]) -> FieldMatrix {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&v| i64::from(v)).collect()).collect();
    FieldMatrix::from_rows(PrimeField::new(u32::from(p)).unwrap(), &rows).unwrap()
}

fn span_set(s: &Subspace) -> BTreeSet<Vec<u8>> {
    s.enumerate().unwrap().map(|v| v.coords().to_vec()).collect()
}

proptest! {
    #[test]
    fn kernel_matches_enumeration((p, rows) in matrix()) {
        let a = build(p, &rows);
        let cols = rows[0].len();
        let brute: BTreeSet<Vec<u8>> = all_vectors(p, cols)
            .into_iter()
            .filter(|x| apply(p, &rows, x).iter().all(|&v| v == 0))
            .collect();
        let k = a.kernel_basis();
        let lib = span_set(&Subspace::from_matrix(&k));
        prop_assert_eq!(&lib, &brute);
        prop_assert_eq!(k.rows(), cols - a.rank());
    }

    #[test]
    fn image_perp_is_transpose_kernel((p, rows) in matrix()) {
        let a = build(p, &rows);
        let cols = rows[0].len();
        let image: BTreeSet<Vec<u8>> = all_vectors(p, cols).iter().map(|x| apply(p, &rows, x)).collect();
        let perp: BTreeSet<Vec<u8>> = all_vectors(p, rows.len())
            .into_iter()
            .filter(|y| image.iter().all(|z| dot(p, y, z) == 0))
            .collect();
        let lib = span_set(&Subspace::from_matrix(&a.transpose().kernel_basis()));
        prop_assert_eq!(lib, perp);
        prop_assert!(orthogonality_duality_check(&a, rows.len()).unwrap());
    }

    #[test]
    fn rref_is_stable((p, rows) in matrix()) {
        let a = build(p, &rows);
        let once = a.nonzero_rref();
        prop_assert_eq!(once.nonzero_rref(), once.clone());
        prop_assert_eq!(once.rows(), a.rank());
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn solve_agrees_with_search((p, rows) in matrix(), target_seed in any::<u64>()) {
        let a = build(p, &rows);
        let targets = all_vectors(p, rows.len());
        let b = &targets[(target_seed % targets.len() as u64) as usize];
        let brute = all_vectors(p, rows[0].len()).into_iter().find(|x| &apply(p, &rows, x) == b);
        match a.solve(b) {
            Some(x) => prop_assert_eq!(&apply(p, &rows, &x), b),
            None => prop_assert!(brute.is_none()),
        }
    }

    #[test]
    fn perp_and_complement((p, rows) in matrix(), seed in any::<u64>()) {
        let a = build(p, &rows);
        let h = Subspace::from_matrix(&a);
        let n = h.n();
        let perp = h.perp();
        prop_assert_eq!(perp.dim(), n - h.dim());
        prop_assert_eq!(perp.perp(), &h);
        for x in h.enumerate().unwrap() {
            for y in perp.enumerate().unwrap() {
                prop_assert_eq!(x.dot(&y), 0);
            }
        }
        let u = h.complement(seed);
        prop_assert_eq!(u.dim(), n - h.dim());
        prop_assert_eq!(u.stacked_rank(), n);
        let field = h.field();
        for y in all_vectors(p, n) {
            let y = PointVector::new(field, &y.iter().map(|&v| i64::from(v)).collect::<Vec<_>>());
            let (uu, hh) = u.decompose(&y).unwrap();
            prop_assert!(h.contains(&hh));
            prop_assert_eq!(uu.add(&hh), y);
        }
    }

    #[test]
    fn intersection_and_sum((p, rows, other) in matrix_pair()) {
        let a = Subspace::from_matrix(&build(p, &rows));
        let b = Subspace::from_matrix(&build(p, &other));
        let (sa, sb) = (span_set(&a), span_set(&b));
        let both: BTreeSet<Vec<u8>> = sa.intersection(&sb).cloned().collect();
        prop_assert_eq!(span_set(&a.intersect(&b).unwrap()), both);
        let sum = a.sum(&b).unwrap();
        prop_assert_eq!(sum.dim() + a.intersect(&b).unwrap().dim(), a.dim() + b.dim());
    }

    #[test]
    fn cosets_partition_the_space((p, rows) in matrix()) {
        let h = Subspace::from_matrix(&build(p, &rows));
        let space = Space::new(h.field(), h.n()).unwrap();
        let mut seen = vec![0u32; space.size()];
        for rep in h.coset_reps().unwrap() {
            prop_assert_eq!(h.canonical_rep(&rep), rep.clone());
            for x in fpn_core::Coset::new(&h, &rep).unwrap().member_indices(&space).unwrap() {
                seen[x] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
    }
}

#[test]
fn point_indexing_is_little_endian() {
    let f = PrimeField::new(3).unwrap();
    let space = Space::new(f, 3).unwrap();
    assert_eq!(space.coords(5), vec![2, 1, 0]);
    assert_eq!(space.index_of(&[2, 1, 0]), 5);
    assert_eq!(space.add(5, 4), space.index_of(&[0, 2, 0]));
}

#[test]
fn coordinate_subspace_fixes_leading_coordinates() {
    let f = PrimeField::new(2).unwrap();
    let h = Subspace::coordinate(f, 5, 2);
    assert_eq!(h.codim(), 2);
    for x in h.enumerate().unwrap() {
        assert_eq!(&x.coords()[..2], &[0, 0]);
    }
}
