use fpn_core::patterns::{
    check_column_conditions, combine_patterns, complexity_is_one, is_partition_regular, values_kernel_duality_check,
    Complexity, LinearSystem, Pattern,
};
use fpn_core::{FieldMatrix, PrimeField};
use proptest::prelude::*;

fn in_span(p: u8, cols: &[Vec<u8>], target: &[u8]) -> bool {
    let k = cols.len();
    let rows = target.len();
    (0..(p as usize).pow(k as u32)).any(|code| {
        let mut rest = code;
        let mut acc = vec![0u32; rows];
        for c in cols {
            let coef = (rest % p as usize) as u32;
            rest /= p as usize;
            for (a, &v) in acc.iter_mut().zip(c) {
                *a += coef * u32::from(v);
            }
        }
        acc.iter().zip(target).all(|(&a, &t)| a % u32::from(p) == u32::from(t))
    })
}

/// Tries every ordered partition of the columns.
fn oracle_rado(p: u8, rows: &[Vec<u8>]) -> bool {
    let m = rows[0].len();
    let col = |c: usize| -> Vec<u8> { rows.iter().map(|r| r[c]).collect() };
    let sum = |idx: &[usize]| -> Vec<u8> {
        (0..rows.len())
            .map(|r| (idx.iter().map(|&c| u32::from(rows[r][c])).sum::<u32>() % u32::from(p)) as u8)
            .collect()
    };
    (0..m.pow(m as u32)).any(|code| {
        let mut rest = code;
        let labels: Vec<usize> = (0..m)
            .map(|_| {
                let l = rest % m;
                rest /= m;
                l
            })
            .collect();
        let k = labels.iter().max().unwrap() + 1;
        if (0..k).any(|b| !labels.contains(&b)) {
            return false;
        }
        let blocks: Vec<Vec<usize>> = (0..k).map(|b| (0..m).filter(|&c| labels[c] == b).collect()).collect();
        if sum(&blocks[0]).iter().any(|&v| v != 0) {
            return false;
        }
        (1..k).all(|t| {
            let prior: Vec<Vec<u8>> = blocks[..t].iter().flatten().map(|&c| col(c)).collect();
            in_span(p, &prior, &sum(&blocks[t]))
        })
    })
}

fn matrix() -> impl Strategy<Value = (u8, Vec<Vec<u8>>)> {
    (prop_oneof![Just(2u8), Just(3), Just(5), Just(7)], 1..=2usize, 2..=5usize).prop_flat_map(|(p, r, c)| {
        let row = proptest::collection::vec(0..p, c);
        (Just(p), proptest::collection::vec(row, r))
    })
}

fn build(p: u8, rows: &[Vec<u8>]) -> FieldMatrix {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&v| i64::from(v)).collect()).collect();
    FieldMatrix::from_rows(PrimeField::new(u32::from(p)).unwrap(), &rows).unwrap()
}

proptest! {
    #[test]
    fn certificate_search_agrees_with_partition_enumeration((p, rows) in matrix()) {
        let a = build(p, &rows);
        let found = check_column_conditions(&a).unwrap();
        prop_assert_eq!(found.is_some(), oracle_rado(p, &rows));
        if let Some(cert) = found {
            prop_assert!(cert.validate(&a));
        }
    }

    #[test]
    fn value_set_is_kernel_of_dependencies(
        (p, forms) in (prop_oneof![Just(2u8), Just(3), Just(5)], 1..=2usize, 2..=3usize).prop_flat_map(|(p, l, m)| {
            (Just(p), proptest::collection::vec(proptest::collection::vec(-2i64..=2, l), m))
        }),
        n in 1..=2usize,
    ) {
        let f = PrimeField::new(u32::from(p)).unwrap();
        let s = LinearSystem::build(f, &forms).unwrap();
        prop_assert!(values_kernel_duality_check(&s, n).unwrap());
        prop_assert_eq!(s.rank_l() + s.rank_m(), s.m());
    }
}

fn system(p: u32, forms: &[Vec<i64>]) -> LinearSystem {
    LinearSystem::build(PrimeField::new(p).unwrap(), forms).unwrap()
}

#[test]
fn classical_patterns() {
    let ap = Pattern::monochromatic(system(5, &[vec![1, 0], vec![1, 1], vec![1, 2]]), 2, 1).unwrap();
    let schur = Pattern::monochromatic(system(5, &[vec![1, 0], vec![0, 1], vec![1, 1]]), 2, 2).unwrap();
    for pat in [&ap, &schur] {
        let cert = is_partition_regular(pat).unwrap().unwrap();
        assert!(cert.validate(pat.system().dependencies()));
    }
    let joint = combine_patterns(&[ap.clone(), schur]).unwrap();
    let cert = is_partition_regular(&joint).unwrap().unwrap();
    assert!(cert.validate(joint.system().dependencies()));
    assert_eq!(joint.m(), 6);

    let f7 = PrimeField::new(7).unwrap();
    let a = FieldMatrix::from_rows(f7, &[vec![1, 1, -3]]).unwrap();
    assert!(check_column_conditions(&a).unwrap().is_none());
    assert!(!oracle_rado(7, &[vec![1, 1, 4]]));

    assert_eq!(complexity_is_one(ap.system()), Complexity::Yes);
}
