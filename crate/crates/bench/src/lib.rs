//! Seeded inputs shared by the benchmarks.

use fpn_core::counting::Colouring;
use fpn_core::io::{generate, GenMode};
use fpn_core::patterns::LinearSystem;
use fpn_core::{FieldMatrix, PrimeField, Space};

pub fn field(p: u32) -> PrimeField {
    PrimeField::new(p).expect("supported prime")
}

pub fn random_colouring(p: u32, n: usize, r: u8, seed: u64) -> Colouring {
    let space = Space::new(field(p), n).expect("space within caps");
    generate(space, r, &GenMode::Uniform, seed).expect("valid generator input")
}

pub fn sparse_colouring(n: usize, seed: u64) -> Colouring {
    let space = Space::new(field(2), n).expect("space within caps");
    let mode: GenMode = "sparse:2:1/100".parse().expect("valid mode");
    generate(space, 2, &mode, seed).expect("valid generator input")
}

pub fn three_ap(p: u32) -> LinearSystem {
    LinearSystem::build(field(p), &[vec![1, 0], vec![1, 1], vec![1, 2]]).expect("3-AP forms")
}

pub fn schur(p: u32) -> LinearSystem {
    LinearSystem::build(field(p), &[vec![1, 0], vec![0, 1], vec![1, 1]]).expect("Schur forms")
}

/// A dense `rows × cols` matrix with entries from a fixed LCG.
pub fn dense_matrix(p: u32, rows: usize, cols: usize, seed: u64) -> FieldMatrix {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((state >> 33) % u64::from(p)) as i64
                })
                .collect()
        })
        .collect();
    FieldMatrix::from_rows(field(p), &data).expect("rectangular rows")
}
