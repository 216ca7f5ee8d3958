use std::fmt;

use serde::{Deserialize, Serialize};

use super::PrimeField;
use crate::error::{Error, Result};

/// Dense row-major matrix over F_p with canonical entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

/// Reduced row-echelon form together with rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FieldMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer rows, canonicalising negative literals.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(field, cols, rows)
    }

    /// Like [`FieldMatrix::from_rows`] but fixes the column count, so that a
    /// matrix with no rows still has a width.
    pub fn from_rows_with_cols(field: PrimeField, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedRows {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row.iter().map(|&v| field.reduce(v)));
        }
        Ok(FieldMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub(crate) fn from_raw_rows(field: PrimeField, cols: usize, rows: &[Vec<u8>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            debug_assert_eq!(row.len(), cols);
            data.extend_from_slice(row);
        }
        FieldMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = self.field.reduce(v);
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let s: u32 = (0..self.cols)
                    .map(|k| u32::from(self.get(r, k)) * u32::from(other.get(k, c)))
                    .sum();
                out.data[r * other.cols + c] = (s % u32::from(f.p())) as u8;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows).map(|r| self.field.dot(self.row(r), v)).collect()
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FieldMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Block-diagonal matrix with each block padded to `rows × cols` by zero
    /// rows and columns.
    pub fn block_diagonal(field: PrimeField, blocks: &[&FieldMatrix], rows: usize, cols: usize) -> FieldMatrix {
        let t = blocks.len();
        let mut out = Self::zeros(field, t * rows, t * cols);
        for (b, block) in blocks.iter().enumerate() {
            assert!(block.rows <= rows && block.cols <= cols);
            for r in 0..block.rows {
                for c in 0..block.cols {
                    out.data[(b * rows + r) * (t * cols) + b * cols + c] = block.get(r, c);
                }
            }
        }
        out
    }

    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = f.inv(m.get(row, col));
            m.scale_row(row, inv);
            for r in 0..m.rows {
                if r != row {
                    let factor = m.get(r, col);
                    if factor != 0 {
                        m.sub_scaled_row(r, row, factor);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref {
            matrix: m,
            rank: row,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{x : self·x = 0}` as rows, in canonical RREF.
    pub fn kernel_basis(&self) -> FieldMatrix {
        let f = self.field;
        let Rref { matrix, rank, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &pc in &pivots {
            is_pivot[pc] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u8; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate().take(rank) {
                v[pc] = f.neg(matrix.get(r, free));
            }
            basis.push(v);
        }
        Self::from_raw_rows(f, self.cols, &basis).nonzero_rref()
    }

    /// Basis of the column space, as rows in canonical RREF.
    pub fn image_basis(&self) -> FieldMatrix {
        self.transpose().nonzero_rref()
    }

    /// The RREF with zero rows dropped.
    pub fn nonzero_rref(&self) -> FieldMatrix {
        let Rref { matrix, rank, .. } = self.rref();
        FieldMatrix {
            field: self.field,
            rows: rank,
            cols: self.cols,
            data: matrix.data[..rank * self.cols].to_vec(),
        }
    }

    /// Some `x` with `self·x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[u8]) -> Option<Vec<u8>> {
        assert_eq!(b.len(), self.rows);
        let f = self.field;
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        for (r, &br) in b.iter().enumerate() {
            aug.data[r * (self.cols + 1)..r * (self.cols + 1) + self.cols].copy_from_slice(self.row(r));
            aug.data[r * (self.cols + 1) + self.cols] = br;
        }
        let Rref { matrix, rank, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u8; self.cols];
        for (r, &pc) in pivots.iter().enumerate().take(rank) {
            x[pc] = matrix.get(r, self.cols);
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn scale_row(&mut self, r: usize, k: u8) {
        let f = self.field;
        for v in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *v = f.mul(*v, k);
        }
    }

    /// row[dst] -= k · row[src]
    fn sub_scaled_row(&mut self, dst: usize, src: usize, k: u8) {
        let f = self.field;
        for c in 0..self.cols {
            let s = f.mul(self.data[src * self.cols + c], k);
            let d = &mut self.data[dst * self.cols + c];
            *d = f.sub(*d, s);
        }
    }
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}
