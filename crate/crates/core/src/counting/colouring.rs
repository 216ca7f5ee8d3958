use crate::error::{Error, Result};
use crate::fourier::BoundedFunction;
use crate::linalg::Space;

/// A total map F_p^n → {1, …, r}, stored densely by point index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colouring {
    space: Space,
    r: u8,
    table: Vec<u8>,
}

impl Colouring {
    pub fn new(space: Space, r: u8, table: Vec<u8>) -> Result<Self> {
        if r == 0 {
            return Err(Error::invalid("a colouring needs at least one colour"));
        }
        if table.len() != space.size() {
            return Err(Error::DimensionMismatch {
                expected: space.size(),
                found: table.len(),
            });
        }
        if let Some(x) = table.iter().position(|&c| c == 0 || c > r) {
            return Err(Error::invalid(format!("colour {} at point {x} is outside 1..={r}", table[x])));
        }
        Ok(Colouring { space, r, table })
    }

    pub fn constant(space: Space, r: u8, colour: u8) -> Result<Self> {
        Self::new(space, r, vec![colour; space.size()])
    }

    pub fn from_fn(space: Space, r: u8, colour: impl Fn(usize) -> u8) -> Result<Self> {
        Self::new(space, r, (0..space.size()).map(colour).collect())
    }

    #[inline]
    pub fn space(&self) -> Space {
        self.space
    }

    #[inline]
    pub fn r(&self) -> u8 {
        self.r
    }

    #[inline]
    pub fn colour(&self, x: usize) -> u8 {
        self.table[x]
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    /// `φ_i = 1_{φ^{-1}(i)}`.
    pub fn indicator(&self, colour: u8) -> BoundedFunction {
        BoundedFunction::indicator(self.space, |x| self.table[x] == colour)
    }

    /// Indicators of colours `1..=r`, in order.
    pub fn indicators(&self) -> Vec<BoundedFunction> {
        (1..=self.r).map(|c| self.indicator(c)).collect()
    }

    /// Number of points where the two colourings differ.
    pub fn hamming(&self, other: &Colouring) -> usize {
        self.table.iter().zip(&other.table).filter(|(a, b)| a != b).count()
    }

    /// Point count per colour, index 0 for colour 1.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.r as usize];
        for &c in &self.table {
            out[c as usize - 1] += 1;
        }
        out
    }

    pub(crate) fn set(&mut self, x: usize, colour: u8) {
        debug_assert!(colour >= 1 && colour <= self.r);
        self.table[x] = colour;
    }
}
