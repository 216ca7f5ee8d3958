use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The prime field F_p. Only the small primes the toolkit enumerates over are
/// accepted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField(u8);

impl PrimeField {
    pub const SUPPORTED: [u8; 4] = [2, 3, 5, 7];

    pub fn new(p: u32) -> Result<Self> {
        if Self::SUPPORTED.iter().any(|&q| u32::from(q) == p) {
            Ok(PrimeField(p as u8))
        } else {
            Err(Error::UnsupportedModulus(p))
        }
    }

    #[inline]
    pub fn p(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn order(self) -> usize {
        self.0 as usize
    }

    /// Canonical representative of `v` in `{0, …, p-1}`; negative literals wrap.
    #[inline]
    pub fn reduce(self, v: i64) -> u8 {
        v.rem_euclid(i64::from(self.0)) as u8
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((u16::from(a) * u16::from(b)) % u16::from(self.0)) as u8
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u8) -> u8 {
        assert!(!a.is_multiple_of(self.0), "zero has no inverse in F_{}", self.0);
        // a^(p-2)
        let mut acc = 1u8;
        for _ in 0..self.0 - 2 {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn dot(self, a: &[u8], b: &[u8]) -> u8 {
        debug_assert_eq!(a.len(), b.len());
        let s: u32 = a.iter().zip(b).map(|(&x, &y)| u32::from(x) * u32::from(y)).sum();
        (s % u32::from(self.0)) as u8
    }
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        u32::from(f.0)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0)
    }
}
