//! The ambient space F_p^n and its points.
//!
//! Points are addressed by a dense index: the coordinates are the base-p
//! digits of the index, least-significant coordinate first. Dense tables
//! (colourings, bounded functions) are laid out in that order. For p = 2 the
//! index is a bit-packed vector and addition is a single XOR.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::PrimeField;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_POINTS: u64 = 1 << 24;

/// Global enumeration cap. `FPN_MAX_POINTS` overrides the default of 2^24.
pub fn max_points() -> u64 {
    static CAP: OnceLock<u64> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("FPN_MAX_POINTS")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_POINTS)
    })
}

pub(crate) fn check_cap(requested: u128, cap: u64) -> Result<()> {
    if requested > u128::from(cap) {
        Err(Error::CapExceeded { requested, cap })
    } else {
        Ok(())
    }
}

/// p^e as u128, saturating.
pub(crate) fn pow_u128(p: u8, e: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.saturating_mul(u128::from(p));
    }
    acc
}

/// F_p^n with index arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Space {
    field: PrimeField,
    n: usize,
    size: usize,
}

impl Space {
    /// Fails if p^n exceeds the global cap.
    pub fn new(field: PrimeField, n: usize) -> Result<Self> {
        let size = pow_u128(field.p(), n);
        check_cap(size, max_points())?;
        Ok(Space {
            field,
            n,
            size: size as usize,
        })
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn p(&self) -> u8 {
        self.field.p()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of points, p^n.
    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        let p = self.p() as usize;
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a | b != 0 {
            let s = a % p + b % p;
            out += if s >= p { s - p } else { s } * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.scale(a, self.field.neg(1))
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn scale(&self, a: usize, c: u8) -> usize {
        let p = self.p() as usize;
        match c {
            0 => 0,
            1 => a,
            _ => {
                let c = c as usize;
                let (mut a, mut out, mut place) = (a, 0, 1);
                while a != 0 {
                    out += (a % p * c % p) * place;
                    a /= p;
                    place *= p;
                }
                out
            }
        }
    }

    pub fn coords(&self, idx: usize) -> Vec<u8> {
        let p = self.p() as usize;
        let mut idx = idx;
        (0..self.n)
            .map(|_| {
                let d = (idx % p) as u8;
                idx /= p;
                d
            })
            .collect()
    }

    pub fn index_of(&self, coords: &[u8]) -> usize {
        let p = self.p() as usize;
        coords
            .iter()
            .rev()
            .fold(0usize, |acc, &c| acc * p + c as usize)
    }

    pub fn point(&self, idx: usize) -> PointVector {
        PointVector {
            field: self.field,
            coords: self.coords(idx),
        }
    }

    pub fn dot(&self, a: usize, b: usize) -> u8 {
        self.field.dot(&self.coords(a), &self.coords(b))
    }

    /// Visits `start + Σ a_k · gens[k]` for every coefficient vector `a`, in
    /// lexicographic order of `a` (first generator most significant). Each
    /// element is a tuple of point indices; all generators must have the same
    /// length as `start`. Stops early when `visit` returns false.
    pub fn for_each_combination(
        &self,
        start: &[usize],
        gens: &[Vec<usize>],
        mut visit: impl FnMut(&[usize]) -> bool,
    ) {
        let p = self.p();
        let mut cur = start.to_vec();
        let mut digits = vec![0u8; gens.len()];
        loop {
            if !visit(&cur) {
                return;
            }
            let mut pos = gens.len();
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                for (c, &g) in cur.iter_mut().zip(&gens[pos]) {
                    *c = self.add(*c, g);
                }
                digits[pos] += 1;
                // p copies of a generator sum to zero, so a wrapped digit has
                // already returned `cur` to its value at digit 0.
                if digits[pos] == p {
                    digits[pos] = 0;
                    continue;
                }
                break;
            }
        }
    }
}

/// A point of F_p^n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointVector {
    field: PrimeField,
    coords: Vec<u8>,
}

impl PointVector {
    pub fn new(field: PrimeField, coords: &[i64]) -> Self {
        PointVector {
            field,
            coords: coords.iter().map(|&c| field.reduce(c)).collect(),
        }
    }

    pub fn zero(field: PrimeField, n: usize) -> Self {
        PointVector {
            field,
            coords: vec![0; n],
        }
    }

    pub(crate) fn from_raw(field: PrimeField, coords: Vec<u8>) -> Self {
        debug_assert!(coords.iter().all(|&c| c < field.p()));
        PointVector { field, coords }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Dense index: base-p digits, least-significant coordinate first.
    pub fn index(&self) -> usize {
        let p = self.field.order();
        self.coords
            .iter()
            .rev()
            .fold(0usize, |acc, &c| acc * p + c as usize)
    }

    pub fn add(&self, other: &PointVector) -> PointVector {
        let f = self.field;
        PointVector {
            field: f,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &PointVector) -> PointVector {
        let f = self.field;
        PointVector {
            field: f,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u8) -> PointVector {
        let f = self.field;
        PointVector {
            field: f,
            coords: self.coords.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn dot(&self, other: &PointVector) -> u8 {
        self.field.dot(&self.coords, &other.coords)
    }
}

/// Lexicographic on coordinates, coordinate 0 most significant.
impl Ord for PointVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl PartialOrd for PointVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PointVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
