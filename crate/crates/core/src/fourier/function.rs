use std::ops::Deref;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::linalg::Space;
use crate::rational::Rational;

/// A rational-valued function on F_p^n, stored as integer numerators over one
/// common positive denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactFunction {
    space: Space,
    values: Vec<i64>,
    denom: i64,
}

impl ExactFunction {
    pub fn new(space: Space, values: Vec<i64>, denom: i64) -> Result<Self> {
        if denom <= 0 {
            return Err(Error::invalid("denominator must be positive"));
        }
        if values.len() != space.size() {
            return Err(Error::DimensionMismatch {
                expected: space.size(),
                found: values.len(),
            });
        }
        Ok(ExactFunction { space, values, denom })
    }

    pub fn constant(space: Space, num: i64, denom: i64) -> Result<Self> {
        Self::new(space, vec![num; space.size()], denom)
    }

    pub fn indicator(space: Space, member: impl Fn(usize) -> bool) -> Self {
        ExactFunction {
            space,
            values: (0..space.size()).map(|x| i64::from(member(x))).collect(),
            denom: 1,
        }
    }

    /// Brings arbitrary rationals onto a common denominator.
    pub fn from_rationals(space: Space, values: &[Rational]) -> Result<Self> {
        let mut lcm = BigInt::from(1);
        for v in values {
            lcm = lcm.lcm(v.denom());
        }
        let too_big = || Error::invalid("common denominator does not fit in 64 bits");
        let denom = lcm.to_i64().ok_or_else(too_big)?;
        let nums = values
            .iter()
            .map(|v| (v.numer() * (&lcm / v.denom())).to_i64().ok_or_else(too_big))
            .collect::<Result<Vec<_>>>()?;
        Self::new(space, nums, denom)
    }

    #[inline]
    pub fn space(&self) -> Space {
        self.space
    }

    /// Numerators, indexed by dense point index.
    #[inline]
    pub fn numerators(&self) -> &[i64] {
        &self.values
    }

    #[inline]
    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn value(&self, x: usize) -> Rational {
        BigRational::new(BigInt::from(self.values[x]), BigInt::from(self.denom))
    }

    pub fn value_f64(&self, x: usize) -> f64 {
        self.values[x] as f64 / self.denom as f64
    }

    /// Mean over the listed points.
    pub fn mean_over(&self, points: &[usize]) -> Rational {
        let s: i128 = points.iter().map(|&x| i128::from(self.values[x])).sum();
        BigRational::new(BigInt::from(s), BigInt::from(self.denom) * BigInt::from(points.len().max(1)))
    }

    pub fn mean(&self) -> Rational {
        let s: i128 = self.values.iter().map(|&v| i128::from(v)).sum();
        BigRational::new(BigInt::from(s), BigInt::from(self.denom) * BigInt::from(self.values.len()))
    }

    pub fn sub(&self, other: &ExactFunction) -> Result<ExactFunction> {
        self.combine(other, |a, b| a.checked_sub(b))
    }

    pub fn add(&self, other: &ExactFunction) -> Result<ExactFunction> {
        self.combine(other, |a, b| a.checked_add(b))
    }

    /// `x ↦ f(x + h)`.
    pub fn translate(&self, h: usize) -> ExactFunction {
        let values = (0..self.space.size()).map(|x| self.values[self.space.add(x, h)]).collect();
        ExactFunction {
            space: self.space,
            values,
            denom: self.denom,
        }
    }

    fn combine(&self, other: &ExactFunction, op: impl Fn(i64, i64) -> Option<i64>) -> Result<ExactFunction> {
        if self.space != other.space {
            return Err(Error::invalid("functions live on different spaces"));
        }
        let overflow = || Error::invalid("numerator overflow");
        let l = self.denom.lcm(&other.denom);
        let (ka, kb) = (l / self.denom, l / other.denom);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| {
                a.checked_mul(ka)
                    .zip(b.checked_mul(kb))
                    .and_then(|(a, b)| op(a, b))
                    .ok_or_else(overflow)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactFunction {
            space: self.space,
            values,
            denom: l,
        })
    }
}

impl AsRef<ExactFunction> for ExactFunction {
    fn as_ref(&self) -> &ExactFunction {
        self
    }
}

/// An [`ExactFunction`] with every value in [-1, 1].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedFunction(ExactFunction);

impl BoundedFunction {
    pub fn new(f: ExactFunction) -> Result<Self> {
        if let Some(x) = f.values.iter().position(|v| v.abs() > f.denom) {
            return Err(Error::invalid(format!("value at point {x} lies outside [-1, 1]")));
        }
        Ok(BoundedFunction(f))
    }

    pub fn indicator(space: Space, member: impl Fn(usize) -> bool) -> Self {
        BoundedFunction(ExactFunction::indicator(space, member))
    }

    pub fn from_values(space: Space, values: Vec<i64>, denom: i64) -> Result<Self> {
        Self::new(ExactFunction::new(space, values, denom)?)
    }

    pub fn constant(space: Space, num: i64, denom: i64) -> Result<Self> {
        Self::new(ExactFunction::constant(space, num, denom)?)
    }

    pub fn into_inner(self) -> ExactFunction {
        self.0
    }
}

impl Deref for BoundedFunction {
    type Target = ExactFunction;

    fn deref(&self) -> &ExactFunction {
        &self.0
    }
}

impl AsRef<ExactFunction> for BoundedFunction {
    fn as_ref(&self) -> &ExactFunction {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;
    use crate::rational::ratio;

    fn space() -> Space {
        Space::new(PrimeField::new(3).unwrap(), 2).unwrap()
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(BoundedFunction::from_values(space(), vec![3; 9], 2).is_err());
        assert!(BoundedFunction::from_values(space(), vec![-2; 9], 2).is_ok());
        assert!(ExactFunction::new(space(), vec![0; 8], 1).is_err());
    }

    #[test]
    fn common_denominators() {
        let vals: Vec<Rational> = (0..9).map(|i| ratio(i, 1 + i % 3)).collect();
        let f = ExactFunction::from_rationals(space(), &vals).unwrap();
        for (i, v) in vals.iter().enumerate() {
            assert_eq!(&f.value(i), v);
        }
        let g = ExactFunction::constant(space(), 1, 4).unwrap();
        let d = f.sub(&g).unwrap();
        assert_eq!(d.value(4), ratio(4, 2) - ratio(1, 4));
        assert_eq!(d.add(&g).unwrap().value(4), ratio(2, 1));
    }

    #[test]
    fn means() {
        let f = ExactFunction::indicator(space(), |x| x < 3);
        assert_eq!(f.mean(), ratio(1, 3));
        assert_eq!(f.mean_over(&[0, 1, 5]), ratio(2, 3));
    }
}
