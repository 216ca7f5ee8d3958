use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::counting::Colouring;
use crate::error::{Error, Result};
use crate::fourier::ExactFunction;
use crate::linalg::{check_cap, max_points, pow_u128, Space};
use crate::patterns::{LinearSystem, Pattern};
use crate::rational::{self, Rational};

/// An exact density together with the counts behind it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Density {
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    /// Number of matching tuples, when the density is a plain count.
    pub count: Option<u64>,
    /// Number of tuples averaged over.
    pub total: u64,
}

impl Density {
    pub fn from_count(count: u64, total: u64) -> Self {
        Density {
            value: rational::ratio(count as i64, total as i64),
            count: Some(count),
            total,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

/// Sum of products of integer numerators; stays in i128 until it would
/// overflow.
#[derive(Default)]
pub(crate) struct ProductSum {
    small: i128,
    big: Option<BigInt>,
}

impl ProductSum {
    pub fn add_product(&mut self, factors: impl Iterator<Item = i64> + Clone) {
        let mut prod: Option<i128> = Some(1);
        for v in factors.clone() {
            prod = prod.and_then(|p| p.checked_mul(i128::from(v)));
        }
        match prod.and_then(|p| self.small.checked_add(p)) {
            Some(s) if self.big.is_none() => self.small = s,
            _ => {
                let p = factors.fold(BigInt::from(1), |acc, v| acc * BigInt::from(v));
                let big = self.big.take().unwrap_or_else(|| BigInt::from(self.small));
                self.big = Some(big + p);
                self.small = 0;
            }
        }
    }

    pub fn total(self) -> BigInt {
        self.big.unwrap_or_else(|| BigInt::from(self.small))
    }
}

fn check_functions<F: AsRef<ExactFunction>>(fs: &[F], s: &LinearSystem) -> Result<Space> {
    if fs.len() != s.m() {
        return Err(Error::DimensionMismatch {
            expected: s.m(),
            found: fs.len(),
        });
    }
    let space = fs[0].as_ref().space();
    if space.field() != s.field() {
        return Err(Error::FieldMismatch(s.field().p(), space.p()));
    }
    if fs.iter().any(|f| f.as_ref().space() != space) {
        return Err(Error::invalid("functions live on different spaces"));
    }
    Ok(space)
}

fn denominator<F: AsRef<ExactFunction>>(fs: &[F]) -> BigInt {
    fs.iter().fold(BigInt::from(1), |acc, f| acc * BigInt::from(f.as_ref().denom()))
}

/// `Λ_L(f_1, …, f_m) = E_{z ∈ ker K} ∏ f_i(z_i)`, exactly.
pub fn lambda_forms<F: AsRef<ExactFunction>>(fs: &[F], s: &LinearSystem) -> Result<Density> {
    let space = check_functions(fs, s)?;
    let tables: Vec<&[i64]> = fs.iter().map(|f| f.as_ref().numerators()).collect();
    let mut acc = ProductSum::default();
    s.for_each_value_tuple(&space, |z| {
        acc.add_product(z.iter().zip(&tables).map(|(&x, t)| t[x]));
        true
    })?;
    let total = s.kernel_size(space.n()) as u64;
    Ok(Density {
        value: BigRational::new(acc.total(), denominator(fs) * BigInt::from(total)),
        count: None,
        total,
    })
}

/// `Λ_L` as an expectation over `x ∈ (F_p^n)^l`, straight from the
/// definition.
pub fn lambda_definitional<F: AsRef<ExactFunction>>(fs: &[F], s: &LinearSystem) -> Result<Density> {
    let space = check_functions(fs, s)?;
    let n = space.n();
    let total = pow_u128(space.p(), n * s.l());
    check_cap(total, max_points())?;
    let tables: Vec<&[i64]> = fs.iter().map(|f| f.as_ref().numerators()).collect();
    let gens: Vec<Vec<usize>> = (0..s.l() * n)
        .map(|k| {
            let mut g = vec![0; s.l()];
            g[k / n] = crate::patterns::unit(&space, k % n);
            g
        })
        .collect();
    let mut acc = ProductSum::default();
    space.for_each_combination(&vec![0; s.l()], &gens, |x| {
        let z = s.evaluate(&space, x);
        acc.add_product(z.iter().zip(&tables).map(|(&v, t)| t[v]));
        true
    });
    Ok(Density {
        value: BigRational::new(acc.total(), denominator(fs) * BigInt::from(total as u64)),
        count: None,
        total: total as u64,
    })
}

/// `Λ_H(φ)`: the fraction of value tuples whose colours form a member of
/// the pattern's family.
pub fn pattern_density(phi: &Colouring, pat: &Pattern) -> Result<Density> {
    let space = phi.space();
    let s = pat.system();
    if space.field() != s.field() {
        return Err(Error::FieldMismatch(s.field().p(), space.p()));
    }
    if phi.r() != pat.r() {
        return Err(Error::invalid(format!(
            "colouring has {} colours, pattern expects {}",
            phi.r(),
            pat.r()
        )));
    }
    let family = pat.colourings();
    let mut chi = vec![0u8; s.m()];
    let mut count = 0u64;
    s.for_each_value_tuple(&space, |z| {
        for (c, &x) in chi.iter_mut().zip(z) {
            *c = phi.colour(x);
        }
        if family.contains(&chi) {
            count += 1;
        }
        true
    })?;
    Ok(Density::from_count(count, s.kernel_size(space.n()) as u64))
}

/// `Λ_H(φ)` as `Σ_{χ∈X} Λ_L(φ_{χ(1)}, …, φ_{χ(m)})`.
pub fn pattern_density_by_forms(phi: &Colouring, pat: &Pattern) -> Result<Density> {
    let indicators = phi.indicators();
    let mut value = rational::integer(0);
    let mut total = 0;
    for chi in pat.colourings().materialize(pat.r(), pat.m())? {
        let fs: Vec<&ExactFunction> = chi.iter().map(|&c| &*indicators[c as usize - 1]).collect();
        let d = lambda_forms(&fs, pat.system())?;
        value += d.value;
        total = d.total;
    }
    Ok(Density {
        value,
        count: None,
        total,
    })
}

/// `|Λ(f) − Λ(g) − Σ_i Λ(h⁽ⁱ⁾)|` where `h⁽ⁱ⁾` takes `f` before position
/// `i`, `f_i − g_i` at it and `g` after it.
pub fn telescoping_residual<F: AsRef<ExactFunction>, G: AsRef<ExactFunction>>(
    fs: &[F],
    gs: &[G],
    s: &LinearSystem,
) -> Result<Rational> {
    let fs: Vec<&ExactFunction> = fs.iter().map(AsRef::as_ref).collect();
    let gs: Vec<&ExactFunction> = gs.iter().map(AsRef::as_ref).collect();
    if gs.len() != fs.len() {
        return Err(Error::DimensionMismatch {
            expected: fs.len(),
            found: gs.len(),
        });
    }
    let mut residual = lambda_forms(&fs, s)?.value - lambda_forms(&gs, s)?.value;
    for i in 0..fs.len() {
        let diff = fs[i].sub(gs[i])?;
        let h: Vec<&ExactFunction> = (0..fs.len())
            .map(|j| match j.cmp(&i) {
                std::cmp::Ordering::Less => fs[j],
                std::cmp::Ordering::Equal => &diff,
                std::cmp::Ordering::Greater => gs[j],
            })
            .collect();
        residual -= lambda_forms(&h, s)?.value;
    }
    Ok(residual.abs())
}
