use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use super::ExactFunction;
use crate::error::{Error, Result};
use crate::linalg::{check_point, Coset, PointVector, Space, Subspace};
use crate::rational::{self, Rational};

/// Absolute tolerance for floating-point comparisons (p > 2).
pub const TOLERANCE: f64 = 1e-9;

/// `e_p(rᵀx)`; exactly ±1 when p = 2.
pub fn char_value(r: &PointVector, x: &PointVector) -> Result<Complex64> {
    check_point(r.field(), r.n(), x)?;
    Ok(root_of_unity(r.field().p(), r.dot(x)))
}

fn root_of_unity(p: u8, t: u8) -> Complex64 {
    match (p, t) {
        (_, 0) => Complex64::new(1.0, 0.0),
        (2, _) => Complex64::new(-1.0, 0.0),
        _ => Complex64::from_polar(1.0, 2.0 * PI * f64::from(t) / f64::from(p)),
    }
}

/// Fourier coefficients of the mean-centred restriction of a function to a
/// coset, one per class of F_p^n / H^⊥.
#[derive(Clone, Debug)]
pub struct CosetSpectrum {
    pub coset: Coset,
    pub mean: Rational,
    /// Class representatives (canonical modulo H^⊥).
    pub classes: Vec<PointVector>,
    pub coefficients: Vec<Complex64>,
    /// Exact coefficients, present when p = 2.
    pub exact: Option<Vec<Rational>>,
}

impl CosetSpectrum {
    /// Σ |F̂(r)|² over classes.
    pub fn energy(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniformityReport {
    pub max_modulus: f64,
    #[serde(with = "rational::serde_str_opt")]
    pub max_modulus_exact: Option<Rational>,
    pub witness_r: PointVector,
    #[serde(with = "rational::serde_str")]
    pub mean: Rational,
}

impl UniformityReport {
    pub fn is_epsilon_uniform(&self, eps: &Rational) -> bool {
        match &self.max_modulus_exact {
            Some(m) => m <= eps,
            None => self.max_modulus <= rational::to_f64(eps) + TOLERANCE,
        }
    }

    /// Strictly above ε, the trigger for a refinement step.
    pub fn exceeds(&self, eps: &Rational) -> bool {
        !self.is_epsilon_uniform(eps)
    }
}

/// A subspace together with its member offsets, reused across its cosets.
#[derive(Clone, Debug)]
pub(crate) struct Frame {
    pub space: Space,
    pub subspace: Subspace,
    /// Members of H in enumeration order (first basis vector most
    /// significant).
    pub offsets: Vec<usize>,
}

enum Transformed {
    Exact(Vec<i128>),
    Float(Vec<Complex64>),
}

impl Frame {
    pub fn new(space: Space, subspace: &Subspace) -> Result<Self> {
        if subspace.field() != space.field() || subspace.n() != space.n() {
            return Err(Error::DimensionMismatch {
                expected: space.n(),
                found: subspace.n(),
            });
        }
        Ok(Frame {
            space,
            subspace: subspace.clone(),
            offsets: subspace.member_indices(&space)?,
        })
    }

    pub fn points(&self, rep: usize) -> impl Iterator<Item = usize> + '_ {
        self.offsets.iter().map(move |&h| self.space.add(rep, h))
    }

    pub fn mean(&self, f: &ExactFunction, rep: usize) -> Rational {
        let nums = f.numerators();
        let s: i128 = self.points(rep).map(|x| i128::from(nums[x])).sum();
        BigRational::new(BigInt::from(s), BigInt::from(f.denom()) * BigInt::from(self.offsets.len()))
    }

    /// Integer transform of `|C|·f − Σ f` on the coset; dividing by
    /// `|C|²·denom` gives the centred coefficients.
    fn transform(&self, f: &ExactFunction, rep: usize) -> (Transformed, i128) {
        let nums = f.numerators();
        let size = self.offsets.len() as i128;
        let vals: Vec<i128> = self.points(rep).map(|x| i128::from(nums[x])).collect();
        let sum: i128 = vals.iter().sum();
        let centred: Vec<i128> = vals.iter().map(|&v| v * size - sum).collect();
        let p = self.space.p();
        let t = if p == 2 {
            Transformed::Exact(walsh_hadamard(centred))
        } else {
            Transformed::Float(radix_p_dft(p, centred.iter().map(|&v| Complex64::new(v as f64, 0.0)).collect()))
        };
        (t, sum)
    }

    /// `Σ s_j e_{pivot_j}` reduced modulo H^⊥, for the transform index `k`.
    fn class_rep(&self, k: usize) -> PointVector {
        let p = self.space.p() as usize;
        let dim = self.subspace.dim();
        let mut coords = vec![0i64; self.space.n()];
        let mut rest = k;
        for j in (0..dim).rev() {
            coords[self.subspace.pivots()[j]] = (rest % p) as i64;
            rest /= p;
        }
        let r = PointVector::new(self.space.field(), &coords);
        self.subspace.perp().canonical_rep(&r)
    }

    pub fn uniformity(&self, f: &ExactFunction, rep: usize) -> UniformityReport {
        let size = self.offsets.len();
        let scale = (size as i128) * (size as i128) * i128::from(f.denom());
        let (t, sum) = self.transform(f, rep);
        let mean = BigRational::new(BigInt::from(sum), BigInt::from(f.denom()) * BigInt::from(size));
        let zero = PointVector::zero(self.space.field(), self.space.n());
        match t {
            Transformed::Exact(v) => {
                let best = v.iter().map(|c| c.abs()).max().unwrap_or(0);
                if best == 0 {
                    return UniformityReport {
                        max_modulus: 0.0,
                        max_modulus_exact: Some(rational::integer(0)),
                        witness_r: zero,
                        mean,
                    };
                }
                let witness = (0..v.len())
                    .filter(|&k| v[k].abs() == best)
                    .map(|k| self.class_rep(k))
                    .min()
                    .expect("non-empty");
                let exact = BigRational::new(BigInt::from(best), BigInt::from(scale));
                UniformityReport {
                    max_modulus: rational::to_f64(&exact),
                    max_modulus_exact: Some(exact),
                    witness_r: witness,
                    mean,
                }
            }
            Transformed::Float(v) => {
                let scale = scale as f64;
                let mods: Vec<f64> = v.iter().map(|c| c.norm() / scale).collect();
                let best = mods.iter().cloned().fold(0.0, f64::max);
                if best <= TOLERANCE * 1e-3 {
                    return UniformityReport {
                        max_modulus: 0.0,
                        max_modulus_exact: None,
                        witness_r: zero,
                        mean,
                    };
                }
                let witness = (0..mods.len())
                    .filter(|&k| mods[k] >= best - 1e-12)
                    .map(|k| self.class_rep(k))
                    .min()
                    .expect("non-empty");
                UniformityReport {
                    max_modulus: best,
                    max_modulus_exact: None,
                    witness_r: witness,
                    mean,
                }
            }
        }
    }

    pub fn spectrum(&self, f: &ExactFunction, coset: &Coset) -> CosetSpectrum {
        let rep = coset.rep().index();
        let size = self.offsets.len();
        let scale = (size as i128) * (size as i128) * i128::from(f.denom());
        let (t, sum) = self.transform(f, rep);
        let mean = BigRational::new(BigInt::from(sum), BigInt::from(f.denom()) * BigInt::from(size));
        let p = self.space.p();
        let classes: Vec<PointVector> = (0..size).map(|k| self.class_rep(k)).collect();
        let phases: Vec<u8> = classes.iter().map(|r| r.dot(coset.rep())).collect();
        let (coefficients, exact) = match t {
            Transformed::Exact(v) => {
                let exact: Vec<Rational> = v
                    .iter()
                    .zip(&phases)
                    .map(|(&c, &ph)| {
                        let c = if ph == 0 { c } else { -c };
                        BigRational::new(BigInt::from(c), BigInt::from(scale))
                    })
                    .collect();
                let floats = exact.iter().map(|q| Complex64::new(rational::to_f64(q), 0.0)).collect();
                (floats, Some(exact))
            }
            Transformed::Float(v) => {
                let scale = scale as f64;
                let c = v
                    .iter()
                    .zip(&phases)
                    .map(|(c, &ph)| c / scale * root_of_unity(p, ph))
                    .collect();
                (c, None)
            }
        };
        CosetSpectrum {
            coset: coset.clone(),
            mean,
            classes,
            coefficients,
            exact,
        }
    }
}

/// In-place fast Walsh–Hadamard transform.
fn walsh_hadamard(mut v: Vec<i128>) -> Vec<i128> {
    let mut h = 1;
    while h < v.len() {
        for block in (0..v.len()).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (v[i], v[i + h]);
                v[i] = a + b;
                v[i + h] = a - b;
            }
        }
        h *= 2;
    }
    v
}

/// Radix-p transform `v̂(s) = Σ_a v(a) ω^{s·a}` over F_p^k, one digit at a
/// time.
fn radix_p_dft(p: u8, mut v: Vec<Complex64>) -> Vec<Complex64> {
    let p = p as usize;
    let roots: Vec<Complex64> = (0..p).map(|t| root_of_unity(p as u8, t as u8)).collect();
    let mut buf = vec![Complex64::new(0.0, 0.0); p];
    let mut stride = 1;
    while stride < v.len() {
        for block in (0..v.len()).step_by(stride * p) {
            for off in block..block + stride {
                for (u, slot) in buf.iter_mut().enumerate() {
                    *slot = (0..p).map(|t| v[off + t * stride] * roots[(u * t) % p]).sum();
                }
                for (u, &val) in buf.iter().enumerate() {
                    v[off + u * stride] = val;
                }
            }
        }
        stride *= p;
    }
    v
}

pub fn coset_spectrum(f: &ExactFunction, c: &Coset) -> Result<CosetSpectrum> {
    let frame = Frame::new(f.space(), c.subspace())?;
    Ok(frame.spectrum(f, c))
}

/// Largest centred coefficient modulus on the coset, with the
/// lexicographically least maximising class as witness.
pub fn uniformity(f: &ExactFunction, c: &Coset) -> Result<UniformityReport> {
    let frame = Frame::new(f.space(), c.subspace())?;
    Ok(frame.uniformity(f, c.rep().index()))
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetRegularity {
    pub rep: PointVector,
    pub regular: bool,
    pub max_modulus: f64,
    /// Indices of the functions that are not ε-uniform here.
    pub irregular_functions: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionReport {
    pub codim: usize,
    #[serde(with = "rational::serde_str")]
    pub irregular_fraction: Rational,
    pub cosets: Vec<CosetRegularity>,
}

impl PartitionReport {
    pub fn is_regular(&self, eps: &Rational) -> bool {
        &self.irregular_fraction <= eps
    }
}

/// Flags every coset of `h` in F_p^n.
pub fn partition_report<F: AsRef<ExactFunction>>(fs: &[F], h: &Subspace, eps: &Rational) -> Result<PartitionReport> {
    let full = Subspace::full(h.field(), h.n());
    partition_report_within(fs, h, &full, eps)
}

/// Flags every coset of `h` contained in `ambient`.
pub fn partition_report_within<F: AsRef<ExactFunction>>(
    fs: &[F],
    h: &Subspace,
    ambient: &Subspace,
    eps: &Rational,
) -> Result<PartitionReport> {
    let space = match fs.first() {
        Some(f) => f.as_ref().space(),
        None => Space::new(h.field(), h.n())?,
    };
    let frame = Frame::new(space, h)?;
    let reps = h.coset_reps_within(ambient)?;
    let mut irregular = 0usize;
    let mut cosets = Vec::with_capacity(reps.len());
    for rep in reps {
        let idx = rep.index();
        let mut worst = 0.0f64;
        let mut bad = Vec::new();
        for (i, f) in fs.iter().enumerate() {
            let u = frame.uniformity(f.as_ref(), idx);
            worst = worst.max(u.max_modulus);
            if u.exceeds(eps) {
                bad.push(i);
            }
        }
        if !bad.is_empty() {
            irregular += 1;
        }
        cosets.push(CosetRegularity {
            rep,
            regular: bad.is_empty(),
            max_modulus: worst,
            irregular_functions: bad,
        });
    }
    Ok(PartitionReport {
        codim: ambient.dim() - h.dim(),
        irregular_fraction: rational::ratio(irregular as i64, cosets.len() as i64),
        cosets,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct InheritanceReport {
    pub d: usize,
    pub eps1: f64,
    pub eps2: f64,
    #[serde(with = "rational::serde_str")]
    pub mean1: Rational,
    #[serde(with = "rational::serde_str")]
    pub mean2: Rational,
    pub mean_gap: f64,
    /// `p^d · ε₁`.
    pub bound: f64,
    pub uniformity_holds: bool,
    pub mean_gap_holds: bool,
}

/// Measures how uniformity and the mean pass from `c1` to a subcoset `c2`.
pub fn inheritance_check(f: &ExactFunction, c1: &Coset, c2: &Coset) -> Result<InheritanceReport> {
    if !c2.is_within(c1) {
        return Err(Error::NotContained);
    }
    let d = c1.subspace().dim() - c2.subspace().dim();
    let u1 = uniformity(f, c1)?;
    let u2 = uniformity(f, c2)?;
    let bound = f64::from(c1.subspace().field().p()).powi(d as i32) * u1.max_modulus;
    let gap = rational::to_f64(&(&u2.mean - &u1.mean)).abs();
    Ok(InheritanceReport {
        d,
        eps1: u1.max_modulus,
        eps2: u2.max_modulus,
        mean_gap: gap,
        bound,
        uniformity_holds: u2.max_modulus <= bound + TOLERANCE,
        mean_gap_holds: gap <= bound + TOLERANCE,
        mean1: u1.mean,
        mean2: u2.mean,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;

    fn fp(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// Direct summation of `E_{x∈C} F(x) e_p(r·x)`.
    fn naive(f: &ExactFunction, c: &Coset, r: &PointVector) -> Complex64 {
        let space = f.space();
        let pts = c.member_indices(&space).unwrap();
        let mean = rational::to_f64(&f.mean_over(&pts));
        let mut acc = Complex64::new(0.0, 0.0);
        for &x in &pts {
            let fx = f.value_f64(x) - mean;
            acc += root_of_unity(space.p(), r.dot(&space.point(x))) * fx;
        }
        acc / pts.len() as f64
    }

    #[test]
    fn char_values() {
        let f = fp(2);
        let r = PointVector::new(f, &[1, 1]);
        assert_eq!(char_value(&r, &PointVector::new(f, &[1, 0])).unwrap(), Complex64::new(-1.0, 0.0));
        assert_eq!(
            char_value(&PointVector::zero(f, 2), &PointVector::new(f, &[1, 0])).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        let f5 = fp(5);
        let z = char_value(&PointVector::new(f5, &[2]), &PointVector::new(f5, &[1])).unwrap();
        assert!((z.norm() - 1.0).abs() < 1e-12);
        assert!((z - Complex64::from_polar(1.0, 4.0 * PI / 5.0)).norm() < 1e-12);
    }

    #[test]
    fn constant_has_flat_spectrum() {
        let f = fp(3);
        let space = Space::new(f, 3).unwrap();
        let g = ExactFunction::constant(space, 1, 2).unwrap();
        let c = Coset::new(&Subspace::full(f, 3), &PointVector::zero(f, 3)).unwrap();
        let s = coset_spectrum(&g, &c).unwrap();
        assert!(s.coefficients.iter().all(|z| z.norm() < 1e-12));
        assert_eq!(uniformity(&g, &c).unwrap().max_modulus, 0.0);
    }

    #[test]
    fn hyperplane_indicator_f2() {
        let f = fp(2);
        let space = Space::new(f, 4).unwrap();
        let s = PointVector::new(f, &[1, 0, 1, 1]);
        let g = ExactFunction::indicator(space, |x| space.point(x).dot(&s) == 0);
        let c = Coset::new(&Subspace::full(f, 4), &PointVector::zero(f, 4)).unwrap();
        let u = uniformity(&g, &c).unwrap();
        assert_eq!(u.max_modulus_exact, Some(rational::ratio(1, 2)));
        assert_eq!(u.witness_r, s);
        // direct summation at every r
        for r in 0..16 {
            let r = space.point(r);
            let expected = if r == s { 0.5 } else { 0.0 };
            assert!((naive(&g, &c, &r).norm() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn fast_matches_naive_on_cosets() {
        for p in [2u32, 3, 5] {
            let f = fp(p);
            let n = 3;
            let space = Space::new(f, n).unwrap();
            let vals: Vec<i64> = (0..space.size() as i64).map(|x| (x * 7 + 3) % 5 - 2).collect();
            let g = ExactFunction::new(space, vals, 2).unwrap();
            let h = Subspace::span(f, n, &[PointVector::new(f, &[1, 1, 0]), PointVector::new(f, &[0, 1, 2])]).unwrap();
            let c = Coset::new(&h, &PointVector::new(f, &[0, 0, 1])).unwrap();
            let spec = coset_spectrum(&g, &c).unwrap();
            for (r, z) in spec.classes.iter().zip(&spec.coefficients) {
                assert!((naive(&g, &c, r) - z).norm() < 1e-9, "p={p} r={r}");
            }
            // Parseval
            let pts = c.member_indices(&space).unwrap();
            let mean = rational::to_f64(&g.mean_over(&pts));
            let e: f64 = pts.iter().map(|&x| (g.value_f64(x) - mean).powi(2)).sum::<f64>() / pts.len() as f64;
            assert!((spec.energy() - e).abs() < 1e-9);
        }
    }

    #[test]
    fn dimension_zero_coset() {
        let f = fp(3);
        let space = Space::new(f, 2).unwrap();
        let g = ExactFunction::indicator(space, |x| x == 4);
        let c = Coset::new(&Subspace::zero(f, 2), &space.point(4)).unwrap();
        let u = uniformity(&g, &c).unwrap();
        assert_eq!(u.max_modulus, 0.0);
        assert_eq!(u.mean, rational::integer(1));
    }

    #[test]
    fn partition_of_hyperplane_indicator() {
        let f = fp(3);
        let space = Space::new(f, 3).unwrap();
        let s = PointVector::new(f, &[1, 2, 0]);
        let g = ExactFunction::indicator(space, |x| space.point(x).dot(&s) == 0);
        let hyper = Subspace::span(f, 3, std::slice::from_ref(&s)).unwrap().perp().clone();
        let rep = partition_report(&[&g], &hyper, &rational::ratio(1, 100)).unwrap();
        assert_eq!(rep.irregular_fraction, rational::integer(0));
        assert_eq!(rep.cosets.len(), 3);
        let whole = partition_report(&[&g], &Subspace::full(f, 3), &rational::ratio(1, 100)).unwrap();
        assert_eq!(whole.irregular_fraction, rational::integer(1));
    }
}
