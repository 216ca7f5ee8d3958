use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use super::lambda::{Density, ProductSum};
use crate::error::{Error, Result};
use crate::fourier::{uniformity, ExactFunction, TOLERANCE};
use crate::linalg::{Coset, PointVector, Space, Subspace};
use crate::patterns::{kernel_tuple_generators, LinearSystem};
use crate::rational::{self, Rational};

/// A choice of variables placing every form in its coset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyWitness {
    pub x: Vec<PointVector>,
}

impl ConsistencyWitness {
    /// Re-evaluates the forms at `x`.
    pub fn validates(&self, s: &LinearSystem, cosets: &[Coset]) -> bool {
        let Some(first) = self.x.first() else {
            return false;
        };
        let Ok(space) = Space::new(first.field(), first.n()) else {
            return false;
        };
        let idx: Vec<usize> = self.x.iter().map(PointVector::index).collect();
        s.evaluate(&space, &idx)
            .iter()
            .zip(cosets)
            .all(|(&v, c)| c.contains(&space.point(v)))
    }
}

fn common_subspace(s: &LinearSystem, cosets: &[Coset]) -> Result<Subspace> {
    if cosets.len() != s.m() {
        return Err(Error::DimensionMismatch {
            expected: s.m(),
            found: cosets.len(),
        });
    }
    let h = cosets[0].subspace();
    if cosets.iter().any(|c| c.subspace() != h) {
        return Err(Error::MixedSubspaces);
    }
    if h.field() != s.field() {
        return Err(Error::FieldMismatch(s.field().p(), h.field().p()));
    }
    Ok(h.clone())
}

/// Decides consistency in the quotient F_p^n/H: with `q_i` the coordinates
/// of `c_i` against a basis of H^⊥, solve `M·y = q` one quotient coordinate
/// at a time and lift `y` back to F_p^n along the pivot columns.
pub fn coset_consistency(s: &LinearSystem, cosets: &[Coset]) -> Result<Option<ConsistencyWitness>> {
    let h = common_subspace(s, cosets)?;
    let f = s.field();
    let n = h.n();
    let perp = h.perp();
    let d = perp.dim();
    let q: Vec<Vec<u8>> = cosets
        .iter()
        .map(|c| (0..d).map(|k| f.dot(perp.basis().row(k), c.rep().coords())).collect())
        .collect();
    let mut x = vec![vec![0i64; n]; s.l()];
    for k in 0..d {
        let target: Vec<u8> = q.iter().map(|qi| qi[k]).collect();
        let Some(y) = s.forms().solve(&target) else {
            return Ok(None);
        };
        let pivot = perp.pivots()[k];
        for (xj, &yj) in x.iter_mut().zip(&y) {
            xj[pivot] = i64::from(yj);
        }
    }
    Ok(Some(ConsistencyWitness {
        x: x.iter().map(|c| PointVector::new(f, c)).collect(),
    }))
}

/// Visits every `z ∈ ker K` with `z_i ∈ H + c_i`, starting from the witness
/// and moving along `ker K ∩ H^m`.
fn for_each_restricted_tuple(
    s: &LinearSystem,
    cosets: &[Coset],
    witness: &ConsistencyWitness,
    mut visit: impl FnMut(&[usize]),
) -> Result<()> {
    let h = cosets[0].subspace();
    let space = Space::new(s.field(), h.n())?;
    crate::linalg::check_cap(
        crate::linalg::pow_u128(s.field().p(), h.dim() * s.rank_m()),
        crate::linalg::max_points(),
    )?;
    let x: Vec<usize> = witness.x.iter().map(PointVector::index).collect();
    let start = s.evaluate(&space, &x);
    let gens = kernel_tuple_generators(&space, s.dependencies(), &h.basis_indices());
    space.for_each_combination(&start, &gens, |z| {
        visit(z);
        true
    });
    Ok(())
}

/// `p^{-d·rank M} · ∏ α_i`.
pub fn counting_prediction(s: &LinearSystem, d: usize, means: &[Rational]) -> Rational {
    let scale = rational::inverse_power(s.field().p(), d * s.rank_m());
    means.iter().fold(scale, |acc, a| acc * a)
}

/// `Λ_L(1_{H+c_1}, …, 1_{H+c_m})`, counted over the solutions that land in
/// the cosets.
pub fn indicator_coset_count(s: &LinearSystem, cosets: &[Coset]) -> Result<Density> {
    let h = common_subspace(s, cosets)?;
    let total = s.kernel_size(h.n()) as u64;
    let Some(w) = coset_consistency(s, cosets)? else {
        return Ok(Density::from_count(0, total));
    };
    let space = Space::new(s.field(), h.n())?;
    let reps: Vec<&PointVector> = cosets.iter().map(Coset::rep).collect();
    let mut count = 0u64;
    let mut stray = false;
    for_each_restricted_tuple(s, cosets, &w, |z| {
        let inside = z
            .iter()
            .zip(&reps)
            .all(|(&v, r)| h.canonical_rep(&space.point(v)) == **r);
        if inside {
            count += 1;
        } else {
            stray = true;
        }
    })?;
    debug_assert!(!stray);
    Ok(Density::from_count(count, total))
}

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    #[serde(with = "rational::serde_str")]
    pub lhs: Rational,
    #[serde(with = "rational::serde_str")]
    pub main_term: Rational,
    #[serde(with = "rational::serde_str")]
    pub discrepancy: Rational,
    #[serde(with = "rational::serde_str")]
    pub bound: Rational,
    #[serde(with = "rational::serde_str_vec")]
    pub means: Vec<Rational>,
    /// Measured uniformity of each function on its coset.
    pub measured_uniformity: Vec<f64>,
    pub pass: bool,
}

/// Compares `Λ(f_1·1_{C_1}, …, f_m·1_{C_m})` with the main term
/// `p^{-d·rank M} ∏ α_i`, against the bound `p^{-d·rank M}·m·δ`.
pub fn counting_check<F: AsRef<ExactFunction>>(
    fs: &[F],
    cosets: &[Coset],
    s: &LinearSystem,
    delta: &Rational,
) -> Result<CountReport> {
    let h = common_subspace(s, cosets)?;
    if fs.len() != s.m() {
        return Err(Error::DimensionMismatch {
            expected: s.m(),
            found: fs.len(),
        });
    }
    let w = coset_consistency(s, cosets)?.ok_or(Error::InconsistentCosets)?;
    let space = Space::new(s.field(), h.n())?;
    let tables: Vec<&[i64]> = fs.iter().map(|f| f.as_ref().numerators()).collect();
    let mut acc = ProductSum::default();
    for_each_restricted_tuple(s, cosets, &w, |z| {
        acc.add_product(z.iter().zip(&tables).map(|(&x, t)| t[x]));
    })?;
    let denom = fs
        .iter()
        .fold(BigInt::from(s.kernel_size(h.n()) as u64), |acc, f| acc * BigInt::from(f.as_ref().denom()));
    let lhs = BigRational::new(acc.total(), denom);

    let mut means = Vec::new();
    let mut measured = Vec::new();
    for (f, c) in fs.iter().zip(cosets) {
        let u = uniformity(f.as_ref(), c)?;
        means.push(u.mean.clone());
        measured.push(u.max_modulus);
    }
    let d = h.codim();
    let main_term = counting_prediction(s, d, &means);
    let bound = rational::inverse_power(space.p(), d * s.rank_m()) * rational::integer(s.m() as i64) * delta;
    let discrepancy = (&lhs - &main_term).abs();
    let pass = rational::to_f64(&discrepancy) <= rational::to_f64(&bound) + TOLERANCE;
    Ok(CountReport {
        lhs,
        main_term,
        discrepancy,
        bound,
        means,
        measured_uniformity: measured,
        pass,
    })
}
