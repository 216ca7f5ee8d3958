use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::{ExactFunction, Frame, UniformityReport};
use crate::linalg::{PointVector, Space, Subspace};
use crate::rational::{self, Rational};

/// One refinement: the coset and character that drove it, and the energy it
/// bought.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RefinementStep {
    pub coset_rep: PointVector,
    pub function: usize,
    pub witness: PointVector,
    pub modulus: f64,
    #[serde(with = "rational::serde_str_opt")]
    pub modulus_exact: Option<Rational>,
    /// `Σ_f E_cosets α²` before and after the refinement.
    #[serde(with = "rational::serde_str")]
    pub energy_before: Rational,
    #[serde(with = "rational::serde_str")]
    pub energy_after: Rational,
    /// Mean-square gain of the witnessing function on the witnessing coset:
    /// the average of `α_t²` over the p subcosets minus `α²`.
    #[serde(with = "rational::serde_str")]
    pub local_gain: Rational,
}

/// A subspace `H ≤ H_0` whose cosets inside the ambient subspace are
/// ε-regular for the tracked functions, up to an ε-fraction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegularPartition {
    pub subspace: Subspace,
    pub start: Subspace,
    pub ambient: Subspace,
    #[serde(with = "rational::serde_str")]
    pub epsilon: Rational,
    #[serde(with = "rational::serde_str")]
    pub irregular_fraction: Rational,
    pub codim_in_start: usize,
    pub trace: Vec<RefinementStep>,
}

impl RegularPartition {
    pub fn is_regular(&self) -> bool {
        self.irregular_fraction <= self.epsilon
    }
}

pub(crate) fn space_of<F: AsRef<ExactFunction>>(fs: &[F], h: &Subspace) -> Result<Space> {
    match fs.first() {
        Some(f) => {
            let space = f.as_ref().space();
            if fs.iter().any(|g| g.as_ref().space() != space) {
                return Err(Error::invalid("functions live on different spaces"));
            }
            if space.field() != h.field() || space.n() != h.n() {
                return Err(Error::DimensionMismatch {
                    expected: space.n(),
                    found: h.n(),
                });
            }
            Ok(space)
        }
        None => Space::new(h.field(), h.n()),
    }
}

/// Compares coefficient moduli, exactly when both are exact.
fn cmp_modulus(a: &UniformityReport, b: &UniformityReport) -> Ordering {
    match (&a.max_modulus_exact, &b.max_modulus_exact) {
        (Some(x), Some(y)) => x.cmp(y),
        _ => {
            if (a.max_modulus - b.max_modulus).abs() <= 1e-12 {
                Ordering::Equal
            } else {
                a.max_modulus.partial_cmp(&b.max_modulus).unwrap_or(Ordering::Equal)
            }
        }
    }
}

/// `Σ_f E_cosets α²` for the cosets of `frame.subspace` with the given reps.
fn energy<F: AsRef<ExactFunction>>(fs: &[F], frame: &Frame, reps: &[usize]) -> Rational {
    let size = BigInt::from(frame.offsets.len());
    let mut total = Rational::zero();
    for f in fs {
        let f = f.as_ref();
        let nums = f.numerators();
        let mut acc = BigInt::zero();
        for &rep in reps {
            let s: i128 = frame.points(rep).map(|x| i128::from(nums[x])).sum();
            let s = BigInt::from(s);
            acc += &s * &s;
        }
        let d = BigInt::from(f.denom());
        total += BigRational::new(acc, &size * &size * &d * &d * BigInt::from(reps.len()));
    }
    total
}

/// Mean over the `p` pieces `{x ∈ C : r·x = t}` of `α_t²`, minus `α²`.
fn local_gain(f: &ExactFunction, frame: &Frame, rep: usize, r: &PointVector) -> Rational {
    let space = frame.space;
    let p = space.p() as usize;
    let nums = f.numerators();
    let mut sums = vec![0i128; p];
    let mut counts = vec![0i64; p];
    let mut whole = 0i128;
    for x in frame.points(rep) {
        let t = r.dot(&space.point(x)) as usize;
        sums[t] += i128::from(nums[x]);
        counts[t] += 1;
        whole += i128::from(nums[x]);
    }
    let d = BigInt::from(f.denom());
    let mut acc = Rational::zero();
    for t in 0..p {
        if counts[t] > 0 {
            let a = BigRational::new(BigInt::from(sums[t]), &d * BigInt::from(counts[t]));
            acc += &a * &a;
        }
    }
    let pieces = counts.iter().filter(|&&c| c > 0).count() as i64;
    let alpha = BigRational::new(BigInt::from(whole), &d * BigInt::from(frame.offsets.len()));
    acc / rational::integer(pieces) - &alpha * &alpha
}

struct Scan {
    reps: Vec<usize>,
    irregular: usize,
    /// (coset rep, function, report) of the largest offending coefficient.
    best: Option<(PointVector, usize, UniformityReport)>,
}

fn scan<F: AsRef<ExactFunction>>(fs: &[F], frame: &Frame, ambient: &Subspace, eps: &Rational) -> Result<Scan> {
    let reps = frame.subspace.coset_reps_within(ambient)?;
    let mut irregular = 0;
    let mut best: Option<(PointVector, usize, UniformityReport)> = None;
    for rep in &reps {
        let mut bad = false;
        for (i, f) in fs.iter().enumerate() {
            let u = frame.uniformity(f.as_ref(), rep.index());
            if u.exceeds(eps) {
                bad = true;
                let better = match &best {
                    None => true,
                    Some((_, _, b)) => cmp_modulus(&u, b) == Ordering::Greater,
                };
                if better {
                    best = Some((rep.clone(), i, u));
                }
            }
        }
        if bad {
            irregular += 1;
        }
    }
    Ok(Scan {
        reps: reps.iter().map(PointVector::index).collect(),
        irregular,
        best,
    })
}

/// Energy-increment refinement over the whole space, starting from `h0`.
pub fn arl<F: AsRef<ExactFunction>>(fs: &[F], eps: &Rational, h0: &Subspace, max_codim: usize) -> Result<RegularPartition> {
    let full = Subspace::full(h0.field(), h0.n());
    arl_within(fs, eps, h0, &full, max_codim)
}

/// Energy-increment refinement of `start`, measuring only the cosets that
/// lie inside `ambient`. While more than an ε-fraction of them fail
/// ε-uniformity for some function, the largest offending coefficient `r`
/// (ties: coset rep, function index, character, all lexicographic) refines
/// `H ← H ∩ ⟨r⟩^⊥`. Fails once `max_codim` refinements have not sufficed.
pub fn arl_within<F: AsRef<ExactFunction>>(
    fs: &[F],
    eps: &Rational,
    start: &Subspace,
    ambient: &Subspace,
    max_codim: usize,
) -> Result<RegularPartition> {
    if eps <= &Rational::zero() {
        return Err(Error::invalid("ε must be positive"));
    }
    if !ambient.contains_subspace(start) {
        return Err(Error::NotContained);
    }
    let space = space_of(fs, start)?;
    let mut h = start.clone();
    let mut trace: Vec<RefinementStep> = Vec::new();
    loop {
        let frame = Frame::new(space, &h)?;
        let s = scan(fs, &frame, ambient, eps)?;
        let current = energy(fs, &frame, &s.reps);
        if let Some(last) = trace.last_mut() {
            last.energy_after = current.clone();
        }
        let fraction = rational::ratio(s.irregular as i64, s.reps.len() as i64);
        let codim = start.dim() - h.dim();
        let done = &fraction <= eps;
        if done || codim >= max_codim || s.best.is_none() {
            let part = RegularPartition {
                subspace: h,
                start: start.clone(),
                ambient: ambient.clone(),
                epsilon: eps.clone(),
                irregular_fraction: fraction,
                codim_in_start: codim,
                trace,
            };
            return if done {
                Ok(part)
            } else {
                Err(Error::RegularityNotReached(Box::new(part)))
            };
        }
        let (rep, i, u) = s.best.expect("checked above");
        let gain = local_gain(fs[i].as_ref(), &frame, rep.index(), &u.witness_r);
        trace.push(RefinementStep {
            coset_rep: rep,
            function: i,
            witness: u.witness_r.clone(),
            modulus: u.max_modulus,
            modulus_exact: u.max_modulus_exact.clone(),
            energy_before: current.clone(),
            energy_after: current,
            local_gain: gain,
        });
        h = h.intersect_annihilator(&u.witness_r)?;
    }
}
