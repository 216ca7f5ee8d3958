use num_traits::{Signed, Zero};
use serde::Serialize;

use super::arl::{arl, arl_within, space_of, RegularPartition};
use crate::error::{Error, Result};
use crate::fourier::{ExactFunction, Frame};
use crate::linalg::{Complement, PointVector, Subspace};
use crate::rational::{self, Rational};

/// Knobs for the randomised two-level search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelectOptions {
    /// Complement draws per refinement level.
    pub retries: u32,
    /// How many times the inner ε is halved before giving up.
    pub max_halvings: u32,
    /// Cap on each refinement's codimension, relative to its start.
    pub max_codim: Option<usize>,
}

impl Default for SelectOptions {
    fn default() -> Self {
        SelectOptions {
            retries: 32,
            max_halvings: 6,
            max_codim: None,
        }
    }
}

/// Nested subspaces `H_2 ≤ H_1 ≤ H_0` and a complement `U` of `H_1` such
/// that every `H_2 + u`, `u ∈ U \ {0}`, is ε-regular and all but a
/// ζ-fraction of them have densities within ζ of `H_1 + u`.
#[derive(Clone, Debug, Serialize)]
pub struct TwoLevelSelection {
    pub h1: RegularPartition,
    pub h2: RegularPartition,
    #[serde(skip)]
    pub complement: Complement,
    pub u_basis: Vec<PointVector>,
    #[serde(with = "rational::serde_str")]
    pub epsilon: Rational,
    #[serde(with = "rational::serde_str")]
    pub zeta: Rational,
    /// ε used for the inner refinement.
    #[serde(with = "rational::serde_str")]
    pub inner_epsilon: Rational,
    #[serde(with = "rational::serde_str")]
    pub density_bad_fraction: Rational,
    /// Complement draws made, over all levels.
    pub attempts: u32,
    pub seed: u64,
}

impl TwoLevelSelection {
    pub fn h1_subspace(&self) -> &Subspace {
        &self.h1.subspace
    }

    pub fn h2_subspace(&self) -> &Subspace {
        &self.h2.subspace
    }
}

/// Re-measured properties of a two-level selection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoLevelValidation {
    pub nested: bool,
    pub is_complement: bool,
    /// Every `H_2 + u`, `u ≠ 0`, is ε-regular for every function.
    pub all_regular: bool,
    #[serde(with = "rational::serde_str")]
    pub density_bad_fraction: Rational,
    pub density_ok: bool,
}

impl TwoLevelValidation {
    pub fn pass(&self) -> bool {
        self.nested && self.is_complement && self.all_regular && self.density_ok
    }
}

/// Measures properties (ii) and (iii) for one complement.
pub fn measure_two_level<F: AsRef<ExactFunction>>(
    fs: &[F],
    h1: &Subspace,
    h2: &Subspace,
    u: &Complement,
    eps: &Rational,
    zeta: &Rational,
) -> Result<TwoLevelValidation> {
    let space = space_of(fs, h1)?;
    let f1 = Frame::new(space, h1)?;
    let f2 = Frame::new(space, h2)?;
    let elements = u.elements()?;
    let mut all_regular = true;
    let mut bad = 0usize;
    for el in &elements {
        let idx = el.index();
        if !el.is_zero() {
            all_regular &= fs.iter().all(|f| f2.uniformity(f.as_ref(), idx).is_epsilon_uniform(eps));
        }
        let off = fs.iter().any(|f| {
            let diff = f2.mean(f.as_ref(), idx) - f1.mean(f.as_ref(), idx);
            &diff.abs() > zeta
        });
        if off {
            bad += 1;
        }
    }
    let fraction = rational::ratio(bad as i64, elements.len() as i64);
    Ok(TwoLevelValidation {
        nested: h1.contains_subspace(h2),
        is_complement: u.of() == h1 && u.stacked_rank() == h1.n(),
        all_regular,
        density_ok: &fraction <= zeta,
        density_bad_fraction: fraction,
    })
}

/// Realises the intermediate selection by refinement and re-validation:
/// `H_1` from a refinement of `h0` at ε/2, `H_2` from a refinement of `H_1`
/// at ε/2^{k+2}; for each level a seeded complement of `H_1` is drawn up to
/// `retries` times and kept once (ii) and (iii) measure true.
pub fn two_level_select<F: AsRef<ExactFunction>>(
    fs: &[F],
    eps: &Rational,
    zeta: &Rational,
    h0: &Subspace,
    seed: u64,
    opts: &SelectOptions,
) -> Result<TwoLevelSelection> {
    if eps <= &Rational::zero() || zeta <= &Rational::zero() {
        return Err(Error::invalid("ε and ζ must be positive"));
    }
    let half = eps / rational::integer(2);
    let h1 = arl(fs, &half, h0, opts.max_codim.unwrap_or(h0.dim()))?;
    let full = Subspace::full(h0.field(), h0.n());
    let mut attempts = 0u32;
    let mut diagnostics = Vec::new();
    let mut inner = half.clone();
    for _level in 0..=opts.max_halvings {
        inner = &inner / rational::integer(2);
        let h2 = match arl_within(fs, &inner, &h1.subspace, &full, opts.max_codim.unwrap_or(h1.subspace.dim())) {
            Ok(p) => p,
            Err(Error::RegularityNotReached(p)) => {
                diagnostics.push(format!(
                    "inner ε {} not reached (irregular fraction {})",
                    rational::format(&inner),
                    rational::format(&p.irregular_fraction)
                ));
                continue;
            }
            Err(e) => return Err(e),
        };
        for _ in 0..opts.retries.max(1) {
            let draw_seed = seed.wrapping_add(u64::from(attempts));
            attempts += 1;
            let u = h1.subspace.complement(draw_seed);
            let v = measure_two_level(fs, &h1.subspace, &h2.subspace, &u, eps, zeta)?;
            if v.pass() {
                return Ok(TwoLevelSelection {
                    u_basis: u.basis_vectors(),
                    complement: u,
                    h1,
                    h2,
                    epsilon: eps.clone(),
                    zeta: zeta.clone(),
                    inner_epsilon: inner,
                    density_bad_fraction: v.density_bad_fraction,
                    attempts,
                    seed,
                });
            }
            diagnostics.push(format!(
                "inner ε {}: draw {draw_seed} regular={} bad fraction {}",
                rational::format(&inner),
                v.all_regular,
                rational::format(&v.density_bad_fraction)
            ));
        }
    }
    let last = diagnostics.last().cloned().unwrap_or_default();
    Err(Error::SelectionFailed(format!(
        "no two-level selection after {attempts} complement draws; last: {last}"
    )))
}

/// Re-measures a returned selection from scratch.
pub fn validate_two_level<F: AsRef<ExactFunction>>(sel: &TwoLevelSelection, fs: &[F]) -> Result<TwoLevelValidation> {
    measure_two_level(
        fs,
        &sel.h1.subspace,
        &sel.h2.subspace,
        &sel.complement,
        &sel.epsilon,
        &sel.zeta,
    )
}
