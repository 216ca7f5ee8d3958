use serde::Serialize;

use super::recolour::{survivors_are_dense, Codims, PlanChecks, RecolouringPlan};
use super::DerivedParameters;
use crate::counting::{coset_consistency, pattern_density, Colouring, Density};
use crate::error::{Error, Result};
use crate::linalg::{Coset, FieldMatrix, PointVector, Space, Subspace};
use crate::patterns::{apply_matrix, LinearSystem, Pattern};
use crate::rational::{self, Rational};
use crate::regularity::{validate_selection, validate_two_level, SelectionValidation, TwoLevelValidation};

/// Diagnostics carried over from a recolouring plan and re-measured.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanDiagnostics {
    pub codims: Codims,
    pub params: DerivedParameters,
    pub two_level: TwoLevelValidation,
    pub selection: SelectionValidation,
    pub self_checks: PlanChecks,
    /// Property (iv) measured again from the plan's subspaces.
    pub dense_survivors: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub input_density: Density,
    pub output_density: Density,
    pub changed_count: u64,
    pub total: u64,
    #[serde(with = "rational::serde_str")]
    pub changed_fraction: Rational,
    #[serde(with = "rational::serde_str")]
    pub epsilon: Rational,
    pub change_bound_ok: bool,
    /// An instance of the pattern left in the output, if any.
    pub witness: Option<Vec<PointVector>>,
    pub diagnostics: Option<PlanDiagnostics>,
}

impl PipelineReport {
    /// `Λ_H(φ′) = 0` and the change bound holds.
    pub fn pass(&self) -> bool {
        self.output_density.is_zero() && self.witness.is_none() && self.change_bound_ok
    }
}

/// First value tuple of the pattern's system (in enumeration order) whose
/// colours are in the family.
pub fn pattern_free_check(phi: &Colouring, pat: &Pattern) -> Result<Option<Vec<PointVector>>> {
    let space = phi.space();
    if space.field() != pat.system().field() || phi.r() != pat.r() {
        return Err(Error::invalid("pattern and colouring disagree on p or r"));
    }
    let family = pat.colourings();
    let mut chi = vec![0u8; pat.m()];
    let mut found = None;
    pat.system().for_each_value_tuple(&space, |z| {
        for (c, &x) in chi.iter_mut().zip(z) {
            *c = phi.colour(x);
        }
        if family.contains(&chi) {
            found = Some(z.iter().map(|&x| space.point(x)).collect());
            return false;
        }
        true
    })?;
    Ok(found)
}

/// Compares two colourings with no knowledge of how the second was made.
pub fn verify_colourings(original: &Colouring, result: &Colouring, pat: &Pattern, eps: &Rational) -> Result<PipelineReport> {
    if original.space() != result.space() || original.r() != result.r() {
        return Err(Error::invalid("colourings differ in p, n or r"));
    }
    let input_density = pattern_density(original, pat)?;
    let output_density = pattern_density(result, pat)?;
    let witness = pattern_free_check(result, pat)?;
    let total = original.space().size() as u64;
    let changed_count = original.hamming(result) as u64;
    let changed_fraction = rational::ratio(changed_count as i64, total as i64);
    Ok(PipelineReport {
        input_density,
        output_density,
        changed_count,
        total,
        change_bound_ok: &changed_fraction <= eps,
        changed_fraction,
        epsilon: eps.clone(),
        witness,
        diagnostics: None,
    })
}

/// Verifies a plan's output and re-measures its intermediate selections.
pub fn verify_removal(plan: &RecolouringPlan, pat: &Pattern, eps: &Rational) -> Result<PipelineReport> {
    let mut report = verify_colourings(&plan.original, &plan.result, pat, eps)?;
    let fs = plan.original.indicators();
    report.diagnostics = Some(PlanDiagnostics {
        codims: plan.codims,
        params: plan.params.clone(),
        two_level: validate_two_level(&plan.two_level, &fs)?,
        selection: validate_selection(&plan.multi, &fs, &plan.multi.epsilon, &plan.multi.delta)?,
        self_checks: plan.checks.clone(),
        dense_survivors: survivors_are_dense(plan)?,
    });
    Ok(report)
}

/// For `z` solving `A·z = 0` and `u` drawn from a complement of `H_1`:
/// `A·u` must be 0 (it lies in `H_1` whenever `u + h` is a solution, and in
/// the complement by construction), and then the cosets `H_3 + u_j + z_j`
/// are consistent with the system whose dependencies are `A`.
pub fn consistency_claim_check(
    u: &[PointVector],
    z: &[PointVector],
    a: &FieldMatrix,
    h1: &Subspace,
    h3: &Subspace,
) -> Result<bool> {
    if u.len() != a.cols() || z.len() != a.cols() {
        return Err(Error::DimensionMismatch {
            expected: a.cols(),
            found: u.len().min(z.len()),
        });
    }
    let space = Space::new(h1.field(), h1.n())?;
    let zi: Vec<usize> = z.iter().map(PointVector::index).collect();
    if apply_matrix(&space, a, &zi).iter().any(|&v| v != 0) {
        return Err(Error::invalid("z does not solve A·z = 0"));
    }
    let ui: Vec<usize> = u.iter().map(PointVector::index).collect();
    let au = apply_matrix(&space, a, &ui);
    if au.iter().any(|&v| !h1.contains(&space.point(v)) || v != 0) {
        return Ok(false);
    }
    let cosets: Vec<Coset> = ui
        .iter()
        .zip(&zi)
        .map(|(&uj, &zj)| Coset::new(h3, &space.point(space.add(uj, zj))))
        .collect::<Result<_>>()?;
    let system = LinearSystem::from_dependency(a);
    Ok(coset_consistency(&system, &cosets)?.is_some())
}
