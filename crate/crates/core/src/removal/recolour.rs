use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::config::{DerivedParameters, PipelineConfig};
use crate::counting::Colouring;
use crate::error::{Error, Result};
use crate::fourier::{ExactFunction, Frame};
use crate::linalg::{PointVector, Space, Subspace};
use crate::patterns::{is_partition_regular, Pattern, RadoCertificate};
use crate::rational::{self, Rational};
use crate::regularity::{multi_subcoset_select, two_level_select, MultiSubcosetSelection, TwoLevelSelection};

/// What happens to one coset `H_1 + u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Action {
    Unchanged,
    FullRecolour { colour: u8 },
    LowDensityMerge { from: Vec<u8>, to: u8 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetAction {
    /// The element of `U` indexing the coset.
    pub u: PointVector,
    pub action: Action,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codims {
    pub d0: usize,
    pub d1: usize,
    pub d2: usize,
    pub d3: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanChecks {
    /// `changed ≤ (3ε/4 + p^{-D_1})·p^n`.
    pub accounting: bool,
    /// `changed ≤ ε·p^n`.
    pub within_epsilon: bool,
    /// Every colour left in `H_1 + u` has density at least δ on every
    /// `H_3 + u + z_j`.
    pub dense_survivors: bool,
    /// Whether every `H_3 + u + z_j` is ε-regular for every colour.
    pub regular_subcosets: bool,
}

/// The per-coset recolouring and everything that led to it.
#[derive(Clone, Debug)]
pub struct RecolouringPlan {
    pub original: Colouring,
    pub result: Colouring,
    pub changed_count: u64,
    pub actions: Vec<CosetAction>,
    pub certificate: RadoCertificate,
    pub two_level: TwoLevelSelection,
    pub multi: MultiSubcosetSelection,
    pub params: DerivedParameters,
    pub codims: Codims,
    pub checks: PlanChecks,
}

/// Serializable, replayable form of a plan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanDoc {
    pub h1: Subspace,
    pub actions: Vec<CosetAction>,
    pub changed_count: u64,
    pub codims: Codims,
}

impl RecolouringPlan {
    pub fn doc(&self) -> PlanDoc {
        PlanDoc {
            h1: self.two_level.h1.subspace.clone(),
            actions: self.actions.clone(),
            changed_count: self.changed_count,
            codims: self.codims,
        }
    }

    pub fn h1(&self) -> &Subspace {
        &self.two_level.h1.subspace
    }

    pub fn h2(&self) -> &Subspace {
        &self.two_level.h2.subspace
    }

    pub fn h3(&self) -> &Subspace {
        self.multi.subspace()
    }

    pub fn u_elements(&self) -> Result<Vec<PointVector>> {
        self.two_level.complement.elements()
    }
}

/// Applies the actions to `original`.
pub fn replay(doc: &PlanDoc, original: &Colouring) -> Result<Colouring> {
    let space = original.space();
    let frame = Frame::new(space, &doc.h1)?;
    let mut out = original.clone();
    for ca in &doc.actions {
        let rep = ca.u.index();
        match &ca.action {
            Action::Unchanged => {}
            Action::FullRecolour { colour } => {
                for x in frame.points(rep) {
                    out.set(x, *colour);
                }
            }
            Action::LowDensityMerge { from, to } => {
                for x in frame.points(rep) {
                    if from.contains(&original.colour(x)) {
                        out.set(x, *to);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Colour densities on one coset, index 0 for colour 1.
fn densities(fs: &[impl AsRef<ExactFunction>], frame: &Frame, rep: usize) -> Vec<Rational> {
    fs.iter().map(|f| frame.mean(f.as_ref(), rep)).collect()
}

/// The densest colour, smallest index on ties.
fn densest(d: &[Rational]) -> u8 {
    let mut best = 0;
    for (i, v) in d.iter().enumerate() {
        if v > &d[best] {
            best = i;
        }
    }
    best as u8 + 1
}

/// Builds and validates the recolouring: a starting subspace of codimension
/// `D_0 = ⌈log_p(4r/ε)⌉`, the two-level selection, the subcoset selection
/// for the dependency matrix, and then per coset `H_1 + u`:
///
/// * `u = 0`: all of `H_1` takes the densest colour on `H_3 + z_1`;
/// * some colour's density on `H_2 + u` differs from `H_1 + u` by more than
///   ζ: all of `H_1 + u` takes the densest colour on `H_2 + u`;
/// * otherwise colours with density below ε/4r on `H_2 + u` merge into the
///   densest one.
pub fn recolour(phi: &Colouring, pat: &Pattern, cfg: &PipelineConfig) -> Result<RecolouringPlan> {
    let space = phi.space();
    if pat.system().field() != space.field() || pat.r() != phi.r() {
        return Err(Error::invalid("pattern and colouring disagree on p or r"));
    }
    let certificate = is_partition_regular(pat)?
        .ok_or_else(|| Error::invalid("pattern is not partition-regular"))?;
    let r = phi.r();
    let p = space.p();
    let n = space.n();
    let params = cfg.derive(r, pat.m());
    let eps = params.recolour_epsilon.clone();

    let d0 = rational::ceil_log(p, &(rational::integer(4 * i64::from(r)) / &eps));
    if d0 > n {
        return Err(Error::SelectionFailed(format!(
            "n = {n} is too small: the starting subspace needs codimension {d0}"
        )));
    }
    let h0 = Subspace::coordinate(space.field(), n, d0);
    let fs = phi.indicators();

    let two_level = two_level_select(&fs, &params.two_level_epsilon, &params.zeta, &h0, cfg.seed, &cfg.select)?;
    let multi = multi_subcoset_select(
        &fs,
        &eps,
        &params.delta,
        pat.system().dependencies(),
        &two_level.h2.subspace,
        cfg.cap,
    )?;
    let h1 = two_level.h1.subspace.clone();
    let h2 = two_level.h2.subspace.clone();
    let h3 = multi.subspace().clone();
    let codims = Codims {
        d0,
        d1: h1.codim(),
        d2: h2.codim(),
        d3: h3.codim(),
    };

    let f1 = Frame::new(space, &h1)?;
    let f2 = Frame::new(space, &h2)?;
    let f3 = Frame::new(space, &h3)?;
    let z: Vec<usize> = multi.z.iter().map(PointVector::index).collect();
    let elements = two_level.complement.elements()?;

    let mut actions = Vec::with_capacity(elements.len());
    for u in &elements {
        let idx = u.index();
        let action = if u.is_zero() {
            Action::FullRecolour {
                colour: densest(&densities(&fs, &f3, z[0])),
            }
        } else {
            let on_h2 = densities(&fs, &f2, idx);
            let on_h1 = densities(&fs, &f1, idx);
            let c = densest(&on_h2);
            let drift = on_h1.iter().zip(&on_h2).any(|(a, b)| (a - b).abs() > params.zeta);
            if drift {
                Action::FullRecolour { colour: c }
            } else {
                let low: Vec<u8> = on_h2
                    .iter()
                    .enumerate()
                    .filter(|(_, d)| *d < &params.low_density)
                    .map(|(i, _)| i as u8 + 1)
                    .filter(|&i| i != c)
                    .collect();
                if low.is_empty() {
                    Action::Unchanged
                } else {
                    Action::LowDensityMerge { from: low, to: c }
                }
            }
        };
        actions.push(CosetAction { u: u.clone(), action });
    }

    let doc = PlanDoc {
        h1: h1.clone(),
        actions: actions.clone(),
        changed_count: 0,
        codims,
    };
    let result = replay(&doc, phi)?;
    let changed_count = phi.hamming(&result) as u64;

    // exact accounting
    let size = rational::integer(space.size() as i64);
    let changed = rational::integer(changed_count as i64);
    let budget = (&eps * rational::ratio(3, 4) + rational::inverse_power(p, codims.d1)) * &size;
    let accounting = changed <= budget;
    let within_epsilon = changed <= &eps * &size;

    // survivors and regularity on H_3 + u + z_j
    let mut dense_survivors = true;
    let mut regular_subcosets = true;
    for u in &elements {
        let idx = u.index();
        let mut present = vec![false; r as usize];
        for x in f1.points(idx) {
            present[result.colour(x) as usize - 1] = true;
        }
        for &zj in &z {
            let rep = space.add(idx, zj);
            let d = densities(&fs, &f3, rep);
            for (i, &here) in present.iter().enumerate() {
                if here && d[i] < params.delta {
                    dense_survivors = false;
                }
            }
            regular_subcosets &= fs
                .iter()
                .all(|f| f3.uniformity(f, rep).is_epsilon_uniform(&eps));
        }
    }
    let checks = PlanChecks {
        accounting,
        within_epsilon,
        dense_survivors,
        regular_subcosets,
    };
    if !(accounting && within_epsilon && dense_survivors) {
        return Err(Error::SelectionFailed(format!(
            "recolouring failed validation: accounting={accounting} within_epsilon={within_epsilon} \
             dense_survivors={dense_survivors} (changed {changed_count} of {})",
            space.size()
        )));
    }
    Ok(RecolouringPlan {
        original: phi.clone(),
        result,
        changed_count,
        actions,
        certificate,
        two_level,
        multi,
        params,
        codims,
        checks,
    })
}

/// Re-measures the dense-survivor property of a plan: for every `u` and
/// `j`, each colour present in `H_1 + u` under the result has density at
/// least δ on `H_3 + u + z_j` under the original.
pub fn survivors_are_dense(plan: &RecolouringPlan) -> Result<bool> {
    let space: Space = plan.original.space();
    let f3 = Frame::new(space, plan.h3())?;
    let f1 = Frame::new(space, plan.h1())?;
    let fs = plan.original.indicators();
    for u in plan.u_elements()? {
        let idx = u.index();
        let mut present = vec![false; plan.original.r() as usize];
        for x in f1.points(idx) {
            present[plan.result.colour(x) as usize - 1] = true;
        }
        for zj in &plan.multi.z {
            let rep = space.add(idx, zj.index());
            for (i, &here) in present.iter().enumerate() {
                if here && f3.mean(&fs[i], rep) < plan.params.delta {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
