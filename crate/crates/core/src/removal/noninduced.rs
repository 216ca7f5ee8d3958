use serde::Serialize;

use crate::counting::{lambda_forms, Density};
use crate::error::{Error, Result};
use crate::fourier::{BoundedFunction, Frame};
use crate::linalg::Subspace;
use crate::patterns::{complexity_is_one, Complexity, LinearSystem};
use crate::rational::{self, Rational};
use crate::regularity::{arl, RegularPartition};

#[derive(Clone, Debug, Serialize)]
pub struct NoninducedReport {
    pub partition: RegularPartition,
    pub complexity: Complexity,
    pub original_size: u64,
    pub removed: u64,
    pub lambda_before: Density,
    pub lambda_after: Density,
    /// Cosets dropped for irregularity and for low density.
    pub irregular_cosets: usize,
    pub sparse_cosets: usize,
    #[serde(with = "rational::serde_str")]
    pub epsilon: Rational,
}

/// Regularises `1_A` and removes every element lying in an ε-irregular coset
/// or in a coset where `A` has density below ε/2. Complexity above one is
/// rejected; the inconclusive verdict for small p is allowed through.
pub fn noninduced_removal(a_set: &BoundedFunction, s: &LinearSystem, eps: &Rational) -> Result<(BoundedFunction, NoninducedReport)> {
    let space = a_set.space();
    if a_set.numerators().iter().any(|&v| v != 0 && v != a_set.denom()) {
        return Err(Error::invalid("set must be a 0/1 indicator"));
    }
    if s.field() != space.field() {
        return Err(Error::FieldMismatch(s.field().p(), space.p()));
    }
    let complexity = complexity_is_one(s);
    if complexity == Complexity::No {
        return Err(Error::invalid("system does not have complexity one"));
    }
    let full = Subspace::full(space.field(), space.n());
    let partition = arl(&[a_set], eps, &full, space.n())?;
    let h = &partition.subspace;
    let frame = Frame::new(space, h)?;
    let half = eps / rational::integer(2);
    let mut keep = vec![false; space.size()];
    let mut irregular_cosets = 0;
    let mut sparse_cosets = 0;
    for rep in h.coset_reps()? {
        let idx = rep.index();
        if frame.uniformity(a_set, idx).exceeds(eps) {
            irregular_cosets += 1;
        } else if frame.mean(a_set, idx) < half {
            sparse_cosets += 1;
        } else {
            for x in frame.points(idx) {
                keep[x] = true;
            }
        }
    }
    let out = BoundedFunction::indicator(space, |x| keep[x] && a_set.numerators()[x] != 0);
    let size = |f: &BoundedFunction| f.numerators().iter().filter(|&&v| v != 0).count() as u64;
    let original_size = size(a_set);
    let forms = vec![a_set; s.m()];
    let lambda_before = lambda_forms(&forms, s)?;
    let forms = vec![&out; s.m()];
    let lambda_after = lambda_forms(&forms, s)?;
    let report = NoninducedReport {
        complexity,
        original_size,
        removed: original_size - size(&out),
        lambda_before,
        lambda_after,
        irregular_cosets,
        sparse_cosets,
        epsilon: eps.clone(),
        partition,
    };
    Ok((out, report))
}
