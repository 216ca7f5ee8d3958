use serde::Serialize;

use super::Colouring;
use crate::error::{Error, Result};
use crate::linalg::{check_cap, max_points, pow_u128, FieldMatrix, PointVector, Subspace};
use crate::patterns::kernel_tuple_generators;

/// Outcome of a monochromatic-solution search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonochromaticSearch {
    /// Number of monochromatic solutions passing the filter.
    pub count: u64,
    /// The first `limit` such solutions in enumeration order.
    pub solutions: Vec<Vec<PointVector>>,
}

/// Visits each `z ∈ ker(a) ∩ U^m` that is monochromatic under `phi` and
/// passes `filter`. Stops early when `visit` returns false.
pub fn for_each_monochromatic(
    phi: &Colouring,
    a: &FieldMatrix,
    domain: &Subspace,
    mut filter: impl FnMut(&[usize]) -> bool,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<()> {
    let space = phi.space();
    if a.field() != space.field() || domain.field() != space.field() {
        return Err(Error::FieldMismatch(space.p(), a.field().p()));
    }
    if domain.n() != space.n() {
        return Err(Error::DimensionMismatch {
            expected: space.n(),
            found: domain.n(),
        });
    }
    let kernel_dim = a.cols() - a.rank();
    check_cap(pow_u128(space.p(), kernel_dim * domain.dim()), max_points())?;
    let gens = kernel_tuple_generators(&space, a, &domain.basis_indices());
    space.for_each_combination(&vec![0; a.cols()], &gens, |z| {
        let c = phi.colour(z[0]);
        if z.iter().all(|&x| phi.colour(x) == c) && filter(z) {
            return visit(z);
        }
        true
    });
    Ok(())
}

/// Counts monochromatic solutions of `a·z = 0` with entries in `domain`,
/// keeping the first `limit` of them.
pub fn monochromatic_solutions(
    phi: &Colouring,
    a: &FieldMatrix,
    domain: &Subspace,
    filter: impl FnMut(&[usize]) -> bool,
    limit: usize,
) -> Result<MonochromaticSearch> {
    let space = phi.space();
    let mut out = MonochromaticSearch {
        count: 0,
        solutions: Vec::new(),
    };
    for_each_monochromatic(phi, a, domain, filter, |z| {
        out.count += 1;
        if out.solutions.len() < limit {
            out.solutions.push(z.iter().map(|&x| space.point(x)).collect());
        }
        true
    })?;
    Ok(out)
}

/// The first monochromatic solution with every entry nonzero.
pub fn first_nonzero_monochromatic(phi: &Colouring, a: &FieldMatrix) -> Result<Option<Vec<PointVector>>> {
    let space = phi.space();
    let full = Subspace::full(space.field(), space.n());
    let mut found = None;
    for_each_monochromatic(
        phi,
        a,
        &full,
        |z| z.iter().all(|&x| x != 0),
        |z| {
            found = Some(z.iter().map(|&x| space.point(x)).collect());
            false
        },
    )?;
    Ok(found)
}
