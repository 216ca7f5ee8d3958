use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::arl::{arl_within, space_of, RegularPartition};
use crate::error::{Error, Result};
use crate::fourier::{ExactFunction, Frame};
use crate::linalg::{check_cap, pow_u128, FieldMatrix, PointVector, Subspace};
use crate::patterns::{apply_matrix, kernel_tuple_generators};
use crate::rational::{self, Rational};

/// Cosets `H + z_1, …, H + z_m` inside `H_2` with `A·z = 0`, all ε-regular
/// and all carrying the same set of δ-dense functions.
#[derive(Clone, Debug, Serialize)]
pub struct MultiSubcosetSelection {
    pub partition: RegularPartition,
    pub h2: Subspace,
    pub a: FieldMatrix,
    pub z: Vec<PointVector>,
    /// `ψ(u)` for each coset rep `u` of `H` inside `H_2`: the functions
    /// (numbered from 1) whose mean on `H + u` is at least δ.
    pub psi: BTreeMap<String, Vec<u8>>,
    #[serde(with = "rational::serde_str")]
    pub epsilon: Rational,
    #[serde(with = "rational::serde_str")]
    pub delta: Rational,
}

impl MultiSubcosetSelection {
    pub fn subspace(&self) -> &Subspace {
        &self.partition.subspace
    }
}

fn psi_of<F: AsRef<ExactFunction>>(fs: &[F], frame: &Frame, rep: usize, delta: &Rational) -> Vec<u8> {
    fs.iter()
        .enumerate()
        .filter(|(_, f)| &frame.mean(f.as_ref(), rep) >= delta)
        .map(|(i, _)| i as u8 + 1)
        .collect()
}

/// Refines `h2` inside itself to an ε-regular `H`, labels each coset of `H`
/// in `h2` by ψ, and returns the first solution of `A·z = 0` (in the
/// enumeration order of `ker(A) ∩ W^m`, W a complement of `H` in `h2`) whose
/// cosets are all regular and share one ψ label.
pub fn multi_subcoset_select<F: AsRef<ExactFunction>>(
    fs: &[F],
    eps: &Rational,
    delta: &Rational,
    a: &FieldMatrix,
    h2: &Subspace,
    cap: u64,
) -> Result<MultiSubcosetSelection> {
    let space = space_of(fs, h2)?;
    let partition = arl_within(fs, eps, h2, h2, h2.dim())?;
    let h = partition.subspace.clone();
    let w = h2.relative_complement(&h)?;
    let frame = Frame::new(space, &h)?;

    let mut labels: HashMap<usize, (bool, Vec<u8>)> = HashMap::new();
    let mut psi = BTreeMap::new();
    for el in w.elements()? {
        let rep = el.index();
        let regular = fs
            .iter()
            .all(|f| frame.uniformity(f.as_ref(), rep).is_epsilon_uniform(eps));
        let label = psi_of(fs, &frame, rep, delta);
        psi.insert(el.to_string(), label.clone());
        labels.insert(rep, (regular, label));
    }

    let kernel_dim = a.cols() - a.rank();
    check_cap(pow_u128(space.p(), kernel_dim * w.dim()), cap)?;
    let basis: Vec<usize> = w.basis_vectors().iter().map(PointVector::index).collect();
    let gens = kernel_tuple_generators(&space, a, &basis);
    let mut found = None;
    space.for_each_combination(&vec![0; a.cols()], &gens, |z| {
        let first = &labels[&z[0]];
        let ok = z.iter().all(|x| {
            let l = &labels[x];
            l.0 && l.1 == first.1
        });
        if ok {
            found = Some(z.to_vec());
        }
        !ok
    });
    let z = found.ok_or_else(|| {
        Error::SelectionFailed(format!(
            "no regular ψ-monochromatic solution among {} cosets of a codimension-{} refinement",
            labels.len(),
            partition.codim_in_start
        ))
    })?;
    Ok(MultiSubcosetSelection {
        partition,
        h2: h2.clone(),
        a: a.clone(),
        z: z.iter().map(|&x| space.point(x)).collect(),
        psi,
        epsilon: eps.clone(),
        delta: delta.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelectionValidation {
    pub within_h2: bool,
    pub solves: bool,
    pub all_regular: bool,
    pub monochromatic: bool,
}

impl SelectionValidation {
    pub fn pass(&self) -> bool {
        self.within_h2 && self.solves && self.all_regular && self.monochromatic
    }
}

/// Re-measures a selection from scratch against the given functions.
pub fn validate_selection<F: AsRef<ExactFunction>>(
    sel: &MultiSubcosetSelection,
    fs: &[F],
    eps: &Rational,
    delta: &Rational,
) -> Result<SelectionValidation> {
    let h = sel.subspace();
    let space = space_of(fs, h)?;
    let frame = Frame::new(space, h)?;
    let z: Vec<usize> = sel.z.iter().map(PointVector::index).collect();
    let solves = z.len() == sel.a.cols() && apply_matrix(&space, &sel.a, &z).iter().all(|&v| v == 0);
    let within_h2 = sel.h2.contains_subspace(h) && sel.z.iter().all(|x| sel.h2.contains(x));
    let all_regular = z
        .iter()
        .all(|&x| fs.iter().all(|f| frame.uniformity(f.as_ref(), x).is_epsilon_uniform(eps)));
    let labels: Vec<Vec<u8>> = z.iter().map(|&x| psi_of(fs, &frame, x, delta)).collect();
    let monochromatic = labels.windows(2).all(|w| w[0] == w[1]);
    Ok(SelectionValidation {
        within_h2,
        solves,
        all_regular,
        monochromatic,
    })
}
