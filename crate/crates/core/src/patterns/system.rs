use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{check_cap, max_points, pow_u128, FieldMatrix, PrimeField, Space};

/// A system of linear forms `L_1, …, L_m` in `l` variables, with its
/// coefficient matrix `M` (m × l) and dependency matrix `K`, whose rows span
/// `ker(Mᵀ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearSystem {
    field: PrimeField,
    l: usize,
    m: usize,
    forms: FieldMatrix,
    dependencies: FieldMatrix,
    rank_l: usize,
}

impl LinearSystem {
    /// Row `i` of `forms` holds the coefficients of `L_i`.
    pub fn build(field: PrimeField, forms: &[Vec<i64>]) -> Result<Self> {
        if forms.is_empty() {
            return Err(Error::invalid("a linear system needs at least one form"));
        }
        Ok(Self::from_forms(FieldMatrix::from_rows(field, forms)?))
    }

    pub fn from_forms(forms: FieldMatrix) -> Self {
        let dependencies = forms.transpose().kernel_basis();
        let rank_l = dependencies.rows();
        LinearSystem {
            field: forms.field(),
            l: forms.cols(),
            m: forms.rows(),
            forms,
            dependencies,
            rank_l,
        }
    }

    /// The system whose value tuples are exactly `ker(a)`: its forms are a
    /// parametrisation of that kernel.
    pub fn from_dependency(a: &FieldMatrix) -> Self {
        let forms = a.kernel_basis().transpose();
        let forms = if forms.rows() == a.cols() {
            forms
        } else {
            // ker(a) = {0}: a single dummy variable with zero coefficients
            FieldMatrix::zeros(a.field(), a.cols(), 1)
        };
        Self::from_forms(forms)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Number of variables.
    pub fn l(&self) -> usize {
        self.l
    }

    /// Number of forms.
    pub fn m(&self) -> usize {
        self.m
    }

    /// `M(L)`.
    pub fn forms(&self) -> &FieldMatrix {
        &self.forms
    }

    /// `K(L)`, canonical RREF.
    pub fn dependencies(&self) -> &FieldMatrix {
        &self.dependencies
    }

    /// Number of independent dependencies, `m − rank(M)`.
    pub fn rank_l(&self) -> usize {
        self.rank_l
    }

    pub fn rank_m(&self) -> usize {
        self.m - self.rank_l
    }

    /// `(L_1(x), …, L_m(x))` for `x ∈ (F_p^n)^l` given as point indices.
    pub fn evaluate(&self, space: &Space, x: &[usize]) -> Vec<usize> {
        apply_matrix(space, &self.forms, x)
    }

    /// Whether `K·z = 0`.
    pub fn is_value_tuple(&self, space: &Space, z: &[usize]) -> bool {
        apply_matrix(space, &self.dependencies, z).iter().all(|&v| v == 0)
    }

    /// `|ker K| = p^{n·rank M}` over F_p^n.
    pub fn kernel_size(&self, n: usize) -> u128 {
        pow_u128(self.field.p(), n * self.rank_m())
    }

    /// Visits every value tuple `z ∈ ker(K) ⊆ (F_p^n)^m`.
    pub fn for_each_value_tuple(&self, space: &Space, visit: impl FnMut(&[usize]) -> bool) -> Result<()> {
        check_cap(self.kernel_size(space.n()), max_points())?;
        let domain: Vec<usize> = (0..space.n()).map(|c| unit(space, c)).collect();
        let gens = kernel_tuple_generators(space, &self.dependencies, &domain);
        space.for_each_combination(&vec![0; self.m], &gens, visit);
        Ok(())
    }
}

/// Index of the coordinate vector `e_c`.
pub(crate) fn unit(space: &Space, c: usize) -> usize {
    (space.p() as usize).pow(c as u32)
}

/// `a·z` for a tuple of points `z`, one output point per row of `a`.
pub fn apply_matrix(space: &Space, a: &FieldMatrix, z: &[usize]) -> Vec<usize> {
    assert_eq!(a.cols(), z.len());
    (0..a.rows())
        .map(|r| {
            a.row(r)
                .iter()
                .zip(z)
                .fold(0, |acc, (&c, &x)| space.add(acc, space.scale(x, c)))
        })
        .collect()
}

/// Generators `b ⊗ w` of `ker(a) ∩ W^m`, one per kernel basis vector `b` of
/// `a` and basis point `w` of `W`.
pub fn kernel_tuple_generators(space: &Space, a: &FieldMatrix, domain_basis: &[usize]) -> Vec<Vec<usize>> {
    let kernel = a.kernel_basis();
    let mut gens = Vec::with_capacity(kernel.rows() * domain_basis.len());
    for t in 0..kernel.rows() {
        for &w in domain_basis {
            gens.push(kernel.row(t).iter().map(|&b| space.scale(w, b)).collect());
        }
    }
    gens
}

/// Enumerates both the value set of `s` and `ker(K)` over F_p^n and compares
/// them.
pub fn values_kernel_duality_check(s: &LinearSystem, n: usize) -> Result<bool> {
    let space = Space::new(s.field, n)?;
    let p = s.field.p();
    check_cap(pow_u128(p, n * s.l), max_points())?;
    check_cap(pow_u128(p, n * s.m), max_points())?;

    let mut values = HashSet::new();
    let domain_gens: Vec<Vec<usize>> = (0..s.l * n)
        .map(|k| {
            let mut g = vec![0; s.l];
            g[k / n] = unit(&space, k % n);
            g
        })
        .collect();
    space.for_each_combination(&vec![0; s.l], &domain_gens, |x| {
        values.insert(s.evaluate(&space, x));
        true
    });

    let mut kernel = HashSet::new();
    let tuple_gens: Vec<Vec<usize>> = (0..s.m * n)
        .map(|k| {
            let mut g = vec![0; s.m];
            g[k / n] = unit(&space, k % n);
            g
        })
        .collect();
    space.for_each_combination(&vec![0; s.m], &tuple_gens, |z| {
        if s.is_value_tuple(&space, z) {
            kernel.insert(z.to_vec());
        }
        true
    });
    Ok(values == kernel)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Complexity {
    Yes,
    No,
    Inconclusive,
}

/// Complexity-one test through the squares of the forms: yes when
/// `{L_1², …, L_m²}` is linearly independent. The criterion needs p ≥ 5; for
/// smaller p the answer is inconclusive.
pub fn complexity_is_one(s: &LinearSystem) -> Complexity {
    let f = s.field;
    if f.p() < 5 {
        return Complexity::Inconclusive;
    }
    let rows: Vec<Vec<i64>> = (0..s.m)
        .map(|i| {
            let c = s.forms.row(i);
            let mut out = Vec::new();
            for j in 0..s.l {
                for k in j..s.l {
                    let v = if j == k {
                        f.mul(c[j], c[j])
                    } else {
                        f.mul(2, f.mul(c[j], c[k]))
                    };
                    out.push(i64::from(v));
                }
            }
            out
        })
        .collect();
    let monomials = s.l * (s.l + 1) / 2;
    let squares = FieldMatrix::from_rows_with_cols(f, monomials, &rows).expect("uniform rows");
    if squares.rank() == s.m {
        Complexity::Yes
    } else {
        Complexity::No
    }
}
