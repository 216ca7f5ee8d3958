use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::space::{check_cap, max_points, pow_u128};
use super::{FieldMatrix, PointVector, PrimeField, Space};
use crate::error::{Error, Result};

/// A subspace of F_p^n stored by its canonical RREF basis, so equality of
/// subspaces is equality of basis tables.
#[derive(Clone)]
pub struct Subspace {
    field: PrimeField,
    n: usize,
    basis: FieldMatrix,
    pivots: Vec<usize>,
    perp: OnceLock<Arc<Subspace>>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.n == other.n && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl std::hash::Hash for Subspace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.basis.hash(state);
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace")
            .field("field", &self.field)
            .field("n", &self.n)
            .field("basis", &format_args!("{}", self.basis))
            .finish()
    }
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SubspaceDoc {
            p: self.field.p(),
            n: self.n,
            basis: self.basis.row_vecs(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = SubspaceDoc::deserialize(d)?;
        let field = PrimeField::new(u32::from(doc.p)).map_err(serde::de::Error::custom)?;
        let rows: Vec<Vec<i64>> = doc
            .basis
            .iter()
            .map(|r| r.iter().map(|&v| i64::from(v)).collect())
            .collect();
        let m = FieldMatrix::from_rows_with_cols(field, doc.n, &rows).map_err(serde::de::Error::custom)?;
        Ok(Subspace::from_matrix(&m))
    }
}

#[derive(Serialize, Deserialize)]
struct SubspaceDoc {
    p: u8,
    n: usize,
    basis: Vec<Vec<u8>>,
}

impl Subspace {
    /// The row space of `m`.
    pub fn from_matrix(m: &FieldMatrix) -> Self {
        let rref = m.rref();
        let basis = m.nonzero_rref();
        Subspace {
            field: m.field(),
            n: m.cols(),
            basis,
            pivots: rref.pivots,
            perp: OnceLock::new(),
        }
    }

    pub fn span(field: PrimeField, n: usize, vectors: &[PointVector]) -> Result<Self> {
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            check_point(field, n, v)?;
            rows.push(v.coords().to_vec());
        }
        Ok(Self::from_matrix(&FieldMatrix::from_raw_rows(field, n, &rows)))
    }

    pub fn full(field: PrimeField, n: usize) -> Self {
        Self::from_matrix(&FieldMatrix::identity(field, n))
    }

    pub fn zero(field: PrimeField, n: usize) -> Self {
        Self::from_matrix(&FieldMatrix::zeros(field, 0, n))
    }

    /// `{x : x_i = 0 for i < codim}`.
    pub fn coordinate(field: PrimeField, n: usize, codim: usize) -> Self {
        let rows: Vec<Vec<u8>> = (codim..n)
            .map(|i| {
                let mut v = vec![0u8; n];
                v[i] = 1;
                v
            })
            .collect();
        Self::from_matrix(&FieldMatrix::from_raw_rows(field, n, &rows))
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    #[inline]
    pub fn codim(&self) -> usize {
        self.n - self.dim()
    }

    pub fn basis(&self) -> &FieldMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<PointVector> {
        (0..self.dim())
            .map(|r| PointVector::from_raw(self.field, self.basis.row(r).to_vec()))
            .collect()
    }

    /// Basis vectors as dense point indices.
    pub fn basis_indices(&self) -> Vec<usize> {
        self.basis_vectors().iter().map(PointVector::index).collect()
    }

    /// `|self| = p^dim`, saturating.
    pub fn cardinality(&self) -> u128 {
        pow_u128(self.field.p(), self.dim())
    }

    /// `H^⊥`, computed once and cached.
    pub fn perp(&self) -> &Subspace {
        self.perp.get_or_init(|| {
            let k = self.basis.kernel_basis();
            let k = if k.cols() == self.n {
                k
            } else {
                FieldMatrix::zeros(self.field, 0, self.n)
            };
            Arc::new(Subspace::from_matrix(&k))
        })
    }

    pub fn contains(&self, x: &PointVector) -> bool {
        let perp = self.perp();
        (0..perp.dim()).all(|r| self.field.dot(perp.basis.row(r), x.coords()) == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        let stacked = self.perp().basis.stack(&other.perp().basis)?;
        Ok(Subspace::from_matrix(&stacked).perp().clone())
    }

    /// `self ∩ ⟨r⟩^⊥`.
    pub fn intersect_annihilator(&self, r: &PointVector) -> Result<Subspace> {
        check_point(self.field, self.n, r)?;
        let line = Subspace::span(self.field, self.n, std::slice::from_ref(r))?;
        self.intersect(line.perp())
    }

    /// `self + other`.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        Ok(Subspace::from_matrix(&self.basis.stack(&other.basis)?))
    }

    /// The representative of `x + self` with zeros at every pivot column of
    /// the basis.
    pub fn canonical_rep(&self, x: &PointVector) -> PointVector {
        let f = self.field;
        let mut v = x.coords().to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let k = v[pc];
            if k != 0 {
                for (c, b) in v.iter_mut().zip(self.basis.row(r)) {
                    *c = f.sub(*c, f.mul(k, *b));
                }
            }
        }
        PointVector::from_raw(f, v)
    }

    /// All members, lexicographic in basis coefficients, subject to the
    /// global cap.
    pub fn enumerate(&self) -> Result<impl Iterator<Item = PointVector> + '_> {
        self.enumerate_with_cap(max_points())
    }

    pub fn enumerate_with_cap(&self, cap: u64) -> Result<impl Iterator<Item = PointVector> + '_> {
        check_cap(self.cardinality(), cap)?;
        let p = self.field.p();
        let dim = self.dim();
        let total = self.cardinality() as usize;
        Ok((0..total).map(move |k| {
            // coefficient digits, first basis vector most significant
            let mut coeffs = vec![0u8; dim];
            let mut rest = k;
            for c in coeffs.iter_mut().rev() {
                *c = (rest % p as usize) as u8;
                rest /= p as usize;
            }
            self.combine(&coeffs)
        }))
    }

    /// Member indices in the same order as [`Subspace::enumerate`].
    pub fn member_indices(&self, space: &Space) -> Result<Vec<usize>> {
        check_cap(self.cardinality(), max_points())?;
        let gens: Vec<Vec<usize>> = self.basis_indices().into_iter().map(|i| vec![i]).collect();
        let mut out = Vec::with_capacity(self.cardinality() as usize);
        space.for_each_combination(&[0], &gens, |z| {
            out.push(z[0]);
            true
        });
        Ok(out)
    }

    /// `Σ coeffs[i] · basis[i]`.
    pub fn combine(&self, coeffs: &[u8]) -> PointVector {
        let f = self.field;
        let mut v = vec![0u8; self.n];
        for (r, &a) in coeffs.iter().enumerate() {
            if a != 0 {
                for (c, b) in v.iter_mut().zip(self.basis.row(r)) {
                    *c = f.add(*c, f.mul(a, *b));
                }
            }
        }
        PointVector::from_raw(f, v)
    }

    /// Coordinates of a member with respect to the RREF basis: read off the
    /// pivot columns.
    pub fn coefficients(&self, x: &PointVector) -> Vec<u8> {
        self.pivots.iter().map(|&pc| x.coords()[pc]).collect()
    }

    /// A seeded random complement `U` with `U ⊕ self = F_p^n`.
    pub fn complement(&self, seed: u64) -> Complement {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = self.field.p();
        let mut current = self.basis.clone();
        let mut chosen: Vec<Vec<u8>> = Vec::new();
        while current.rows() < self.n {
            let v: Vec<u8> = (0..self.n).map(|_| rng.gen_range(0..p)).collect();
            let trial = current
                .stack(&FieldMatrix::from_raw_rows(self.field, self.n, std::slice::from_ref(&v)))
                .expect("same width");
            if trial.rank() > current.rows() {
                current = trial;
                chosen.push(v);
            }
        }
        Complement {
            of: self.clone(),
            basis: FieldMatrix::from_raw_rows(self.field, self.n, &chosen),
        }
    }

    /// A deterministic complement of `inner` inside `self`, built from the
    /// basis rows of `self` that are independent of `inner`.
    pub fn relative_complement(&self, inner: &Subspace) -> Result<Complement> {
        self.same_ambient(inner)?;
        if !self.contains_subspace(inner) {
            return Err(Error::NotContained);
        }
        let mut current = inner.basis.clone();
        let mut chosen = Vec::new();
        for r in 0..self.dim() {
            let v = self.basis.row(r).to_vec();
            let trial = current.stack(&FieldMatrix::from_raw_rows(self.field, self.n, std::slice::from_ref(&v)))?;
            if trial.rank() > current.rows() {
                current = trial;
                chosen.push(v);
            }
        }
        Ok(Complement {
            of: inner.clone(),
            basis: FieldMatrix::from_raw_rows(self.field, self.n, &chosen),
        })
    }

    /// Canonical representatives of the cosets of `self` inside `ambient`,
    /// in lexicographic order.
    pub fn coset_reps_within(&self, ambient: &Subspace) -> Result<Vec<PointVector>> {
        self.same_ambient(ambient)?;
        if !ambient.contains_subspace(self) {
            return Err(Error::NotContained);
        }
        // canonical_rep is a linear projection; its image of `ambient` is
        // exactly the set of representatives.
        let projected: Vec<PointVector> = ambient.basis_vectors().iter().map(|v| self.canonical_rep(v)).collect();
        let reps = Subspace::span(self.field, self.n, &projected)?;
        let mut out: Vec<PointVector> = reps.enumerate()?.collect();
        out.sort();
        Ok(out)
    }

    pub fn coset_reps(&self) -> Result<Vec<PointVector>> {
        self.coset_reps_within(&Subspace::full(self.field, self.n))
    }

    fn same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.p(), other.field.p()));
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }
}

pub(crate) fn check_point(field: PrimeField, n: usize, x: &PointVector) -> Result<()> {
    if x.field() != field {
        return Err(Error::FieldMismatch(field.p(), x.field().p()));
    }
    if x.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.n(),
        });
    }
    Ok(())
}

/// `H + c`, stored with its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coset {
    subspace: Subspace,
    rep: PointVector,
}

impl Coset {
    pub fn new(subspace: &Subspace, x: &PointVector) -> Result<Self> {
        check_point(subspace.field, subspace.n, x)?;
        Ok(Coset {
            rep: subspace.canonical_rep(x),
            subspace: subspace.clone(),
        })
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn rep(&self) -> &PointVector {
        &self.rep
    }

    pub fn contains(&self, x: &PointVector) -> bool {
        self.subspace.contains(&x.sub(&self.rep))
    }

    /// Whether `self ⊆ outer`.
    pub fn is_within(&self, outer: &Coset) -> bool {
        outer.subspace.contains_subspace(&self.subspace) && outer.contains(&self.rep)
    }

    /// Member indices, ordered by basis coefficients (the first basis vector
    /// is the most significant digit).
    pub fn member_indices(&self, space: &Space) -> Result<Vec<usize>> {
        let rep = self.rep.index();
        Ok(self
            .subspace
            .member_indices(space)?
            .into_iter()
            .map(|h| space.add(rep, h))
            .collect())
    }

    pub fn len(&self) -> u128 {
        self.subspace.cardinality()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A complement `U` of a subspace `H`, with `U ⊕ H = F_p^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complement {
    of: Subspace,
    basis: FieldMatrix,
}

impl Complement {
    pub fn of(&self) -> &Subspace {
        &self.of
    }

    pub fn basis(&self) -> &FieldMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis_vectors(&self) -> Vec<PointVector> {
        (0..self.basis.rows())
            .map(|r| PointVector::from_raw(self.of.field, self.basis.row(r).to_vec()))
            .collect()
    }

    /// `Σ coeffs[i] · basis[i]`.
    pub fn combine(&self, coeffs: &[u8]) -> PointVector {
        let f = self.of.field;
        let mut v = vec![0u8; self.of.n];
        for (r, &a) in coeffs.iter().enumerate() {
            for (c, b) in v.iter_mut().zip(self.basis.row(r)) {
                *c = f.add(*c, f.mul(a, *b));
            }
        }
        PointVector::from_raw(f, v)
    }

    /// All elements of `span(U)`, lexicographic in the coefficients.
    pub fn elements(&self) -> Result<Vec<PointVector>> {
        let p = self.of.field.p();
        let dim = self.dim();
        check_cap(pow_u128(p, dim), max_points())?;
        let total = pow_u128(p, dim) as usize;
        Ok((0..total)
            .map(|k| {
                let mut coeffs = vec![0u8; dim];
                let mut rest = k;
                for c in coeffs.iter_mut().rev() {
                    *c = (rest % p as usize) as u8;
                    rest /= p as usize;
                }
                self.combine(&coeffs)
            })
            .collect())
    }

    /// Splits `y = u + h` with `u ∈ span(U)` and `h ∈ H`.
    pub fn decompose(&self, y: &PointVector) -> Result<(PointVector, PointVector)> {
        check_point(self.of.field, self.of.n, y)?;
        // Solve [U; H]^T · coeffs = y.
        let stacked = self.basis.stack(self.of.basis())?;
        let coeffs = stacked
            .transpose()
            .solve(y.coords())
            .ok_or_else(|| Error::invalid("complement does not span the ambient space"))?;
        let u = self.combine(&coeffs[..self.dim()]);
        Ok((u.clone(), y.sub(&u)))
    }

    /// Rank of the stacked bases; equals n exactly when this is a complement.
    pub fn stacked_rank(&self) -> usize {
        self.basis.stack(self.of.basis()).map(|m| m.rank()).unwrap_or(0)
    }
}

/// Checks `Im(a)^⊥ = ker(aᵀ)` by enumeration inside `F_p^n`, where `a` is an
/// `n × cols` matrix.
pub fn orthogonality_duality_check(a: &FieldMatrix, n: usize) -> Result<bool> {
    if a.rows() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.rows(),
        });
    }
    let f = a.field();
    let space_size = pow_u128(f.p(), n);
    let domain_size = pow_u128(f.p(), a.cols());
    check_cap(space_size.saturating_mul(domain_size.max(1)), max_points().saturating_mul(16))?;
    let ambient = Space::new(f, n)?;
    let domain = Space::new(f, a.cols())?;

    let image: BTreeSet<Vec<u8>> = (0..domain.size()).map(|x| a.mul_vec(&domain.coords(x))).collect();
    let image: Vec<Vec<u8>> = image.into_iter().collect();
    let at = a.transpose();

    for v in 0..ambient.size() {
        let v = ambient.coords(v);
        let in_perp = image.iter().all(|w| f.dot(&v, w) == 0);
        let in_kernel = at.mul_vec(&v).iter().all(|&c| c == 0);
        if in_perp != in_kernel {
            return Ok(false);
        }
    }
    Ok(true)
}
