//! Exact linear algebra over F_p for small primes.

mod field;
mod matrix;
mod space;
mod subspace;

pub use field::PrimeField;
pub use matrix::{FieldMatrix, Rref};
pub use space::{max_points, PointVector, Space, DEFAULT_MAX_POINTS};
pub use subspace::{orthogonality_duality_check, Complement, Coset, Subspace};

pub(crate) use space::{check_cap, pow_u128};
pub(crate) use subspace::check_point;
