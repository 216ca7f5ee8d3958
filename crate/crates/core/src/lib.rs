//! Exact tools for arithmetic patterns over F_p^n: linear algebra over small
//! prime fields, coset Fourier analysis, pattern counting, regularity
//! partitions and the induced removal pipeline.

pub mod counting;
pub mod error;
pub mod fourier;
pub mod io;
pub mod linalg;
pub mod patterns;
pub mod rational;
pub mod regularity;
pub mod removal;

pub use error::{Error, Result};
pub use fourier::{BoundedFunction, CosetSpectrum, ExactFunction, UniformityReport};
pub use linalg::{Complement, Coset, FieldMatrix, PointVector, PrimeField, Space, Subspace};
pub use rational::Rational;
