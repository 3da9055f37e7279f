//! Exact computations on pencils of quadrics.

pub mod constructions;
pub mod error;
pub mod field;
pub mod finite;
pub mod matrix;
pub mod pencil;
pub mod poly;
pub mod real;
pub mod sample;
pub mod sturm;
pub mod toric_galois;
pub mod univariate;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
