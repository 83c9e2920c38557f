//! Quasi-invariant polynomials in three variables over F2, F3 and Q.
//!
//! The crate computes graded components of the space of m-quasi-invariants
//! by exact linear algebra, compares them with closed-form Hilbert series,
//! builds explicit generating sets and classifies the cyclic S3-modules they
//! span.

pub mod coeff;
pub mod dense;
pub mod error;
pub mod generators;
pub mod hilbert;
pub mod linalg;
pub mod poly;
pub mod quasi;
pub mod renxu;

pub use coeff::{Fp, Integers, PrimeField, Rationals, Ring};
pub use error::{Error, Result};
pub use poly::{format_poly, parse_poly, Monomial, Perm, Poly};
