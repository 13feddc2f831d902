//! Exact computations with standard and good determinantal schemes.
//!
//! The crate is `no_std` (it needs `alloc`). It provides exact fields and sparse
//! polynomials ([`ring`]), reduced Groebner bases and ideal operations
//! ([`groebner`]), graded free modules with a degreewise linear-algebra oracle
//! ([`grading`]), ideals of minors together with the standard/good classifier and
//! the row-surgery constructions ([`determinantal`]), and the Eagon-Northcott and
//! Buchsbaum-Rim complexes with their certificates ([`complexes`]).

#![no_std]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod complexes;
pub mod determinantal;
pub mod error;
pub mod field;
pub mod grading;
pub mod groebner;
pub mod linalg;
pub mod matrix;
pub mod minors;
pub mod random;
pub mod ring;

pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use complexes::{ComplexKind, FreeComplex};
pub use determinantal::{ClassificationReport, DeterminantalPresentation, GeneralizedRowWitness};
pub use groebner::{DimensionReport, Height, IdealBasis};
pub use matrix::{GradedFreeModule, HomogeneousMatrix};
pub use ring::{Homogeneity, Monomial, MonomialOrder, PolyRing, Polynomial, Ring};
