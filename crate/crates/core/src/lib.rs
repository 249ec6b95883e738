//! Exact invariants of quantum groups at roots of unity.
//!
//! Starting from a semisimple root datum and a torsion quantum parameter the
//! crate computes the sublattice tower `lQ ⊆ X^Tan ⊆ X^Müg ⊆ X* ⊆ X`, the dual
//! root data, alternating twisting forms, small quantum group dimensions,
//! simple-module label groups and the finite R-matrix expansion. Everything is
//! exact: integers are arbitrary precision and roots of unity live in
//! cyclotomic fields.

pub mod centers;
pub mod cyclo;
pub mod error;
pub mod intlat;
pub mod invariants;
pub mod kappa;
pub mod qparam;
pub mod rmatrix;
pub mod rootdata;
pub mod twistcheck;

pub use error::{Error, Result};

/// Arbitrary-precision integer used throughout.
pub type Int = num_bigint::BigInt;
/// Exact rational number.
pub type Rat = num_rational::BigRational;

/// Shorthand for building an [`Int`] from a machine integer.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Shorthand for building a [`Rat`] from a machine fraction.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Builds a vector of [`Int`] from machine integers.
pub fn ivec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}
