//! Exact lattice arithmetic over the integers.
//!
//! Everything here is exact: integer matrices carry `BigInt` entries, `Q/Z`
//! values are reduced rationals in `[0, 1)` and cyclotomic numbers are
//! polynomials reduced modulo the cyclotomic polynomial.

pub mod abelian;
pub mod cyclotomic;
pub mod matrix;
pub mod qz;
pub mod snf;
pub mod solve;

pub use abelian::{AbHom, FGAbelian, Subquotient};
pub use cyclotomic::Cyclotomic;
pub use matrix::IntMatrix;
pub use qz::QZ;
pub use snf::{smith_normal_form, Snf};
pub use solve::{kernel_basis, solve_integer, solve_mod_one, SolveError};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Shorthand for building a `BigInt` from a machine integer.
pub fn bi(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Converts a slice of machine integers into a `BigInt` vector.
pub fn bvec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
