use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::matrix::IntMatrix;
use crate::qz::QZ;
use crate::snf::smith_normal_form;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveError {
    DimensionMismatch { expected: usize, got: usize },
    NoSolution,
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            SolveError::NoSolution => write!(f, "no solution"),
        }
    }
}

impl std::error::Error for SolveError {}

/// Solves `A x = b` over the integers.
///
/// The returned solution is canonical: in the Smith coordinates `y = V^{-1} x`
/// every free coordinate is zero, so the same input always gives the same
/// output.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Vec<BigInt>, SolveError> {
    if b.len() != a.rows() {
        return Err(SolveError::DimensionMismatch {
            expected: a.rows(),
            got: b.len(),
        });
    }
    let s = smith_normal_form(a);
    let ub = s.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, v) in ub.iter().enumerate() {
        if i < s.rank() {
            let (q, r) = v.div_rem(&s.diag[i]);
            if !r.is_zero() {
                return Err(SolveError::NoSolution);
            }
            y[i] = q;
        } else if !v.is_zero() {
            return Err(SolveError::NoSolution);
        }
    }
    Ok(s.v.mul_vec(&y))
}

/// A basis of the integer kernel `{x : A x = 0}`, as a list of vectors.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = smith_normal_form(a);
    (s.rank()..a.cols()).map(|j| s.v.col(j)).collect()
}

/// Solves `A x = b` in `(Q/Z)^n` where `A` is an integer matrix and `b` is
/// given by rational representatives.
pub fn solve_mod_one(a: &IntMatrix, b: &[BigRational]) -> Result<Vec<QZ>, SolveError> {
    if b.len() != a.rows() {
        return Err(SolveError::DimensionMismatch {
            expected: a.rows(),
            got: b.len(),
        });
    }
    let s = smith_normal_form(a);
    let mut ub = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let mut acc = BigRational::zero();
        for k in 0..a.rows() {
            if !s.u[(i, k)].is_zero() {
                acc += BigRational::from_integer(s.u[(i, k)].clone()) * &b[k];
            }
        }
        ub.push(acc);
    }
    let mut y = vec![BigRational::zero(); a.cols()];
    for (i, v) in ub.iter().enumerate() {
        if i < s.rank() {
            y[i] = v / BigRational::from_integer(s.diag[i].clone());
        } else if !v.is_integer() {
            return Err(SolveError::NoSolution);
        }
    }
    let x = (0..a.cols())
        .map(|i| {
            let mut acc = BigRational::zero();
            for j in 0..a.cols() {
                if !s.v[(i, j)].is_zero() {
                    acc += BigRational::from_integer(s.v[(i, j)].clone()) * &y[j];
                }
            }
            QZ::from_rational(acc)
        })
        .collect();
    Ok(x)
}

/// Whether `v` lies in the integer span of the given generators.
pub fn in_span(gens: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    if gens.is_empty() {
        return v.iter().all(|x| x.is_zero());
    }
    let m = IntMatrix::from_columns(gens, v.len());
    solve_integer(&m, v).is_ok()
}
