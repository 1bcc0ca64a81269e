use num_bigint::BigInt;
use num_traits::One;

use super::{Factorization, IntMatrix, LinalgError, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Solution(Vec<BigInt>),
    /// Solvable over the rationals but not over the integers.
    RationalOnly,
    Unsolvable,
}

impl Solution {
    pub fn vector(&self) -> Option<&[BigInt]> {
        match self {
            Solution::Solution(x) => Some(x),
            _ => None,
        }
    }
}

/// Solves `a * x = b` over the integers.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Solution, LinalgError> {
    solve_over(Ring::Integers, a, b)
}

pub fn solve_over(ring: Ring, a: &IntMatrix, b: &[BigInt]) -> Result<Solution, LinalgError> {
    if a.rows() != b.len() {
        return Err(LinalgError::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    Factorization::new(ring, a).solve(b)
}

pub fn rank_over(ring: Ring, a: &IntMatrix) -> usize {
    Factorization::new(ring, a).rank()
}

/// Columns form a basis of the kernel lattice (saturated over the integers).
pub fn kernel_basis(ring: Ring, a: &IntMatrix) -> IntMatrix {
    Factorization::new(ring, a).kernel_basis()
}

/// Whether the columns of `a` generate the whole coefficient module `R^rows`.
pub fn columns_generate(ring: Ring, a: &IntMatrix) -> bool {
    generates(&Factorization::new(ring, a), a.rows())
}

pub(super) fn generates(f: &Factorization, rows: usize) -> bool {
    f.rank() == rows && f.invariant_factors().iter().all(|d| d.is_one())
}
