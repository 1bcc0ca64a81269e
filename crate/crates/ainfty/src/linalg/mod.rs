//! Exact integer linear algebra: Smith normal form, homology, integer solving.

#[cfg(test)]
mod gf2;
mod homology;
mod matrix;
mod smith;
mod solve;
mod sparse;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub use homology::{
    homology, induced_map_is_iso, is_boundary, maps_agree_on_homology, presentation, ChainComplex,
    ChainComplexZ, FinAbGroup, HomologyPresentation,
};
pub use matrix::IntMatrix;
pub use smith::{smith_normal_form, SmithDecomposition};
pub use sparse::Factorization;
pub use solve::{columns_generate, kernel_basis, rank_over, solve_integer, solve_over, Solution};

/// Coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Ring {
    #[default]
    Integers,
    F2,
}

impl Ring {
    pub fn normalize(self, x: BigInt) -> BigInt {
        match self {
            Ring::Integers => x,
            Ring::F2 => {
                if (&x % 2u32).is_zero() {
                    BigInt::zero()
                } else {
                    BigInt::one()
                }
            }
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Ring::Integers => "Z",
            Ring::F2 => "F2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("differential in degree {degree} has shape {found:?}, expected {expected:?}")]
    ShapeMismatch {
        degree: i64,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("d composed with d is nonzero starting in degree {degree}")]
    NotAComplex { degree: i64 },
}

/// Degree-`shift` map between complexes: `maps[k] : A^k -> B^{k+shift}`.
/// Missing degrees are zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedMap {
    pub shift: i64,
    pub maps: BTreeMap<i64, IntMatrix>,
}

impl GradedMap {
    pub fn new(shift: i64) -> Self {
        GradedMap {
            shift,
            maps: BTreeMap::new(),
        }
    }

    pub fn component(&self, a: &ChainComplex, b: &ChainComplex, k: i64) -> IntMatrix {
        self.maps
            .get(&k)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(b.dim(k + self.shift), a.dim(k)))
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let mut g = GradedMap::new(0);
        for k in c.degrees() {
            g.maps.insert(k, IntMatrix::identity(c.dim(k)));
        }
        g
    }

    /// `self` after `other`.
    pub fn compose(
        &self,
        other: &GradedMap,
        a: &ChainComplex,
        b: &ChainComplex,
        c: &ChainComplex,
    ) -> GradedMap {
        let mut g = GradedMap::new(self.shift + other.shift);
        for k in a.degrees() {
            let m = self
                .component(b, c, k + other.shift)
                .mul(&other.component(a, b, k));
            if !m.is_zero() {
                g.maps.insert(k, m);
            }
        }
        g
    }
}

/// A basis element where a chain-map identity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMapWitness {
    pub degree: i64,
    pub generator: usize,
    pub label: String,
    pub residual: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMapReport {
    pub shift: i64,
    pub failures: Vec<ChainMapWitness>,
}

impl ChainMapReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `d_B f - (-1)^shift f d_A = 0` on every basis element of `A`.
pub fn verify_chain_map(a: &ChainComplex, b: &ChainComplex, f: &GradedMap) -> ChainMapReport {
    let ring = a.ring();
    let sign = if f.shift.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let mut failures = Vec::new();
    for k in a.degrees() {
        let lhs = b.differential(k + f.shift).mul(&f.component(a, b, k));
        let rhs = f.component(a, b, k + 1).mul(&a.differential(k)).scale(&sign);
        let r = lhs.sub(&rhs);
        for j in 0..r.cols() {
            let col: Vec<BigInt> = r.column(j).into_iter().map(|x| ring.normalize(x)).collect();
            if col.iter().any(|x| !x.is_zero()) {
                failures.push(ChainMapWitness {
                    degree: k,
                    generator: j,
                    label: a.basis(k)[j].clone(),
                    residual: col,
                });
            }
        }
    }
    ChainMapReport {
        shift: f.shift,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex() -> ChainComplex {
        let basis = BTreeMap::from([
            (0, vec!["a".to_string()]),
            (1, vec!["b".to_string(), "c".to_string()]),
        ]);
        let diffs = BTreeMap::from([(0, IntMatrix::from_i64(2, 1, &[1, 2]))]);
        ChainComplex::new(Ring::Integers, basis, diffs).unwrap()
    }

    #[test]
    fn identity_and_zero_are_chain_maps() {
        let c = complex();
        assert!(verify_chain_map(&c, &c, &GradedMap::identity(&c)).passed());
        assert!(verify_chain_map(&c, &c, &GradedMap::new(0)).passed());
    }

    #[test]
    fn broken_map_reports_generator() {
        let c = complex();
        let mut f = GradedMap::identity(&c);
        f.maps.insert(1, IntMatrix::from_i64(2, 2, &[1, 0, 0, 2]));
        let rep = verify_chain_map(&c, &c, &f);
        assert!(!rep.passed());
        assert_eq!(rep.failures.len(), 1);
        assert_eq!(rep.failures[0].label, "a");
    }
}
