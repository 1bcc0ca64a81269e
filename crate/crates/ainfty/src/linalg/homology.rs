use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::solve::generates;
use super::{
    kernel_basis, solve_over, Factorization, IntMatrix,
    LinalgError, Ring, Solution,
};

/// Finitely generated abelian group `Z^free_rank + sum Z/t_i`.
///
/// Over F2 the same type records a vector space dimension in `free_rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FinAbGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FinAbGroup {
    pub fn free(rank: usize) -> Self {
        FinAbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Cochain complex of finite free modules; `d^k : C^k -> C^{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ring: Ring,
    basis: BTreeMap<i64, Vec<String>>,
    diffs: BTreeMap<i64, IntMatrix>,
}

pub type ChainComplexZ = ChainComplex;

impl ChainComplex {
    /// Checks matrix shapes and `d^{k+1} d^k = 0` in every degree.
    pub fn new(
        ring: Ring,
        basis: BTreeMap<i64, Vec<String>>,
        diffs: BTreeMap<i64, IntMatrix>,
    ) -> Result<Self, LinalgError> {
        let c = Self::new_unchecked(ring, basis, diffs)?;
        c.check_d_squared()?;
        Ok(c)
    }

    /// Checks shapes only.
    pub fn new_unchecked(
        ring: Ring,
        basis: BTreeMap<i64, Vec<String>>,
        diffs: BTreeMap<i64, IntMatrix>,
    ) -> Result<Self, LinalgError> {
        let mut c = ChainComplex {
            ring,
            basis,
            diffs: BTreeMap::new(),
        };
        for (k, m) in diffs {
            let (rows, cols) = (c.dim(k + 1), c.dim(k));
            if m.rows() != rows || m.cols() != cols {
                return Err(LinalgError::ShapeMismatch {
                    degree: k,
                    expected: (rows, cols),
                    found: (m.rows(), m.cols()),
                });
            }
            let m = match ring {
                Ring::Integers => m,
                Ring::F2 => m.reduce_mod2(),
            };
            if !m.is_zero() {
                c.diffs.insert(k, m);
            }
        }
        Ok(c)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self, k: i64) -> usize {
        self.basis.get(&k).map_or(0, |b| b.len())
    }

    pub fn basis(&self, k: i64) -> &[String] {
        self.basis.get(&k).map_or(&[], |b| b.as_slice())
    }

    /// Degrees with nonzero components, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        self.basis
            .iter()
            .filter(|(_, b)| !b.is_empty())
            .map(|(&k, _)| k)
            .collect()
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let ds = self.degrees();
        Some((*ds.first()?, *ds.last()?))
    }

    pub fn differential(&self, k: i64) -> IntMatrix {
        self.diffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.dim(k + 1), self.dim(k)))
    }

    pub fn total_dim(&self) -> usize {
        self.basis.values().map(|b| b.len()).sum()
    }

    pub fn check_d_squared(&self) -> Result<(), LinalgError> {
        for (&k, dk) in &self.diffs {
            if let Some(dk1) = self.diffs.get(&(k + 1)) {
                let mut sq = dk1.mul(dk);
                if self.ring == Ring::F2 {
                    sq = sq.reduce_mod2();
                }
                if !sq.is_zero() {
                    return Err(LinalgError::NotAComplex { degree: k });
                }
            }
        }
        Ok(())
    }
}

/// `ker d^k / im d^{k-1}`.
pub fn homology(c: &ChainComplex, k: i64) -> Result<FinAbGroup, LinalgError> {
    let dk = c.differential(k);
    let dprev = c.differential(k - 1);
    let mut sq = dk.mul(&dprev);
    if c.ring() == Ring::F2 {
        sq = sq.reduce_mod2();
    }
    if !sq.is_zero() {
        return Err(LinalgError::NotAComplex { degree: k - 1 });
    }
    let ring = c.ring();
    let rk = Factorization::new(ring, &dk).rank();
    let factors = Factorization::new(ring, &dprev).invariant_factors();
    let torsion: Vec<BigInt> = factors.iter().filter(|d| !d.is_one()).cloned().collect();
    Ok(FinAbGroup {
        free_rank: c.dim(k) - rk - factors.len(),
        torsion,
    })
}

/// Homology in degree `k` as `coker(relations)`, written in coordinates of a
/// basis of the cycle lattice.
#[derive(Clone, Debug)]
pub struct HomologyPresentation {
    /// `dim C^k x z`, columns a basis of `ker d^k`.
    pub cycles: IntMatrix,
    /// `z x dim C^{k-1}`, coordinates of the boundaries.
    pub relations: IntMatrix,
}

fn cycle_coordinates(cycles: &Factorization, x: &[BigInt]) -> Vec<BigInt> {
    match cycles.solve(x).expect("shape") {
        Solution::Solution(y) => y,
        _ => panic!("vector is not a cycle"),
    }
}

pub fn presentation(c: &ChainComplex, k: i64) -> HomologyPresentation {
    let ring = c.ring();
    let cycles = kernel_basis(ring, &c.differential(k));
    let dprev = c.differential(k - 1);
    let fc = Factorization::new(ring, &cycles);
    let mut relations = IntMatrix::zeros(cycles.cols(), dprev.cols());
    for j in 0..dprev.cols() {
        let y = cycle_coordinates(&fc, &dprev.column(j));
        for (i, v) in y.into_iter().enumerate() {
            relations[(i, j)] = v;
        }
    }
    HomologyPresentation { cycles, relations }
}

/// Whether `x` lies in the image of `d^{k-1}`.
pub fn is_boundary(c: &ChainComplex, k: i64, x: &[BigInt]) -> bool {
    let d = c.differential(k - 1);
    matches!(solve_over(c.ring(), &d, x), Ok(Solution::Solution(_)))
}

/// Matrix of a degree-`shift` map `f : A^k -> B^{k+shift}` applied to cycles
/// then reduced to cycle coordinates of the target.
fn induced_on_cycles(a: &HomologyPresentation, b: &HomologyPresentation, ring: Ring, f: &IntMatrix) -> IntMatrix {
    let img = f.mul(&a.cycles);
    let fb = Factorization::new(ring, &b.cycles);
    let mut out = IntMatrix::zeros(b.cycles.cols(), a.cycles.cols());
    for j in 0..img.cols() {
        let y = cycle_coordinates(&fb, &img.column(j));
        for (i, v) in y.into_iter().enumerate() {
            out[(i, j)] = v;
        }
    }
    out
}

/// Whether `f : A^k -> B^{k+shift}` induces an isomorphism on homology.
/// `f` must be a chain map on the relevant degrees.
pub fn induced_map_is_iso(
    a: &ChainComplex,
    b: &ChainComplex,
    f: &IntMatrix,
    k: i64,
    shift: i64,
) -> bool {
    let ring = a.ring();
    let pa = presentation(a, k);
    let pb = presentation(b, k + shift);
    let fz = induced_on_cycles(&pa, &pb, ring, f);
    // surjective: image of f plus boundaries fills the cycle lattice
    let joint = fz.hcat(&pb.relations);
    let fj = Factorization::new(ring, &joint);
    if !generates(&fj, joint.rows()) {
        return false;
    }
    // injective: z with f(z) a boundary must itself be a boundary
    let ker = fj.kernel_basis();
    let rel = Factorization::new(ring, &pa.relations);
    let za = fz.cols();
    (0..ker.cols()).all(|j| {
        let z: Vec<BigInt> = (0..za).map(|i| ker[(i, j)].clone()).collect();
        z.iter().all(|v| v.is_zero()) || matches!(rel.solve(&z), Ok(Solution::Solution(_)))
    })
}

/// Whether `f` and `g` (both `A^k -> B^{k+shift}`) agree on homology.
pub fn maps_agree_on_homology(
    a: &ChainComplex,
    b: &ChainComplex,
    f: &IntMatrix,
    g: &IntMatrix,
    k: i64,
    shift: i64,
) -> bool {
    let cycles = kernel_basis(a.ring(), &a.differential(k));
    let diff = f.sub(g);
    let boundaries = Factorization::new(b.ring(), &b.differential(k + shift - 1));
    (0..cycles.cols()).all(|j| {
        let v: Vec<BigInt> = diff.mul_vec(&cycles.column(j)).into_iter().map(|x| b.ring().normalize(x)).collect();
        v.iter().all(|x| x.is_zero()) || matches!(boundaries.solve(&v), Ok(Solution::Solution(_)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("g{i}")).collect()
    }

    fn two_term(mult: i64) -> ChainComplex {
        let basis = BTreeMap::from([(0, labels(1)), (1, labels(1))]);
        let diffs = BTreeMap::from([(0, IntMatrix::from_i64(1, 1, &[mult]))]);
        ChainComplex::new(Ring::Integers, basis, diffs).unwrap()
    }

    #[test]
    fn zero_differential() {
        let c = ChainComplex::new(
            Ring::Integers,
            BTreeMap::from([(0, labels(3))]),
            BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(homology(&c, 0).unwrap(), FinAbGroup::free(3));
    }

    #[test]
    fn multiplication_by_two() {
        let c = two_term(2);
        assert_eq!(homology(&c, 0).unwrap(), FinAbGroup::free(0));
        assert_eq!(
            homology(&c, 1).unwrap(),
            FinAbGroup {
                free_rank: 0,
                torsion: vec![BigInt::from(2)]
            }
        );
    }

    #[test]
    fn isomorphism_is_acyclic() {
        let c = two_term(1);
        assert!(homology(&c, 0).unwrap().is_trivial());
        assert!(homology(&c, 1).unwrap().is_trivial());
    }

    #[test]
    fn not_a_complex_is_rejected() {
        let basis = BTreeMap::from([(0, labels(1)), (1, labels(1)), (2, labels(1))]);
        let diffs = BTreeMap::from([
            (0, IntMatrix::from_i64(1, 1, &[1])),
            (1, IntMatrix::from_i64(1, 1, &[1])),
        ]);
        assert_eq!(
            ChainComplex::new(Ring::Integers, basis, diffs),
            Err(LinalgError::NotAComplex { degree: 0 })
        );
    }

    #[test]
    fn f2_homology_sees_mod_two_cycles() {
        let basis = BTreeMap::from([(0, labels(1)), (1, labels(1))]);
        let diffs = BTreeMap::from([(0, IntMatrix::from_i64(1, 1, &[2]))]);
        let c = ChainComplex::new(Ring::F2, basis, diffs).unwrap();
        assert_eq!(homology(&c, 0).unwrap(), FinAbGroup::free(1));
        assert_eq!(homology(&c, 1).unwrap(), FinAbGroup::free(1));
    }

    #[test]
    fn iso_detection() {
        let c = two_term(2);
        let id = IntMatrix::identity(1);
        assert!(induced_map_is_iso(&c, &c, &id, 1, 0));
        let three = IntMatrix::from_i64(1, 1, &[3]);
        assert!(induced_map_is_iso(&c, &c, &three, 1, 0));
        let two = IntMatrix::from_i64(1, 1, &[2]);
        assert!(!induced_map_is_iso(&c, &c, &two, 1, 0));
        assert!(maps_agree_on_homology(&c, &c, &id, &three, 1, 0));
        assert!(!maps_agree_on_homology(&c, &c, &id, &two, 1, 0));
    }

    #[test]
    fn iso_on_free_part() {
        let c = ChainComplex::new(
            Ring::Integers,
            BTreeMap::from([(0, labels(2))]),
            BTreeMap::new(),
        )
        .unwrap();
        let swap = IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]);
        assert!(induced_map_is_iso(&c, &c, &swap, 0, 0));
        let sing = IntMatrix::from_i64(2, 2, &[1, 1, 1, 1]);
        assert!(!induced_map_is_iso(&c, &c, &sing, 0, 0));
        let det2 = IntMatrix::from_i64(2, 2, &[1, 1, -1, 1]);
        assert!(!induced_map_is_iso(&c, &c, &det2, 0, 0));
    }
}
