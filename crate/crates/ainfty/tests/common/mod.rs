//! Brute-force oracles for the exact linear algebra: determinantal divisors
//! from all minors, and homology mod 2 by enumerating vectors.

#![allow(dead_code)]

use std::collections::BTreeMap;

use ainfty::linalg::{
    homology, smith_normal_form, ChainComplex, Factorization, FinAbGroup, IntMatrix, Ring, Solution,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub type Small = Vec<Vec<i64>>;

pub fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Small = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect())
        .collect()
}

/// Invariant factors from `d_k = gcd of k x k minors`, `s_k = d_k / d_{k-1}`.
pub fn oracle_factors(a: &Small, rows: usize, cols: usize) -> Vec<i64> {
    let mut out = Vec::new();
    let mut prev = 1i64;
    for k in 1..=rows.min(cols) {
        let mut g = 0i64;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Small = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j]).collect()).collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

pub fn to_matrix(a: &Small, rows: usize, cols: usize) -> IntMatrix {
    let flat: Vec<i64> = a.iter().flatten().copied().collect();
    IntMatrix::from_i64(rows, cols, &flat)
}

fn small(v: Vec<BigInt>) -> Vec<i64> {
    v.into_iter().map(|x| x.to_i64().unwrap()).collect()
}

pub fn check_snf(a: &Small, rows: usize, cols: usize) {
    let m = to_matrix(a, rows, cols);
    let expect = oracle_factors(a, rows, cols);
    let s = smith_normal_form(&m);
    assert_eq!(s.u.mul(&m).mul(&s.v), s.d, "{a:?}");
    assert_eq!(s.u.determinant().abs(), BigInt::from(1));
    assert_eq!(s.v.determinant().abs(), BigInt::from(1));
    for i in 0..rows {
        for j in 0..cols {
            assert!(i == j || s.d[(i, j)].is_zero());
        }
    }
    assert_eq!(small(s.invariant_factors()), expect, "{a:?}");
    assert_eq!(small(Factorization::new(Ring::Integers, &m).invariant_factors()), expect, "{a:?}");
}

fn random_small(rng: &mut StdRng, rows: usize, cols: usize, bound: i64) -> Small {
    (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect()).collect()
}

/// `count` random matrices up to 4 x 4 with entries in `-3..=3`.
pub fn smith_random(seed: u64, count: usize) {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut cases = 0;
    while cases < count {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let a = random_small(&mut rng, rows, cols, 3);
        check_snf(&a, rows, cols);
        cases += 1;
    }
}

/// Every 2 x 2 matrix with entries in `-2..=2`; returns the number of cases.
pub fn smith_all_two_by_two() -> usize {
    let mut n = 0;
    for a in -2..=2 {
        for b in -2..=2 {
            for c in -2..=2 {
                for d in -2..=2 {
                    check_snf(&vec![vec![a, b], vec![c, d]], 2, 2);
                    n += 1;
                }
            }
        }
    }
    n
}

/// All vectors of `F_2^n`.
fn f2_vectors(n: usize) -> Vec<Vec<i64>> {
    (0u32..1 << n).map(|s| (0..n).map(|i| (s >> i & 1) as i64).collect()).collect()
}

fn apply_mod2(a: &Small, x: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(x).map(|(u, v)| u * v).sum::<i64>().rem_euclid(2)).collect()
}

/// `dim H(C ⊗ F_2)` at the middle of `C0 -> C1 -> C2` by counting cycles and
/// boundaries.
fn brute_f2_middle(d0: &Small, d1: &Small, n0: usize, n1: usize) -> usize {
    let cycles = f2_vectors(n1).into_iter().filter(|x| apply_mod2(d1, x).iter().all(|&v| v == 0)).count();
    let mut boundaries: Vec<Vec<i64>> = f2_vectors(n0).iter().map(|x| apply_mod2(d0, x)).collect();
    boundaries.sort();
    boundaries.dedup();
    (cycles / boundaries.len()).trailing_zeros() as usize
}

/// Integer vectors `y` with `y d0 = 0`, entries in `-2..=2`.
fn left_annihilators(d0: &Small, n1: usize, n0: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut y = vec![-2i64; n1];
    loop {
        if y.iter().any(|&v| v != 0) && (0..n0).all(|j| (0..n1).map(|i| y[i] * d0[i][j]).sum::<i64>() == 0) {
            out.push(y.clone());
        }
        let mut i = 0;
        while i < n1 && y[i] == 2 {
            y[i] = -2;
            i += 1;
        }
        if i == n1 {
            return out;
        }
        y[i] += 1;
    }
}

fn basis(n: usize, tag: &str) -> Vec<String> {
    (0..n).map(|i| format!("{tag}{i}")).collect()
}

fn complex(ring: Ring, d0: &Small, d1: &Small, n: [usize; 3]) -> ChainComplex {
    let b = BTreeMap::from([(0, basis(n[0], "a")), (1, basis(n[1], "b")), (2, basis(n[2], "c"))]);
    let mut diffs = BTreeMap::new();
    if n[0] * n[1] > 0 {
        diffs.insert(0, to_matrix(d0, n[1], n[0]));
    }
    if n[1] * n[2] > 0 {
        diffs.insert(1, to_matrix(d1, n[2], n[1]));
    }
    ChainComplex::new(ring, b, diffs).unwrap()
}

/// Random three-term complexes; returns how many had nontrivial middle homology.
pub fn homology_random(seed: u64, count: usize) -> usize {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut nontrivial = 0;
    for _ in 0..count {
        let n0 = rng.gen_range(1..=4);
        let n1 = rng.gen_range(1..=4);
        let mut d0 = random_small(&mut rng, n1, n0, 3);
        // sparsify so that annihilators exist
        for row in d0.iter_mut() {
            for v in row.iter_mut() {
                if rng.gen_bool(0.4) {
                    *v = 0;
                }
            }
        }
        let ann = left_annihilators(&d0, n1, n0);
        let n2 = rng.gen_range(0..=ann.len().min(3));
        let d1: Small = (0..n2).map(|_| ann[rng.gen_range(0..ann.len())].clone()).collect();

        let cz = complex(Ring::Integers, &d0, &d1, [n0, n1, n2]);
        let h = homology(&cz, 1).unwrap();
        let f0 = oracle_factors(&d0, n1, n0);
        let rank1 = oracle_factors(&d1, n2, n1).len();
        let expect = FinAbGroup {
            free_rank: n1 - rank1 - f0.len(),
            torsion: f0.iter().filter(|&&t| t != 1).map(|&t| BigInt::from(t)).collect(),
        };
        assert_eq!(h, expect, "d0 = {d0:?}, d1 = {d1:?}");
        if !h.is_trivial() {
            nontrivial += 1;
        }

        let c2 = complex(Ring::F2, &d0, &d1, [n0, n1, n2]);
        let h2 = homology(&c2, 1).unwrap();
        assert_eq!(h2.free_rank, brute_f2_middle(&d0, &d1, n0, n1), "d0 = {d0:?}, d1 = {d1:?}");
        // universal coefficients: free part plus one copy per even torsion factor
        // of d0 and per even invariant factor of d1
        let even = |fs: &[i64]| fs.iter().filter(|&&t| t % 2 == 0).count();
        let f1 = oracle_factors(&d1, n2, n1);
        assert_eq!(h2.free_rank, expect.free_rank + even(&f0) + even(&f1));
    }
    nontrivial
}

pub fn solving_random(seed: u64, count: usize) {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..count {
        let rows = rng.gen_range(1..=3);
        let cols = rng.gen_range(1..=3);
        let a = random_small(&mut rng, rows, cols, 3);
        let b: Vec<i64> = (0..rows).map(|_| rng.gen_range(-4..=4)).collect();
        let m = to_matrix(&a, rows, cols);
        let bb: Vec<BigInt> = b.iter().map(|&v| BigInt::from(v)).collect();
        let sol = Factorization::new(Ring::Integers, &m).solve(&bb).unwrap();
        // any integer solution has a representative with small entries once the
        // kernel is used; search a box and fall back to the lattice statement
        let mut x = vec![-6i64; cols];
        let mut found = false;
        loop {
            if (0..rows).all(|i| (0..cols).map(|j| a[i][j] * x[j]).sum::<i64>() == b[i]) {
                found = true;
                break;
            }
            let mut i = 0;
            while i < cols && x[i] == 6 {
                x[i] = -6;
                i += 1;
            }
            if i == cols {
                break;
            }
            x[i] += 1;
        }
        match sol {
            Solution::Solution(y) => assert_eq!(m.mul_vec(&y), bb),
            _ => assert!(!found, "{a:?} x = {b:?} has the solution {x:?}"),
        }
    }
}
