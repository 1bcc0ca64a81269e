//! Linear algebra over the field with two elements, used when the
//! coefficient ring is reduced mod 2.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntMatrix;

fn to_bits(a: &IntMatrix) -> Vec<Vec<bool>> {
    (0..a.rows())
        .map(|i| a.row(i).iter().map(|x| !(x % 2u32).is_zero()).collect())
        .collect()
}

/// Row-reduces in place, returns pivot columns.
fn rref(m: &mut [Vec<bool>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c]) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] {
                let (src, dst) = if i < r {
                    let (lo, hi) = m.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = m.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d ^= *s;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

pub fn rank(a: &IntMatrix) -> usize {
    let mut m = to_bits(a);
    rref(&mut m, a.cols()).len()
}

/// Columns form a basis of the kernel.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let mut m = to_bits(a);
    let pivots = rref(&mut m, a.cols());
    let free: Vec<usize> = (0..a.cols()).filter(|c| !pivots.contains(c)).collect();
    let mut k = IntMatrix::zeros(a.cols(), free.len());
    for (jj, &f) in free.iter().enumerate() {
        k[(f, jj)] = BigInt::one();
        for (r, &p) in pivots.iter().enumerate() {
            if m[r][f] {
                k[(p, jj)] = BigInt::one();
            }
        }
    }
    k
}

pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let aug = a.hcat(&IntMatrix::column_vector(b));
    let mut m = to_bits(&aug);
    let pivots = rref(&mut m, aug.cols());
    if pivots.last() == Some(&a.cols()) {
        return None;
    }
    let mut x = vec![BigInt::zero(); a.cols()];
    for (r, &p) in pivots.iter().enumerate() {
        if m[r][a.cols()] {
            x[p] = BigInt::one();
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_mod_two() {
        let a = IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]);
        assert_eq!(rank(&a), 1);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).reduce_mod2().is_zero());
    }

    #[test]
    fn solve_mod_two() {
        let a = IntMatrix::from_i64(2, 2, &[1, 1, 0, 1]);
        let x = solve(&a, &[BigInt::from(0), BigInt::from(1)]).unwrap();
        assert_eq!(x, vec![BigInt::from(1), BigInt::from(1)]);
        let z = IntMatrix::from_i64(1, 1, &[2]);
        assert!(solve(&z, &[BigInt::from(1)]).is_none());
    }
}
