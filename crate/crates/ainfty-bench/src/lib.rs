//! Inputs shared by the benchmarks.

use ainfty::linalg::IntMatrix;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Random `rows x cols` matrix with entries in `-bound..=bound`, about
/// `density` of them nonzero, from a fixed seed.
pub fn random_matrix(rows: usize, cols: usize, bound: i64, density: f64, seed: u64) -> IntMatrix {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut m = IntMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(density) {
                m[(i, j)] = BigInt::from(rng.gen_range(-bound..=bound));
            }
        }
    }
    m
}
