use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KoszulError {
    #[error("permutation has length {perm}, degree list has length {degrees}")]
    LengthMismatch { degrees: usize, perm: usize },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
}

/// Sign of reordering `x_0, ..., x_{n-1}` into `x_{perm[0]}, ..., x_{perm[n-1]}`:
/// the product of `(-1)^{deg_i deg_j}` over pairs whose relative order flips.
pub fn koszul_sign(degrees: &[i64], perm: &[usize]) -> Result<i32, KoszulError> {
    if degrees.len() != perm.len() {
        return Err(KoszulError::LengthMismatch {
            degrees: degrees.len(),
            perm: perm.len(),
        });
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(KoszulError::NotAPermutation(perm.to_vec()));
        }
        seen[p] = true;
    }
    let mut parity = 0i64;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                parity += degrees[perm[a]] * degrees[perm[b]];
            }
        }
    }
    Ok(if parity.rem_euclid(2) == 0 { 1 } else { -1 })
}
