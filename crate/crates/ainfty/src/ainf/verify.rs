use num_bigint::BigInt;
use rayon::prelude::*;

use super::category::{AinfCategory, Chain, GenId};
use super::chain::sign;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationFailure {
    pub inputs: Vec<GenId>,
    pub residual: Chain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AinfReport {
    pub up_to: usize,
    pub tuples_checked: usize,
    pub failures: Vec<RelationFailure>,
}

impl AinfReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Left side of the A-infinity relation on `x_1, ..., x_d` (boundary order):
/// sum over `d1 + d2 = d + 1`, `0 <= k < d1` of
/// `(-1)^{✠_1^k} mu^{d1}(x_1..x_k, mu^{d2}(x_{k+1}..x_{k+d2}), ..., x_d)`.
pub fn ainf_relation(c: &AinfCategory, x: &[GenId]) -> Chain {
    let d = x.len();
    let mut out = Chain::new();
    let mut prefix = vec![0i64; d + 1];
    for i in 0..d {
        prefix[i + 1] = prefix[i] + c.reduced_degree(x[i]);
    }
    for (d2, k) in relation_splittings(d) {
        if c.mu(d2).is_none() || c.mu(d - d2 + 1).is_none() {
            continue;
        }
        {
            let Some(inner) = c.mu_gens(&x[k..k + d2]) else {
                continue;
            };
            let s = sign(prefix[k]);
            let mut outer_in: Vec<GenId> = Vec::with_capacity(d - d2 + 1);
            outer_in.extend_from_slice(&x[..k]);
            outer_in.push(0);
            outer_in.extend_from_slice(&x[k + d2..]);
            for (y, cy) in inner.iter() {
                outer_in[k] = *y;
                if let Some(outer) = c.mu_gens(&outer_in) {
                    let coeff: BigInt = &s * cy;
                    out.add_scaled(outer, &coeff);
                }
            }
        }
    }
    out.normalized(c.ring())
}

/// Index pairs `(d2, k)` summed over in [`ainf_relation`] for `d` inputs: the inner
/// operation `mu^{d2}` eats inputs `k+1..k+d2`.
pub fn relation_splittings(d: usize) -> Vec<(usize, usize)> {
    (1..=d).flat_map(|d2| (0..=d - d2).map(move |k| (d2, k))).collect()
}

/// Checks the relation on every composable generator tuple of length `1..=up_to`.
pub fn verify_ainf(c: &AinfCategory, up_to: usize) -> AinfReport {
    let mut tuples = Vec::new();
    for d in 1..=up_to {
        tuples.extend(c.composable_tuples(d, None));
    }
    let failures: Vec<RelationFailure> = tuples
        .par_iter()
        .filter_map(|t| {
            let r = ainf_relation(c, t);
            (!r.is_zero()).then(|| RelationFailure {
                inputs: t.clone(),
                residual: r,
            })
        })
        .collect();
    AinfReport {
        up_to,
        tuples_checked: tuples.len(),
        failures,
    }
}
