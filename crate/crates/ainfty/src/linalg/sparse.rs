//! Reusable factorization of an integer or mod-2 matrix.
//!
//! Unit pivots are eliminated on a sparse copy first (Markowitz order, so
//! fill-in stays small); only the block left without unit entries goes
//! through a dense Smith decomposition. Each unit elimination is a unimodular
//! change of basis, so ranks, invariant factors, integral solvability and
//! kernel lattices are all read off the remainder.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{smith_normal_form, IntMatrix, LinalgError, Ring, Solution, SmithDecomposition};

#[derive(Clone, Debug)]
struct Step {
    row: usize,
    col: usize,
    /// `±1`, its own inverse.
    pivot: BigInt,
    /// Other entries of the pivot row when it was eliminated.
    rest: Vec<(usize, BigInt)>,
    /// `row_r -= f * row_pivot` for each `(r, f)`.
    updates: Vec<(usize, BigInt)>,
}

#[derive(Clone, Debug)]
pub struct Factorization {
    ring: Ring,
    rows: usize,
    cols: usize,
    steps: Vec<Step>,
    rest_rows: Vec<usize>,
    rest_cols: Vec<usize>,
    /// Smith decomposition of the remainder (over `Z` only).
    rest: Option<SmithDecomposition>,
    rest_rank: usize,
}

fn is_unit(ring: Ring, v: &BigInt) -> bool {
    match ring {
        Ring::Integers => v.is_one() || (-v).is_one(),
        Ring::F2 => !v.is_zero(),
    }
}

impl Factorization {
    pub fn new(ring: Ring, a: &IntMatrix) -> Self {
        let (m, n) = (a.rows(), a.cols());
        let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m];
        let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for i in 0..m {
            for j in 0..n {
                let v = ring.normalize(a[(i, j)].clone());
                if !v.is_zero() {
                    rows[i].insert(j, v);
                    cols[j].insert(i);
                }
            }
        }
        let mut row_active = vec![true; m];
        let mut col_active = vec![true; n];
        let mut steps = Vec::new();
        loop {
            // cheapest unit pivot; ties by (row, col)
            let mut best: Option<(usize, usize, usize)> = None;
            'scan: for i in 0..m {
                if !row_active[i] || rows[i].is_empty() {
                    continue;
                }
                let rl = rows[i].len() - 1;
                if best.is_some_and(|(c, _, _)| c == 0) {
                    break;
                }
                for (&j, v) in &rows[i] {
                    if !is_unit(ring, v) {
                        continue;
                    }
                    let cost = rl * (cols[j].len() - 1);
                    if best.is_none_or(|(c, _, _)| cost < c) {
                        best = Some((cost, i, j));
                        if cost == 0 {
                            break 'scan;
                        }
                    }
                }
            }
            let Some((_, i, j)) = best else { break };
            let pivot = rows[i][&j].clone();
            let prow: Vec<(usize, BigInt)> = rows[i].iter().map(|(&c, v)| (c, v.clone())).collect();
            let others: Vec<usize> = cols[j].iter().copied().filter(|&r| r != i).collect();
            let mut updates = Vec::with_capacity(others.len());
            for r in others {
                let f = ring.normalize(&rows[r][&j] * &pivot);
                for (c, v) in &prow {
                    let entry = rows[r].entry(*c).or_insert_with(BigInt::zero);
                    *entry = ring.normalize(&*entry - &f * v);
                    if entry.is_zero() {
                        rows[r].remove(c);
                        cols[*c].remove(&r);
                    } else {
                        cols[*c].insert(r);
                    }
                }
                updates.push((r, f));
            }
            row_active[i] = false;
            col_active[j] = false;
            for (c, _) in &prow {
                cols[*c].remove(&i);
            }
            let rest = prow.into_iter().filter(|(c, _)| *c != j).collect();
            rows[i].clear();
            steps.push(Step { row: i, col: j, pivot, rest, updates });
        }
        let rest_rows: Vec<usize> = (0..m).filter(|&i| row_active[i]).collect();
        let rest_cols: Vec<usize> = (0..n).filter(|&j| col_active[j]).collect();
        let (rest, rest_rank) = match ring {
            // every nonzero entry is a unit, so the remainder is zero
            Ring::F2 => (None, 0),
            Ring::Integers => {
                let pos: BTreeMap<usize, usize> = rest_cols.iter().enumerate().map(|(t, &c)| (c, t)).collect();
                let mut d = IntMatrix::zeros(rest_rows.len(), rest_cols.len());
                for (s, &r) in rest_rows.iter().enumerate() {
                    for (c, v) in &rows[r] {
                        d[(s, pos[c])] = v.clone();
                    }
                }
                let snf = smith_normal_form(&d);
                let k = snf.rank();
                (Some(snf), k)
            }
        };
        Factorization {
            ring,
            rows: m,
            cols: n,
            steps,
            rest_rows,
            rest_cols,
            rest,
            rest_rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.steps.len() + self.rest_rank
    }

    /// Nonzero invariant factors (all `1` over `F2`).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::one(); self.steps.len()];
        if let Some(s) = &self.rest {
            out.extend(s.invariant_factors());
        }
        out.sort();
        out
    }

    /// Back-substitutes pivot variables from `b` (after elimination) and the
    /// remaining coordinates already placed in `x`.
    fn back_substitute(&self, b: &[BigInt], x: &mut [BigInt]) {
        for st in self.steps.iter().rev() {
            let mut s = b[st.row].clone();
            for (c, v) in &st.rest {
                s -= v * &x[*c];
            }
            x[st.col] = self.ring.normalize(s * &st.pivot);
        }
    }

    pub fn solve(&self, b: &[BigInt]) -> Result<Solution, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let ring = self.ring;
        let mut b: Vec<BigInt> = b.iter().map(|v| ring.normalize(v.clone())).collect();
        for st in &self.steps {
            if b[st.row].is_zero() {
                continue;
            }
            let bp = b[st.row].clone();
            for (r, f) in &st.updates {
                b[*r] = ring.normalize(&b[*r] - f * &bp);
            }
        }
        let mut x = vec![BigInt::zero(); self.cols];
        match &self.rest {
            None => {
                if self.rest_rows.iter().any(|&r| !b[r].is_zero()) {
                    return Ok(Solution::Unsolvable);
                }
            }
            Some(s) => {
                let br: Vec<BigInt> = self.rest_rows.iter().map(|&r| b[r].clone()).collect();
                let ub = s.u.mul_vec(&br);
                let k = self.rest_rank;
                if ub[k..].iter().any(|v| !v.is_zero()) {
                    return Ok(Solution::Unsolvable);
                }
                let mut y = vec![BigInt::zero(); self.rest_cols.len()];
                for i in 0..k {
                    let (q, r) = ub[i].div_rem(&s.d[(i, i)]);
                    if !r.is_zero() {
                        return Ok(Solution::RationalOnly);
                    }
                    y[i] = q;
                }
                for (t, v) in s.v.mul_vec(&y).into_iter().enumerate() {
                    x[self.rest_cols[t]] = v;
                }
            }
        }
        self.back_substitute(&b, &mut x);
        Ok(Solution::Solution(x))
    }

    /// Columns form a basis of the kernel lattice.
    pub fn kernel_basis(&self) -> IntMatrix {
        let free: Vec<Vec<BigInt>> = match &self.rest {
            None => (0..self.rest_cols.len())
                .map(|t| (0..self.rest_cols.len()).map(|u| if u == t { BigInt::one() } else { BigInt::zero() }).collect())
                .collect(),
            Some(s) => (self.rest_rank..self.rest_cols.len()).map(|t| s.v.column(t)).collect(),
        };
        let zero_b = vec![BigInt::zero(); self.rows];
        let mut k = IntMatrix::zeros(self.cols, free.len());
        for (jj, f) in free.iter().enumerate() {
            let mut x = vec![BigInt::zero(); self.cols];
            for (t, v) in f.iter().enumerate() {
                x[self.rest_cols[t]] = v.clone();
            }
            self.back_substitute(&zero_b, &mut x);
            for (i, v) in x.into_iter().enumerate() {
                k[(i, jj)] = v;
            }
        }
        k
    }
}
