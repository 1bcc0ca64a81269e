//! Cyclic bar complex, the Hochschild differential and the map induced by a
//! bimodule homomorphism into `Y^l ⊗ Y^r`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::ainf::{sign, AinfCategory, GenId, LinComb, ObjId};
use crate::linalg::{
    homology, induced_map_is_iso, ChainComplex, ChainMapWitness, FinAbGroup, GradedMap, IntMatrix,
    LinalgError,
};
use crate::modules::{
    bar_degree, paths, tensor_bimodule, BimodKey, BimodOrigin, BimoduleHom, SideModule,
    TensorComplex, TensorWord,
};

pub use crate::linalg::verify_chain_map;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HochschildError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Module(#[from] crate::modules::ModuleError),
    #[error("map is not a chain map: fails on {} in degree {}", .0.label, .0.degree)]
    ChainMapViolation(ChainMapWitness),
    #[error("{0}")]
    Incompatible(String),
}

/// Cyclic word `a_d ⊗ ... ⊗ a_1`, stored as `a_1, ..., a_d` with `a_d` the
/// distinguished last factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord(pub Vec<GenId>);

impl CyclicWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_cyclic(&self, c: &AinfCategory) -> bool {
        !self.0.is_empty()
            && c.is_composable(&self.0)
            && c.target(*self.0.last().unwrap()) == c.source(self.0[0])
    }

    /// `deg(a_d) + sum_{i<d} (deg(a_i) - 1)`.
    pub fn degree(&self, c: &AinfCategory) -> i64 {
        let d = self.0.len();
        c.degree(self.0[d - 1]) + bar_degree(c, &self.0[..d - 1])
    }

    pub fn label(&self, c: &AinfCategory) -> String {
        self.0.iter().rev().map(|&g| c.qualified_name(g)).collect::<Vec<_>>().join("⊗")
    }
}

fn prefix_parities(c: &AinfCategory, a: &[GenId]) -> Vec<i64> {
    let mut p = vec![0i64; a.len() + 1];
    for i in 0..a.len() {
        p[i + 1] = p[i] + c.reduced_degree(a[i]);
    }
    p
}

/// One block of the bar differential on a word `a_1..a_d` (1-based positions).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BarBlock {
    /// `mu` on `a_first..a_d, a_1..a_{i-1}`; the word keeps `a_i..a_{first-1}`.
    Wrap { i: usize, first: usize },
    /// `mu` on `a_i..a_end`, which does not contain `a_d`.
    Interior { i: usize, end: usize },
}

impl BarBlock {
    pub fn block_len(&self, d: usize) -> usize {
        match *self {
            BarBlock::Wrap { i, first } => d + 1 - first + i - 1,
            BarBlock::Interior { i, end } => end + 1 - i,
        }
    }
}

/// Blocks summed over by [`bar_differential`] on words of length `d`, wrap sum first.
pub fn bar_blocks(d: usize) -> Vec<BarBlock> {
    let mut out = Vec::new();
    for i in 1..=d {
        for jj in 0..=(d - i) {
            out.push(BarBlock::Wrap { i, first: i + jj });
        }
    }
    for i in 1..d {
        for end in i..d {
            out.push(BarBlock::Interior { i, end });
        }
    }
    out
}

/// Splittings `(r, s)` of a word of length `d` summed over in [`cc_of_delta_word`]:
/// `Δ^{r|1|s}` eats `a_1..a_r`, `a_d` and `a_{d-s}..a_{d-1}`.
pub fn coproduct_splittings(d: usize) -> Vec<(usize, usize)> {
    (0..d).flat_map(|r| (0..d - r).map(move |s| (r, s))).collect()
}

/// Hochschild differential of one cyclic word.
///
/// Wrap-around terms apply `mu` to a cyclic block `a_{i+j+1}, ..., a_d, a_1, ..., a_{i-1}`
/// containing `a_d` (`1 <= i <= d`, `-1 <= j`, `i + j <= d - 1`) with sign
/// `✠_1^{i-1}(1 + ✠_i^d) + ✠_i^{d-1} + 1`; interior terms apply `mu` to
/// `a_i, ..., a_{i+j}` with `i + j <= d - 1` and sign `✠_1^{i-1}`.
pub fn bar_differential(c: &AinfCategory, w: &CyclicWord) -> LinComb<CyclicWord> {
    let a = &w.0;
    let d = a.len();
    let pre = prefix_parities(c, a);
    let x = |lo: usize, hi: usize| pre[hi] - pre[lo - 1];
    let mut out = LinComb::new();
    for blk in bar_blocks(d) {
        let BarBlock::Wrap { i, first } = blk else { continue };
        {
            let mut block: Vec<GenId> = a[first - 1..].to_vec();
            block.extend_from_slice(&a[..i - 1]);
            let Some(res) = c.mu_gens(&block) else { continue };
            let s = if i > 1 { x(1, i - 1) } else { 0 } * (1 + x(i, d))
                + if d > i { x(i, d - 1) } else { 0 }
                + 1;
            let sg = sign(s);
            let rest = &a[i - 1..first - 1];
            for (y, v) in res.iter() {
                let mut nw = rest.to_vec();
                nw.push(*y);
                out.add_term(CyclicWord(nw), &sg * v);
            }
        }
    }
    for blk in bar_blocks(d) {
        let BarBlock::Interior { i, end } = blk else { continue };
        let sg = sign(if i > 1 { x(1, i - 1) } else { 0 });
        {
            let Some(res) = c.mu_gens(&a[i - 1..end]) else { continue };
            for (y, v) in res.iter() {
                let mut nw = a[..i - 1].to_vec();
                nw.push(*y);
                nw.extend_from_slice(&a[end..]);
                out.add_term(CyclicWord(nw), &sg * v);
            }
        }
    }
    out.normalized(c.ring())
}

/// Cyclic words of length `len` in the full subcategory on `b`.
pub fn cyclic_words(c: &AinfCategory, b: &BTreeSet<ObjId>, len: usize) -> Vec<CyclicWord> {
    if len == 0 {
        return Vec::new();
    }
    paths(c, b, len)
        .into_iter()
        .filter(|a| c.target(a[len - 1]) == c.source(a[0]))
        .map(CyclicWord)
        .collect()
}

/// Length-`<= N` part of the cyclic bar complex.
#[derive(Clone, Debug)]
pub struct TruncatedCC {
    pub max_length: usize,
    pub objects: BTreeSet<ObjId>,
    pub complex: ChainComplex,
    pub words: BTreeMap<i64, Vec<CyclicWord>>,
    index: BTreeMap<CyclicWord, (i64, usize)>,
}

impl TruncatedCC {
    /// Builds the truncation; `d^2 = 0` is verified and reported as an error.
    pub fn build(
        c: &AinfCategory,
        b: &BTreeSet<ObjId>,
        max_length: usize,
    ) -> Result<Self, HochschildError> {
        let mut words: BTreeMap<i64, Vec<CyclicWord>> = BTreeMap::new();
        for len in 1..=max_length {
            for w in cyclic_words(c, b, len) {
                words.entry(w.degree(c)).or_default().push(w);
            }
        }
        for ws in words.values_mut() {
            ws.sort();
        }
        let mut index = BTreeMap::new();
        for (&k, ws) in &words {
            for (i, w) in ws.iter().enumerate() {
                index.insert(w.clone(), (k, i));
            }
        }
        let mut diffs = BTreeMap::new();
        for (&k, ws) in &words {
            let rows = words.get(&(k + 1)).map_or(0, |v| v.len());
            let images: Vec<LinComb<CyclicWord>> =
                ws.par_iter().map(|w| bar_differential(c, w)).collect();
            let mut m = IntMatrix::zeros(rows, ws.len());
            for (j, img) in images.iter().enumerate() {
                for (t, v) in img.iter() {
                    assert!(t.len() <= ws[j].len(), "b increased word length");
                    let (kk, i) = index[t];
                    debug_assert_eq!(kk, k + 1);
                    m[(i, j)] += v;
                }
            }
            if !m.is_zero() {
                diffs.insert(k, m);
            }
        }
        let basis = words
            .iter()
            .map(|(&k, ws)| (k, ws.iter().map(|w| w.label(c)).collect()))
            .collect();
        let complex = ChainComplex::new(c.ring(), basis, diffs)?;
        Ok(TruncatedCC {
            max_length,
            objects: b.clone(),
            complex,
            words,
            index,
        })
    }

    pub fn position(&self, w: &CyclicWord) -> Option<(i64, usize)> {
        self.index.get(w).copied()
    }

    /// Inclusion of a shorter truncation into this one.
    pub fn inclusion_from(&self, smaller: &TruncatedCC) -> GradedMap {
        let mut f = GradedMap::new(0);
        for (&k, ws) in &smaller.words {
            let mut m = IntMatrix::zeros(self.complex.dim(k), ws.len());
            for (j, w) in ws.iter().enumerate() {
                let (_, i) = self.index[w];
                m[(i, j)] = BigInt::from(1);
            }
            f.maps.insert(k, m);
        }
        f
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HochschildReport {
    pub max_length: usize,
    pub groups: BTreeMap<i64, FinAbGroup>,
    /// Whether the inclusion into the length-`N+1` truncation is an isomorphism on
    /// homology in that degree.
    pub stable: BTreeMap<i64, bool>,
}

/// Homology of the length-`<= N` truncation in the requested degrees (all
/// degrees spanned by words if `degrees` is `None`).
pub fn hochschild_homology(
    c: &AinfCategory,
    b: &BTreeSet<ObjId>,
    max_length: usize,
    degrees: Option<(i64, i64)>,
) -> Result<HochschildReport, HochschildError> {
    let small = TruncatedCC::build(c, b, max_length)?;
    let big = TruncatedCC::build(c, b, max_length + 1)?;
    let incl = big.inclusion_from(&small);
    let range: Vec<i64> = match degrees {
        Some((lo, hi)) => (lo..=hi).collect(),
        None => small.complex.degrees(),
    };
    let mut groups = BTreeMap::new();
    let mut stable = BTreeMap::new();
    for k in range {
        groups.insert(k, homology(&small.complex, k)?);
        let fk = incl.component(&small.complex, &big.complex, k);
        stable.insert(k, induced_map_is_iso(&small.complex, &big.complex, &fk, k, 0));
    }
    Ok(HochschildReport {
        max_length,
        groups,
        stable,
    })
}

/// `CC_*(Δ)` from the truncated cyclic bar complex to `Y^r ⊗_B Y^l`, for a
/// homomorphism from the diagonal bimodule into `tensor_bimodule(yl, yr)`.
///
/// A word `a_d ⊗ ... ⊗ a_1` is sent to the sum over `r + s <= d - 1` of
/// `(-1)^{◇ + ∘} p ⊗ a_{d-s-1} ⊗ ... ⊗ a_{r+1} ⊗ q` where
/// `q ⊗ p = Δ^{r|1|s}(a_r, ..., a_1, a_d, a_{d-1}, ..., a_{d-s})`.
pub fn cc_of_delta_word(
    c: &AinfCategory,
    delta: &BimoduleHom,
    diag_index: &BTreeMap<GenId, usize>,
    pairs: &[(usize, usize)],
    yl: &SideModule,
    yr: &SideModule,
    w: &CyclicWord,
) -> LinComb<TensorWord> {
    let a = &w.0;
    let d = a.len();
    let n = delta.shift;
    let pre = prefix_parities(c, a);
    // ✠_lo^hi, 1-based inclusive, empty if hi < lo
    let x = |lo: usize, hi: usize| if hi < lo { 0 } else { pre[hi] - pre[lo - 1] };
    let mut out = LinComb::new();
    for (r, s) in coproduct_splittings(d) {
        {
            let key = BimodKey::new(
                a[d - 1 - s..d - 1].to_vec(),
                diag_index[&a[d - 1]],
                a[..r].to_vec(),
            );
            let Some(val) = delta.get(&key) else { continue };
            let diamond = x(1, r) * (1 + x(r + 1, d)) + n * x(r + 1, d - s - 1);
            let middle = x(r + 1, d - s - 1);
            for (g, v) in val.iter() {
                let (qi, pi) = pairs[*g];
                let circ = yl.generator(qi).degree * (yr.generator(pi).degree + middle);
                let word = TensorWord {
                    p: pi,
                    a: a[r..d - s - 1].to_vec(),
                    q: qi,
                };
                out.add_term(word, sign(diamond + circ) * v);
            }
        }
    }
    out.normalized(c.ring())
}

/// Matrix form of `CC_*(Δ)`; checks the chain-map identity of degree `n`.
pub fn cc_of_delta(
    c: &AinfCategory,
    delta: &BimoduleHom,
    yl: &SideModule,
    yr: &SideModule,
    source: &TruncatedCC,
    target: &TensorComplex,
) -> Result<GradedMap, HochschildError> {
    let f = cc_of_delta_unchecked(c, delta, yl, yr, source, target)?;
    let rep = verify_chain_map(&source.complex, &target.complex, &f);
    match rep.failures.into_iter().next() {
        Some(w) => Err(HochschildError::ChainMapViolation(w)),
        None => Ok(f),
    }
}

pub fn cc_of_delta_unchecked(
    c: &AinfCategory,
    delta: &BimoduleHom,
    yl: &SideModule,
    yr: &SideModule,
    source: &TruncatedCC,
    target: &TensorComplex,
) -> Result<GradedMap, HochschildError> {
    let tb = tensor_bimodule(yl, yr)?;
    let pairs: Vec<(usize, usize)> = tb
        .generators()
        .iter()
        .map(|g| match g.origin {
            BimodOrigin::Pair(i, j) => (i, j),
            _ => unreachable!("tensor bimodule generator"),
        })
        .collect();
    let diag_index: BTreeMap<GenId, usize> = {
        // the diagonal bimodule numbers generators of the subcategory in GenId order
        let b = &source.objects;
        (0..c.generators().len())
            .filter(|&g| b.contains(&c.source(g)) && b.contains(&c.target(g)))
            .enumerate()
            .map(|(i, g)| (g, i))
            .collect()
    };
    if target.max_length + 1 < source.max_length {
        return Err(HochschildError::Incompatible(format!(
            "tensor complex truncated at {} cannot receive words of length {}",
            target.max_length, source.max_length
        )));
    }
    let mut f = GradedMap::new(delta.shift);
    for (&k, ws) in &source.words {
        let tk = k + delta.shift;
        let mut m = IntMatrix::zeros(target.complex.dim(tk), ws.len());
        for (j, w) in ws.iter().enumerate() {
            for (t, v) in cc_of_delta_word(c, delta, &diag_index, &pairs, yl, yr, w).iter() {
                let (kk, i) = target.position(t).ok_or_else(|| {
                    HochschildError::Incompatible("image word outside the tensor complex".into())
                })?;
                if kk != tk {
                    return Err(HochschildError::Incompatible(format!(
                        "Δ does not have degree {}: {} lands in degree {kk}",
                        delta.shift,
                        w.label(c)
                    )));
                }
                m[(i, j)] += v;
            }
        }
        if !m.is_zero() {
            f.maps.insert(k, m);
        }
    }
    Ok(f)
}
