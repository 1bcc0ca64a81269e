use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::ainf::{sign, AinfCategory, Chain, GenId, LinComb, ObjId};
use crate::linalg::{ChainComplex, GradedMap, IntMatrix};

use super::bimodule::parity;
use super::side::{Side, SideModule};
use super::{paths, ModuleError};

/// Basis word `p ⊗ a_d ⊗ ... ⊗ a_1 ⊗ q`; `a` is stored as `a_1, ..., a_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorWord {
    pub p: usize,
    pub a: Vec<GenId>,
    pub q: usize,
}

/// Truncated tensor product `R ⊗_B L` together with its basis words.
#[derive(Clone, Debug)]
pub struct TensorComplex {
    pub complex: ChainComplex,
    pub words: BTreeMap<i64, Vec<TensorWord>>,
    pub max_length: usize,
    index: BTreeMap<TensorWord, (i64, usize)>,
}

impl TensorComplex {
    pub fn position(&self, w: &TensorWord) -> Option<(i64, usize)> {
        self.index.get(w).copied()
    }

    pub fn word(&self, k: i64, i: usize) -> &TensorWord {
        &self.words[&k][i]
    }
}

pub fn word_degree(c: &AinfCategory, r: &SideModule, l: &SideModule, w: &TensorWord) -> i64 {
    r.generator(w.p).degree + l.generator(w.q).degree + bar_degree(c, &w.a)
}

/// Integer degree of a bar word, `deg - 1` per factor. Same parity as the reduced
/// degree, and the shift that makes every differential term raise degree by one.
pub fn bar_degree(c: &AinfCategory, xs: &[GenId]) -> i64 {
    xs.iter().map(|&g| c.degree(g) - 1).sum()
}

pub fn word_label(c: &AinfCategory, r: &SideModule, l: &SideModule, w: &TensorWord) -> String {
    let mut parts = vec![r.generator(w.p).name.clone()];
    parts.extend(w.a.iter().rev().map(|&g| c.qualified_name(g)));
    parts.push(l.generator(w.q).name.clone());
    parts.join("⊗")
}

/// Differential of one word, with signs `(-1)^{deg q + ✠_1^l}` on the terms that
/// act on `p` or collapse a block.
pub fn tensor_differential(
    c: &AinfCategory,
    r: &SideModule,
    l: &SideModule,
    w: &TensorWord,
) -> LinComb<TensorWord> {
    let d = w.a.len();
    let dq = l.generator(w.q).degree;
    let mut out = LinComb::new();
    for ell in 0..=d {
        if let Some(x) = l.act(w.q, &w.a[..ell]) {
            for (q2, v) in x.iter() {
                let nw = TensorWord { p: w.p, a: w.a[ell..].to_vec(), q: *q2 };
                out.add_term(nw, v.clone());
            }
        }
        let sg = sign(dq + parity(c, &w.a[..ell]));
        if let Some(x) = r.act(w.p, &w.a[ell..]) {
            for (p2, v) in x.iter() {
                let nw = TensorWord { p: *p2, a: w.a[..ell].to_vec(), q: w.q };
                out.add_term(nw, &sg * v);
            }
        }
        for k in 1..=d - ell {
            let Some(x) = c.mu_gens(&w.a[ell..ell + k]) else { continue };
            for (y, v) in x.iter() {
                let mut a = w.a[..ell].to_vec();
                a.push(*y);
                a.extend_from_slice(&w.a[ell + k..]);
                out.add_term(TensorWord { p: w.p, a, q: w.q }, &sg * v);
            }
        }
    }
    out.normalized(c.ring())
}

/// `R ⊗_B L` on words with at most `max_length` morphisms. The differential never
/// lengthens words, so each truncation is a subcomplex; `d^2 = 0` is checked.
pub fn tensor_over_category(
    c: &AinfCategory,
    r: &SideModule,
    l: &SideModule,
    max_length: usize,
) -> Result<TensorComplex, ModuleError> {
    if r.side != Side::Right {
        return Err(ModuleError::SideMismatch { expected: Side::Right, found: r.side });
    }
    if l.side != Side::Left {
        return Err(ModuleError::SideMismatch { expected: Side::Left, found: l.side });
    }
    if r.objects != l.objects {
        return Err(ModuleError::SubcategoryMismatch);
    }
    let b = &r.objects;
    let mut words: BTreeMap<i64, Vec<TensorWord>> = BTreeMap::new();
    let mut push = |a: Vec<GenId>, start: ObjId, end: ObjId| {
        for &q in l.space(start) {
            for &p in r.space(end) {
                let w = TensorWord { p, a: a.clone(), q };
                words.entry(word_degree(c, r, l, &w)).or_default().push(w);
            }
        }
    };
    for &o in b {
        push(Vec::new(), o, o);
    }
    for len in 1..=max_length {
        for a in paths(c, b, len) {
            let (s, t) = (c.source(a[0]), c.target(a[len - 1]));
            push(a, s, t);
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
        let mut m = IntMatrix::zeros(rows, ws.len());
        for (j, w) in ws.iter().enumerate() {
            for (t, v) in tensor_differential(c, r, l, w).iter() {
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
        .map(|(&k, ws)| (k, ws.iter().map(|w| word_label(c, r, l, w)).collect()))
        .collect();
    let complex = ChainComplex::new(c.ring(), basis, diffs)?;
    Ok(TensorComplex { complex, words, max_length, index })
}

/// `hom(a, b)` with the differential of the diagonal bimodule, `-mu^1`.
pub fn hom_complex(c: &AinfCategory, a: ObjId, b: ObjId) -> ChainComplex {
    let (basis, pos) = hom_basis_by_degree(c, a, b);
    let mut diffs = BTreeMap::new();
    for (&k, gs) in &basis {
        let rows = basis.get(&(k + 1)).map_or(0, |v| v.len());
        let mut m = IntMatrix::zeros(rows, gs.len());
        for (j, &g) in gs.iter().enumerate() {
            if let Some(x) = c.mu_gens(&[g]) {
                for (y, v) in x.iter() {
                    m[(pos[y].1, j)] -= v;
                }
            }
        }
        diffs.insert(k, m);
    }
    let names = basis
        .iter()
        .map(|(&k, gs)| (k, gs.iter().map(|&g| c.qualified_name(g)).collect()))
        .collect();
    ChainComplex::new_unchecked(c.ring(), names, diffs).expect("hom complex shapes")
}

/// Generators of `hom(a, b)` grouped by degree, and each generator's position.
pub fn hom_basis_by_degree(
    c: &AinfCategory,
    a: ObjId,
    b: ObjId,
) -> (BTreeMap<i64, Vec<GenId>>, BTreeMap<GenId, (i64, usize)>) {
    let mut basis: BTreeMap<i64, Vec<GenId>> = BTreeMap::new();
    for &g in c.hom(a, b) {
        basis.entry(c.degree(g)).or_default().push(g);
    }
    let mut pos = BTreeMap::new();
    for (&k, gs) in &basis {
        for (i, &g) in gs.iter().enumerate() {
            pos.insert(g, (k, i));
        }
    }
    (basis, pos)
}

/// `(-1)^{deg q + ✠_1^d} mu^{d+2}(p, a_d, ..., a_1, q)` for Yoneda modules.
pub fn mu_composition_word(
    c: &AinfCategory,
    r: &SideModule,
    l: &SideModule,
    w: &TensorWord,
) -> Chain {
    let (Some(pg), Some(qg)) = (r.generator(w.p).cat_gen, l.generator(w.q).cat_gen) else {
        return Chain::new();
    };
    let mut inputs = vec![qg];
    inputs.extend_from_slice(&w.a);
    inputs.push(pg);
    let sg = sign(l.generator(w.q).degree + parity(c, &w.a));
    c.mu_gens(&inputs).map(|x| x.scaled(&sg)).unwrap_or_default()
}

/// The composition map `Y^r_K ⊗_B Y^l_K -> hom(K, K)` as a degree-0 graded map.
pub fn mu_composition(
    c: &AinfCategory,
    r: &SideModule,
    l: &SideModule,
    t: &TensorComplex,
    k: ObjId,
) -> GradedMap {
    let target = hom_complex(c, k, k);
    let (_, pos) = hom_basis_by_degree(c, k, k);
    let mut f = GradedMap::new(0);
    for (&deg, ws) in &t.words {
        let mut m = IntMatrix::zeros(target.dim(deg), ws.len());
        for (j, w) in ws.iter().enumerate() {
            for (g, v) in mu_composition_word(c, r, l, w).iter() {
                let (kk, i) = pos[g];
                debug_assert_eq!(kk, deg);
                m[(i, j)] += v;
            }
        }
        if !m.is_zero() {
            f.maps.insert(deg, m);
        }
    }
    f
}

/// Coordinates of `x` in the hom complex, degree by degree.
pub fn chain_coordinates(c: &AinfCategory, a: ObjId, b: ObjId, x: &Chain) -> BTreeMap<i64, Vec<BigInt>> {
    let (basis, pos) = hom_basis_by_degree(c, a, b);
    let mut out: BTreeMap<i64, Vec<BigInt>> = BTreeMap::new();
    for (g, v) in x.iter() {
        if let Some(&(k, i)) = pos.get(g) {
            let col = out.entry(k).or_insert_with(|| vec![BigInt::zero(); basis[&k].len()]);
            col[i] += v;
        }
    }
    out
}
