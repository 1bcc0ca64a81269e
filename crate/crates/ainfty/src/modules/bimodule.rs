use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::ainf::{sign, AinfCategory, GenId, LinComb, ObjId};
use crate::linalg::Ring;

use super::side::{Side, SideModule};
use super::{paths, ModuleError};

/// Input of a bimodule operation: `right` holds `a_{|s}, ..., a_{|1}` (composition
/// order, so `right[0]` is applied first), `p` the module element, `left` holds
/// `a_1, ..., a_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BimodKey {
    pub right: Vec<GenId>,
    pub p: usize,
    pub left: Vec<GenId>,
}

impl BimodKey {
    pub fn new(right: Vec<GenId>, p: usize, left: Vec<GenId>) -> Self {
        BimodKey { right, p, left }
    }

    pub fn r(&self) -> usize {
        self.left.len()
    }

    pub fn s(&self) -> usize {
        self.right.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BimodOrigin {
    /// Generator of the diagonal bimodule: a morphism of the category.
    Morphism(GenId),
    /// `yl ⊗ yr` in a tensor bimodule, indices into the two side modules.
    Pair(usize, usize),
    Opaque,
}

/// Generator of `P(L_|, L)`: `source` is `L_|`, `target` is `L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BimodGen {
    pub name: String,
    pub degree: i64,
    pub source: ObjId,
    pub target: ObjId,
    pub origin: BimodOrigin,
}

pub type BimodChain = LinComb<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    pub ring: Ring,
    pub objects: BTreeSet<ObjId>,
    gens: Vec<BimodGen>,
    spaces: BTreeMap<(ObjId, ObjId), Vec<usize>>,
    ops: BTreeMap<BimodKey, BimodChain>,
}

impl Bimodule {
    pub fn new(ring: Ring, objects: BTreeSet<ObjId>) -> Self {
        Bimodule {
            ring,
            objects,
            gens: Vec::new(),
            spaces: BTreeMap::new(),
            ops: BTreeMap::new(),
        }
    }

    pub fn add_generator(&mut self, g: BimodGen) -> usize {
        let id = self.gens.len();
        self.spaces.entry((g.source, g.target)).or_default().push(id);
        self.gens.push(g);
        id
    }

    pub fn add_op(&mut self, key: BimodKey, out: usize, c: BigInt) {
        let entry = self.ops.entry(key.clone()).or_default();
        entry.add_term(out, self.ring.normalize(c));
        if entry.is_zero() {
            self.ops.remove(&key);
        }
    }

    pub fn generators(&self) -> &[BimodGen] {
        &self.gens
    }

    pub fn generator(&self, g: usize) -> &BimodGen {
        &self.gens[g]
    }

    pub fn space(&self, source: ObjId, target: ObjId) -> &[usize] {
        self.spaces.get(&(source, target)).map_or(&[], |v| v.as_slice())
    }

    pub fn op(&self, key: &BimodKey) -> Option<&BimodChain> {
        self.ops.get(key)
    }

    pub fn ops(&self) -> impl Iterator<Item = (&BimodKey, &BimodChain)> {
        self.ops.iter()
    }

    /// The table of `mu^{r|1|s}`.
    pub fn operations(&self, r: usize, s: usize) -> BTreeMap<&BimodKey, &BimodChain> {
        self.ops.iter().filter(|(k, _)| k.r() == r && k.s() == s).collect()
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn with_negated_op(&self, key: &BimodKey, out: usize) -> Bimodule {
        let mut b = self.clone();
        let c = self.ops.get(key).map(|ch| ch.coeff(&out)).unwrap_or_default();
        b.add_op(key.clone(), out, -2 * c);
        b
    }
}

/// The diagonal bimodule over the full subcategory on `b`, with
/// `mu^{r|1|s} = (-1)^{✠_{|s}^{|1} + 1} mu^{r+s+1}`.
pub fn diagonal_bimodule(c: &AinfCategory, b: &BTreeSet<ObjId>) -> Result<Bimodule, ModuleError> {
    if let Some(&o) = b.iter().find(|&&o| o >= c.objects().len()) {
        return Err(ModuleError::UnknownObject(o));
    }
    let mut m = Bimodule::new(c.ring(), b.clone());
    let inside = |g: GenId| b.contains(&c.source(g)) && b.contains(&c.target(g));
    let mut index = BTreeMap::new();
    for g in 0..c.generators().len() {
        if inside(g) {
            let id = m.add_generator(BimodGen {
                name: c.qualified_name(g),
                degree: c.degree(g),
                source: c.source(g),
                target: c.target(g),
                origin: BimodOrigin::Morphism(g),
            });
            index.insert(g, id);
        }
    }
    for d in c.arities() {
        for (inputs, out) in c.mu(d).unwrap().iter() {
            if !inputs.iter().all(|&g| inside(g)) {
                continue;
            }
            let mut prefix = 0i64;
            for s in 0..d {
                let key = BimodKey::new(inputs[..s].to_vec(), index[&inputs[s]], inputs[s + 1..].to_vec());
                let sg = sign(prefix + 1);
                for (o, v) in out.iter() {
                    m.add_op(key.clone(), index[o], &sg * v);
                }
                prefix += c.reduced_degree(inputs[s]);
            }
        }
    }
    Ok(m)
}

/// `Y^l ⊗ Y^r` with `mu^{r|1|0}(a.., p ⊗ q) = (-1)^{deg q} mu_l(a.., p) ⊗ q`,
/// `mu^{0|1|s}(p ⊗ q, a..) = p ⊗ mu_r(q, a..)` and no mixed operations.
pub fn tensor_bimodule(yl: &SideModule, yr: &SideModule) -> Result<Bimodule, ModuleError> {
    if yl.side != Side::Left {
        return Err(ModuleError::SideMismatch { expected: Side::Left, found: yl.side });
    }
    if yr.side != Side::Right {
        return Err(ModuleError::SideMismatch { expected: Side::Right, found: yr.side });
    }
    if yl.objects != yr.objects {
        return Err(ModuleError::SubcategoryMismatch);
    }
    let mut m = Bimodule::new(yl.ring, yl.objects.clone());
    let mut index = BTreeMap::new();
    for (i, gl) in yl.generators().iter().enumerate() {
        for (j, gr) in yr.generators().iter().enumerate() {
            let id = m.add_generator(BimodGen {
                name: format!("{}⊗{}", gl.name, gr.name),
                degree: gl.degree + gr.degree,
                source: gr.object,
                target: gl.object,
                origin: BimodOrigin::Pair(i, j),
            });
            index.insert((i, j), id);
        }
    }
    for ((i, inputs), out) in yl.actions() {
        for (j, gr) in yr.generators().iter().enumerate() {
            let key = BimodKey::new(Vec::new(), index[&(*i, j)], inputs.clone());
            let sg = sign(gr.degree);
            for (o, v) in out.iter() {
                m.add_op(key.clone(), index[&(*o, j)], &sg * v);
            }
        }
    }
    for ((j, inputs), out) in yr.actions() {
        for i in 0..yl.generators().len() {
            let key = BimodKey::new(inputs.clone(), index[&(i, *j)], Vec::new());
            for (o, v) in out.iter() {
                m.add_op(key.clone(), index[&(i, *o)], v.clone());
            }
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleFailure {
    pub key: BimodKey,
    pub residual: BimodChain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleReport {
    pub max_inputs: usize,
    pub tuples_checked: usize,
    pub failures: Vec<BimoduleFailure>,
}

impl BimoduleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub(super) fn parity(c: &AinfCategory, xs: &[GenId]) -> i64 {
    xs.iter().map(|&g| c.reduced_degree(g)).sum()
}

/// Every composable input `right, p, left` with `r + s <= max_inputs`.
pub(super) fn bimodule_inputs(c: &AinfCategory, m: &Bimodule, max_inputs: usize) -> Vec<BimodKey> {
    let by_len: Vec<Vec<Vec<GenId>>> = (0..=max_inputs).map(|k| paths(c, &m.objects, k)).collect();
    let mut out = Vec::new();
    for (p, g) in m.generators().iter().enumerate() {
        for s in 0..=max_inputs {
            for right in &by_len[s] {
                if s > 0 && c.target(*right.last().unwrap()) != g.source {
                    continue;
                }
                for left in by_len.iter().take(max_inputs - s + 1) {
                    for l in left {
                        if !l.is_empty() && c.source(l[0]) != g.target {
                            continue;
                        }
                        out.push(BimodKey::new(right.clone(), p, l.clone()));
                    }
                }
            }
        }
    }
    out
}

fn splice(xs: &[GenId], i: usize, j: usize, y: GenId) -> Vec<GenId> {
    let mut v = Vec::with_capacity(xs.len() + 1 + i - j);
    v.extend_from_slice(&xs[..i]);
    v.push(y);
    v.extend_from_slice(&xs[j..]);
    v
}

/// Blocks `[i, j)` of a list of `n` inputs, `0 <= i < j <= n`, in summation order.
pub fn input_blocks(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
}

/// Inner blocks around `p` with `m` left and `l` right inputs, for a key with
/// `r` left and `s` right inputs, in summation order.
pub fn module_splits(r: usize, s: usize) -> Vec<(usize, usize)> {
    (0..=s).flat_map(|l| (0..=r).map(move |m| (m, l))).collect()
}

/// Sums that replace a block of inputs by `mu^k`, on the right and on the left of
/// `p`, with the sign of elements preceding the block. Shared by the bimodule
/// equation and the homomorphism equation; `outer` evaluates the outer operation.
pub(super) fn category_block_terms(
    c: &AinfCategory,
    key: &BimodKey,
    p_degree: i64,
    mut outer: impl FnMut(&BimodKey, BigInt),
) {
    let s = key.s();
    let r = key.r();
    for (i, j) in input_blocks(s) {
        let pre = parity(c, &key.right[..i]);
        {
            let Some(inner) = c.mu_gens(&key.right[i..j]) else { continue };
            for (y, v) in inner.iter() {
                let k = BimodKey::new(splice(&key.right, i, j, *y), key.p, key.left.clone());
                outer(&k, sign(pre) * v);
            }
        }
    }
    let base = parity(c, &key.right) + p_degree;
    for (i, j) in input_blocks(r) {
        let pre = base + parity(c, &key.left[..i]);
        {
            let Some(inner) = c.mu_gens(&key.left[i..j]) else { continue };
            for (y, v) in inner.iter() {
                let k = BimodKey::new(key.right.clone(), key.p, splice(&key.left, i, j, *y));
                outer(&k, sign(pre) * v);
            }
        }
    }
}

/// Splits of `key` into an inner block containing `p` and the remaining outer inputs.
/// Calls `f(inner_key, outer_right, outer_left, parity of outer_right)`.
pub(super) fn module_block_splits(
    c: &AinfCategory,
    key: &BimodKey,
    mut f: impl FnMut(BimodKey, &[GenId], &[GenId], i64),
) {
    let s = key.s();
    for (m, l) in module_splits(key.r(), s) {
        let pre = parity(c, &key.right[..s - l]);
        {
            let inner = BimodKey::new(key.right[s - l..].to_vec(), key.p, key.left[..m].to_vec());
            f(inner, &key.right[..s - l], &key.left[m..], pre);
        }
    }
}

/// Left side of the bimodule equation on one input.
pub fn bimodule_relation(c: &AinfCategory, m: &Bimodule, key: &BimodKey) -> BimodChain {
    let mut out = BimodChain::new();
    module_block_splits(c, key, |inner, right, left, pre| {
        let Some(x) = m.op(&inner) else { return };
        let sg = sign(pre);
        for (y, v) in x.iter() {
            let k = BimodKey::new(right.to_vec(), *y, left.to_vec());
            if let Some(z) = m.op(&k) {
                out.add_scaled(z, &(&sg * v));
            }
        }
    });
    category_block_terms(c, key, m.generator(key.p).degree, |k, coeff| {
        if let Some(z) = m.op(k) {
            out.add_scaled(z, &coeff);
        }
    });
    out.normalized(m.ring)
}

/// Checks the bimodule equation on every composable input with `r + s <= max_inputs`.
pub fn verify_bimodule(c: &AinfCategory, m: &Bimodule, max_inputs: usize) -> BimoduleReport {
    let keys = bimodule_inputs(c, m, max_inputs);
    let failures = keys
        .par_iter()
        .filter_map(|k| {
            let r = bimodule_relation(c, m, k);
            (!r.is_zero()).then(|| BimoduleFailure { key: k.clone(), residual: r })
        })
        .collect();
    BimoduleReport {
        max_inputs,
        tuples_checked: keys.len(),
        failures,
    }
}
