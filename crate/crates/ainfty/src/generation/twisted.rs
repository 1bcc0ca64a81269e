//! Twisted complexes over a category with formally adjoined strict units.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ainf::{sign, AinfCategory, GenId, LinComb, ObjId};
use crate::modules::{paths, SideModule};

/// A morphism of the category or the formal identity of an object.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Morph {
    Gen(GenId),
    Id(ObjId),
}

pub type MorphChain = LinComb<Morph>;

/// Rank-one summand `object[shift]`. `level` is the filtration degree; every
/// entry of the differential goes from a higher level to a strictly lower one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub object: ObjId,
    pub shift: i64,
    pub level: i64,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedComplex {
    pub summands: Vec<Summand>,
    /// `(to, from) -> entry` in `hom(object(from), object(to))`.
    pub differential: BTreeMap<(usize, usize), MorphChain>,
}

/// Nonzero component of a Maurer-Cartan or closedness residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedWitness {
    pub from: usize,
    pub to: Option<usize>,
    pub residual: MorphChain,
    pub description: String,
}

fn morph_source(c: &AinfCategory, m: Morph) -> ObjId {
    match m {
        Morph::Gen(g) => c.source(g),
        Morph::Id(o) => o,
    }
}

fn morph_target(c: &AinfCategory, m: Morph) -> ObjId {
    match m {
        Morph::Gen(g) => c.target(g),
        Morph::Id(o) => o,
    }
}

fn morph_degree(c: &AinfCategory, m: Morph) -> i64 {
    match m {
        Morph::Gen(g) => c.degree(g),
        Morph::Id(_) => 0,
    }
}

/// `mu^d` with the formal identities acting as strict units:
/// `mu^2(1, x) = x`, `mu^2(x, 1) = (-1)^{deg x} x` (x applied first), and any other
/// operation with an identity input vanishes. Inputs in composition order.
pub fn mu_with_units(c: &AinfCategory, inputs: &[Morph]) -> MorphChain {
    let ids = inputs.iter().filter(|m| matches!(m, Morph::Id(_))).count();
    if ids == 0 {
        let gens: Vec<GenId> = inputs
            .iter()
            .map(|m| match m {
                Morph::Gen(g) => *g,
                Morph::Id(_) => unreachable!(),
            })
            .collect();
        return c
            .mu_gens(&gens)
            .map(|x| x.map_keys(|g| Morph::Gen(*g)))
            .unwrap_or_default();
    }
    if inputs.len() != 2 {
        return MorphChain::new();
    }
    match (inputs[0], inputs[1]) {
        (Morph::Id(_), x) => MorphChain::basis(x),
        (x, Morph::Id(_)) => MorphChain::single(x, sign(morph_degree(c, x))),
        _ => unreachable!(),
    }
}

impl TwistedComplex {
    pub fn empty() -> Self {
        TwistedComplex {
            summands: Vec::new(),
            differential: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Degree of `m` viewed in `hom(X[s], Y[t])`.
    pub fn shifted_degree(&self, c: &AinfCategory, m: Morph, from: usize, to: usize) -> i64 {
        morph_degree(c, m) + self.summands[from].shift - self.summands[to].shift
    }

    /// Checks objects, degree 1, and strict lowering of the filtration.
    pub fn check_shape(&self, c: &AinfCategory) -> Result<(), TwistedWitness> {
        for (&(to, from), x) in &self.differential {
            let bad = |why: &str| TwistedWitness {
                from,
                to: Some(to),
                residual: x.clone(),
                description: why.to_string(),
            };
            if self.summands[to].level >= self.summands[from].level {
                return Err(bad("entry does not lower the filtration"));
            }
            for (&m, _) in x.iter() {
                if morph_source(c, m) != self.summands[from].object
                    || morph_target(c, m) != self.summands[to].object
                {
                    return Err(bad("entry between the wrong objects"));
                }
                if self.shifted_degree(c, m, from, to) != 1 {
                    return Err(bad("entry is not of degree 1"));
                }
            }
        }
        Ok(())
    }

    fn outgoing(&self) -> BTreeMap<usize, Vec<(usize, &MorphChain)>> {
        let mut out: BTreeMap<usize, Vec<(usize, &MorphChain)>> = BTreeMap::new();
        for (&(to, from), x) in &self.differential {
            out.entry(from).or_default().push((to, x));
        }
        out
    }

    /// Sum over all paths `from = i_0 -> ... -> i_d`, `d >= 1`, of
    /// `(-1)^{shift(i_0)} mu^{d + tail}(D, ..., D, tail...)`, grouped by the end of
    /// the path. `tail` is appended after the path entries in composition order.
    fn path_sums(
        &self,
        c: &AinfCategory,
        from: usize,
        tail: Option<&BTreeMap<usize, MorphChain>>,
        prefixes: &BTreeSet<Vec<Morph>>,
        out_edges: &BTreeMap<usize, Vec<(usize, &MorphChain)>>,
    ) -> BTreeMap<Option<usize>, MorphChain> {
        let mut acc: BTreeMap<Option<usize>, MorphChain> = BTreeMap::new();
        let s0 = sign(self.summands[from].shift);
        // (current summand, tuple, coefficient)
        let mut stack: Vec<(usize, Vec<Morph>, BigInt)> = vec![(from, Vec::new(), BigInt::one())];
        while let Some((at, tuple, coef)) = stack.pop() {
            if !tuple.is_empty() {
                match tail {
                    None => {
                        let v = mu_with_units(c, &tuple);
                        if !v.is_zero() {
                            acc.entry(Some(at)).or_default().add_scaled(&v, &(&coef * &s0));
                        }
                    }
                    Some(t) => {
                        if let Some(tx) = t.get(&at) {
                            for (&m, v) in tx.iter() {
                                let mut full = tuple.clone();
                                full.push(m);
                                let r = mu_with_units(c, &full);
                                if !r.is_zero() {
                                    acc.entry(None).or_default().add_scaled(&r, &(&coef * v * &s0));
                                }
                            }
                        }
                    }
                }
            }
            let Some(edges) = out_edges.get(&at) else { continue };
            for &(to, x) in edges {
                for (&m, v) in x.iter() {
                    let mut next = tuple.clone();
                    next.push(m);
                    if !prefixes.contains(&next) {
                        continue;
                    }
                    stack.push((to, next, &coef * v));
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        acc
    }

    /// All nonzero components of `sum_d mu^d(D, ..., D)`.
    pub fn maurer_cartan_residual(&self, c: &AinfCategory) -> Vec<TwistedWitness> {
        let prefixes = self.prefixes(c, 0);
        let edges = self.outgoing();
        let mut out = Vec::new();
        for from in 0..self.summands.len() {
            for (to, r) in self.path_sums(c, from, None, &prefixes, &edges) {
                let r = r.normalized(c.ring());
                if !r.is_zero() {
                    out.push(TwistedWitness {
                        from,
                        to,
                        residual: r,
                        description: format!(
                            "Maurer-Cartan fails from {} to {}",
                            self.summands[from].label,
                            self.summands[to.unwrap()].label
                        ),
                    });
                }
            }
        }
        out
    }

    /// `mu^1` of a morphism `t` from this complex to a plain object (shift 0):
    /// `sum_d mu^{d+1}(D, ..., D, t)` plus `mu^1(t)`, per source summand.
    pub fn closedness_residual(
        &self,
        c: &AinfCategory,
        t: &BTreeMap<usize, MorphChain>,
    ) -> Vec<TwistedWitness> {
        let prefixes = self.prefixes(c, 1);
        let edges = self.outgoing();
        let mut out = Vec::new();
        for from in 0..self.summands.len() {
            let mut r = self
                .path_sums(c, from, Some(t), &prefixes, &edges)
                .remove(&None)
                .unwrap_or_default();
            if let Some(tx) = t.get(&from) {
                let s0 = sign(self.summands[from].shift);
                for (&m, v) in tx.iter() {
                    r.add_scaled(&mu_with_units(c, &[m]), &(v * &s0));
                }
            }
            let r = r.normalized(c.ring());
            if !r.is_zero() {
                out.push(TwistedWitness {
                    from,
                    to: None,
                    residual: r,
                    description: format!("morphism not closed on {}", self.summands[from].label),
                });
            }
        }
        out
    }

    /// Tuples of entries that can still be extended to a nonzero operation, with
    /// `extra` further inputs allowed after them.
    fn prefixes(&self, c: &AinfCategory, extra: usize) -> BTreeSet<Vec<Morph>> {
        let mut set = BTreeSet::new();
        for d in c.arities() {
            for (inputs, _) in c.mu(d).unwrap().iter() {
                for k in 1..=inputs.len().saturating_sub(extra) {
                    set.insert(inputs[..k].iter().map(|&g| Morph::Gen(g)).collect::<Vec<_>>());
                }
            }
        }
        // a single identity, or an identity next to one generator
        let objs: BTreeSet<ObjId> = self.summands.iter().map(|s| s.object).collect();
        for &o in &objs {
            set.insert(vec![Morph::Id(o)]);
            if extra == 0 {
                set.insert(vec![Morph::Id(o), Morph::Id(o)]);
            }
        }
        if extra == 0 {
            for (_, x) in &self.differential {
                for &m in x.keys() {
                    if let Morph::Gen(g) = m {
                        set.insert(vec![Morph::Gen(g)]);
                        set.insert(vec![Morph::Id(c.source(g)), Morph::Gen(g)]);
                        set.insert(vec![Morph::Gen(g), Morph::Id(c.target(g))]);
                    }
                }
            }
        } else {
            for (_, x) in &self.differential {
                for &m in x.keys() {
                    if let Morph::Gen(g) = m {
                        set.insert(vec![Morph::Gen(g)]);
                    }
                }
            }
        }
        set
    }
}

/// Label of a summand of the universal complex: `a_1 .. a_k` then `p`, in
/// composition order, `p` ending at `K`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UniversalWord {
    pub a: Vec<GenId>,
    pub p: usize,
}

pub(crate) fn universal_words(
    c: &AinfCategory,
    right: &SideModule,
    max_length: usize,
) -> Vec<UniversalWord> {
    let b = &right.objects;
    let mut out = Vec::new();
    for len in 0..=max_length {
        for a in paths(c, b, len) {
            let ends: Vec<ObjId> = if len == 0 { b.iter().copied().collect() } else { vec![c.target(a[len - 1])] };
            for end in ends {
                for &p in right.space(end) {
                    out.push(UniversalWord { a: a.clone(), p });
                }
            }
        }
    }
    out
}

fn parity(c: &AinfCategory, xs: &[GenId]) -> i64 {
    xs.iter().map(|&x| c.reduced_degree(x)).sum()
}

pub(crate) fn label_degree(c: &AinfCategory, right: &SideModule, w: &UniversalWord) -> i64 {
    right.generator(w.p).degree + w.a.iter().map(|&a| c.degree(a) - 1).sum::<i64>()
}

/// Differential of the universal complex on the words of `right` with at most
/// `max_length` factors `a_i`. Dropping `a_1` contributes the entry `a_1`; a block
/// collapse after the prefix `a_1..a_l` contributes `-(-1)^{✠_1^l}` times its
/// coefficient on the identity of the first object.
pub(crate) fn build_universal(
    c: &AinfCategory,
    right: &SideModule,
    max_length: usize,
) -> (TwistedComplex, Vec<UniversalWord>) {
    let words = universal_words(c, right, max_length);
    let index: BTreeMap<&UniversalWord, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    // mu^1 terms keep the length but raise the degree, so the filtration mixes both
    let spread = 2 + c.generators().iter().map(|g| g.degree.abs()).max().unwrap_or(0)
        + right.generators().iter().map(|g| g.degree.abs()).max().unwrap_or(0);
    let mut summands = Vec::new();
    for w in &words {
        let object = if w.a.is_empty() { right.generator(w.p).object } else { c.source(w.a[0]) };
        summands.push(Summand {
            object,
            shift: -label_degree(c, right, w),
            level: w.a.len() as i64 * spread - label_degree(c, right, w),
            label: label(c, right, w),
        });
    }
    let mut diff: BTreeMap<(usize, usize), MorphChain> = BTreeMap::new();
    let mut add = |to: usize, from: usize, m: Morph, v: BigInt| {
        if !v.is_zero() {
            diff.entry((to, from)).or_default().add_term(m, v);
        }
    };
    for (j, w) in words.iter().enumerate() {
        let k = w.a.len();
        let l0 = summands[j].object;
        if k >= 1 {
            let w2 = UniversalWord { a: w.a[1..].to_vec(), p: w.p };
            add(index[&w2], j, Morph::Gen(w.a[0]), BigInt::one());
        }
        for ell in 0..=k {
            let s = sign(1 + parity(c, &w.a[..ell]));
            if let Some(x) = right.act(w.p, &w.a[ell..]) {
                for (p2, v) in x.iter() {
                    let w2 = UniversalWord { a: w.a[..ell].to_vec(), p: *p2 };
                    add(index[&w2], j, Morph::Id(l0), &s * v);
                }
            }
            for m in 1..=k - ell {
                let Some(x) = c.mu_gens(&w.a[ell..ell + m]) else { continue };
                for (y, v) in x.iter() {
                    let mut a = w.a[..ell].to_vec();
                    a.push(*y);
                    a.extend_from_slice(&w.a[ell + m..]);
                    add(index[&UniversalWord { a, p: w.p }], j, Morph::Id(l0), &s * v);
                }
            }
        }
    }
    diff.retain(|_, v| !v.is_zero());
    (TwistedComplex { summands, differential: diff }, words)
}

pub(crate) fn label(c: &AinfCategory, right: &SideModule, w: &UniversalWord) -> String {
    let mut parts: Vec<String> = vec![right.generator(w.p).name.clone()];
    parts.extend(w.a.iter().rev().map(|&a| c.name(a).to_string()));
    parts.join("⊗")
}
