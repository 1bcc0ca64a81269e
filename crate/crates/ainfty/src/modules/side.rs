use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::ainf::{sign, AinfCategory, GenId, LinComb, ObjId};
use crate::linalg::Ring;

use super::ModuleError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// Generator of a module space `M(L)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModGen {
    pub name: String,
    pub degree: i64,
    pub object: ObjId,
    /// Set for Yoneda modules: the underlying morphism.
    pub cat_gen: Option<GenId>,
}

pub type ModChain = LinComb<usize>;

/// Left or right A-infinity module over the full subcategory on `objects`.
///
/// Action keys are `(m, [a_1, ..., a_l])` with the `a`s in composition order.
/// For a left module `m` lies in `M(L_0)` and `a_1 : L_0 -> L_1` is applied
/// first; for a right module `a_l` ends at the object of `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideModule {
    pub side: Side,
    pub ring: Ring,
    pub objects: BTreeSet<ObjId>,
    gens: Vec<ModGen>,
    spaces: BTreeMap<ObjId, Vec<usize>>,
    actions: BTreeMap<(usize, Vec<GenId>), ModChain>,
}

impl SideModule {
    pub fn new(side: Side, ring: Ring, objects: BTreeSet<ObjId>) -> Self {
        SideModule {
            side,
            ring,
            objects,
            gens: Vec::new(),
            spaces: BTreeMap::new(),
            actions: BTreeMap::new(),
        }
    }

    pub fn add_generator(&mut self, g: ModGen) -> usize {
        let id = self.gens.len();
        self.spaces.entry(g.object).or_default().push(id);
        self.gens.push(g);
        id
    }

    pub fn add_action(&mut self, m: usize, inputs: Vec<GenId>, out: usize, c: BigInt) {
        let key = (m, inputs);
        let entry = self.actions.entry(key.clone()).or_default();
        entry.add_term(out, self.ring.normalize(c));
        if entry.is_zero() {
            self.actions.remove(&key);
        }
    }

    pub fn generators(&self) -> &[ModGen] {
        &self.gens
    }

    pub fn generator(&self, m: usize) -> &ModGen {
        &self.gens[m]
    }

    pub fn space(&self, o: ObjId) -> &[usize] {
        self.spaces.get(&o).map_or(&[], |v| v.as_slice())
    }

    pub fn act(&self, m: usize, inputs: &[GenId]) -> Option<&ModChain> {
        self.actions.get(&(m, inputs.to_vec()))
    }

    pub fn actions(&self) -> impl Iterator<Item = (&(usize, Vec<GenId>), &ModChain)> {
        self.actions.iter()
    }

    pub fn find(&self, name: &str, object: ObjId) -> Option<usize> {
        self.space(object).iter().copied().find(|&m| self.gens[m].name == name)
    }
}

/// `Y^l_K(L) = hom(K, L)` or `Y^r_K(L) = hom(L, K)` over the subcategory `b`.
///
/// Signs are those of the diagonal bimodule with the other slot frozen at `K`:
/// `mu^{l|1}(a_l..a_1, q) = -mu^{l+1}(a_l, ..., a_1, q)` and
/// `mu^{1|s}(p, a..) = (-1)^{1 + sum ||a||} mu^{s+1}(p, a..)`.
pub fn yoneda_module(
    c: &AinfCategory,
    k: ObjId,
    side: Side,
    b: &BTreeSet<ObjId>,
) -> Result<SideModule, ModuleError> {
    if k >= c.objects().len() {
        return Err(ModuleError::UnknownObject(k));
    }
    if let Some(&o) = b.iter().find(|&&o| o >= c.objects().len()) {
        return Err(ModuleError::UnknownObject(o));
    }
    let mut m = SideModule::new(side, c.ring(), b.clone());
    let mut index: BTreeMap<GenId, usize> = BTreeMap::new();
    for &l in b {
        let gens = match side {
            Side::Left => c.hom(k, l),
            Side::Right => c.hom(l, k),
        };
        for &g in gens {
            let id = m.add_generator(ModGen {
                name: c.name(g).to_string(),
                degree: c.degree(g),
                object: l,
                cat_gen: Some(g),
            });
            index.insert(g, id);
        }
    }
    for d in c.arities() {
        let table = c.mu(d).unwrap();
        for (inputs, out) in table.iter() {
            let (mg, rest) = match side {
                Side::Left => (inputs[0], &inputs[1..]),
                Side::Right => (inputs[d - 1], &inputs[..d - 1]),
            };
            let Some(&mid) = index.get(&mg) else { continue };
            if !rest.iter().all(|&a| b.contains(&c.source(a)) && b.contains(&c.target(a))) {
                continue;
            }
            let s = match side {
                Side::Left => sign(1),
                Side::Right => sign(1 + rest.iter().map(|&a| c.reduced_degree(a)).sum::<i64>()),
            };
            for (o, v) in out.iter() {
                if let Some(&oid) = index.get(o) {
                    m.add_action(mid, rest.to_vec(), oid, &s * v);
                }
            }
        }
    }
    Ok(m)
}
