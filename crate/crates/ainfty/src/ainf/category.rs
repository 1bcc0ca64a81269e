use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::chain::LinComb;
use crate::linalg::Ring;

pub type ObjId = usize;
pub type GenId = usize;

/// Element of a single hom space.
pub type Chain = LinComb<GenId>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("duplicate object `{0}`")]
    DuplicateObject(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator name `{0}` is ambiguous; qualify it as SRC->TGT:name")]
    AmbiguousGenerator(String),
    #[error("duplicate generator `{name}` in hom({source_obj}, {target})")]
    DuplicateGenerator {
        name: String,
        source_obj: String,
        target: String,
    },
    #[error("operations need arity at least 1")]
    ZeroArity,
    #[error("inputs {0:?} are not composable")]
    NotComposable(Vec<String>),
    #[error("output `{output}` of mu^{arity} on {inputs:?} lies in the wrong hom space")]
    WrongHomSpace {
        arity: usize,
        inputs: Vec<String>,
        output: String,
    },
    #[error("mu^{arity}{inputs:?} -> `{output}` violates the degree rule (expected degree {expected})")]
    DegreeRule {
        arity: usize,
        inputs: Vec<String>,
        output: String,
        expected: i64,
    },
    #[error("unit for `{0}` must be a degree-0 chain in its endomorphism space")]
    BadUnit(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
    pub source: ObjId,
    pub target: ObjId,
}

/// Named generators with degrees.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedBasis {
    pub generators: Vec<(String, i64)>,
}

impl GradedBasis {
    pub fn rank_in_degree(&self, k: i64) -> usize {
        self.generators.iter().filter(|(_, d)| *d == k).count()
    }
}

/// Sparse table `inputs -> output chain`; inputs in boundary order `x_1, ..., x_d`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultilinearMap {
    pub arity: usize,
    terms: BTreeMap<Vec<GenId>, Chain>,
}

impl MultilinearMap {
    pub fn new(arity: usize) -> Self {
        MultilinearMap {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, inputs: Vec<GenId>, output: GenId, coeff: BigInt) {
        assert_eq!(inputs.len(), self.arity);
        let entry = self.terms.entry(inputs.clone()).or_default();
        entry.add_term(output, coeff);
        if entry.is_zero() {
            self.terms.remove(&inputs);
        }
    }

    pub fn get(&self, inputs: &[GenId]) -> Option<&Chain> {
        self.terms.get(inputs)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<GenId>, &Chain)> {
        self.terms.iter()
    }

    /// Flat `(inputs, output, coefficient)` list in deterministic order.
    pub fn term_list(&self) -> Vec<(Vec<GenId>, GenId, BigInt)> {
        self.terms
            .iter()
            .flat_map(|(i, c)| c.iter().map(move |(o, v)| (i.clone(), *o, v.clone())))
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A single structure constant, addressed for mutation testing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermAddress {
    pub arity: usize,
    pub inputs: Vec<GenId>,
    pub output: GenId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AinfCategory {
    ring: Ring,
    objects: Vec<String>,
    gens: Vec<Generator>,
    hom: BTreeMap<(ObjId, ObjId), Vec<GenId>>,
    mu: BTreeMap<usize, MultilinearMap>,
    units: BTreeMap<ObjId, Chain>,
}

impl AinfCategory {
    pub fn builder(ring: Ring) -> CategoryBuilder {
        CategoryBuilder {
            cat: AinfCategory {
                ring,
                objects: Vec::new(),
                gens: Vec::new(),
                hom: BTreeMap::new(),
                mu: BTreeMap::new(),
                units: BTreeMap::new(),
            },
            error: None,
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Same data with coefficients read in another ring.
    pub fn with_ring(&self, ring: Ring) -> AinfCategory {
        let mut c = self.clone();
        c.ring = ring;
        if ring == Ring::F2 {
            for m in c.mu.values_mut() {
                let terms = std::mem::take(&mut m.terms);
                for (k, v) in terms {
                    let v = v.normalized(ring);
                    if !v.is_zero() {
                        m.terms.insert(k, v);
                    }
                }
            }
            for u in c.units.values_mut() {
                *u = u.normalized(ring);
            }
        }
        c
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_id(&self, name: &str) -> Result<ObjId, CategoryError> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| CategoryError::UnknownObject(name.to_string()))
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o]
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, g: GenId) -> &Generator {
        &self.gens[g]
    }

    pub fn degree(&self, g: GenId) -> i64 {
        self.gens[g].degree
    }

    /// `deg + 1`.
    pub fn reduced_degree(&self, g: GenId) -> i64 {
        reduced_degree(self.gens[g].degree)
    }

    pub fn source(&self, g: GenId) -> ObjId {
        self.gens[g].source
    }

    pub fn target(&self, g: GenId) -> ObjId {
        self.gens[g].target
    }

    pub fn name(&self, g: GenId) -> &str {
        &self.gens[g].name
    }

    /// Name that is unambiguous inside the whole category.
    pub fn qualified_name(&self, g: GenId) -> String {
        let gen = &self.gens[g];
        if self.gens.iter().filter(|h| h.name == gen.name).count() == 1 {
            gen.name.clone()
        } else {
            format!(
                "{}->{}:{}",
                self.objects[gen.source], self.objects[gen.target], gen.name
            )
        }
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[GenId] {
        self.hom.get(&(a, b)).map_or(&[], |v| v.as_slice())
    }

    pub fn hom_basis(&self, a: ObjId, b: ObjId) -> GradedBasis {
        GradedBasis {
            generators: self
                .hom(a, b)
                .iter()
                .map(|&g| (self.gens[g].name.clone(), self.gens[g].degree))
                .collect(),
        }
    }

    /// Looks up a generator by plain name (if unique) or by `SRC->TGT:name`.
    pub fn find_generator(&self, spec: &str) -> Result<GenId, CategoryError> {
        find_generator(&self.objects, &self.gens, spec)
    }

    pub fn find_in_hom(&self, a: ObjId, b: ObjId, name: &str) -> Option<GenId> {
        self.hom(a, b).iter().copied().find(|&g| self.gens[g].name == name)
    }

    pub fn mu(&self, d: usize) -> Option<&MultilinearMap> {
        self.mu.get(&d)
    }

    pub fn arities(&self) -> Vec<usize> {
        self.mu
            .iter()
            .filter(|(_, m)| !m.is_empty())
            .map(|(&d, _)| d)
            .collect()
    }

    pub fn d_max(&self) -> usize {
        self.arities().last().copied().unwrap_or(0)
    }

    /// `mu^d` on a generator tuple in boundary order; `None` means zero.
    pub fn mu_gens(&self, inputs: &[GenId]) -> Option<&Chain> {
        self.mu.get(&inputs.len())?.get(inputs)
    }

    pub fn units(&self) -> &BTreeMap<ObjId, Chain> {
        &self.units
    }

    pub fn unit(&self, o: ObjId) -> Option<&Chain> {
        self.units.get(&o)
    }

    pub fn is_composable(&self, inputs: &[GenId]) -> bool {
        inputs
            .windows(2)
            .all(|w| self.gens[w[0]].target == self.gens[w[1]].source)
    }

    /// Bilinear extension of `mu^d`; inputs in boundary order.
    pub fn apply_mu(&self, inputs: &[&Chain]) -> Result<Chain, CategoryError> {
        let d = inputs.len();
        if d == 0 {
            return Err(CategoryError::ZeroArity);
        }
        let mut out = Chain::new();
        let Some(table) = self.mu.get(&d) else {
            return Ok(out);
        };
        let supports: Vec<Vec<(GenId, BigInt)>> = inputs
            .iter()
            .map(|c| c.iter().map(|(g, v)| (*g, v.clone())).collect())
            .collect();
        let mut idx = vec![0usize; d];
        if supports.iter().any(|s| s.is_empty()) {
            return Ok(out);
        }
        loop {
            let tuple: Vec<GenId> = (0..d).map(|i| supports[i][idx[i]].0).collect();
            if !self.is_composable(&tuple) {
                return Err(CategoryError::NotComposable(
                    tuple.iter().map(|&g| self.qualified_name(g)).collect(),
                ));
            }
            if let Some(res) = table.get(&tuple) {
                let mut c = BigInt::from(1);
                for i in 0..d {
                    c *= &supports[i][idx[i]].1;
                }
                out.add_scaled(res, &c);
            }
            let mut i = 0;
            loop {
                if i == d {
                    return Ok(out.normalized(self.ring));
                }
                idx[i] += 1;
                if idx[i] < supports[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }

    /// All composable generator tuples of length `d` (boundary order), restricted
    /// to generators between objects of `objs` if given.
    pub fn composable_tuples(&self, d: usize, objs: Option<&BTreeSet<ObjId>>) -> Vec<Vec<GenId>> {
        let allowed = |g: GenId| {
            objs.is_none_or(|s| s.contains(&self.gens[g].source) && s.contains(&self.gens[g].target))
        };
        let mut out = Vec::new();
        if d == 0 {
            return out;
        }
        let mut stack: Vec<Vec<GenId>> = (0..self.gens.len())
            .filter(|&g| allowed(g))
            .map(|g| vec![g])
            .collect();
        stack.reverse();
        while let Some(t) = stack.pop() {
            if t.len() == d {
                out.push(t);
                continue;
            }
            let last = *t.last().unwrap();
            let tgt = self.gens[last].target;
            let mut next: Vec<Vec<GenId>> = Vec::new();
            for b in 0..self.objects.len() {
                for &g in self.hom(tgt, b) {
                    if allowed(g) {
                        let mut u = t.clone();
                        u.push(g);
                        next.push(u);
                    }
                }
            }
            next.sort();
            next.reverse();
            stack.extend(next);
        }
        out.sort();
        out
    }

    /// Every nonzero structure constant of `mu^d` for the given arities.
    pub fn term_addresses(&self, arities: &[usize]) -> Vec<TermAddress> {
        let mut out = Vec::new();
        for &d in arities {
            if let Some(m) = self.mu.get(&d) {
                for (inputs, output, _) in m.term_list() {
                    out.push(TermAddress {
                        arity: d,
                        inputs,
                        output,
                    });
                }
            }
        }
        out
    }

    /// Copy with one structure constant negated.
    pub fn with_negated_term(&self, addr: &TermAddress) -> AinfCategory {
        let mut c = self.clone();
        let m = c.mu.get_mut(&addr.arity).expect("arity present");
        let coeff = m.get(&addr.inputs).map(|ch| ch.coeff(&addr.output)).unwrap_or_default();
        m.add(addr.inputs.clone(), addr.output, -BigInt::from(2) * coeff);
        c
    }

    /// Copy with an extra term added to `mu^d`.
    pub fn with_extra_term(&self, inputs: Vec<GenId>, output: GenId, coeff: BigInt) -> AinfCategory {
        let mut c = self.clone();
        let d = inputs.len();
        c.mu.entry(d).or_insert_with(|| MultilinearMap::new(d)).add(inputs, output, coeff);
        c
    }

    pub fn with_units(&self, units: BTreeMap<ObjId, Chain>) -> AinfCategory {
        let mut c = self.clone();
        c.units = units;
        c
    }

    pub fn format_chain(&self, c: &Chain) -> String {
        format_lincomb(c, |g| self.qualified_name(*g))
    }
}

pub fn reduced_degree(deg: i64) -> i64 {
    deg + 1
}

pub fn format_lincomb<K: Ord + Clone>(c: &LinComb<K>, mut name: impl FnMut(&K) -> String) -> String {
    if c.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, (k, v)) in c.iter().enumerate() {
        let n = name(k);
        let neg = v < &BigInt::zero();
        let abs = if neg { -v.clone() } else { v.clone() };
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if abs != BigInt::from(1) {
            s.push_str(&format!("{abs}*"));
        }
        s.push_str(&n);
    }
    s
}

fn find_generator(objects: &[String], gens: &[Generator], spec: &str) -> Result<GenId, CategoryError> {
    if let Some((pair, name)) = spec.split_once(':') {
        if let Some((a, b)) = pair.split_once("->") {
            let a = objects
                .iter()
                .position(|o| o == a)
                .ok_or_else(|| CategoryError::UnknownObject(a.to_string()))?;
            let b = objects
                .iter()
                .position(|o| o == b)
                .ok_or_else(|| CategoryError::UnknownObject(b.to_string()))?;
            return gens
                .iter()
                .position(|g| g.source == a && g.target == b && g.name == name)
                .ok_or_else(|| CategoryError::UnknownGenerator(spec.to_string()));
        }
    }
    let hits: Vec<GenId> = (0..gens.len()).filter(|&g| gens[g].name == spec).collect();
    match hits.len() {
        0 => Err(CategoryError::UnknownGenerator(spec.to_string())),
        1 => Ok(hits[0]),
        _ => Err(CategoryError::AmbiguousGenerator(spec.to_string())),
    }
}

/// Incremental construction; the first error is kept and returned by `build`.
pub struct CategoryBuilder {
    cat: AinfCategory,
    error: Option<CategoryError>,
}

impl CategoryBuilder {
    fn fail(&mut self, e: CategoryError) {
        if self.error.is_none() {
            self.error = Some(e);
        }
    }

    pub fn object(&mut self, name: &str) -> &mut Self {
        if self.cat.objects.iter().any(|o| o == name) {
            self.fail(CategoryError::DuplicateObject(name.to_string()));
        } else {
            self.cat.objects.push(name.to_string());
        }
        self
    }

    pub fn generator(&mut self, source: &str, target: &str, name: &str, degree: i64) -> &mut Self {
        let (a, b) = match (self.cat.object_id(source), self.cat.object_id(target)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                self.fail(e);
                return self;
            }
        };
        if self.cat.find_in_hom(a, b, name).is_some() {
            self.fail(CategoryError::DuplicateGenerator {
                name: name.to_string(),
                source_obj: source.to_string(),
                target: target.to_string(),
            });
            return self;
        }
        let id = self.cat.gens.len();
        self.cat.gens.push(Generator {
            name: name.to_string(),
            degree,
            source: a,
            target: b,
        });
        self.cat.hom.entry((a, b)).or_default().push(id);
        self
    }

    /// Adds `coeff * output` to `mu^d(inputs)`, inputs in boundary order.
    pub fn term(&mut self, inputs: &[&str], output: &str, coeff: i64) -> &mut Self {
        let ids: Result<Vec<GenId>, _> = inputs.iter().map(|s| self.cat.find_generator(s)).collect();
        let out = self.cat.find_generator(output);
        match (ids, out) {
            (Ok(ids), Ok(out)) => self.term_ids(ids, out, BigInt::from(coeff)),
            (Err(e), _) | (_, Err(e)) => {
                self.fail(e);
                self
            }
        }
    }

    pub fn term_ids(&mut self, inputs: Vec<GenId>, output: GenId, coeff: BigInt) -> &mut Self {
        let d = inputs.len();
        if d == 0 {
            self.fail(CategoryError::ZeroArity);
            return self;
        }
        let names: Vec<String> = inputs.iter().map(|&g| self.cat.qualified_name(g)).collect();
        if !self.cat.is_composable(&inputs) {
            self.fail(CategoryError::NotComposable(names));
            return self;
        }
        let src = self.cat.gens[inputs[0]].source;
        let tgt = self.cat.gens[inputs[d - 1]].target;
        let o = &self.cat.gens[output];
        if o.source != src || o.target != tgt {
            let output = self.cat.qualified_name(output);
            self.fail(CategoryError::WrongHomSpace {
                arity: d,
                inputs: names,
                output,
            });
            return self;
        }
        let expected = 2 - d as i64 + inputs.iter().map(|&g| self.cat.gens[g].degree).sum::<i64>();
        if o.degree != expected {
            let output = self.cat.qualified_name(output);
            self.fail(CategoryError::DegreeRule {
                arity: d,
                inputs: names,
                output,
                expected,
            });
            return self;
        }
        let ring = self.cat.ring;
        self.cat
            .mu
            .entry(d)
            .or_insert_with(|| MultilinearMap::new(d))
            .add(inputs, output, ring.normalize(coeff));
        self
    }

    pub fn unit(&mut self, object: &str, chain: &[(i64, &str)]) -> &mut Self {
        let o = match self.cat.object_id(object) {
            Ok(o) => o,
            Err(e) => {
                self.fail(e);
                return self;
            }
        };
        let mut c = Chain::new();
        for &(v, g) in chain {
            match self.cat.find_generator(g) {
                Ok(g) => c.add_term(g, BigInt::from(v)),
                Err(e) => {
                    self.fail(e);
                    return self;
                }
            }
        }
        self.unit_chain(o, c)
    }

    pub fn unit_chain(&mut self, o: ObjId, c: Chain) -> &mut Self {
        let ok = c.keys().all(|&g| {
            let gen = &self.cat.gens[g];
            gen.source == o && gen.target == o && gen.degree == 0
        });
        if !ok {
            let name = self.cat.objects[o].clone();
            self.fail(CategoryError::BadUnit(name));
        } else {
            self.cat.units.insert(o, c);
        }
        self
    }

    /// Takes the first error recorded so far, so callers can attribute it.
    pub fn check(&mut self) -> Result<(), CategoryError> {
        match self.error.take() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    pub fn build(&mut self) -> Result<AinfCategory, CategoryError> {
        if let Some(e) = self.error.take() {
            return Err(e);
        }
        Ok(self.cat.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_objects() -> AinfCategory {
        AinfCategory::builder(Ring::Integers)
            .object("A")
            .object("B")
            .generator("A", "A", "e", 0)
            .generator("B", "B", "e", 0)
            .generator("A", "B", "f", 0)
            .term(&["A->A:e", "A->A:e"], "A->A:e", 1)
            .term(&["A->A:e", "f"], "f", 1)
            .build()
            .unwrap()
    }

    #[test]
    fn qualified_lookup() {
        let c = two_objects();
        assert!(matches!(
            c.find_generator("e"),
            Err(CategoryError::AmbiguousGenerator(_))
        ));
        let e_a = c.find_generator("A->A:e").unwrap();
        assert_eq!(c.qualified_name(e_a), "A->A:e");
        assert_eq!(c.qualified_name(c.find_generator("f").unwrap()), "f");
    }

    #[test]
    fn degree_rule_is_enforced() {
        let r = AinfCategory::builder(Ring::Integers)
            .object("K")
            .generator("K", "K", "e", 0)
            .term(&["e", "e", "e"], "e", 1)
            .build();
        assert!(matches!(r, Err(CategoryError::DegreeRule { expected: -1, .. })));
    }

    #[test]
    fn non_composable_term_is_rejected() {
        let r = AinfCategory::builder(Ring::Integers)
            .object("A")
            .object("B")
            .generator("A", "B", "f", 0)
            .term(&["f", "f"], "f", 1)
            .build();
        assert!(matches!(r, Err(CategoryError::NotComposable(_))));
    }

    #[test]
    fn composable_tuple_enumeration() {
        let c = two_objects();
        assert_eq!(c.composable_tuples(1, None).len(), 3);
        // e_A e_A, e_A f, f e_B, e_B e_B
        assert_eq!(c.composable_tuples(2, None).len(), 4);
        let only_a = BTreeSet::from([0]);
        assert_eq!(c.composable_tuples(2, Some(&only_a)).len(), 1);
    }

    #[test]
    fn apply_mu_is_multilinear() {
        let c = two_objects();
        let e = c.find_generator("A->A:e").unwrap();
        let f = c.find_generator("f").unwrap();
        let x = Chain::single(e, 3);
        let y = Chain::single(f, -2);
        let r = c.apply_mu(&[&x, &y]).unwrap();
        assert_eq!(r, Chain::single(f, -6));
        let empty = Chain::new();
        assert!(c.apply_mu(&[&empty]).unwrap().is_zero());
        assert!(matches!(
            c.apply_mu(&[&y, &y]),
            Err(CategoryError::NotComposable(_))
        ));
    }
}
