use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::ainf::{sign, AinfCategory};

use super::bimodule::{
    bimodule_inputs, category_block_terms, module_block_splits, BimodChain, BimodKey, Bimodule,
    BimoduleFailure, BimoduleReport,
};
use super::ModuleError;

/// Degree `n` homomorphism `Δ : P -> Q`; keys are inputs over `P`, values
/// chains in `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleHom {
    pub shift: i64,
    components: BTreeMap<BimodKey, BimodChain>,
}

impl BimoduleHom {
    pub fn new(shift: i64) -> Self {
        BimoduleHom {
            shift,
            components: BTreeMap::new(),
        }
    }

    pub fn zero(shift: i64) -> Self {
        Self::new(shift)
    }

    /// `Δ^{0|1|0} = id`, all other components zero.
    pub fn identity(p: &Bimodule) -> Self {
        let mut h = Self::new(0);
        for g in 0..p.generators().len() {
            h.add(BimodKey::new(Vec::new(), g, Vec::new()), g, BigInt::from(1));
        }
        h
    }

    pub fn add(&mut self, key: BimodKey, out: usize, c: BigInt) {
        let entry = self.components.entry(key.clone()).or_default();
        entry.add_term(out, c);
        if entry.is_zero() {
            self.components.remove(&key);
        }
    }

    pub fn get(&self, key: &BimodKey) -> Option<&BimodChain> {
        self.components.get(key)
    }

    pub fn components(&self) -> impl Iterator<Item = (&BimodKey, &BimodChain)> {
        self.components.iter()
    }

    pub fn component(&self, r: usize, s: usize) -> BTreeMap<&BimodKey, &BimodChain> {
        self.components
            .iter()
            .filter(|(k, _)| k.r() == r && k.s() == s)
            .collect()
    }

    pub fn with_negated(&self, key: &BimodKey, out: usize) -> BimoduleHom {
        let mut h = self.clone();
        let c = self.get(key).map(|ch| ch.coeff(&out)).unwrap_or_default();
        h.add(key.clone(), out, -2 * c);
        h
    }

    /// Degree rule `deg Δ(x) = n - r - s + deg p + sum deg a`.
    pub fn check_degrees(
        &self,
        c: &AinfCategory,
        source: &Bimodule,
        target: &Bimodule,
    ) -> Result<(), ModuleError> {
        for (k, out) in &self.components {
            let expected = self.shift - (k.r() + k.s()) as i64
                + source.generator(k.p).degree
                + k.right.iter().chain(&k.left).map(|&g| c.degree(g)).sum::<i64>();
            for (o, _) in out.iter() {
                let found = target.generator(*o).degree;
                if found != expected {
                    return Err(ModuleError::DegreeRule {
                        input: source.generator(k.p).name.clone(),
                        output: target.generator(*o).name.clone(),
                        expected,
                        found,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Left side of the homomorphism equation for `Δ : P -> Q` on one input.
pub fn bimodule_hom_relation(
    c: &AinfCategory,
    p: &Bimodule,
    q: &Bimodule,
    h: &BimoduleHom,
    key: &BimodKey,
) -> BimodChain {
    let n = h.shift;
    let mut out = BimodChain::new();
    // mu_Q(.., Δ(..), ..) and Δ(.., mu_P(..), ..)
    module_block_splits(c, key, |inner, right, left, pre| {
        if let Some(x) = h.get(&inner) {
            let sg = sign(n * pre);
            for (y, v) in x.iter() {
                let k = BimodKey::new(right.to_vec(), *y, left.to_vec());
                if let Some(z) = q.op(&k) {
                    out.add_scaled(z, &(&sg * v));
                }
            }
        }
        if let Some(x) = p.op(&inner) {
            let sg = sign(pre + n + 1);
            for (y, v) in x.iter() {
                let k = BimodKey::new(right.to_vec(), *y, left.to_vec());
                if let Some(z) = h.get(&k) {
                    out.add_scaled(z, &(&sg * v));
                }
            }
        }
    });
    let sg = sign(n + 1);
    category_block_terms(c, key, p.generator(key.p).degree, |k, coeff| {
        if let Some(z) = h.get(k) {
            out.add_scaled(z, &(&sg * coeff));
        }
    });
    out.normalized(q.ring)
}

/// Checks the homomorphism equation on every composable input over `P` with
/// `r + s <= max_inputs`.
pub fn verify_bimodule_hom(
    c: &AinfCategory,
    p: &Bimodule,
    q: &Bimodule,
    h: &BimoduleHom,
    max_inputs: usize,
) -> BimoduleReport {
    let keys = bimodule_inputs(c, p, max_inputs);
    let failures = keys
        .par_iter()
        .filter_map(|k| {
            let r = bimodule_hom_relation(c, p, q, h, k);
            (!r.is_zero()).then(|| BimoduleFailure { key: k.clone(), residual: r })
        })
        .collect();
    BimoduleReport {
        max_inputs,
        tuples_checked: keys.len(),
        failures,
    }
}
