use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::Ring;

/// Finitely supported integer combination of keys.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, BigInt>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(k: K, c: impl Into<BigInt>) -> Self {
        let mut l = Self::new();
        l.add_term(k, c.into());
        l
    }

    pub fn basis(k: K) -> Self {
        Self::single(k, BigInt::one())
    }

    pub fn add_term(&mut self, k: K, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb<K>, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add_assign(&mut self, other: &LinComb<K>) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn scaled(&self, c: &BigInt) -> LinComb<K> {
        let mut out = LinComb::new();
        out.add_scaled(self, c);
        out
    }

    pub fn negated(&self) -> LinComb<K> {
        self.scaled(&-BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> BigInt {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigInt)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn normalized(&self, ring: Ring) -> LinComb<K> {
        match ring {
            Ring::Integers => self.clone(),
            Ring::F2 => {
                let mut out = LinComb::new();
                for (k, v) in &self.terms {
                    out.add_term(k.clone(), ring.normalize(v.clone()));
                }
                out
            }
        }
    }

    pub fn map_keys<J: Ord + Clone>(&self, mut f: impl FnMut(&K) -> J) -> LinComb<J> {
        let mut out = LinComb::new();
        for (k, v) in &self.terms {
            out.add_term(f(k), v.clone());
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, BigInt)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, BigInt)>>(iter: I) -> Self {
        let mut l = LinComb::new();
        for (k, c) in iter {
            l.add_term(k, c);
        }
        l
    }
}

/// `(-1)^parity` as an integer.
pub fn sign(parity: i64) -> BigInt {
    if parity.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}
