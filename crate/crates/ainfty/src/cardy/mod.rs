//! Chain-level check of the relation between the coproduct, the open-closed
//! map and the closed-open map, and the induced statement on homology.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::ainf::{AinfCategory, ObjId};
use crate::hochschild::{cc_of_delta, HochschildError, TruncatedCC};
use crate::linalg::{
    maps_agree_on_homology, solve_over, verify_chain_map, ChainComplex, ChainMapWitness, GradedMap, IntMatrix,
    LinalgError, Solution,
};
use crate::modules::{
    diagonal_bimodule, hom_complex, mu_composition, tensor_bimodule, tensor_over_category, verify_bimodule_hom,
    yoneda_module, BimoduleHom, ModuleError, Side, SideModule, TensorComplex,
};

#[cfg(test)]
mod tests;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CardyError {
    #[error("coproduct is not a bimodule map on an input with {0} morphisms")]
    NotABimoduleMap(usize),
    #[error("{which} is not a chain map: fails on {} in degree {}", .witness.label, .witness.degree)]
    NotAChainMap { which: &'static str, witness: ChainMapWitness },
    #[error("{which} has degree {found}, expected {expected}")]
    WrongDegree { which: &'static str, expected: i64, found: i64 },
    #[error("{which}: component in degree {degree} is {found:?}, expected {expected:?}")]
    WrongShape {
        which: &'static str,
        degree: i64,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("truncation length must be at least 1")]
    EmptyTruncation,
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The algebraic side: `CC(B)` truncated at length `N`, the coproduct and the
/// composite `μ ∘ CC(Δ) : CC(B) -> hom(K, K)`.
#[derive(Clone, Debug)]
pub struct CardySetup {
    pub object: ObjId,
    pub subcategory: BTreeSet<ObjId>,
    pub delta: BimoduleHom,
    pub max_length: usize,
    pub left: SideModule,
    pub right: SideModule,
    pub cc: TruncatedCC,
    pub tensor: TensorComplex,
    pub hom: ChainComplex,
    pub composite: GradedMap,
}

impl CardySetup {
    pub fn new(
        c: &AinfCategory,
        object: ObjId,
        subcategory: &BTreeSet<ObjId>,
        delta: &BimoduleHom,
        max_length: usize,
    ) -> Result<CardySetup, CardyError> {
        if max_length == 0 {
            return Err(CardyError::EmptyTruncation);
        }
        let left = yoneda_module(c, object, Side::Left, subcategory)?;
        let right = yoneda_module(c, object, Side::Right, subcategory)?;
        let diag = diagonal_bimodule(c, subcategory)?;
        let target = tensor_bimodule(&left, &right)?;
        delta.check_degrees(c, &diag, &target)?;
        let rep = verify_bimodule_hom(c, &diag, &target, delta, max_length);
        if let Some(f) = rep.failures.first() {
            return Err(CardyError::NotABimoduleMap(f.key.r() + f.key.s()));
        }
        let cc = TruncatedCC::build(c, subcategory, max_length)?;
        let tensor = tensor_over_category(c, &right, &left, max_length - 1)?;
        let hom = hom_complex(c, object, object);
        let ccd = cc_of_delta(c, delta, &left, &right, &cc, &tensor)?;
        let mu = mu_composition(c, &right, &left, &tensor, object);
        let composite = mu.compose(&ccd, &cc.complex, &tensor.complex, &hom);
        Ok(CardySetup {
            object,
            subcategory: subcategory.clone(),
            delta: delta.clone(),
            max_length,
            left,
            right,
            cc,
            tensor,
            hom,
            composite,
        })
    }

    pub fn degree(&self) -> i64 {
        self.delta.shift
    }

    pub fn ring(&self) -> crate::linalg::Ring {
        self.hom.ring()
    }
}

/// User-supplied closed side: a complex `S` with `OC : CC(B) -> S` of degree `n`
/// and `CO : S -> hom(K, K)` of degree 0.
#[derive(Clone, Debug)]
pub struct OpenClosedData {
    pub closed: ChainComplex,
    pub oc: GradedMap,
    pub co: GradedMap,
    pub n: i64,
}

fn check_shape(
    which: &'static str,
    f: &GradedMap,
    a: &ChainComplex,
    b: &ChainComplex,
) -> Result<(), CardyError> {
    for (&k, m) in &f.maps {
        let expected = (b.dim(k + f.shift), a.dim(k));
        if (m.rows(), m.cols()) != expected {
            return Err(CardyError::WrongShape {
                which,
                degree: k,
                expected,
                found: (m.rows(), m.cols()),
            });
        }
    }
    Ok(())
}

fn check_chain_map(
    which: &'static str,
    f: &GradedMap,
    a: &ChainComplex,
    b: &ChainComplex,
) -> Result<(), CardyError> {
    check_shape(which, f, a, b)?;
    match verify_chain_map(a, b, f).failures.into_iter().next() {
        Some(witness) => Err(CardyError::NotAChainMap { which, witness }),
        None => Ok(()),
    }
}

impl OpenClosedData {
    /// Checks degrees, shapes and the chain-map identities against `setup`.
    pub fn new(
        setup: &CardySetup,
        closed: ChainComplex,
        oc: GradedMap,
        co: GradedMap,
    ) -> Result<OpenClosedData, CardyError> {
        let n = setup.degree();
        if oc.shift != n {
            return Err(CardyError::WrongDegree { which: "OC", expected: n, found: oc.shift });
        }
        if co.shift != 0 {
            return Err(CardyError::WrongDegree { which: "CO", expected: 0, found: co.shift });
        }
        check_chain_map("OC", &oc, &setup.cc.complex, &closed)?;
        check_chain_map("CO", &co, &closed, &setup.hom)?;
        Ok(OpenClosedData { closed, oc, co, n })
    }

    /// `S = hom(K, K)`, `CO = id`, `OC = μ ∘ CC(Δ)`.
    pub fn telescoping(setup: &CardySetup) -> OpenClosedData {
        OpenClosedData {
            closed: setup.hom.clone(),
            oc: setup.composite.clone(),
            co: GradedMap::identity(&setup.hom),
            n: setup.degree(),
        }
    }

    /// `CO ∘ OC : CC(B) -> hom(K, K)`.
    pub fn composite(&self, setup: &CardySetup) -> GradedMap {
        self.co.compose(&self.oc, &setup.cc.complex, &self.closed, &setup.hom)
    }
}

/// `H : CC(B) -> hom(K, K)` of degree `n - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyWitness {
    pub h: GradedMap,
}

impl HomotopyWitness {
    pub fn zero(n: i64) -> Self {
        HomotopyWitness { h: GradedMap::new(n - 1) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyFailure {
    pub degree: i64,
    pub word: String,
    pub residual: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyReport {
    pub max_length: usize,
    pub words_checked: usize,
    pub failures: Vec<HomotopyFailure>,
}

impl HomotopyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn sign_of(p: i64) -> BigInt {
    if p.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `CO ∘ OC - μ ∘ CC(Δ)` in degree `k`.
fn discrepancy(setup: &CardySetup, data: &OpenClosedData, k: i64) -> IntMatrix {
    let cc = &setup.cc.complex;
    let f = data.composite(setup);
    f.component(cc, &setup.hom, k).sub(&setup.composite.component(cc, &setup.hom, k))
}

/// Evaluates `(-1)^n d H + H b + μ ∘ CC(Δ) - CO ∘ OC` on every word of length
/// `<= N`, where `d` is the differential of `hom(K, K)`.
pub fn verify_homotopy_equation(
    setup: &CardySetup,
    data: &OpenClosedData,
    witness: &HomotopyWitness,
) -> Result<HomotopyReport, CardyError> {
    let n = setup.degree();
    if witness.h.shift != n - 1 {
        return Err(CardyError::WrongDegree { which: "H", expected: n - 1, found: witness.h.shift });
    }
    let cc = &setup.cc.complex;
    let hom = &setup.hom;
    check_shape("H", &witness.h, cc, hom)?;
    let ring = setup.ring();
    let sg = sign_of(n);
    let mut failures = Vec::new();
    let mut words_checked = 0;
    for k in cc.degrees() {
        let dh = hom.differential(k + n - 1).mul(&witness.h.component(cc, hom, k)).scale(&sg);
        let hb = witness.h.component(cc, hom, k + 1).mul(&cc.differential(k));
        let total = dh.add(&hb).sub(&discrepancy(setup, data, k));
        words_checked += cc.dim(k);
        for j in 0..total.cols() {
            let col: Vec<BigInt> = total.column(j).into_iter().map(|x| ring.normalize(x)).collect();
            if col.iter().any(|x| !x.is_zero()) {
                failures.push(HomotopyFailure {
                    degree: k,
                    word: cc.basis(k)[j].clone(),
                    residual: col,
                });
            }
        }
    }
    Ok(HomotopyReport {
        max_length: setup.max_length,
        words_checked,
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomotopySolution {
    Witness(HomotopyWitness),
    /// A solution exists over the rationals only.
    NoIntegralSolution,
    NoSolution,
}

/// Solves the homotopy equation for `H` as one linear system over the ring.
pub fn solve_homotopy(setup: &CardySetup, data: &OpenClosedData) -> Result<HomotopySolution, CardyError> {
    let n = setup.degree();
    let cc = &setup.cc.complex;
    let hom = &setup.hom;
    let degrees = cc.degrees();
    // unknown block for H_k: hom.dim(k + n - 1) x cc.dim(k), row-major
    let mut offset = std::collections::BTreeMap::new();
    let mut vars = 0;
    for &k in &degrees {
        offset.insert(k, vars);
        vars += hom.dim(k + n - 1) * cc.dim(k);
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let sg = sign_of(n);
    for &k in &degrees {
        let (out, cols) = (hom.dim(k + n), cc.dim(k));
        let d = hom.differential(k + n - 1);
        let b = cc.differential(k);
        let f = discrepancy(setup, data, k);
        let mid = hom.dim(k + n - 1);
        for i in 0..out {
            for j in 0..cols {
                let mut row = vec![BigInt::zero(); vars];
                // (-1)^n sum_p d[i, p] H_k[p, j]
                for p in 0..mid {
                    let v = &d[(i, p)];
                    if !v.is_zero() {
                        row[offset[&k] + p * cols + j] += &sg * v;
                    }
                }
                // sum_q H_{k+1}[i, q] b[q, j]
                if let Some(&o1) = offset.get(&(k + 1)) {
                    let c1 = cc.dim(k + 1);
                    for q in 0..c1 {
                        let v = &b[(q, j)];
                        if !v.is_zero() {
                            row[o1 + i * c1 + q] += v;
                        }
                    }
                }
                rows.push(row);
                rhs.push(f[(i, j)].clone());
            }
        }
    }
    if vars == 0 {
        let zero = rhs.iter().all(|x| setup.ring().normalize(x.clone()).is_zero());
        return Ok(if zero { HomotopySolution::Witness(HomotopyWitness::zero(n)) } else { HomotopySolution::NoSolution });
    }
    let a = if rows.is_empty() { IntMatrix::zeros(0, vars) } else { IntMatrix::from_rows(&rows) };
    Ok(match solve_over(setup.ring(), &a, &rhs)? {
        Solution::Solution(x) => {
            let mut h = GradedMap::new(n - 1);
            for &k in &degrees {
                let (r, c) = (hom.dim(k + n - 1), cc.dim(k));
                if r * c == 0 {
                    continue;
                }
                let o = offset[&k];
                let mut m = IntMatrix::zeros(r, c);
                for i in 0..r {
                    for j in 0..c {
                        m[(i, j)] = x[o + i * c + j].clone();
                    }
                }
                if !m.is_zero() {
                    h.maps.insert(k, m);
                }
            }
            HomotopySolution::Witness(HomotopyWitness { h })
        }
        Solution::RationalOnly => HomotopySolution::NoIntegralSolution,
        Solution::Unsolvable => HomotopySolution::NoSolution,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeComparison {
    pub degree: i64,
    /// `H(CO) H(OC) = H(μ) HH(Δ)`.
    pub verbatim: bool,
    /// `H(CO) H(OC) = (-1)^{n(n+1)/2} H(μ) HH(Δ)`.
    pub signed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CardyReport {
    pub n: i64,
    pub global_sign: i32,
    pub degrees: Vec<DegreeComparison>,
}

impl CardyReport {
    pub fn verbatim_agrees(&self) -> bool {
        self.degrees.iter().all(|d| d.verbatim)
    }

    pub fn signed_agrees(&self) -> bool {
        self.degrees.iter().all(|d| d.signed)
    }

    /// The diagram commutes with one of the two signs, uniformly in all degrees.
    pub fn passed(&self) -> bool {
        self.verbatim_agrees() || self.signed_agrees()
    }
}

pub fn global_sign(n: i64) -> i32 {
    if (n * (n + 1) / 2).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Compares the two compositions on the homology of the truncation, in the
/// degrees `lo..=hi` of `CC(B)` (all degrees if `None`).
pub fn verify_cardy_on_homology(
    setup: &CardySetup,
    data: &OpenClosedData,
    degrees: Option<(i64, i64)>,
) -> CardyReport {
    let n = setup.degree();
    let cc = &setup.cc.complex;
    let hom = &setup.hom;
    let eps = global_sign(n);
    let f = data.composite(setup);
    let list: Vec<i64> = match degrees {
        Some((lo, hi)) => (lo..=hi).collect(),
        None => cc.degrees(),
    };
    let out = list
        .into_iter()
        .map(|k| {
            let fk = f.component(cc, hom, k);
            let gk = setup.composite.component(cc, hom, k);
            let verbatim = maps_agree_on_homology(cc, hom, &fk, &gk, k, n);
            let signed = if eps == 1 {
                verbatim
            } else {
                maps_agree_on_homology(cc, hom, &fk, &gk.scale(&-BigInt::one()), k, n)
            };
            DegreeComparison { degree: k, verbatim, signed }
        })
        .collect();
    CardyReport {
        n,
        global_sign: eps,
        degrees: out,
    }
}
