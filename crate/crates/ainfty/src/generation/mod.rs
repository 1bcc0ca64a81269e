//! Universal twisted complexes, cohomological units and generation certificates.

mod twisted;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::ainf::{sign, AinfCategory, Chain, LinComb, ObjId};
use crate::linalg::{maps_agree_on_homology, solve_over, ChainComplex, IntMatrix, LinalgError, Solution};
use crate::modules::{
    hom_complex, mu_composition, mu_composition_word, tensor_differential, tensor_over_category,
    word_label, yoneda_module, ModuleError, Side, SideModule, TensorComplex, TensorWord,
};

pub use twisted::{mu_with_units, Morph, MorphChain, Summand, TwistedComplex, TwistedWitness, UniversalWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerationError {
    #[error("unit candidate is not a cycle: mu^1(e) = {0}")]
    NotACycle(String),
    #[error("unit candidate has a component of degree {0}")]
    NotDegreeZero(i64),
    #[error("unit candidate is not in hom(K, K)")]
    WrongHom,
    #[error("unknown object {0}")]
    UnknownObject(ObjId),
    #[error("{}", .0.description)]
    MaurerCartanViolation(TwistedWitness),
    #[error("{}", .0.description)]
    ClosednessViolation(TwistedWitness),
    #[error("unit candidate fails: {0:?}")]
    NotAUnit(Vec<UnitFailure>),
    #[error("certificate does not replay: {0}")]
    Replay(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A degree of `hom(K, L)` (`Side::Left`, `e` acting first) or `hom(L, K)`
/// (`Side::Right`) where multiplication by `e` is not the identity on homology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitFailure {
    pub other: ObjId,
    pub side: Side,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitReport {
    pub object: ObjId,
    pub failures: Vec<UnitFailure>,
}

impl UnitReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn check_unit_shape(c: &AinfCategory, k: ObjId, e: &Chain) -> Result<(), GenerationError> {
    if k >= c.objects().len() {
        return Err(GenerationError::UnknownObject(k));
    }
    for (&g, _) in e.iter() {
        if c.source(g) != k || c.target(g) != k {
            return Err(GenerationError::WrongHom);
        }
        if c.degree(g) != 0 {
            return Err(GenerationError::NotDegreeZero(c.degree(g)));
        }
    }
    let d = c.apply_mu(&[e]).expect("unit in one hom space");
    if !d.is_zero() {
        return Err(GenerationError::NotACycle(c.format_chain(&d)));
    }
    Ok(())
}

/// Matrix of `x -> f(x)` on the degree-`k` part of `hom(a, b)`.
fn hom_matrix(c: &AinfCategory, a: ObjId, b: ObjId, k: i64, f: impl Fn(&Chain) -> Chain) -> IntMatrix {
    let (basis, pos) = crate::modules::hom_basis_by_degree(c, a, b);
    let src = basis.get(&k).cloned().unwrap_or_default();
    let mut m = IntMatrix::zeros(src.len(), src.len());
    for (j, &g) in src.iter().enumerate() {
        for (y, v) in f(&Chain::basis(g)).iter() {
            let (ky, i) = pos[y];
            assert_eq!(ky, k, "multiplication by a degree-0 element");
            m[(i, j)] += v;
        }
    }
    m
}

/// Checks that `e` acts as the identity on the homology of every `hom(K, L)` and
/// `hom(L, K)`. On `hom(L, K)` the map is `x -> (-1)^{deg x} mu^2(e, x)`, which
/// is the identity for a strict unit under the fixture sign rule; on `hom(K, L)`
/// it is `x -> mu^2(x, e)`.
pub fn verify_cohomological_unit(c: &AinfCategory, k: ObjId, e: &Chain) -> Result<UnitReport, GenerationError> {
    check_unit_shape(c, k, e)?;
    let mut failures = Vec::new();
    for l in 0..c.objects().len() {
        for side in [Side::Left, Side::Right] {
            let (a, b) = match side {
                Side::Left => (k, l),
                Side::Right => (l, k),
            };
            let cx = hom_complex(c, a, b);
            for deg in cx.degrees() {
                let m = hom_matrix(c, a, b, deg, |x| match side {
                    Side::Left => c.apply_mu(&[e, x]).unwrap(),
                    Side::Right => {
                        let s = sign(deg);
                        c.apply_mu(&[x, e]).unwrap().scaled(&s)
                    }
                });
                let id = IntMatrix::identity(cx.dim(deg));
                if !maps_agree_on_homology(&cx, &cx, &m, &id, deg, 0) {
                    failures.push(UnitFailure { other: l, side, degree: deg });
                }
            }
        }
    }
    Ok(UnitReport { object: k, failures })
}

/// The universal twisted complex of `K` over `B` together with its words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalComplex {
    pub object: ObjId,
    pub subcategory: BTreeSet<ObjId>,
    pub max_length: usize,
    pub words: Vec<UniversalWord>,
    pub complex: TwistedComplex,
}

/// Summands `CW(L_k, K) ⊗ CW(L_{k-1}, L_k)[1] ⊗ .. ⊗ CW(L_0, L_1)[1] ⊗ L_0` for
/// object sequences of `B` with `k <= max_length`, one rank-one summand per basis
/// word. The Maurer-Cartan equation is verified before returning.
pub fn build_universal_complex(
    c: &AinfCategory,
    b: &BTreeSet<ObjId>,
    k: ObjId,
    max_length: usize,
) -> Result<UniversalComplex, GenerationError> {
    let right = yoneda_module(c, k, Side::Right, b)?;
    let (complex, words) = twisted::build_universal(c, &right, max_length);
    complex
        .check_shape(c)
        .map_err(GenerationError::MaurerCartanViolation)?;
    if let Some(w) = complex.maurer_cartan_residual(c).into_iter().next() {
        return Err(GenerationError::MaurerCartanViolation(w));
    }
    Ok(UniversalComplex {
        object: k,
        subcategory: b.clone(),
        max_length,
        words,
        complex,
    })
}

/// Closed degree-0 morphism from the universal complex to `K`: the summand of a
/// one-letter word `p` maps by `(-1)^{deg p} p`, longer words map by zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationMorphism {
    pub entries: BTreeMap<usize, MorphChain>,
}

pub fn evaluation_morphism(c: &AinfCategory, u: &UniversalComplex) -> Result<EvaluationMorphism, GenerationError> {
    let right = yoneda_module(c, u.object, Side::Right, &u.subcategory)?;
    let mut entries = BTreeMap::new();
    for (i, w) in u.words.iter().enumerate() {
        if w.a.is_empty() {
            let g = right.generator(w.p).cat_gen.expect("Yoneda generator");
            entries.insert(i, MorphChain::single(Morph::Gen(g), sign(c.degree(g))));
        }
    }
    if let Some(w) = u.complex.closedness_residual(c, &entries).into_iter().next() {
        return Err(GenerationError::ClosednessViolation(w));
    }
    Ok(EvaluationMorphism { entries })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Generated,
    /// No cycle of length at most `bound` hits the unit class, even rationally.
    Inconclusive { bound: usize },
    /// The unit class is hit over the rationals but not over the integers at
    /// length at most `bound`.
    RefutedAtBound { bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationCertificate {
    pub verdict: Verdict,
    pub object: ObjId,
    pub subcategory: BTreeSet<ObjId>,
    pub unit: Chain,
    pub max_length: usize,
    /// Cycle of `Y^r_K ⊗_B Y^l_K` with `mu(tau) - e = mu^1(h)`.
    pub tau: LinComb<TensorWord>,
    pub h: Chain,
    pub universal: Option<UniversalComplex>,
}

impl GenerationCertificate {
    pub fn is_generated(&self) -> bool {
        self.verdict == Verdict::Generated
    }
}

fn modules_for(
    c: &AinfCategory,
    b: &BTreeSet<ObjId>,
    k: ObjId,
) -> Result<(SideModule, SideModule), GenerationError> {
    Ok((
        yoneda_module(c, k, Side::Right, b)?,
        yoneda_module(c, k, Side::Left, b)?,
    ))
}

/// Searches for a degree-0 cycle `tau` of length at most `max_length` and
/// `h` in `hom^{-1}(K, K)` with `mu(tau) - e = mu^1(h)`, as one integer system.
pub fn generation_test(
    c: &AinfCategory,
    b: &BTreeSet<ObjId>,
    k: ObjId,
    e: &Chain,
    max_length: usize,
) -> Result<GenerationCertificate, GenerationError> {
    let unit = verify_cohomological_unit(c, k, e)?;
    if !unit.passed() {
        return Err(GenerationError::NotAUnit(unit.failures));
    }
    let (r, l) = modules_for(c, b, k)?;
    let t = tensor_over_category(c, &r, &l, max_length)?;
    let hom = hom_complex(c, k, k);
    let mu = mu_composition(c, &r, &l, &t, k);
    let system = unit_system(&t, &hom, &mu.component(&t.complex, &hom, 0));
    let target = unit_target(c, &t, &hom, k, e);
    let mut cert = GenerationCertificate {
        verdict: Verdict::Inconclusive { bound: max_length },
        object: k,
        subcategory: b.clone(),
        unit: e.clone(),
        max_length,
        tau: LinComb::new(),
        h: Chain::new(),
        universal: None,
    };
    match solve_over(c.ring(), &system, &target)? {
        Solution::Solution(x) => {
            let n0 = t.complex.dim(0);
            for (i, v) in x[..n0].iter().enumerate() {
                cert.tau.add_term(t.words[&0][i].clone(), v.clone());
            }
            let gens = hom_gens(c, k, -1);
            for (i, v) in x[n0..].iter().enumerate() {
                cert.h.add_term(gens[i], v.clone());
            }
            let u = build_universal_complex(c, b, k, max_length)?;
            evaluation_morphism(c, &u)?;
            cert.universal = Some(u);
            cert.verdict = Verdict::Generated;
        }
        Solution::RationalOnly => cert.verdict = Verdict::RefutedAtBound { bound: max_length },
        Solution::Unsolvable => {}
    }
    Ok(cert)
}

fn hom_gens(c: &AinfCategory, k: ObjId, deg: i64) -> Vec<usize> {
    let (basis, _) = crate::modules::hom_basis_by_degree(c, k, k);
    basis.get(&deg).cloned().unwrap_or_default()
}

/// Rows: the cycle condition in `T^1`, then `mu(tau) + d h = e` in `hom^0`
/// (`d = -mu^1` is the differential of `hom_complex`).
fn unit_system(t: &TensorComplex, hom: &ChainComplex, mu0: &IntMatrix) -> IntMatrix {
    let n0 = t.complex.dim(0);
    let nh = hom.dim(-1);
    let d0 = t.complex.differential(0);
    let top = d0.hcat(&IntMatrix::zeros(d0.rows(), nh));
    let bottom = mu0.hcat(&hom.differential(-1));
    let m = top.vcat(&bottom);
    debug_assert_eq!(m.cols(), n0 + nh);
    m
}

fn unit_target(c: &AinfCategory, t: &TensorComplex, hom: &ChainComplex, k: ObjId, e: &Chain) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); t.complex.dim(1)];
    let coords = crate::modules::chain_coordinates(c, k, k, e);
    let mut e0 = coords.get(&0).cloned().unwrap_or_else(|| vec![BigInt::zero(); hom.dim(0)]);
    e0.resize(hom.dim(0), BigInt::zero());
    v.extend(e0);
    v
}

/// Replays a generated certificate against independent checks: `tau` is a cycle
/// word by word, `mu(tau) - e = mu^1(h)` as chains, the universal complex
/// satisfies Maurer-Cartan and the evaluation morphism is closed.
pub fn replay_certificate(c: &AinfCategory, cert: &GenerationCertificate) -> Result<(), GenerationError> {
    if !cert.is_generated() {
        return Err(GenerationError::Replay("verdict is not generated".into()));
    }
    let (r, l) = modules_for(c, &cert.subcategory, cert.object)?;
    let mut boundary: LinComb<TensorWord> = LinComb::new();
    let mut image = Chain::new();
    for (w, v) in cert.tau.iter() {
        if w.a.len() > cert.max_length {
            return Err(GenerationError::Replay(format!("word {} too long", word_label(c, &r, &l, w))));
        }
        boundary.add_scaled(&tensor_differential(c, &r, &l, w), v);
        image.add_scaled(&mu_composition_word(c, &r, &l, w), v);
    }
    let boundary = boundary.normalized(c.ring());
    if let Some((w, _)) = boundary.iter().next() {
        return Err(GenerationError::Replay(format!(
            "tau is not a cycle: d(tau) contains {}",
            word_label(c, &r, &l, w)
        )));
    }
    image.add_scaled(&cert.unit, &-BigInt::from(1));
    if !cert.h.is_empty() {
        image.add_scaled(&c.apply_mu(&[&cert.h]).expect("h in hom(K,K)"), &-BigInt::from(1));
    }
    let image = image.normalized(c.ring());
    if !image.is_zero() {
        return Err(GenerationError::Replay(format!(
            "mu(tau) - e - mu^1(h) = {}",
            c.format_chain(&image)
        )));
    }
    let u = build_universal_complex(c, &cert.subcategory, cert.object, cert.max_length)?;
    if cert.universal.as_ref() != Some(&u) {
        return Err(GenerationError::Replay("attached universal complex differs".into()));
    }
    evaluation_morphism(c, &u)?;
    Ok(())
}
