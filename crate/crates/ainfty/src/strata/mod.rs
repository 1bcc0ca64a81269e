//! Codimension-one boundary strata of the abstract moduli spaces behind the
//! operations, and their matching with the terms of the algebraic equations.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::ainf::relation_splittings;
use crate::hochschild::{bar_blocks, coproduct_splittings, BarBlock};
use crate::modules::{input_blocks, module_splits};

#[cfg(test)]
mod tests;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrataError {
    #[error("invalid parameters for {0}")]
    InvalidParameters(String),
    #[error("unknown sign formula `{0}`")]
    UnknownTag(String),
    #[error("sign formula `{tag}`: {message}")]
    BadArguments { tag: String, message: String },
    #[error("no term list for {space} against {equation}")]
    Unsupported { space: String, equation: String },
}

/// A moduli space, by kind and parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpaceId {
    /// Discs with `d` inputs and one output.
    Disc(usize),
    /// Discs with two outputs, `r` left and `s` right inputs besides the marked one.
    Bimodule { r: usize, s: usize },
    /// Discs with `d` boundary inputs and an interior output.
    InteriorOutput(usize),
    /// The point: a disc with an interior input and a boundary output.
    Cap,
    /// Annuli with `d` inputs on one boundary circle.
    Annulus(usize),
    /// The auxiliary product space over `[0, 1]`.
    Auxiliary(usize),
    /// The slice of the auxiliary space over an endpoint `t` of the interval.
    AuxiliaryEnd { d: usize, t: u8 },
}

impl SpaceId {
    pub fn validate(&self) -> Result<(), StrataError> {
        let ok = match *self {
            SpaceId::Disc(d) => d >= 2,
            SpaceId::Bimodule { .. } | SpaceId::Cap => true,
            SpaceId::InteriorOutput(d) | SpaceId::Annulus(d) | SpaceId::Auxiliary(d) => d >= 1,
            SpaceId::AuxiliaryEnd { d, t } => d >= 1 && t <= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(StrataError::InvalidParameters(self.to_string()))
        }
    }

    /// Parses `R_4`, `R_{1|1|0}`, `R^1_3`, `R^1`, `C_2`, `P_3`.
    pub fn parse(s: &str) -> Result<SpaceId, StrataError> {
        let bad = || StrataError::InvalidParameters(s.to_string());
        let num = |t: &str| t.trim_matches(|c| c == '{' || c == '}').parse::<usize>().map_err(|_| bad());
        let t = s.trim();
        let id = if t == "R^1" {
            SpaceId::Cap
        } else if let Some(rest) = t.strip_prefix("R^1_") {
            SpaceId::InteriorOutput(num(rest)?)
        } else if let Some(rest) = t.strip_prefix("R_") {
            let inner = rest.trim_matches(|c| c == '{' || c == '}');
            let parts: Vec<&str> = inner.split('|').collect();
            match parts.as_slice() {
                [d] => SpaceId::Disc(num(d)?),
                [r, one, s] if *one == "1" => SpaceId::Bimodule { r: num(r)?, s: num(s)? },
                _ => return Err(bad()),
            }
        } else if let Some(rest) = t.strip_prefix("C^-_").or_else(|| t.strip_prefix("C_")) {
            SpaceId::Annulus(num(rest)?)
        } else if let Some(rest) = t.strip_prefix("P_") {
            SpaceId::Auxiliary(num(rest)?)
        } else {
            return Err(bad());
        };
        id.validate()?;
        Ok(id)
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SpaceId::Disc(d) => write!(f, "R_{d}"),
            SpaceId::Bimodule { r, s } => write!(f, "R_{{{r}|1|{s}}}"),
            SpaceId::InteriorOutput(d) => write!(f, "R^1_{d}"),
            SpaceId::Cap => write!(f, "R^1"),
            SpaceId::Annulus(d) => write!(f, "C^-_{d}"),
            SpaceId::Auxiliary(d) => write!(f, "P_{d}"),
            SpaceId::AuxiliaryEnd { d, t } => write!(f, "P^{t}_{d}"),
        }
    }
}

pub fn dimension(space: SpaceId) -> Result<i64, StrataError> {
    space.validate()?;
    Ok(match space {
        SpaceId::Disc(d) => d as i64 - 2,
        SpaceId::Bimodule { r, s } => (r + s) as i64,
        SpaceId::InteriorOutput(d) => d as i64 - 1,
        SpaceId::Cap => 0,
        SpaceId::Annulus(d) | SpaceId::Auxiliary(d) => d as i64,
        SpaceId::AuxiliaryEnd { d, .. } => d as i64 - 1,
    })
}

/// How the factors of a boundary stratum are glued. Input positions are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Attachment {
    /// Output of the second disc glued to input `k` of the first.
    Disc { k: usize },
    /// A disc breaks off the left output, taking outputs and `a_{m+1}..a_r`.
    LeftOutput { m: usize },
    /// A disc breaks off the right output, taking outputs and `a_{|l+1}..a_{|s}`.
    RightOutput { l: usize },
    /// A disc around the marked input, with `a_1..a_m` and `a_{|1}..a_{|l}`.
    MarkedInput { m: usize, l: usize },
    /// A disc on the right inputs `a_{|k+1}..a_{|l}`.
    RightInputs { k: usize, l: usize },
    /// A disc on the left inputs `a_{k+1}..a_m`.
    LeftInputs { k: usize, m: usize },
    /// Output glued to input `k` (not the last) of a disc with an interior output.
    NonTerminalInput { k: usize },
    /// Output glued to the last input; input `k` of the bubble becomes the last one.
    TerminalInput { k: usize },
    /// The annulus breaks at an interior node.
    InteriorBreaking,
    /// The annulus degenerates to a disc with two outputs and a disc with two inputs.
    CoproductRelation { r: usize, s: usize },
    /// A disc bubbles off at input `k` (not the last) of the annulus.
    Bubbling { k: usize },
    /// A disc bubbles off at the last input; its input `k` becomes the last one.
    TerminalBubbling { k: usize },
    /// An end of the interval.
    IntervalEnd { t: u8 },
    /// A disc attached at input `k` (1-based) of a smaller auxiliary space.
    AuxiliaryBubbling { k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StratumLabel {
    pub factors: Vec<SpaceId>,
    pub attachment: Attachment,
}

impl StratumLabel {
    fn new(factors: Vec<SpaceId>, attachment: Attachment) -> Self {
        StratumLabel { factors, attachment }
    }

    pub fn factor_dimension(&self) -> i64 {
        self.factors.iter().map(|&f| dimension(f).unwrap()).sum()
    }
}

impl fmt::Display for StratumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.factors.iter().map(|s| s.to_string()).collect();
        write!(f, "{} [{:?}]", names.join(" x "), self.attachment)
    }
}

/// Codimension-one strata, in a fixed order.
pub fn enumerate_codim1(space: SpaceId) -> Result<Vec<StratumLabel>, StrataError> {
    use SpaceId::*;
    space.validate()?;
    let mut out = Vec::new();
    match space {
        Disc(d) => {
            for d2 in 2..d {
                let d1 = d + 1 - d2;
                for k in 0..d1 {
                    out.push(StratumLabel::new(vec![Disc(d1), Disc(d2)], Attachment::Disc { k }));
                }
            }
        }
        Bimodule { r, s } => {
            for m in 0..r {
                out.push(StratumLabel::new(
                    vec![Disc(r - m + 1), Bimodule { r: m, s }],
                    Attachment::LeftOutput { m },
                ));
            }
            for l in 0..s {
                out.push(StratumLabel::new(
                    vec![Disc(s - l + 1), Bimodule { r, s: l }],
                    Attachment::RightOutput { l },
                ));
            }
            for m in 0..=r {
                for l in 0..=s {
                    if (m, l) != (0, 0) {
                        out.push(StratumLabel::new(
                            vec![Bimodule { r: r - m, s: s - l }, Disc(l + m + 1)],
                            Attachment::MarkedInput { m, l },
                        ));
                    }
                }
            }
            for l in 0..=s {
                for k in 0..=l {
                    if l - k >= 2 {
                        out.push(StratumLabel::new(
                            vec![Bimodule { r, s: s - l + k + 1 }, Disc(l - k)],
                            Attachment::RightInputs { k, l },
                        ));
                    }
                }
            }
            for m in 0..=r {
                for k in 0..=m {
                    if m - k >= 2 {
                        out.push(StratumLabel::new(
                            vec![Bimodule { r: r - m + k + 1, s }, Disc(m - k)],
                            Attachment::LeftInputs { k, m },
                        ));
                    }
                }
            }
        }
        InteriorOutput(d) => {
            for d2 in 2..=d {
                let d1 = d + 1 - d2;
                let factors = vec![InteriorOutput(d1), Disc(d2)];
                for k in 0..d1 - 1 {
                    out.push(StratumLabel::new(factors.clone(), Attachment::NonTerminalInput { k }));
                }
                for k in 0..d2 {
                    out.push(StratumLabel::new(factors.clone(), Attachment::TerminalInput { k }));
                }
            }
        }
        Cap => {}
        Annulus(d) => {
            out.push(StratumLabel::new(vec![Cap, InteriorOutput(d)], Attachment::InteriorBreaking));
            // the disc factor needs at least two inputs, so r + s < d
            for r in 0..d {
                for s in 0..d - r {
                    out.push(StratumLabel::new(
                        vec![Disc(d - r - s + 1), Bimodule { r, s }],
                        Attachment::CoproductRelation { r, s },
                    ));
                }
            }
            for d1 in 1..d {
                let factors = vec![Annulus(d1), Disc(d - d1 + 1)];
                for k in 0..d1 - 1 {
                    out.push(StratumLabel::new(factors.clone(), Attachment::Bubbling { k }));
                }
                for k in 0..d - d1 + 1 {
                    out.push(StratumLabel::new(factors.clone(), Attachment::TerminalBubbling { k }));
                }
            }
        }
        Auxiliary(d) => {
            for t in 0..=1 {
                out.push(StratumLabel::new(vec![AuxiliaryEnd { d, t }], Attachment::IntervalEnd { t }));
            }
            for d1 in 1..d {
                for k in 1..=d1 {
                    out.push(StratumLabel::new(
                        vec![Auxiliary(d1), Disc(d - d1 + 1)],
                        Attachment::AuxiliaryBubbling { k },
                    ));
                }
            }
        }
        AuxiliaryEnd { .. } => {
            return Err(StrataError::InvalidParameters(format!("{space} is not enumerated")));
        }
    }
    Ok(out)
}

/// Closed-form count of codimension-one strata, where one is known.
pub fn codim1_count(space: SpaceId) -> Result<usize, StrataError> {
    space.validate()?;
    Ok(match space {
        SpaceId::Disc(d) => (2..d).map(|d2| d - d2 + 1).sum(),
        SpaceId::InteriorOutput(d) => d * (d - 1),
        _ => enumerate_codim1(space)?.len(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Equation {
    AinfRelation,
    BimoduleMap,
    HochschildDifferential,
    HomotopyEquation,
}

impl Equation {
    pub fn parse(s: &str) -> Option<Equation> {
        Some(match s {
            "ainf" | "a-infinity" => Equation::AinfRelation,
            "bimodule-map" | "bimodule" => Equation::BimoduleMap,
            "hochschild" | "b" => Equation::HochschildDifferential,
            "homotopy" | "cardy" => Equation::HomotopyEquation,
            _ => return None,
        })
    }

    pub fn natural_space(self, d: usize) -> SpaceId {
        match self {
            Equation::AinfRelation => SpaceId::Disc(d),
            Equation::BimoduleMap => SpaceId::Bimodule { r: d, s: 0 },
            Equation::HochschildDifferential => SpaceId::InteriorOutput(d),
            Equation::HomotopyEquation => SpaceId::Annulus(d),
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Equation::AinfRelation => "A-infinity relation",
            Equation::BimoduleMap => "bimodule map equation",
            Equation::HochschildDifferential => "Hochschild differential",
            Equation::HomotopyEquation => "homotopy equation",
        })
    }
}

/// One summand of an equation, indexed as in the code that evaluates it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EquationTerm {
    /// `mu^{d-d2+1}(.., mu^{d2}(x_{k+1}..x_{k+d2}), ..)`.
    Composition { d2: usize, k: usize },
    /// `mu_Q(.., Δ^{m|1|l}(..), ..)`.
    HomAfter { m: usize, l: usize },
    /// `Δ(.., mu_P^{m|1|l}(..), ..)`.
    HomBefore { m: usize, l: usize },
    /// `Δ` after `mu` on right inputs `[i, j)` (storage order, `p` adjacent at the end).
    HomRightBlock { i: usize, j: usize },
    /// `Δ` after `mu` on left inputs `[i, j)` (`p` adjacent at the start).
    HomLeftBlock { i: usize, j: usize },
    Bar(BarBlock),
    /// `mu^1 H` (the differential of the target).
    OutputDifferential,
    /// `H b` with the given block of `b`.
    HomotopyBar(BarBlock),
    /// `mu ∘ CC(Δ)` on the splitting `(r, s)`.
    CoproductComposite { r: usize, s: usize },
    /// `CO ∘ OC`.
    OpenClosed,
}

/// Why a term has no stratum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exclusion {
    /// Involves an operation with one input: breaking of strips, not of the domain.
    Differential,
    /// The tensor bimodule has no operations with inputs on both sides.
    Vanishes,
}

/// Terms of `equation` on inputs of the given shape (`d`, or `(r, s)`).
pub fn equation_terms(space: SpaceId, equation: Equation) -> Result<Vec<EquationTerm>, StrataError> {
    space.validate()?;
    let out = match (space, equation) {
        (SpaceId::Disc(d), Equation::AinfRelation) => relation_splittings(d)
            .into_iter()
            .map(|(d2, k)| EquationTerm::Composition { d2, k })
            .collect(),
        (SpaceId::Bimodule { r, s }, Equation::BimoduleMap) => {
            let mut v = Vec::new();
            for (m, l) in module_splits(r, s) {
                v.push(EquationTerm::HomAfter { m, l });
                v.push(EquationTerm::HomBefore { m, l });
            }
            v.extend(input_blocks(s).into_iter().map(|(i, j)| EquationTerm::HomRightBlock { i, j }));
            v.extend(input_blocks(r).into_iter().map(|(i, j)| EquationTerm::HomLeftBlock { i, j }));
            v
        }
        (SpaceId::InteriorOutput(d), Equation::HochschildDifferential) => {
            bar_blocks(d).into_iter().map(EquationTerm::Bar).collect()
        }
        (SpaceId::Annulus(d), Equation::HomotopyEquation) => {
            let mut v = vec![EquationTerm::OutputDifferential];
            v.extend(bar_blocks(d).into_iter().map(EquationTerm::HomotopyBar));
            v.extend(
                coproduct_splittings(d)
                    .into_iter()
                    .map(|(r, s)| EquationTerm::CoproductComposite { r, s }),
            );
            v.push(EquationTerm::OpenClosed);
            v
        }
        _ => {
            return Err(StrataError::Unsupported {
                space: space.to_string(),
                equation: equation.to_string(),
            })
        }
    };
    Ok(out)
}

/// The stratum a term comes from, or why it has none.
fn stratum_of(space: SpaceId, term: EquationTerm) -> Result<StratumLabel, Exclusion> {
    use EquationTerm::*;
    use SpaceId::*;
    let bar = |d: usize, b: BarBlock, annulus: bool| {
        let len = b.block_len(d);
        if len < 2 {
            return Err(Exclusion::Differential);
        }
        let d1 = d + 1 - len;
        let first = if annulus { Annulus(d1) } else { InteriorOutput(d1) };
        let att = match (b, annulus) {
            (BarBlock::Interior { i, .. }, false) => Attachment::NonTerminalInput { k: i - 1 },
            (BarBlock::Interior { i, .. }, true) => Attachment::Bubbling { k: i - 1 },
            (BarBlock::Wrap { first, .. }, false) => Attachment::TerminalInput { k: d - first },
            (BarBlock::Wrap { first, .. }, true) => Attachment::TerminalBubbling { k: d - first },
        };
        Ok(StratumLabel::new(vec![first, Disc(len)], att))
    };
    match (space, term) {
        (Disc(d), Composition { d2, k }) => {
            let d1 = d + 1 - d2;
            if d1 < 2 || d2 < 2 {
                return Err(Exclusion::Differential);
            }
            Ok(StratumLabel::new(vec![Disc(d1), Disc(d2)], Attachment::Disc { k }))
        }
        (Bimodule { r, s }, HomAfter { m, l }) => match (r - m, s - l) {
            (0, 0) => Err(Exclusion::Differential),
            (a, 0) => Ok(StratumLabel::new(vec![Disc(a + 1), Bimodule { r: m, s }], Attachment::LeftOutput { m })),
            (0, b) => Ok(StratumLabel::new(vec![Disc(b + 1), Bimodule { r, s: l }], Attachment::RightOutput { l })),
            _ => Err(Exclusion::Vanishes),
        },
        (Bimodule { r, s }, HomBefore { m, l }) => {
            if (m, l) == (0, 0) {
                return Err(Exclusion::Differential);
            }
            Ok(StratumLabel::new(
                vec![Bimodule { r: r - m, s: s - l }, Disc(m + l + 1)],
                Attachment::MarkedInput { m, l },
            ))
        }
        (Bimodule { r, s }, HomRightBlock { i, j }) => {
            let len = j - i;
            if len < 2 {
                return Err(Exclusion::Differential);
            }
            // storage position x holds a_{|s-x}
            let (k, l) = (s - j, s - i);
            Ok(StratumLabel::new(
                vec![Bimodule { r, s: s - l + k + 1 }, Disc(len)],
                Attachment::RightInputs { k, l },
            ))
        }
        (Bimodule { r, s }, HomLeftBlock { i, j }) => {
            if j - i < 2 {
                return Err(Exclusion::Differential);
            }
            Ok(StratumLabel::new(
                vec![Bimodule { r: r - j + i + 1, s }, Disc(j - i)],
                Attachment::LeftInputs { k: i, m: j },
            ))
        }
        (InteriorOutput(d), Bar(b)) => bar(d, b, false),
        (Annulus(_), OutputDifferential) => Err(Exclusion::Differential),
        (Annulus(d), HomotopyBar(b)) => bar(d, b, true),
        (Annulus(d), CoproductComposite { r, s }) => Ok(StratumLabel::new(
            vec![Disc(d - r - s + 1), Bimodule { r, s }],
            Attachment::CoproductRelation { r, s },
        )),
        (Annulus(d), OpenClosed) => {
            Ok(StratumLabel::new(vec![Cap, InteriorOutput(d)], Attachment::InteriorBreaking))
        }
        _ => unreachable!("term list and space are paired by equation_terms"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionReport {
    pub space: SpaceId,
    pub equation: Equation,
    pub pairs: Vec<(StratumLabel, EquationTerm)>,
    pub excluded: Vec<(EquationTerm, Exclusion)>,
    /// Strata that no term maps to.
    pub unmatched_strata: Vec<StratumLabel>,
    /// Terms whose stratum is not in the enumeration.
    pub unmatched_terms: Vec<(EquationTerm, StratumLabel)>,
    /// Strata hit by more than one term.
    pub collisions: Vec<(StratumLabel, Vec<EquationTerm>)>,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.unmatched_strata.is_empty() && self.unmatched_terms.is_empty() && self.collisions.is_empty()
    }
}

/// Matches the enumerated strata of `space` with the terms of `equation`.
pub fn strata_term_bijection(space: SpaceId, equation: Equation) -> Result<BijectionReport, StrataError> {
    let terms = equation_terms(space, equation)?;
    let strata = enumerate_codim1(space)?;
    Ok(build_report(space, equation, terms, strata))
}

fn build_report(
    space: SpaceId,
    equation: Equation,
    terms: Vec<EquationTerm>,
    strata: Vec<StratumLabel>,
) -> BijectionReport {
    let mut hits: BTreeMap<StratumLabel, Vec<EquationTerm>> = strata.iter().map(|s| (s.clone(), vec![])).collect();
    let mut excluded = Vec::new();
    let mut unmatched_terms = Vec::new();
    for t in terms {
        match stratum_of(space, t) {
            Err(why) => excluded.push((t, why)),
            Ok(label) => match hits.get_mut(&label) {
                Some(v) => v.push(t),
                None => unmatched_terms.push((t, label)),
            },
        }
    }
    let mut pairs = Vec::new();
    let mut unmatched_strata = Vec::new();
    let mut collisions = Vec::new();
    for s in strata {
        let ts = &hits[&s];
        match ts.len() {
            0 => unmatched_strata.push(s),
            1 => pairs.push((s, ts[0])),
            _ => collisions.push((s.clone(), ts.clone())),
        }
    }
    BijectionReport {
        space,
        equation,
        pairs,
        excluded,
        unmatched_strata,
        unmatched_terms,
        collisions,
    }
}

/// Parity-valued sign formulas, evaluated as `±1`.
///
/// Argument layouts (degrees are integer degrees, `✠` sums use `deg + 1`):
/// - `dagger`: `deg x_1, ..., deg x_d`
/// - `ddagger`: `r, s, deg x_1..x_r, deg x̲, deg x_{|1}..x_{|s}`
/// - `diamond`: `n, r, s, deg a_1..a_d`
/// - `circ`: `deg q, deg p, deg a_{r+1}..a_{d-s-1}`
/// - `f`: `deg x_d` and the four parities `†₁, ‡₂, ∘, ◇`
/// - `cardy`: `n`
/// - `delta-source`: `deg x̲`; `delta-target`: `deg x̲, n`; `first-input`: `deg x_1`
pub fn sign_formula(tag: &str, args: &[i64]) -> Result<i32, StrataError> {
    let bad = |message: &str| StrataError::BadArguments {
        tag: tag.to_string(),
        message: message.to_string(),
    };
    let need = |n: usize| if args.len() == n { Ok(()) } else { Err(bad(&format!("expected {n} arguments"))) };
    let count = |x: i64| usize::try_from(x).map_err(|_| bad("negative count"));
    let bar = |xs: &[i64]| xs.iter().map(|x| x + 1).sum::<i64>();
    let parity = match tag {
        "dagger" => args.iter().enumerate().map(|(k, x)| (k as i64 + 1) * x).sum(),
        "ddagger" => {
            if args.len() < 2 {
                return Err(bad("expected r and s"));
            }
            let (r, s) = (count(args[0])?, count(args[1])?);
            need(3 + r + s)?;
            let left = &args[2..2 + r];
            let marked = args[2 + r];
            let right = &args[3 + r..];
            let s_i = s as i64;
            right.iter().enumerate().map(|(j, x)| (s_i - j as i64) * x).sum::<i64>()
                + s_i * marked
                + left.iter().enumerate().map(|(j, x)| (j as i64 + 1 + s_i) * x).sum::<i64>()
        }
        "diamond" => {
            if args.len() < 3 {
                return Err(bad("expected n, r and s"));
            }
            let (n, r, s) = (args[0], count(args[1])?, count(args[2])?);
            let a = &args[3..];
            let d = a.len();
            if r + s >= d {
                return Err(bad("need r + s < d"));
            }
            bar(&a[..r]) * (1 + bar(&a[r..])) + n * bar(&a[r..d - s - 1])
        }
        "circ" => {
            if args.len() < 2 {
                return Err(bad("expected deg q and deg p"));
            }
            args[0] * (args[1] + bar(&args[2..]))
        }
        "f" => {
            need(5)?;
            args.iter().sum()
        }
        "cardy" => {
            need(1)?;
            args[0] * (args[0] + 1) / 2
        }
        "delta-source" => {
            need(1)?;
            args[0]
        }
        "delta-target" => {
            need(2)?;
            args[0] + args[1] + 1
        }
        "first-input" => {
            need(1)?;
            1 + args[0]
        }
        _ => return Err(StrataError::UnknownTag(tag.to_string())),
    };
    Ok(if parity.rem_euclid(2) == 0 { 1 } else { -1 })
}

pub const SIGN_TAGS: &[&str] = &[
    "dagger", "ddagger", "diamond", "circ", "f", "cardy", "delta-source", "delta-target", "first-input",
];
