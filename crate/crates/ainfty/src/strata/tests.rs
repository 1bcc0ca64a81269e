use std::collections::BTreeSet;

use super::*;

fn all_spaces(max: usize) -> Vec<SpaceId> {
    let mut v = Vec::new();
    for d in 1..=max {
        if d >= 2 {
            v.push(SpaceId::Disc(d));
        }
        v.push(SpaceId::InteriorOutput(d));
        v.push(SpaceId::Annulus(d));
        v.push(SpaceId::Auxiliary(d));
    }
    for r in 0..=max {
        for s in 0..=max - r {
            v.push(SpaceId::Bimodule { r, s });
        }
    }
    v
}

#[test]
fn dimensions() {
    assert_eq!(dimension(SpaceId::Disc(2)), Ok(0));
    assert_eq!(dimension(SpaceId::Bimodule { r: 1, s: 0 }), Ok(1));
    assert_eq!(dimension(SpaceId::Annulus(1)), Ok(1));
    assert_eq!(dimension(SpaceId::InteriorOutput(3)), Ok(2));
    assert_eq!(dimension(SpaceId::Auxiliary(2)), Ok(2));
    assert!(dimension(SpaceId::Disc(1)).is_err());
    assert!(dimension(SpaceId::Annulus(0)).is_err());
}

#[test]
fn parse_round_trips() {
    for s in all_spaces(4).into_iter().chain([SpaceId::Cap]) {
        assert_eq!(SpaceId::parse(&s.to_string()), Ok(s));
    }
    assert_eq!(SpaceId::parse("R_{1|1|2}"), Ok(SpaceId::Bimodule { r: 1, s: 2 }));
    assert!(SpaceId::parse("R_1").is_err());
    assert!(SpaceId::parse("Q_3").is_err());
    assert!(SpaceId::parse("R_{1|2|1}").is_err());
}

/// Facets of the associahedron as bracketings of d letters with one pair of
/// brackets around 2..d-1 consecutive letters.
fn bracketings(d: usize) -> usize {
    (0..d).flat_map(|i| (i + 2..=d).map(move |j| (i, j))).filter(|&(i, j)| j - i < d).count()
}

#[test]
fn associahedron_facets() {
    let expect = [(3, 2), (4, 5), (5, 9)];
    for (d, n) in expect {
        assert_eq!(enumerate_codim1(SpaceId::Disc(d)).unwrap().len(), n);
        assert_eq!(codim1_count(SpaceId::Disc(d)).unwrap(), n);
    }
    for d in 2..9 {
        let n = enumerate_codim1(SpaceId::Disc(d)).unwrap().len();
        assert_eq!(n, codim1_count(SpaceId::Disc(d)).unwrap());
        assert_eq!(n, bracketings(d), "d = {d}");
    }
}

#[test]
fn interior_output_counts() {
    for d in 1..8 {
        let strata = enumerate_codim1(SpaceId::InteriorOutput(d)).unwrap();
        assert_eq!(strata.len(), codim1_count(SpaceId::InteriorOutput(d)).unwrap());
        for d2 in 2..=d {
            let d1 = d + 1 - d2;
            let part: Vec<_> = strata
                .iter()
                .filter(|s| s.factors == [SpaceId::InteriorOutput(d1), SpaceId::Disc(d2)])
                .collect();
            assert_eq!(part.len(), d, "d = {d}, d2 = {d2}");
            let first = part.iter().filter(|s| matches!(s.attachment, Attachment::NonTerminalInput { .. })).count();
            assert_eq!(first, d1 - 1);
            assert_eq!(part.len() - first, d2);
        }
    }
    // a point has no boundary
    assert!(enumerate_codim1(SpaceId::InteriorOutput(1)).unwrap().is_empty());
}

#[test]
fn small_bimodule_spaces() {
    assert!(enumerate_codim1(SpaceId::Bimodule { r: 0, s: 0 }).unwrap().is_empty());
    // an interval
    let s = enumerate_codim1(SpaceId::Bimodule { r: 1, s: 0 }).unwrap();
    assert_eq!(s.len(), 2);
    assert_eq!(s[0].factors, [SpaceId::Disc(2), SpaceId::Bimodule { r: 0, s: 0 }]);
    assert_eq!(s[1].factors, [SpaceId::Bimodule { r: 0, s: 0 }, SpaceId::Disc(2)]);
    // pentagons
    assert_eq!(enumerate_codim1(SpaceId::Bimodule { r: 1, s: 1 }).unwrap().len(), 5);
    assert_eq!(enumerate_codim1(SpaceId::Bimodule { r: 2, s: 0 }).unwrap().len(), 5);
}

#[test]
fn bimodule_spaces_are_associahedra() {
    // r + s + 3 boundary points, as for discs with r + s + 2 inputs
    for r in 0..6 {
        for s in 0..6 {
            let n = enumerate_codim1(SpaceId::Bimodule { r, s }).unwrap().len();
            assert_eq!(n, bracketings(r + s + 2), "({r},{s})");
        }
    }
}

#[test]
fn annulus_ends() {
    let s = enumerate_codim1(SpaceId::Annulus(1)).unwrap();
    assert_eq!(
        s.iter().map(|x| x.factors.clone()).collect::<Vec<_>>(),
        [
            vec![SpaceId::Cap, SpaceId::InteriorOutput(1)],
            vec![SpaceId::Disc(2), SpaceId::Bimodule { r: 0, s: 0 }],
        ]
    );
}

#[test]
fn codimension_one_consistency() {
    for space in all_spaces(6) {
        let strata = enumerate_codim1(space).unwrap();
        let dim = dimension(space).unwrap();
        let unique: BTreeSet<_> = strata.iter().collect();
        assert_eq!(unique.len(), strata.len(), "{space} has duplicates");
        for s in &strata {
            for f in &s.factors {
                f.validate().unwrap();
            }
            assert_eq!(s.factor_dimension(), dim - 1, "{space}: {s}");
        }
    }
}

#[test]
fn bijections_for_small_parameters() {
    for d in 2..=6 {
        assert!(strata_term_bijection(SpaceId::Disc(d), Equation::AinfRelation).unwrap().passed());
    }
    for d in 1..=6 {
        let rep = strata_term_bijection(SpaceId::InteriorOutput(d), Equation::HochschildDifferential).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let rep = strata_term_bijection(SpaceId::Annulus(d), Equation::HomotopyEquation).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }
    for r in 0..=4 {
        for s in 0..=4 - r {
            let rep = strata_term_bijection(SpaceId::Bimodule { r, s }, Equation::BimoduleMap).unwrap();
            assert!(rep.passed(), "({r},{s}): {rep:?}");
        }
    }
}

#[test]
fn quadratic_terms_of_the_relation() {
    let rep = strata_term_bijection(SpaceId::Disc(4), Equation::AinfRelation).unwrap();
    assert_eq!(rep.pairs.len(), 5);
    // mu^1 inside (4 terms) and mu^1 outside (1 term)
    assert_eq!(rep.excluded.len(), 5);
}

#[test]
fn hochschild_at_length_one() {
    let rep = strata_term_bijection(SpaceId::InteriorOutput(1), Equation::HochschildDifferential).unwrap();
    assert!(rep.pairs.is_empty());
    assert_eq!(rep.excluded, [(EquationTerm::Bar(BarBlock::Wrap { i: 1, first: 1 }), Exclusion::Differential)]);
}

#[test]
fn bimodule_family_ranges() {
    let rep = strata_term_bijection(SpaceId::Bimodule { r: 1, s: 1 }, Equation::BimoduleMap).unwrap();
    assert!(rep.passed());
    let fam = |f: fn(&Attachment) -> bool| rep.pairs.iter().filter(|(s, _)| f(&s.attachment)).count();
    assert_eq!(fam(|a| matches!(a, Attachment::LeftOutput { .. })), 1);
    assert_eq!(fam(|a| matches!(a, Attachment::RightOutput { .. })), 1);
    assert_eq!(fam(|a| matches!(a, Attachment::MarkedInput { .. })), 3);
    assert_eq!(fam(|a| matches!(a, Attachment::RightInputs { .. } | Attachment::LeftInputs { .. })), 0);
    let why = |t| rep.excluded.iter().find(|(u, _)| *u == t).map(|x| x.1);
    assert_eq!(why(EquationTerm::HomAfter { m: 1, l: 1 }), Some(Exclusion::Differential));
    assert_eq!(why(EquationTerm::HomAfter { m: 0, l: 0 }), Some(Exclusion::Vanishes));
    assert_eq!(why(EquationTerm::HomBefore { m: 0, l: 0 }), Some(Exclusion::Differential));
    assert_eq!(why(EquationTerm::HomAfter { m: 0, l: 1 }), None);
}

#[test]
fn mismatches_are_reported() {
    let space = SpaceId::Bimodule { r: 2, s: 1 };
    let eq = Equation::BimoduleMap;
    let terms = equation_terms(space, eq).unwrap();
    let strata = enumerate_codim1(space).unwrap();
    assert!(build_report(space, eq, terms.clone(), strata.clone()).passed());

    let mut fewer = strata.clone();
    let gone = fewer.remove(3);
    let rep = build_report(space, eq, terms.clone(), fewer);
    assert_eq!(rep.unmatched_terms.len(), 1);
    assert_eq!(rep.unmatched_terms[0].1, gone);

    let mut doubled = terms.clone();
    doubled.push(rep.pairs[0].1);
    let rep = build_report(space, eq, doubled, strata.clone());
    assert_eq!(rep.collisions.len(), 1);

    let kept: Vec<_> = terms.iter().copied().filter(|t| !matches!(t, EquationTerm::HomLeftBlock { .. })).collect();
    let rep = build_report(space, eq, kept, strata);
    assert_eq!(rep.unmatched_strata.len(), 1);
    assert!(matches!(rep.unmatched_strata[0].attachment, Attachment::LeftInputs { k: 0, m: 2 }));

    assert!(strata_term_bijection(SpaceId::Disc(3), Equation::BimoduleMap).is_err());
}

#[test]
fn sign_examples() {
    assert_eq!(sign_formula("dagger", &[0, 0, 0]), Ok(1));
    assert_eq!(sign_formula("dagger", &[1, 1]), Ok(-1));
    assert_eq!(sign_formula("dagger", &[]), Ok(1));
    assert_eq!(sign_formula("cardy", &[3]), Ok(1));
    assert_eq!(sign_formula("cardy", &[1]), Ok(-1));
    assert_eq!(sign_formula("cardy", &[2]), Ok(-1));
    assert_eq!(sign_formula("first-input", &[0]), Ok(-1));
    assert_eq!(sign_formula("delta-target", &[1, 1]), Ok(-1));
    assert!(matches!(sign_formula("spade", &[]), Err(StrataError::UnknownTag(_))));
    assert!(sign_formula("cardy", &[]).is_err());
    assert!(sign_formula("diamond", &[0, 1, 1, 0, 0]).is_err());
}

#[test]
fn ddagger_by_hand() {
    // r = 1, s = 2: 2 x_{|1} + x_{|2} + 2 x̲ + 3 x_1
    let cases = [([1, 0, 0, 0], 3), ([0, 0, 1, 0], 2), ([0, 0, 0, 1], 1), ([0, 1, 0, 0], 2)];
    for ([x1, xm, y1, y2], p) in cases {
        let expect = if p % 2 == 0 { 1 } else { -1 };
        assert_eq!(sign_formula("ddagger", &[1, 2, x1, xm, y1, y2]), Ok(expect));
    }
}

#[test]
fn f_sign_is_a_sum_of_parities() {
    assert_eq!(sign_formula("f", &[1, 1, 0, 0, 0]), Ok(1));
    assert_eq!(sign_formula("f", &[1, 0, 0, 0, 0]), Ok(-1));
}
