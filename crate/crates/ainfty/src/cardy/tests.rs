use std::collections::BTreeSet;

use super::*;
use crate::fixtures::{self, Coproduct};
use crate::modules::hom_basis_by_degree;

fn setup(cp: &Coproduct, n: usize) -> CardySetup {
    CardySetup::new(&cp.category, cp.object, &cp.subcategory, &cp.delta, n).unwrap()
}

fn scaled(f: &GradedMap, c: i64) -> GradedMap {
    let mut g = f.clone();
    for m in g.maps.values_mut() {
        *m = m.scale(&BigInt::from(c));
    }
    g
}

#[test]
fn telescoping_configurations() {
    for cp in fixtures::coproducts() {
        for n in 1..=3 {
            let s = setup(&cp, n);
            let data = OpenClosedData::telescoping(&s);
            let data = OpenClosedData::new(&s, data.closed, data.oc, data.co).unwrap();
            let rep = verify_homotopy_equation(&s, &data, &HomotopyWitness::zero(s.degree())).unwrap();
            assert!(rep.passed(), "{} N={n}: {:?}", cp.name, rep.failures.first());
            assert_eq!(rep.words_checked, s.cc.complex.total_dim());
            let hom = verify_cardy_on_homology(&s, &data, None);
            assert!(hom.passed() && hom.verbatim_agrees(), "{} N={n}", cp.name);
            match solve_homotopy(&s, &data).unwrap() {
                HomotopySolution::Witness(w) => {
                    assert!(verify_homotopy_equation(&s, &data, &w).unwrap().passed())
                }
                other => panic!("{}: {other:?}", cp.name),
            }
        }
    }
}

#[test]
fn global_signs() {
    assert_eq!([0, 1, 2, 3, 4].map(global_sign), [1, -1, -1, 1, 1]);
}

fn composite_is_nonzero_on_homology(s: &CardySetup) -> bool {
    let z = GradedMap::new(s.degree());
    s.cc.complex.degrees().into_iter().any(|k| {
        let cc = &s.cc.complex;
        !maps_agree_on_homology(cc, &s.hom, &s.composite.component(cc, &s.hom, k), &z.component(cc, &s.hom, k), k, s.degree())
    })
}

#[test]
fn sign_path_with_odd_global_sign() {
    for n in [1, 2] {
        let cp = fixtures::shifted_summand_coproduct(n);
        let s = setup(&cp, 2);
        assert!(composite_is_nonzero_on_homology(&s));
        let tele = OpenClosedData::telescoping(&s);
        let rep = verify_cardy_on_homology(&s, &tele, None);
        assert_eq!(rep.global_sign, -1);
        assert!(rep.verbatim_agrees() && !rep.signed_agrees() && rep.passed());

        let flipped = OpenClosedData::new(&s, tele.closed.clone(), scaled(&tele.oc, -1), tele.co.clone()).unwrap();
        let rep = verify_cardy_on_homology(&s, &flipped, None);
        assert!(!rep.verbatim_agrees() && rep.signed_agrees() && rep.passed());
        // at chain level the sign is not absorbed
        let chain = verify_homotopy_equation(&s, &flipped, &HomotopyWitness::zero(n)).unwrap();
        assert!(!chain.passed());
        assert_eq!(solve_homotopy(&s, &flipped).unwrap(), HomotopySolution::NoSolution);
    }
}

#[test]
fn even_global_sign_does_not_flip() {
    let cp = fixtures::shifted_summand_coproduct(0);
    let s = setup(&cp, 2);
    assert!(composite_is_nonzero_on_homology(&s));
    let tele = OpenClosedData::telescoping(&s);
    let flipped = OpenClosedData::new(&s, tele.closed.clone(), scaled(&tele.oc, -1), tele.co.clone()).unwrap();
    let rep = verify_cardy_on_homology(&s, &flipped, None);
    assert_eq!(rep.global_sign, 1);
    assert!(!rep.passed());
}

#[test]
fn zero_closed_open_map_fails_with_witness() {
    let cp = fixtures::ground_ring_coproduct();
    let s = setup(&cp, 2);
    let tele = OpenClosedData::telescoping(&s);
    let data = OpenClosedData::new(&s, tele.closed.clone(), tele.oc.clone(), GradedMap::new(0)).unwrap();
    let rep = verify_homotopy_equation(&s, &data, &HomotopyWitness::zero(0)).unwrap();
    assert!(!rep.passed());
    assert!(rep.failures.iter().any(|f| f.word == "e"));
    assert_eq!(solve_homotopy(&s, &data).unwrap(), HomotopySolution::NoSolution);
    assert!(!verify_cardy_on_homology(&s, &data, None).passed());
}

#[test]
fn all_maps_zero() {
    for (name, c) in fixtures::all() {
        let k: ObjId = 0;
        let b: BTreeSet<ObjId> = [k].into();
        let delta = BimoduleHom::zero(0);
        let s = CardySetup::new(&c, k, &b, &delta, 2).unwrap();
        let closed = s.hom.clone();
        let data = OpenClosedData::new(&s, closed, GradedMap::new(0), GradedMap::new(0)).unwrap();
        assert!(verify_homotopy_equation(&s, &data, &HomotopyWitness::zero(0)).unwrap().passed(), "{name}");
        assert!(verify_cardy_on_homology(&s, &data, None).passed(), "{name}");
    }
}

/// Torsion fixture with `Δ = 0` of degree 0, `S = hom(K, K)`, `CO = id` and
/// `OC([x]) = x` on words of length one.
fn torsion_configuration() -> (CardySetup, OpenClosedData) {
    let c = fixtures::torsion_unit_algebra();
    let k = c.object_id("K").unwrap();
    let s = CardySetup::new(&c, k, &[k].into(), &BimoduleHom::zero(0), 1).unwrap();
    let (_, pos) = hom_basis_by_degree(&c, k, k);
    let mut oc = GradedMap::new(0);
    for (&deg, ws) in &s.cc.words {
        let mut m = IntMatrix::zeros(s.hom.dim(deg), ws.len());
        for (j, w) in ws.iter().enumerate() {
            let x = w.0[0];
            let (d, i) = pos[&x];
            assert_eq!(d, deg);
            m[(i, j)] = BigInt::one();
        }
        oc.maps.insert(deg, m);
    }
    let data = OpenClosedData::new(&s, s.hom.clone(), oc, GradedMap::identity(&s.hom)).unwrap();
    (s, data)
}

#[test]
fn torsion_discrepancy_is_only_rationally_null() {
    let (s, data) = torsion_configuration();
    assert_eq!(solve_homotopy(&s, &data).unwrap(), HomotopySolution::NoIntegralSolution);
    // doubling the discrepancy makes it integrally null-homotopic
    let doubled = OpenClosedData::new(&s, data.closed.clone(), scaled(&data.oc, 2), data.co.clone()).unwrap();
    let HomotopySolution::Witness(w) = solve_homotopy(&s, &doubled).unwrap() else { panic!() };
    assert!(!w.h.maps.is_empty());
    assert!(verify_homotopy_equation(&s, &doubled, &w).unwrap().passed());
    assert!(verify_cardy_on_homology(&s, &doubled, None).passed());
    // the undoubled map is nonzero on the 2-torsion
    assert!(!verify_cardy_on_homology(&s, &data, None).passed());
}

#[test]
fn rejects_bad_data() {
    let (s, data) = torsion_configuration();
    // negating OC on z alone breaks d OC = OC b
    let mut oc = data.oc.clone();
    let m = oc.maps.get_mut(&-1).unwrap();
    m[(0, 0)] = -BigInt::one();
    assert!(matches!(
        OpenClosedData::new(&s, data.closed.clone(), oc, data.co.clone()),
        Err(CardyError::NotAChainMap { which: "OC", .. })
    ));
    assert!(matches!(
        OpenClosedData::new(&s, data.closed.clone(), GradedMap::new(1), data.co.clone()),
        Err(CardyError::WrongDegree { which: "OC", .. })
    ));
    assert!(matches!(
        verify_homotopy_equation(&s, &data, &HomotopyWitness::zero(1)),
        Err(CardyError::WrongDegree { which: "H", .. })
    ));
    let mut cp = fixtures::dual_numbers_coproduct(1);
    let e = cp.diagonal().find("e").unwrap();
    let key = crate::modules::BimodKey::new(vec![], e, vec![]);
    cp.delta = cp.delta.with_negated(&key, cp.target().find("eps⊗e").unwrap());
    assert!(matches!(
        CardySetup::new(&cp.category, cp.object, &cp.subcategory, &cp.delta, 2),
        Err(CardyError::NotABimoduleMap(_))
    ));
}

/// `OC` perturbed by `(-1)^n d H0 + H0 b` for a chosen `H0`.
fn perturbed(s: &CardySetup, h0: &GradedMap) -> OpenClosedData {
    let n = s.degree();
    let cc = &s.cc.complex;
    let tele = OpenClosedData::telescoping(s);
    let mut oc = tele.oc.clone();
    for k in cc.degrees() {
        let dh = s.hom.differential(k + n - 1).mul(&h0.component(cc, &s.hom, k)).scale(&sign_of(n));
        let hb = h0.component(cc, &s.hom, k + 1).mul(&cc.differential(k));
        oc.maps.insert(k, oc.component(cc, &s.hom, k).add(&dh).add(&hb));
    }
    OpenClosedData::new(s, tele.closed, oc, tele.co).unwrap()
}

#[test]
fn nontrivial_homotopies_replay() {
    let (s, _) = torsion_configuration();
    let cc = &s.cc.complex;
    let mut h0 = GradedMap::new(-1);
    for k in cc.degrees() {
        let (r, c) = (s.hom.dim(k - 1), cc.dim(k));
        if r * c > 0 {
            let mut m = IntMatrix::zeros(r, c);
            m[(0, 0)] = BigInt::from(3);
            h0.maps.insert(k, m);
        }
    }
    let data = perturbed(&s, &h0);
    assert!(verify_homotopy_equation(&s, &data, &HomotopyWitness { h: h0.clone() }).unwrap().passed());
    let HomotopySolution::Witness(w) = solve_homotopy(&s, &data).unwrap() else { panic!() };
    assert!(verify_homotopy_equation(&s, &data, &w).unwrap().passed());
    assert!(verify_cardy_on_homology(&s, &data, None).passed());
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn random_homotopies_are_found(which in 0usize..7, n in 1usize..=3, seed in proptest::collection::vec(-2i64..=2, 64)) {
            let cp = &fixtures::coproducts()[which];
            let s = setup(cp, n);
            let cc = &s.cc.complex;
            let mut h0 = GradedMap::new(s.degree() - 1);
            let mut it = seed.iter().cycle();
            for k in cc.degrees() {
                let (r, c) = (s.hom.dim(k + s.degree() - 1), cc.dim(k));
                if r * c > 0 {
                    let mut m = IntMatrix::zeros(r, c);
                    for i in 0..r {
                        for j in 0..c {
                            m[(i, j)] = BigInt::from(*it.next().unwrap());
                        }
                    }
                    h0.maps.insert(k, m);
                }
            }
            let data = perturbed(&s, &h0);
            let given = HomotopyWitness { h: h0 };
            prop_assert!(verify_homotopy_equation(&s, &data, &given).unwrap().passed());
            let solved = solve_homotopy(&s, &data).unwrap();
            let HomotopySolution::Witness(w) = solved else { panic!("{solved:?}") };
            prop_assert!(verify_homotopy_equation(&s, &data, &w).unwrap().passed());
            prop_assert!(verify_cardy_on_homology(&s, &data, None).verbatim_agrees());
        }
    }
}
