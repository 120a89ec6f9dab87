use cmlab::arith::{parse_poly, Monomial, PolyMatrix};
use cmlab::catalog::*;
use cmlab::mf::{is_reduced, multirank, verify_mf};
use proptest::prelude::*;

fn rows(m: &PolyMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect()
}

fn s(rows: &[&[&str]]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect()
}

#[test]
fn exact_matrices() {
    let a = family(FamilyId::An(4, 2)).unwrap();
    assert_eq!(rows(a.phi()), s(&[&["u", "-w^2"], &["-w^2", "v"]]));
    assert_eq!(rows(a.psi()), s(&[&["v", "w^2"], &["w^2", "u"]]));
    let p = family(FamilyId::AInfPhi(1)).unwrap();
    assert_eq!(rows(p.phi()), s(&[&["y", "z"], &["0", "x"]]));
    assert_eq!(rows(p.psi()), s(&[&["x", "-z"], &["0", "y"]]));
    let (phi, psi) = displayed_pair(FamilyId::DInfGamma(1)).unwrap();
    assert_eq!(
        rows(&phi),
        s(&[&["z", "x*y", "0", "-y^2"], &["x", "z", "y", "0"], &["0", "0", "z", "x*y"], &["0", "0", "x", "z"]])
    );
    assert_eq!(
        rows(&psi),
        s(&[&["-z", "-x*y", "0", "y^2"], &["x", "z", "y", "0"], &["0", "0", "-z", "-x*y"], &["0", "0", "x", "z"]])
    );
}

#[test]
fn out_of_range_parameters() {
    for id in [FamilyId::An(1, 1), FamilyId::An(4, 0), FamilyId::An(4, 4), FamilyId::AInfPhi(0), FamilyId::DInfGamma(0)] {
        assert!(matches!(family(id), Err(CatalogError::Range(_))), "{id}");
    }
    assert_eq!(family(FamilyId::EGSix).unwrap_err(), CatalogError::Symbolic);
}

#[test]
fn every_member_verifies_and_is_reduced() {
    let mut ids = vec![FamilyId::DInfAlpha, FamilyId::DInfBeta];
    for n in 2..=10 {
        ids.extend((1..n).map(|l| FamilyId::An(n, l)));
    }
    for k in 1..=10 {
        ids.extend([FamilyId::AInfPhi(k), FamilyId::DInfGamma(k), FamilyId::DInfDelta(k)]);
    }
    for id in ids {
        let mf = family(id).unwrap();
        assert!(is_reduced(&mf), "{id}");
        assert_eq!(mf.phi(), &displayed_pair(id).unwrap().0, "{id}");
    }
    for c in [Component::One, Component::Two] {
        let mf = family(FamilyId::AInfComponent(c)).unwrap();
        assert!(is_reduced(&mf));
    }
}

/// The displayed γ/δ partners miss the identity by the signs
/// `diag(1, −1, 1, −1)`; the catalog partner differs from them only there.
#[test]
fn gamma_delta_display_signs() {
    for m in 1..=6 {
        for id in [FamilyId::DInfGamma(m), FamilyId::DInfDelta(m)] {
            let (phi, psi) = displayed_pair(id).unwrap();
            assert!(verify_mf(&family_ring(id).unwrap(), phi.clone(), psi.clone()).is_err(), "{id}");
            let fixed = family(id).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    let want = if j % 2 == 1 { psi.get(i, j).neg() } else { psi.get(i, j).clone() };
                    assert_eq!(fixed.psi().get(i, j), &want, "{id} ({i},{j})");
                }
            }
        }
    }
}

#[test]
fn ainf_multirank_up_to_ten() {
    for n in 1..=10 {
        assert_eq!(multirank(&family(FamilyId::AInfPhi(n)).unwrap()).unwrap().ranks, vec![1, 1]);
    }
}

#[test]
fn e6_pair_facts() {
    let e = eg_e6_pair();
    let n = e.phi.rows();
    // ψ is the adjugate, so the products are det·I whatever det is.
    let d = PolyMatrix::scalar(e.phi.vars(), n, &e.det);
    assert_eq!(e.phi.mul(&e.psi), d);
    assert_eq!(e.psi.mul(&e.phi), d);
    // The displayed φ has the wrong determinant, so the identity fails.
    assert_ne!(e.det, e.target);
    assert!(!e.identity_holds);
    assert!(!e.modulus_check);
    assert!(!e.printed_mismatches.is_empty());
    let (_, xv) = e6_vars();
    assert_eq!(e.target.vars(), &xv);
    assert_eq!(e.target.terms().count(), 4);
    assert!(e.target.terms().all(|(m, _)| m.degree() == 3));
}

/// Independent generator oracle: a qualifying monomial is a generator when
/// no nonconstant invariant monomial divides it with a qualifying quotient.
fn generator_oracle(n: u32, m: u32, l: u32, bound: u32) -> Vec<(u32, u32)> {
    let qual = |i: u32, j: u32| (i + m * j) % n == l % n;
    let inv = |a: u32, b: u32| (a + m * b).is_multiple_of(n) && a + b > 0;
    let mut out = Vec::new();
    for d in 0..=bound {
        for i in (0..=d).rev() {
            let j = d - i;
            if !qual(i, j) {
                continue;
            }
            let reducible = (0..=i).any(|a| (0..=j).any(|b| inv(a, b) && qual(i - a, j - b)));
            if !reducible {
                out.push((i, j));
            }
        }
    }
    out
}

fn pairs(g: &[Monomial]) -> Vec<(u32, u32)> {
    g.iter().map(|m| (m.0[0], m.0[1])).collect()
}

#[test]
fn cyclic_generator_examples() {
    assert_eq!(pairs(&cyclic_module_generators(2, 1, 1, 6).unwrap()), vec![(1, 0), (0, 1)]);
    for (n, m) in [(3, 1), (5, 2), (7, 3)] {
        assert_eq!(pairs(&cyclic_module_generators(n, m, n, 10).unwrap()), vec![(0, 0)]);
    }
    let g9 = cyclic_module_generators(3, 2, 1, 9).unwrap();
    let g12 = cyclic_module_generators(3, 2, 1, 12).unwrap();
    assert_eq!(g9, g12);
    assert_eq!(pairs(&g9), generator_oracle(3, 2, 1, 9));
    assert!(cyclic_module_generators(4, 2, 1, 4).is_err());
    assert!(cyclic_module_generators(3, 0, 1, 4).is_err());
    assert!(cyclic_module_generators(3, 1, 4, 4).is_err());
}

#[test]
fn ring_table_matches_family_rings() {
    assert_eq!(an_ring(4).f(), &parse_poly("u*v - w^4", an_ring(4).vars()).unwrap());
    assert_eq!(ainf_ring().f(), &parse_poly("x*y", ainf_ring().vars()).unwrap());
    assert_eq!(family_table().len(), 9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generators_match_oracle(n in 2u32..9, m in 1u32..8, l in 1u32..9, bound in 4u32..12) {
        prop_assume!(m < n && l <= n && num_integer::gcd(n, m) == 1);
        let got = pairs(&cyclic_module_generators(n, m, l, bound).unwrap());
        prop_assert_eq!(got, generator_oracle(n, m, l, bound));
    }

    #[test]
    fn family_ids_round_trip(n in 2u32..12, l in 1u32..12, k in 1u32..12, minus in any::<bool>()) {
        prop_assume!(l < n);
        for id in [FamilyId::An(n, l), FamilyId::AInfPhi(k), FamilyId::DInfDelta(k), FamilyId::AnCurveRankOne(k, minus)] {
            prop_assert_eq!(id.to_string().parse::<FamilyId>().unwrap(), id);
        }
    }
}
