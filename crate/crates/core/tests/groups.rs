use cmlab::groups::*;
use cmlab::arith::{CycloNumber, Field};

#[test]
fn polyhedral_orders() {
    for (name, order) in [
        (GroupName::BinaryTetrahedral, 24),
        (GroupName::BinaryOctahedral, 48),
        (GroupName::BinaryIcosahedral, 120),
    ] {
        let g = builtin_group(name, 500).unwrap();
        assert_eq!(g.order(), order, "{name}");
        assert!(gorenstein_check(&g));
        assert!(is_small(&g).0);
    }
}

#[test]
fn binary_dihedral_orders() {
    for n in 1..=6 {
        let g = builtin_group(GroupName::BinaryDihedral(n), 100).unwrap();
        assert_eq!(g.order(), 4 * n as usize);
        assert!(gorenstein_check(&g));
    }
}

#[test]
fn group_axioms_and_lagrange() {
    for name in [GroupName::BinaryOctahedral, GroupName::BinaryDihedral(5), GroupName::CyclicGL(7, 3)] {
        let g = builtin_group(name, 500).unwrap();
        assert!(g.contains(&GroupMatrix::identity()));
        for e in &g.elements {
            assert!(g.contains(&e.inverse().unwrap()));
            let o = element_order(e, g.order()).unwrap();
            assert_eq!(g.order() % o, 0);
        }
    }
}

#[test]
fn det_is_multiplicative() {
    let g = builtin_group(GroupName::CyclicGL(9, 2), 100).unwrap();
    let e = &g.elements;
    for i in 0..e.len() {
        let (a, b) = (&e[i], &e[(i * 5 + 3) % e.len()]);
        assert_eq!(a.mul(b).det(), a.det().mul(&b.det()));
    }
}

#[test]
fn watanabe_on_cyclic_gl() {
    for n in 2..=8u32 {
        for m in 1..n {
            if num_integer::gcd(n, m) != 1 {
                continue;
            }
            let g = builtin_group(GroupName::CyclicGL(n, m), 100).unwrap();
            assert_eq!(gorenstein_check(&g), m == n - 1, "n={n} m={m}");
        }
    }
}

#[test]
fn an_invariants() {
    for n in 2..=6 {
        assert!(an_invariants_check(n));
    }
    let g = GroupMatrix::diag(CycloNumber::root_of_unity(4, 1), CycloNumber::root_of_unity(4, 3));
    assert_ne!(g.act_on_monomial(1, 0), GroupMatrix::identity().act_on_monomial(1, 0));
}
