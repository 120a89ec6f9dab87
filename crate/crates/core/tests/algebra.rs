use cmlab::arith::cyclo::{cyclotomic_poly, totient};
use cmlab::arith::{
    divide_out, even_odd_split, laurent_val, parse_poly, poly_det, q, qq, vars, CycloNumber, Field, Jet, LaurentPoly,
    Monomial, MultiPoly, PolyMatrix, Rational, Vars,
};
use proptest::prelude::*;

type P = MultiPoly<Rational>;

fn xyz() -> Vars {
    vars(&["x", "y", "z"])
}

fn poly_from(terms: &[((u32, u32, u32), (i64, i64))]) -> P {
    let v = xyz();
    MultiPoly::from_terms(&v, terms.iter().map(|&((a, b, c), (n, d))| (Monomial(vec![a, b, c]), qq(n, d))))
}

fn arb_poly(max_terms: usize, max_deg: u32) -> impl Strategy<Value = P> {
    prop::collection::vec(((0..=max_deg, 0..=max_deg, 0..=max_deg), (-9i64..=9, 1i64..=4)), 0..=max_terms)
        .prop_map(|t| poly_from(&t))
}

fn arb_matrix(n: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(arb_poly(3, 1), n * n).prop_map(move |e| {
        let rows = e.chunks(n).map(|r| r.to_vec()).collect();
        PolyMatrix::from_rows(&xyz(), rows).unwrap()
    })
}

/// Permutation-sum determinant, independent of the elimination route.
fn leibniz(m: &PolyMatrix) -> P {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for k in 0..n {
                let mut p2 = p.clone();
                p2.insert(k, n - 1);
                out.push(p2);
            }
        }
        out
    }
    let n = m.rows();
    let mut total = P::zero(m.vars());
    for p in perms(n) {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut term = P::one(m.vars());
        for (i, &pi) in p.iter().enumerate() {
            term = term.mul(m.get(i, pi));
        }
        total = if inversions % 2 == 0 { total.add(&term) } else { total.sub(&term) };
    }
    total
}

#[test]
fn determinant_examples() {
    let v = vars(&["u", "v", "w"]);
    let m = |rows: &[&[&str]], v: &Vars| {
        PolyMatrix::from_rows(v, rows.iter().map(|r| r.iter().map(|s| parse_poly(s, v).unwrap()).collect()).collect())
            .unwrap()
    };
    let a1 = m(&[&["u", "-w"], &["-w", "v"]], &v);
    assert_eq!(poly_det(&a1).unwrap(), parse_poly("u*v - w^2", &v).unwrap());
    assert!(poly_det(&PolyMatrix::<Rational>::identity(&v, 3)).unwrap().is_one());
    let e = m(&[&["x", "z^3", "0"], &["0", "y", "x"], &["y^2", "0", "z"]], &xyz());
    let d = poly_det(&e).unwrap();
    assert_eq!(d, parse_poly("x*y*z + x*y^2*z^3", &xyz()).unwrap());
    assert_eq!(d, leibniz(&e));
    assert!(poly_det(&PolyMatrix::<Rational>::zero(&v, 2, 3)).is_err());
}

#[test]
fn divide_out_examples() {
    let v = xyz();
    let p = |s: &str| parse_poly(s, &v).unwrap();
    assert_eq!(divide_out(&p("x^2*y"), &p("x")).unwrap(), (2, p("y")));
    assert_eq!(divide_out(&p("x*y*z + x*y^2*z^3"), &p("x")).unwrap(), (1, p("y*z + y^2*z^3")));
    let w = vars(&["u", "v", "w"]);
    let f = parse_poly("u*v - w^2", &w).unwrap();
    assert_eq!(divide_out(&f, &parse_poly("u", &w).unwrap()).unwrap(), (0, f.clone()));
    assert!(divide_out(&p("x"), &p("0")).is_err());
    assert!(divide_out(&p("x"), &p("1 + x")).is_err());
}

#[test]
fn laurent_examples() {
    let t = |terms: &[(i64, i64)]| LaurentPoly::from_terms("t", terms.iter().map(|&(e, c)| (e, q(c))));
    assert_eq!(laurent_val(&t(&[(2, 1), (5, 1)])).unwrap(), 2);
    assert_eq!(laurent_val(&t(&[(-1, 1), (0, 1)])).unwrap(), -1);
    assert_eq!(laurent_val(&t(&[(0, 3)])).unwrap(), 0);
    assert!(laurent_val(&t(&[])).is_err());
    assert_eq!(even_odd_split(&t(&[(0, 1), (1, 1), (2, 1)])), (t(&[(0, 1), (2, 1)]), t(&[(0, 1)])));
    assert_eq!(even_odd_split(&t(&[(3, 1)])), (t(&[]), t(&[(2, 1)])));
    assert_eq!(even_odd_split(&t(&[])), (t(&[]), t(&[])));
}

#[test]
fn cyclotomic_roots_have_their_order() {
    for n in 1..=24u32 {
        let z = CycloNumber::root_of_unity(n, 1);
        assert_eq!(z.coeffs().len(), totient(n) as usize);
        assert_eq!(cyclotomic_poly(n).len(), totient(n) as usize + 1);
        let mut acc = CycloNumber::one();
        for d in 1..=n {
            acc = acc.mul(&z);
            assert_eq!(acc.is_one(), d == n, "zeta_{n}^{d}");
        }
    }
}

fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -5i64..=5), 0..6)
        .prop_map(|t| LaurentPoly::from_terms("t", t.into_iter().map(|(e, c)| (e, q(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in arb_poly(20, 3), b in arb_poly(20, 3), c in arb_poly(20, 3)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn printer_parser_round_trip(a in arb_poly(20, 4)) {
        let text = a.to_string();
        let back = parse_poly(&text, a.vars()).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn determinant_is_multiplicative(a in arb_matrix(3), b in arb_matrix(3)) {
        let da = poly_det(&a).unwrap();
        let db = poly_det(&b).unwrap();
        prop_assert_eq!(poly_det(&a.mul(&b)).unwrap(), da.mul(&db));
    }

    #[test]
    fn determinant_matches_permutation_sum(a in arb_matrix(4)) {
        prop_assert_eq!(poly_det(&a).unwrap(), leibniz(&a));
    }

    #[test]
    fn divide_out_round_trip(r in arb_poly(6, 2), k in 0u32..4, which in 0usize..3) {
        prop_assume!(!r.is_zero());
        let v = xyz();
        let g = [parse_poly("x", &v).unwrap(), parse_poly("y + z^2", &v).unwrap(), parse_poly("x*y - z^3", &v).unwrap()][which].clone();
        let p = g.pow(k).mul(&r);
        let (e, cof) = divide_out(&p, &g).unwrap();
        prop_assert!(e >= k);
        prop_assert_eq!(g.pow(e).mul(&cof), p);
        prop_assert!(cof.exact_div(&g).is_none());
    }

    #[test]
    fn even_odd_recombines(p in arb_laurent()) {
        let (e, o) = even_odd_split(&p);
        prop_assert!(e.is_even() && o.is_even());
        prop_assert_eq!(e.add(&o.shift(1)), p);
    }

    #[test]
    fn valuation_is_additive(a in arb_laurent(), b in arb_laurent()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!(laurent_val(&a.mul(&b)).unwrap(), laurent_val(&a).unwrap() + laurent_val(&b).unwrap());
    }

    #[test]
    fn jet_product_is_truncated_product(a in arb_poly(8, 3), b in arb_poly(8, 3), order in 1u32..6) {
        let j = Jet::new(&a, order).mul(&Jet::new(&b, order));
        prop_assert_eq!(j.base(), &a.mul(&b).truncate(order));
        prop_assert!(j.base().terms().all(|(m, _)| m.degree() < order));
    }

    #[test]
    fn rationals_are_normalized(n in -1000i64..1000, d in 1i64..1000) {
        let r = qq(n, d);
        prop_assert!(r.denom() > &0.into());
        prop_assert_eq!(num_integer::Integer::gcd(r.numer(), r.denom()), if n == 0 { r.denom().clone() } else { 1.into() });
    }
}
