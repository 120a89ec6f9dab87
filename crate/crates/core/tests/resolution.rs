use cmlab::resolution::*;
use proptest::prelude::*;

fn all_ade() -> Vec<AdeType> {
    let mut v: Vec<AdeType> = (1..=8).map(AdeType::A).collect();
    v.extend((4..=8).map(AdeType::D));
    v.extend([AdeType::E6, AdeType::E7, AdeType::E8]);
    v
}

/// Componentwise minimum over every valid cycle in a box, found by scanning.
fn brute_force_fundamental(g: &DualGraph, bound: i64) -> Option<Vec<i64>> {
    let m = intersection_matrix(g);
    let n = g.len();
    let mut best: Option<Vec<i64>> = None;
    let mut cur = vec![1i64; n];
    loop {
        let ok = (0..n).all(|i| (0..n).map(|j| m[i][j] * cur[j]).sum::<i64>() <= 0);
        if ok {
            best = Some(match best {
                None => cur.clone(),
                Some(b) => b.iter().zip(&cur).map(|(a, c)| *a.min(c)).collect(),
            });
        }
        let mut i = 0;
        while i < n && cur[i] == bound {
            cur[i] = 1;
            i += 1;
        }
        if i == n {
            return best;
        }
        cur[i] += 1;
    }
}

#[test]
fn ade_cycles_match_diagram_labels() {
    for t in all_ade() {
        let (g, expected) = ade_graph(t).unwrap();
        assert!(is_negative_definite(&intersection_matrix(&g)).unwrap(), "{t}");
        let z = fundamental_cycle(&g).unwrap();
        assert_eq!(z, expected, "{t}");
        let m = intersection_matrix(&g);
        assert!(cycle_products(&m, &z.0).iter().all(|&p| p <= 0));
        assert_eq!(self_intersection(&g, &z), -2);
        assert_eq!(edim_rational(&g).unwrap(), 3);
        assert!(simple_z_squared_erratum(&g).unwrap());
        if g.len() <= 4 {
            assert!(certify_minimal(&g, &z));
            assert_eq!(brute_force_fundamental(&g, 6).unwrap(), z.0);
        }
    }
}

#[test]
fn affine_e6_is_degenerate() {
    let (g, _) = ade_graph(AdeType::E6).unwrap();
    let mut w = g.weights.clone();
    w.push(-2);
    let mut e = g.edges.clone();
    e.push((5, 6));
    let affine = DualGraph::new(w, e).unwrap();
    assert!(!is_negative_definite(&intersection_matrix(&affine)).unwrap());
    assert_eq!(fundamental_cycle(&affine), Err(ResolutionError::NotNegativeDefinite));
}

#[test]
fn cusp_triangle() {
    let g = DualGraph::new(vec![-2, -2, -3], vec![(0, 1), (1, 2), (2, 0)]).unwrap();
    let m = intersection_matrix(&g);
    for (i, row) in m.iter().enumerate() {
        assert_eq!(row.iter().enumerate().filter(|&(j, &x)| j != i && x == 1).count(), 2);
    }
}

#[test]
fn brieskorn_a2() {
    let (g, _) = ade_graph(AdeType::A(2)).unwrap();
    let p = brieskorn_presentation(&intersection_matrix(&g));
    assert_eq!(p.to_string(), "< g1, g2 | g1 g2 = g2 g1, g2 g1 = g1 g2, g1^-2 g2 = e, g1 g2^-2 = e >");
}

fn small_graph() -> impl Strategy<Value = DualGraph> {
    (1usize..=4)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec(-4i64..=-1, n),
                proptest::collection::vec((0..n, 0..n), 0..=n + 1),
            )
        })
        .prop_map(|(w, e)| DualGraph {
            weights: w,
            edges: e.into_iter().filter(|(a, b)| a != b).collect(),
        })
}

proptest! {
    #[test]
    fn definiteness_agrees_with_box_scan(g in small_graph()) {
        let m = intersection_matrix(&g);
        let n = g.len();
        let mut all_negative = true;
        let mut x = vec![-3i64; n];
        loop {
            if x.iter().any(|&c| c != 0) && pairing(&m, &x, &x) >= 0 {
                all_negative = false;
            }
            let mut i = 0;
            while i < n && x[i] == 3 { x[i] = -3; i += 1; }
            if i == n { break; }
            x[i] += 1;
        }
        let nd = is_negative_definite(&m).unwrap();
        if nd { prop_assert!(all_negative); }
        if !all_negative { prop_assert!(!nd); }
    }

    #[test]
    fn laufer_matches_brute_force(g in small_graph()) {
        if let Ok(z) = fundamental_cycle(&g) {
            let connected_ok = cycle_products(&intersection_matrix(&g), &z.0).iter().all(|&p| p <= 0);
            prop_assert!(connected_ok);
            prop_assert!(z.0.iter().all(|&c| c >= 1));
            let bound = *z.0.iter().max().unwrap();
            prop_assert_eq!(brute_force_fundamental(&g, bound.max(1)), Some(z.0.clone()));
        }
    }
}
