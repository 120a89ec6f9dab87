mod common;

use std::collections::BTreeMap;

use cmlab::normal_form::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn multiset<B: Ord + Clone>(bs: &[B]) -> BTreeMap<B, usize> {
    let mut m = BTreeMap::new();
    for b in bs {
        *m.entry(b.clone()).or_insert(0) += 1;
    }
    m
}

#[test]
fn random_dinf_inputs_certify_and_are_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let theta = random_dinf(&mut rng);
        let cert = dinf_reduce(&theta).unwrap_or_else(|e| panic!("{e}\n{theta}"));
        assert!(dinf_verify(&theta, &cert));
        let again = dinf_reduce(&dinf_block_diagonal(&cert.blocks, "t")).unwrap();
        assert_eq!(again.blocks, cert.blocks);
    }
}

#[test]
fn random_ainf_inputs_certify_and_are_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..60 {
        let (a, b) = random_ainf(&mut rng);
        let cert = ainf_reduce(&a, &b).unwrap_or_else(|e| panic!("{e}\n{a}\n{b}"));
        assert!(ainf_verify(&a, &b, &cert));
        let (b1, b2) = ainf_block_pair(&cert.blocks, "z");
        assert_eq!(ainf_reduce(&b1, &b2).unwrap().blocks, cert.blocks);
    }
}

#[test]
fn dinf_orbit_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..10 {
        let theta = random_dinf(&mut rng);
        let base = multiset(&dinf_reduce(&theta).unwrap().blocks);
        for _ in 0..5 {
            let f_left = random_left(&mut rng, "t", theta.rows());
            let f_right = random_right(&mut rng, "t", theta.cols(), 2);
            let moved = f_left.mul(&theta).unwrap().mul(&f_right).unwrap();
            assert_eq!(multiset(&dinf_reduce(&moved).unwrap().blocks), base, "{theta}");
        }
    }
}

#[test]
fn ainf_orbit_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..10 {
        let (a, b) = random_ainf(&mut rng);
        let base = multiset(&ainf_reduce(&a, &b).unwrap().blocks);
        for _ in 0..5 {
            let l1 = random_left(&mut rng, "z", a.rows());
            let l2 = random_left(&mut rng, "z", b.rows());
            let r = random_right(&mut rng, "z", a.cols(), 1);
            let a2 = l1.mul(&a).unwrap().mul(&r).unwrap();
            let b2 = l2.mul(&b).unwrap().mul(&r).unwrap();
            assert_eq!(multiset(&ainf_reduce(&a2, &b2).unwrap().blocks), base);
        }
    }
}
