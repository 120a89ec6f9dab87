//! One PASS/FAIL line per acceptance criterion, with timings.
//!
//! Exit status is 0 so that the remaining test binaries still run; set
//! `CMLAB_ACCEPTANCE_STRICT=1` to exit 1 when any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use cmlab::arith::divide_out;
use cmlab::catalog::{displayed_pair, eg_e6_pair, family, family_ring, FamilyId};
use cmlab::ext::{ext_dim_auto, serre_duality_check, session_modules, DEFAULT_MAX_TRUNCATION, DEFAULT_TRUNCATION};
use cmlab::groups::{builtin_group, gorenstein_check, is_small, GroupName};
use cmlab::mf::{multirank, verify_mf, MatrixFactorization};
use cmlab::normal_form::*;
use cmlab::resolution::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// `limit` is the time bound of the criterion, if it has one.
fn run(n: usize, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let took = start.elapsed();
    let in_time = limit.is_none_or(|l| took <= l);
    let pass = o.pass && in_time;
    let timing = match limit {
        Some(l) if !in_time => format!("{:.2}s over {}s", took.as_secs_f64(), l.as_secs()),
        Some(l) => format!("{:.2}s, limit {}s", took.as_secs_f64(), l.as_secs()),
        None => format!("{:.2}s", took.as_secs_f64()),
    };
    println!("{} {n:>2} {name}: {} [{timing}]", if pass { "PASS" } else { "FAIL" }, o.detail);
    pass
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

/// `φψ = ψφ = f·I` on the verbatim matrices.
fn displayed_identity_holds(id: FamilyId) -> bool {
    let (phi, psi) = displayed_pair(id).unwrap();
    verify_mf(&family_ring(id).unwrap(), phi, psi).is_ok()
}

fn c1() -> Outcome {
    let mut ids = vec![FamilyId::DInfAlpha, FamilyId::DInfBeta];
    for n in 2..=10 {
        ids.extend((1..n).map(|l| FamilyId::An(n, l)));
    }
    for k in 1..=10 {
        ids.extend([FamilyId::AInfPhi(k), FamilyId::DInfGamma(k), FamilyId::DInfDelta(k)]);
    }
    let failing: Vec<String> = ids.iter().filter(|&&id| !displayed_identity_holds(id)).map(|id| id.to_string()).collect();
    let detail = if failing.is_empty() {
        format!("{} displayed pairs verify", ids.len())
    } else {
        format!(
            "{} of {} displayed pairs fail ({} ... {}); the displayed gamma/delta partners give f*diag(1,-1,1,-1)",
            failing.len(),
            ids.len(),
            failing[0],
            failing[failing.len() - 1]
        )
    };
    outcome(failing.is_empty(), detail)
}

fn c2() -> Outcome {
    let e = eg_e6_pair();
    let d = if e.det == e.target { "det(phi) = -abc*w" } else { "det(phi) != -abc*w" };
    outcome(
        e.identity_holds,
        format!("identity_holds={} modulus_check={}; {d}", e.identity_holds, e.modulus_check),
    )
}

fn session_ext(a: &MatrixFactorization, b: &MatrixFactorization) -> (usize, bool, String) {
    match ext_dim_auto(2, a, b, DEFAULT_TRUNCATION, DEFAULT_MAX_TRUNCATION) {
        Ok(r) => {
            let orders: Vec<String> = r.orders.iter().map(|(t, d)| format!("T={t}:{d}")).collect();
            (r.dimension, r.stabilized, orders.join(","))
        }
        Err(e) => (usize::MAX, false, e.to_string()),
    }
}

fn c3(a: &MatrixFactorization, b: &MatrixFactorization, label: &str) -> Outcome {
    let (dim, stable, orders) = session_ext(a, b);
    outcome(dim == 7 && stable, format!("dim Ext^2({label}) = {dim}, expected 7 ({orders})"))
}

fn ade_types() -> Vec<AdeType> {
    let mut v: Vec<AdeType> = (1..=8).map(AdeType::A).collect();
    v.extend((4..=8).map(AdeType::D));
    v.extend([AdeType::E6, AdeType::E7, AdeType::E8]);
    v
}

fn c4() -> Outcome {
    let mut bad = Vec::new();
    let mut certified = 0;
    for t in ade_types() {
        let (g, labels) = ade_graph(t).unwrap();
        let z = fundamental_cycle(&g).unwrap();
        let m = intersection_matrix(&g);
        let ok_labels = z == labels;
        let ok_signs = cycle_products(&m, &z.0).iter().all(|&p| p <= 0);
        let ok_min = if g.len() <= 4 {
            certified += 1;
            certify_minimal(&g, &z)
        } else {
            true
        };
        if !(ok_labels && ok_signs && ok_min) {
            bad.push(t.to_string());
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} graphs, {certified} certified minimal by brute force, mismatches: {bad:?}", ade_types().len()),
    )
}

fn c5() -> Outcome {
    let mut ok = true;
    let mut errata = 0;
    for t in ade_types() {
        let (g, _) = ade_graph(t).unwrap();
        let z = fundamental_cycle(&g).unwrap();
        ok &= edim_rational(&g).unwrap() == 3 && self_intersection(&g, &z) == -2;
        if simple_z_squared_erratum(&g).unwrap() {
            errata += 1;
        }
    }
    let laufer: Vec<i64> = [-1, -3, -5].iter().map(|&z| edim_min_elliptic(z).unwrap()).collect();
    ok &= errata == ade_types().len() && laufer == [3, 3, 5];
    outcome(ok, format!("edim 3 and Z^2 = -2 on all ADE, erratum flag on {errata}, Laufer {laufer:?}"))
}

fn multiset<B: Ord + Clone>(bs: &[B]) -> BTreeMap<B, usize> {
    let mut m = BTreeMap::new();
    for b in bs {
        *m.entry(b.clone()).or_insert(0) += 1;
    }
    m
}

fn c6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = 0;
    for _ in 0..200 {
        let theta = random_dinf(&mut rng);
        if !dinf_reduce(&theta).map(|c| dinf_verify(&theta, &c)).unwrap_or(false) {
            failures += 1;
        }
        let (a, b) = random_ainf(&mut rng);
        if !ainf_reduce(&a, &b).map(|c| ainf_verify(&a, &b, &c)).unwrap_or(false) {
            failures += 1;
        }
    }
    let theta = random_dinf(&mut rng);
    let base = multiset(&dinf_reduce(&theta).unwrap().blocks);
    let (a, b) = random_ainf(&mut rng);
    let abase = multiset(&ainf_reduce(&a, &b).unwrap().blocks);
    let mut moved_bad = 0;
    for _ in 0..50 {
        let l = random_left(&mut rng, "t", theta.rows());
        let r = random_right(&mut rng, "t", theta.cols(), 2);
        let moved = l.mul(&theta).unwrap().mul(&r).unwrap();
        if dinf_reduce(&moved).map(|c| multiset(&c.blocks)).ok() != Some(base.clone()) {
            moved_bad += 1;
        }
        let l1 = random_left(&mut rng, "z", a.rows());
        let l2 = random_left(&mut rng, "z", b.rows());
        let r = random_right(&mut rng, "z", a.cols(), 1);
        let a2 = l1.mul(&a).unwrap().mul(&r).unwrap();
        let b2 = l2.mul(&b).unwrap().mul(&r).unwrap();
        if ainf_reduce(&a2, &b2).map(|c| multiset(&c.blocks)).ok() != Some(abase.clone()) {
            moved_bad += 1;
        }
    }
    outcome(
        failures == 0 && moved_bad == 0,
        format!("400 inputs, {failures} uncertified; 100 transformed copies, {moved_bad} changed blocks"),
    )
}

fn c7() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for d in 1..=8 {
        let verified = matches!(dinf_block_to_mf(DInfBlock::Hook(d)), Ok(BlockModule::Factorization(ref m)) if m.reverify().is_ok());
        match hook_equivalence(d, 2) {
            Ok(Some(h)) if verified => notes.push(format!("{d}->{}{}", h.family, if h.shifted { "[1]" } else { "" })),
            _ => {
                ok = false;
                notes.push(format!("{d}->none"));
            }
        }
    }
    for n in 1..=8 {
        let want = family(FamilyId::AInfPhi(n)).unwrap();
        ok &= ainf_block_to_mf(AInfBlock::Z1Pow(n)).factorization() == Some(&want);
    }
    outcome(ok, format!("Hook {}; Z1Pow(n) = (phi_n, psi_n) for n <= 8", notes.join(" ")))
}

fn c8() -> Outcome {
    let order = |g: GroupName| builtin_group(g, 1000).map(|g| g.order()).unwrap_or(0);
    let mut ok = order(GroupName::BinaryTetrahedral) == 24
        && order(GroupName::BinaryOctahedral) == 48
        && order(GroupName::BinaryIcosahedral) == 120;
    for n in 1..=6 {
        ok &= order(GroupName::BinaryDihedral(n)) == 4 * n as usize;
    }
    for g in [GroupName::BinaryTetrahedral, GroupName::BinaryOctahedral, GroupName::BinaryIcosahedral, GroupName::BinaryDihedral(5)] {
        let g = builtin_group(g, 1000).unwrap();
        ok &= gorenstein_check(&g) && is_small(&g).0;
    }
    let swap = builtin_group(GroupName::Swap, 10).unwrap();
    ok &= is_small(&swap).1.len() == 1;
    let mut cyclic = 0;
    for n in 2..=8u32 {
        for m in (1..n).filter(|&m| num_integer::gcd(n, m) == 1) {
            let g = builtin_group(GroupName::CyclicGL(n, m), 100).unwrap();
            ok &= gorenstein_check(&g) == (m == n - 1);
            cyclic += 1;
        }
    }
    outcome(ok, format!("polyhedral, dihedral n<=6, swap, {cyclic} cyclic GL groups"))
}

fn c9() -> Outcome {
    let mut pairs = 0;
    let mut bad = Vec::new();
    let a3: Vec<_> = (1..4).map(|l| family(FamilyId::An(4, l)).unwrap()).collect();
    let ainf: Vec<_> = (1..=4).map(|n| family(FamilyId::AInfPhi(n)).unwrap()).collect();
    for set in [&a3, &ainf] {
        for (i, a) in set.iter().enumerate() {
            for (j, b) in set.iter().enumerate() {
                pairs += 1;
                if !serre_duality_check(a, b, DEFAULT_TRUNCATION).unwrap_or(false) {
                    bad.push((i, j));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{pairs} ordered pairs, failures {bad:?}"))
}

fn c10() -> Outcome {
    let mut ok = (1..=10).all(|n| multirank(&family(FamilyId::AInfPhi(n)).unwrap()).map(|m| m.ranks == [1, 1]).unwrap_or(false));
    let [m, _, _] = session_modules();
    let r = multirank(&m).unwrap();
    let unit = r.unit.to_string();
    ok &= r.ranks == [1, 1, 1] && unit == "y*z^2 + 1";
    // The unit is the cofactor of det M after dividing out xyz.
    let (e, cof) = divide_out(&m.phi().det().unwrap(), m.ring().f()).unwrap();
    ok &= e == 1 && cof == r.unit;
    outcome(ok, format!("A-infinity (1,1) for n <= 10; M has {:?} with unit {unit}", r.ranks))
}

fn main() {
    let [m, n, k] = session_modules();
    let results = [
        run(1, "catalog identities", secs(10), c1),
        run(2, "E6 identity", secs(5), c2),
        run(3, "Ext^2(M,M)", secs(120), || c3(&m, &m, "M,M")),
        run(3, "Ext^2(N,K)", secs(120), || c3(&n, &k, "N,K")),
        run(4, "fundamental cycles", secs(1), c4),
        run(5, "edim", secs(1), c5),
        run(6, "normal-form soundness", secs(60), c6),
        run(7, "block-to-module bridge", None, c7),
        run(8, "group suite", secs(30), c8),
        run(9, "Serre duality", None, c9),
        run(10, "multirank", None, c10),
    ];
    let failed = results.iter().filter(|&&p| !p).count();
    println!("acceptance: {} of {} checks pass, {failed} fail", results.len() - failed, results.len());
    if failed > 0 && std::env::var_os("CMLAB_ACCEPTANCE_STRICT").is_some() {
        std::process::exit(1);
    }
}
