mod common;

use std::sync::Arc;

use common::*;
use involutive_cfk::corpus::{corpus, get, trefoil, unknot};
use involutive_cfk::localeq::{local_map, Refutation};
use involutive_cfk::random::{random_complex, random_complex_with, random_staircase, RandomParams};
use involutive_cfk::{
    decide_local_equivalence, dual, homology_type, split_involution, tensor, IotaComplex, LocalEquivalence,
    Variant,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn dims(c: &IotaComplex) -> (usize, usize) {
    let h = homology_type(c);
    (h.even, h.odd)
}

#[test]
fn homology_agrees_with_dense_elimination() {
    let mut all: Vec<Arc<IotaComplex>> = corpus();
    let t = trefoil();
    all.push(tensor(&t, &dual(&t).unwrap(), Variant::One).unwrap());
    all.push(tensor(&t, &get("box").unwrap(), Variant::Two).unwrap());
    all.push(tensor(&get("square").unwrap(), &get("figure_eight").unwrap(), Variant::One).unwrap());
    all.extend((0..60).map(random_complex));
    for c in &all {
        assert_eq!(dims(c), homology_dims(c), "{}", c.name());
    }
}

#[test]
fn trefoil_maps_to_unknot_but_not_back() {
    let (t, e) = (trefoil(), unknot());
    let m = local_map(&t, &e).expect("trefoil -> unknot");
    assert!(m.f.matrix().get(0, 0) && m.f.matrix().get(0, 2));
    assert!(m.h.is_zero());
    assert_eq!(brute_force_local_map(&t, &e), (3, true));
    assert_eq!(brute_force_local_map(&e, &t), (0, false));
    match decide_local_equivalence(&t, &e) {
        LocalEquivalence::NotEquivalent(r) => assert!(matches!(
            r.as_slice(),
            [Refutation::NoLocalMap { from, to, .. }] if from == "unknot" && to == "trefoil"
        )),
        other => panic!("{other:?}"),
    }
}

fn small_pool() -> Vec<Arc<IotaComplex>> {
    let mut pool: Vec<Arc<IotaComplex>> = corpus().into_iter().filter(|c| homology_type(c).is_unit()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for len in 1..=3 {
        let s = random_staircase(&mut rng, 1, len);
        pool.push(dual(&s).unwrap());
        pool.push(s);
    }
    let params = RandomParams { max_steps: 2, max_step_length: 2, max_box_pairs: 1, max_box_side: 1, basis_moves: 3 };
    pool.extend((0..40).map(|s| random_complex_with(1000 + s, params)).filter(|c| c.len() <= 7));
    pool
}

#[test]
fn solver_matches_exhaustive_search() {
    let pool = small_pool();
    let mut checked = 0;
    for c1 in &pool {
        for c2 in &pool {
            let k = positions(c1, c2, 0, false).len() + positions(c1, c2, 1, true).len();
            if k > 14 {
                continue;
            }
            let (_, exists) = brute_force_local_map(c1, c2);
            assert_eq!(local_map(c1, c2).is_ok(), exists, "{} -> {}", c1.name(), c2.name());
            checked += 1;
        }
    }
    assert!(checked >= 50, "only {checked} pairs");
}

#[test]
fn split_identities_recomputed_densely() {
    let t = trefoil();
    let p = tensor(&t, &dual(&t).unwrap(), Variant::One).unwrap();
    let cert = decide_local_equivalence(&p, &unknot()).certificate().cloned().unwrap();
    let s = split_involution(&p, &cert).unwrap();
    let a = &s.acyclic_summand;
    assert_eq!(a.len(), 8);
    assert_eq!(homology_dims(a), (0, 0));

    let c = &s.basis.split;
    let d = diff_dense(c);
    let iota = iota_dense(c);
    let to_dense = |m: &involutive_cfk::gf2::BitMatrix| dense(m.rows(), m.cols(), m.entries());
    let iota_prime = to_dense(s.iota_prime.matrix());
    let j = to_dense(s.j.matrix());
    assert_eq!(add(&iota, &iota_prime), add(&mul(&d, &j), &mul(&j, &d)));
    for i in 1..c.len() {
        assert!(!iota_prime[0][i] && !iota_prime[i][0]);
    }
    assert!(iota_prime[0][0]);
    // The basis change really is a change of basis of the original complex.
    let phi = to_dense(s.basis.to_original.matrix());
    assert_eq!(rank(&phi), p.len());
    assert_eq!(mul(&phi, &d), mul(&diff_dense(&p), &phi));
}
