#![allow(dead_code)]

use coxsmooth::census::{enumerate_by_length, DEFAULT_FRONTIER_CAP};
use coxsmooth::{fixtures, Bond, CoxeterSystem, Gen, GroupElement};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn sys(m: coxsmooth::CoxeterMatrix) -> CoxeterSystem {
    CoxeterSystem::new(m)
}

pub fn w(n: usize, m: u32) -> CoxeterSystem {
    sys(fixtures::uniform(Bond::Finite(m), n))
}

pub fn t234() -> CoxeterSystem {
    sys(fixtures::triangle_2bc(Bond::Finite(3), Bond::Finite(4)))
}

/// The Tri-avoiding groups the structural sweeps run over.
pub fn tri_avoiding() -> Vec<CoxeterSystem> {
    vec![
        sys(fixtures::fig1()),
        w(3, 3),
        w(3, 4),
        w(3, 5),
        sys(fixtures::fig2(Bond::Finite(4))),
    ]
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word(rng: &mut ChaCha8Rng, rank: usize, len: usize) -> Vec<Gen> {
    (0..len).map(|_| rng.gen_range(0..rank) as Gen).collect()
}

pub fn random_element(rng: &mut ChaCha8Rng, s: &CoxeterSystem, max_len: usize) -> GroupElement {
    let len = rng.gen_range(0..=max_len);
    s.element(&random_word(rng, s.rank(), len))
}

pub fn all_words(rank: usize, len: usize) -> Vec<Vec<Gen>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..rank as Gen).map(move |g| {
                    let mut x = w.clone();
                    x.push(g);
                    x
                })
            })
            .collect();
    }
    out
}

pub fn elements_up_to(s: &CoxeterSystem, max_len: usize) -> Vec<GroupElement> {
    enumerate_by_length(s, max_len, DEFAULT_FRONTIER_CAP)
        .unwrap()
        .into_iter()
        .flatten()
        .collect()
}
