//! Test-only oracles, independent of the dynamic programs they check.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ssph::hmm::Hmm;

/// Joint probability of one explicit state path, in probability space.
pub fn path_probability(model: &Hmm, path: &[usize], obs: &[usize]) -> f64 {
    let mut p = model.initial()[path[0]] * model.emission(path[0], obs[0]);
    for t in 1..obs.len() {
        p *= model.transition(path[t - 1], path[t]) * model.emission(path[t], obs[t]);
    }
    p
}

/// Enumerates all `k^len` state paths. Returns (max, argmax path, sum).
/// Argmax ties keep the lexicographically smallest path.
pub fn enumerate_paths(model: &Hmm, obs: &[usize]) -> (f64, Vec<usize>, f64) {
    let k = model.num_states();
    let len = obs.len();
    let mut path = vec![0usize; len];
    let mut best = (-1.0, path.clone());
    let mut sum = 0.0;
    loop {
        let p = path_probability(model, &path, obs);
        sum += p;
        if p > best.0 {
            best = (p, path.clone());
        }
        // odometer increment, last position fastest
        let mut i = len;
        loop {
            if i == 0 {
                return (best.0, best.1, sum);
            }
            i -= 1;
            path[i] += 1;
            if path[i] < k {
                break;
            }
            path[i] = 0;
        }
    }
}

/// Random observation sequence over `0..alphabet`.
pub fn random_obs(rng: &mut ChaCha8Rng, alphabet: usize, len: usize) -> Vec<usize> {
    (0..len).map(|_| rng.random_range(0..alphabet)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
