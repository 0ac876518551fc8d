//! Viterbi, forward and backward recursions, all in natural-log space.

use super::Hmm;
use crate::error::Result;
use crate::logspace::{log_add, log_sum_exp};

/// Most probable state path and its joint log-probability.
#[derive(Debug, Clone, PartialEq)]
pub struct ViterbiPath {
    pub log_prob: f64,
    pub path: Vec<usize>,
}

/// Max-product decoding. Equal-scoring predecessors (and final states)
/// resolve to the lowest state index.
pub fn viterbi(model: &Hmm, obs: &[usize]) -> Result<ViterbiPath> {
    model.validate_observations(obs)?;
    let k = model.num_states();
    let len = obs.len();

    let mut delta: Vec<f64> = (0..k)
        .map(|s| model.log_initial(s) + model.log_emission(s, obs[0]))
        .collect();
    let mut next = vec![0.0; k];
    // backpointers for t >= 1, row-major len x k
    let mut back = vec![0usize; len.saturating_sub(1) * k];

    for (t, &o) in obs.iter().enumerate().skip(1) {
        for to in 0..k {
            let mut best = f64::NEG_INFINITY;
            let mut arg = 0;
            for (from, &d) in delta.iter().enumerate() {
                let v = d + model.log_transition(from, to);
                if v > best {
                    best = v;
                    arg = from;
                }
            }
            next[to] = best + model.log_emission(to, o);
            back[(t - 1) * k + to] = arg;
        }
        std::mem::swap(&mut delta, &mut next);
    }

    let (mut state, log_prob) = argmax_lowest(&delta);
    let mut path = vec![0; len];
    path[len - 1] = state;
    for t in (1..len).rev() {
        state = back[(t - 1) * k + state];
        path[t - 1] = state;
    }
    Ok(ViterbiPath { log_prob, path })
}

/// Window score used for classification: the Viterbi max-path
/// log-probability.
pub fn sequence_score(model: &Hmm, obs: &[usize]) -> Result<f64> {
    viterbi(model, obs).map(|v| v.log_prob)
}

/// `ln P(obs | model)` via the forward recursion.
pub fn forward_log_likelihood(model: &Hmm, obs: &[usize]) -> Result<f64> {
    model.validate_observations(obs)?;
    let alpha = forward_table(model, obs);
    let k = model.num_states();
    Ok(log_sum_exp(&alpha[(obs.len() - 1) * k..]))
}

/// `ln P(obs | model)` via the backward recursion, closed with the initial
/// distribution and first emission.
pub fn backward_log_likelihood(model: &Hmm, obs: &[usize]) -> Result<f64> {
    model.validate_observations(obs)?;
    let beta = backward_table(model, obs);
    let first: Vec<f64> = (0..model.num_states())
        .map(|s| model.log_initial(s) + model.log_emission(s, obs[0]) + beta[s])
        .collect();
    Ok(log_sum_exp(&first))
}

/// Log forward variables, row-major `len x num_states`. Observations must
/// already be validated.
pub(crate) fn forward_table(model: &Hmm, obs: &[usize]) -> Vec<f64> {
    let k = model.num_states();
    let mut alpha = vec![f64::NEG_INFINITY; obs.len() * k];
    for (s, cell) in alpha[..k].iter_mut().enumerate() {
        *cell = model.log_initial(s) + model.log_emission(s, obs[0]);
    }
    for (t, &o) in obs.iter().enumerate().skip(1) {
        let (done, rest) = alpha.split_at_mut(t * k);
        let prev = &done[(t - 1) * k..];
        for (to, cell) in rest[..k].iter_mut().enumerate() {
            let mut acc = f64::NEG_INFINITY;
            for (from, &a) in prev.iter().enumerate() {
                acc = log_add(acc, a + model.log_transition(from, to));
            }
            *cell = acc + model.log_emission(to, o);
        }
    }
    alpha
}

/// Log backward variables, row-major `len x num_states`.
pub(crate) fn backward_table(model: &Hmm, obs: &[usize]) -> Vec<f64> {
    let k = model.num_states();
    let len = obs.len();
    let mut beta = vec![0.0; len * k];
    for t in (0..len - 1).rev() {
        let (head, tail) = beta.split_at_mut((t + 1) * k);
        let after = &tail[..k];
        let o = obs[t + 1];
        for (from, cell) in head[t * k..].iter_mut().enumerate() {
            let mut acc = f64::NEG_INFINITY;
            for (to, &b) in after.iter().enumerate() {
                acc = log_add(
                    acc,
                    model.log_transition(from, to) + model.log_emission(to, o) + b,
                );
            }
            *cell = acc;
        }
    }
    beta
}

fn argmax_lowest(xs: &[f64]) -> (usize, f64) {
    let mut best = (0, xs[0]);
    for (i, &x) in xs.iter().enumerate().skip(1) {
        if x > best.1 {
            best = (i, x);
        }
    }
    best
}
