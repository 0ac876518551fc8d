//! Multi-sequence Baum-Welch re-estimation.

use super::decode::{backward_table, forward_table};
use super::Hmm;
use crate::error::{Error, Result};
use crate::logspace::log_sum_exp;
use crate::par::Execution;

#[derive(Debug, Clone, Copy)]
pub struct BaumWelchConfig {
    /// Upper bound on re-estimation steps; 0 returns the input model.
    pub max_iters: usize,
    /// Stop once an iteration improves total log-likelihood by less than this.
    pub tol: f64,
    /// Added to every expected count before normalization.
    pub pseudocount: f64,
    pub execution: Execution,
}

impl Default for BaumWelchConfig {
    fn default() -> Self {
        BaumWelchConfig {
            max_iters: 100,
            tol: 1e-6,
            pseudocount: 1e-6,
            execution: Execution::default(),
        }
    }
}

/// Total training log-likelihood recorded after each re-estimation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LikelihoodTrace {
    pub per_iteration_log_likelihood: Vec<f64>,
}

impl LikelihoodTrace {
    pub fn len(&self) -> usize {
        self.per_iteration_log_likelihood.len()
    }

    pub fn is_empty(&self) -> bool {
        self.per_iteration_log_likelihood.is_empty()
    }

    pub fn last(&self) -> Option<f64> {
        self.per_iteration_log_likelihood.last().copied()
    }

    /// No step decreases by more than `slack`.
    pub fn is_non_decreasing(&self, slack: f64) -> bool {
        self.per_iteration_log_likelihood
            .windows(2)
            .all(|w| w[1] >= w[0] - slack)
    }
}

/// Expected counts gathered from one or more sequences.
#[derive(Debug, Clone)]
struct ExpectedCounts {
    initial: Vec<f64>,
    transition: Vec<f64>,
    emission: Vec<f64>,
    log_likelihood: f64,
}

impl ExpectedCounts {
    fn zeros(k: usize, m: usize) -> Self {
        ExpectedCounts {
            initial: vec![0.0; k],
            transition: vec![0.0; k * k],
            emission: vec![0.0; k * m],
            log_likelihood: 0.0,
        }
    }

    fn accumulate(&mut self, other: &ExpectedCounts) {
        let add = |dst: &mut [f64], src: &[f64]| dst.iter_mut().zip(src).for_each(|(d, s)| *d += s);
        add(&mut self.initial, &other.initial);
        add(&mut self.transition, &other.transition);
        add(&mut self.emission, &other.emission);
        self.log_likelihood += other.log_likelihood;
    }
}

/// Re-estimates `model` on `training` until `max_iters` steps have run or
/// the likelihood gain drops below `tol`.
pub fn baum_welch<S>(
    model: &Hmm,
    training: &[S],
    config: &BaumWelchConfig,
) -> Result<(Hmm, LikelihoodTrace)>
where
    S: AsRef<[usize]> + Sync,
{
    if training.is_empty() {
        return Err(Error::NoTrainingData);
    }
    if config.pseudocount.is_nan()
        || config.pseudocount < 0.0
        || config.tol.is_nan()
        || config.tol <= 0.0
    {
        return Err(Error::InvalidConfig(format!(
            "tol must be > 0 and pseudocount >= 0 (got {} and {})",
            config.tol, config.pseudocount
        )));
    }
    for seq in training {
        model.validate_observations(seq.as_ref())?;
    }

    let mut trace = LikelihoodTrace::default();
    if config.max_iters == 0 {
        return Ok((model.clone(), trace));
    }

    let mut current = model.clone();
    let mut counts = expected_counts(&current, training, config.execution)?;
    let mut previous = counts.log_likelihood;
    for _ in 0..config.max_iters {
        current = reestimate(&current, &counts, config.pseudocount)?;
        counts = expected_counts(&current, training, config.execution)?;
        trace
            .per_iteration_log_likelihood
            .push(counts.log_likelihood);
        if counts.log_likelihood - previous < config.tol {
            break;
        }
        previous = counts.log_likelihood;
    }
    Ok((current, trace))
}

fn expected_counts<S>(model: &Hmm, training: &[S], execution: Execution) -> Result<ExpectedCounts>
where
    S: AsRef<[usize]> + Sync,
{
    let per_sequence = execution.map(training, |seq| sequence_counts(model, seq.as_ref()));
    let mut total = ExpectedCounts::zeros(model.num_states(), model.alphabet_size());
    // sequential, in-order reduction keeps the sum independent of scheduling
    for (index, counts) in per_sequence.iter().enumerate() {
        if counts.log_likelihood == f64::NEG_INFINITY {
            return Err(Error::InvalidDistribution {
                what: format!("training sequence {index}"),
                reason: "has zero probability under the current model".into(),
            });
        }
        total.accumulate(counts);
    }
    Ok(total)
}

fn sequence_counts(model: &Hmm, obs: &[usize]) -> ExpectedCounts {
    let k = model.num_states();
    let alpha = forward_table(model, obs);
    let beta = backward_table(model, obs);
    let len = obs.len();
    let ll = log_sum_exp(&alpha[(len - 1) * k..]);
    let mut counts = ExpectedCounts::zeros(k, model.alphabet_size());
    counts.log_likelihood = ll;
    if ll == f64::NEG_INFINITY {
        return counts;
    }

    for (t, &o) in obs.iter().enumerate() {
        for s in 0..k {
            let gamma = (alpha[t * k + s] + beta[t * k + s] - ll).exp();
            counts.emission[s * model.alphabet_size() + o] += gamma;
            if t == 0 {
                counts.initial[s] += gamma;
            }
        }
        if t + 1 < len {
            let next = obs[t + 1];
            for from in 0..k {
                let a = alpha[t * k + from];
                for to in 0..k {
                    let xi = (a
                        + model.log_transition(from, to)
                        + model.log_emission(to, next)
                        + beta[(t + 1) * k + to]
                        - ll)
                        .exp();
                    counts.transition[from * k + to] += xi;
                }
            }
        }
    }
    counts
}

fn reestimate(model: &Hmm, counts: &ExpectedCounts, pseudocount: f64) -> Result<Hmm> {
    let k = model.num_states();
    let m = model.alphabet_size();
    let normalize = |row: &[f64]| -> Vec<f64> {
        let total: f64 = row.iter().map(|c| c + pseudocount).sum();
        row.iter().map(|c| (c + pseudocount) / total).collect()
    };
    let initial = normalize(&counts.initial);
    let transition: Vec<f64> = counts.transition.chunks(k).flat_map(normalize).collect();
    let emission: Vec<f64> = counts.emission.chunks(m).flat_map(normalize).collect();
    Hmm::from_flat(k, m, initial, transition, emission)
}
