//! Discrete-emission hidden Markov models.
//!
//! Parameters are kept in probability space for inspection and
//! serialization; a log-space copy is cached at construction so the dynamic
//! programs in [`decode`] and [`train`] never call `ln` in their inner loops.

pub mod decode;
pub mod train;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::logspace;

pub use decode::{
    backward_log_likelihood, forward_log_likelihood, sequence_score, viterbi, ViterbiPath,
};
pub use train::{baum_welch, BaumWelchConfig, LikelihoodTrace};

/// Row sums must be within this distance of 1.
pub const STOCHASTIC_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Hmm {
    num_states: usize,
    alphabet_size: usize,
    initial: Vec<f64>,
    /// Row-major `num_states x num_states`.
    transition: Vec<f64>,
    /// Row-major `num_states x alphabet_size`.
    emission: Vec<f64>,
    log_initial: Vec<f64>,
    log_transition: Vec<f64>,
    log_emission: Vec<f64>,
}

impl Hmm {
    /// Builds a model from explicit probabilities, checking every
    /// stochasticity invariant.
    pub fn new(
        initial: Vec<f64>,
        transition: Vec<Vec<f64>>,
        emission: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let num_states = initial.len();
        let alphabet_size = emission.first().map_or(0, Vec::len);
        if num_states == 0 || alphabet_size == 0 {
            return Err(Error::ZeroDimension {
                num_states,
                alphabet_size,
            });
        }
        check_len("transition", num_states, transition.len())?;
        check_len("emission", num_states, emission.len())?;
        for (i, row) in transition.iter().enumerate() {
            check_len(&format!("transition row {i}"), num_states, row.len())?;
        }
        for (i, row) in emission.iter().enumerate() {
            check_len(&format!("emission row {i}"), alphabet_size, row.len())?;
        }
        Self::from_flat(
            num_states,
            alphabet_size,
            initial,
            transition.concat(),
            emission.concat(),
        )
    }

    pub(crate) fn from_flat(
        num_states: usize,
        alphabet_size: usize,
        initial: Vec<f64>,
        transition: Vec<f64>,
        emission: Vec<f64>,
    ) -> Result<Self> {
        debug_assert_eq!(initial.len(), num_states);
        debug_assert_eq!(transition.len(), num_states * num_states);
        debug_assert_eq!(emission.len(), num_states * alphabet_size);
        check_distribution("initial", &initial)?;
        for (i, row) in transition.chunks(num_states).enumerate() {
            check_distribution(&format!("transition row {i}"), row)?;
        }
        for (i, row) in emission.chunks(alphabet_size).enumerate() {
            check_distribution(&format!("emission row {i}"), row)?;
        }
        let logs = |v: &[f64]| v.iter().map(|&p| logspace::ln(p)).collect::<Vec<_>>();
        Ok(Hmm {
            num_states,
            alphabet_size,
            log_initial: logs(&initial),
            log_transition: logs(&transition),
            log_emission: logs(&emission),
            initial,
            transition,
            emission,
        })
    }

    /// Seeded random model. Every row is drawn from `(0, 1]` and normalized,
    /// so all entries are strictly positive.
    pub fn new_random(num_states: usize, alphabet_size: usize, seed: u64) -> Result<Self> {
        if num_states == 0 || alphabet_size == 0 {
            return Err(Error::ZeroDimension {
                num_states,
                alphabet_size,
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let initial = random_row(&mut rng, num_states);
        let transition: Vec<f64> = (0..num_states)
            .flat_map(|_| random_row(&mut rng, num_states))
            .collect();
        let emission: Vec<f64> = (0..num_states)
            .flat_map(|_| random_row(&mut rng, alphabet_size))
            .collect();
        Self::from_flat(num_states, alphabet_size, initial, transition, emission)
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn initial(&self) -> &[f64] {
        &self.initial
    }

    pub fn transition_row(&self, from: usize) -> &[f64] {
        &self.transition[from * self.num_states..(from + 1) * self.num_states]
    }

    pub fn emission_row(&self, state: usize) -> &[f64] {
        &self.emission[state * self.alphabet_size..(state + 1) * self.alphabet_size]
    }

    pub fn transition(&self, from: usize, to: usize) -> f64 {
        self.transition[from * self.num_states + to]
    }

    pub fn emission(&self, state: usize, symbol: usize) -> f64 {
        self.emission[state * self.alphabet_size + symbol]
    }

    #[inline]
    pub(crate) fn log_initial(&self, state: usize) -> f64 {
        self.log_initial[state]
    }

    #[inline]
    pub(crate) fn log_transition(&self, from: usize, to: usize) -> f64 {
        self.log_transition[from * self.num_states + to]
    }

    #[inline]
    pub(crate) fn log_emission(&self, state: usize, symbol: usize) -> f64 {
        self.log_emission[state * self.alphabet_size + symbol]
    }

    /// Returns the isomorphic model in which old state `s` becomes state
    /// `perm[s]`.
    pub fn relabel_states(&self, perm: &[usize]) -> Result<Self> {
        let k = self.num_states;
        check_len("permutation", k, perm.len())?;
        let mut seen = vec![false; k];
        for &p in perm {
            if p >= k || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidConfig(format!(
                    "{perm:?} is not a permutation of 0..{k}"
                )));
            }
        }
        let mut initial = vec![0.0; k];
        let mut transition = vec![0.0; k * k];
        let mut emission = vec![0.0; k * self.alphabet_size];
        for s in 0..k {
            initial[perm[s]] = self.initial[s];
            for t in 0..k {
                transition[perm[s] * k + perm[t]] = self.transition(s, t);
            }
            emission[perm[s] * self.alphabet_size..(perm[s] + 1) * self.alphabet_size]
                .copy_from_slice(self.emission_row(s));
        }
        Self::from_flat(k, self.alphabet_size, initial, transition, emission)
    }

    /// Draws a hidden state path and its emitted symbols.
    pub fn sample<R: Rng + ?Sized>(&self, len: usize, rng: &mut R) -> (Vec<usize>, Vec<usize>) {
        let mut states = Vec::with_capacity(len);
        let mut symbols = Vec::with_capacity(len);
        let mut state = None;
        for _ in 0..len {
            let s = match state {
                None => draw(&self.initial, rng),
                Some(prev) => draw(self.transition_row(prev), rng),
            };
            states.push(s);
            symbols.push(draw(self.emission_row(s), rng));
            state = Some(s);
        }
        (states, symbols)
    }

    /// Checks a sequence against this model's alphabet.
    pub fn validate_observations(&self, obs: &[usize]) -> Result<()> {
        if obs.is_empty() {
            return Err(Error::EmptyObservation);
        }
        match obs.iter().position(|&o| o >= self.alphabet_size) {
            Some(position) => Err(Error::SymbolOutOfRange {
                position,
                symbol: obs[position],
                alphabet_size: self.alphabet_size,
            }),
            None => Ok(()),
        }
    }
}

fn check_len(what: &str, expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::DimensionMismatch {
            what: what.to_string(),
            expected,
            actual,
        });
    }
    Ok(())
}

/// Entries in `[0, 1]` summing to 1 within [`STOCHASTIC_TOLERANCE`].
pub fn check_distribution(what: &str, row: &[f64]) -> Result<()> {
    if let Some(p) = row.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::InvalidDistribution {
            what: what.to_string(),
            reason: format!("entry {p} outside [0, 1]"),
        });
    }
    let sum: f64 = row.iter().sum();
    if (sum - 1.0).abs() > STOCHASTIC_TOLERANCE {
        return Err(Error::InvalidDistribution {
            what: what.to_string(),
            reason: format!("sums to {sum}"),
        });
    }
    Ok(())
}

fn random_row<R: Rng>(rng: &mut R, len: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..len).map(|_| 1.0 - rng.random::<f64>()).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

fn draw<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (i, &w) in weights.iter().enumerate() {
        acc += w;
        if u < acc {
            return i;
        }
    }
    // rounding left u above the final cumulative sum
    weights.iter().rposition(|&w| w > 0.0).unwrap_or(0)
}
