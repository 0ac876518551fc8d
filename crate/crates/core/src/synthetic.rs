//! Labeled chains sampled from planted per-class models, for recovery
//! experiments and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};

use crate::dssp::ClassLabel;
use crate::error::{Error, Result};
use crate::hmm::Hmm;
use crate::io::LabeledRecord;
use crate::predictor::ClassModelSet;
use crate::sequence::{AminoSequence, StructureString, ALPHABET_SIZE, AMINO_ALPHABET};

#[derive(Debug, Clone, Copy)]
pub struct PlantedConfig {
    /// Emission mass each state puts on its class's residue subset.
    pub concentration: f64,
    /// Mean label-run length; runs are `1 + Geometric(1 / mean_run)`.
    pub mean_run: f64,
    /// Probability of staying in the same hidden state within a class.
    pub self_transition: f64,
}

impl Default for PlantedConfig {
    fn default() -> Self {
        PlantedConfig {
            concentration: 0.9,
            mean_run: 12.0,
            self_transition: 0.7,
        }
    }
}

/// Residue symbol range owned by each class; the 21 symbols split 7/7/7.
pub fn class_residues(class: ClassLabel) -> std::ops::Range<usize> {
    let i = class.index();
    i * 7..(i + 1) * 7
}

/// Three 2-state models with disjoint emission supports. Within a class,
/// state 0 favours the first residues of the subset and state 1 the last.
pub fn planted_models(config: &PlantedConfig) -> Result<ClassModelSet> {
    if !(0.0..=1.0).contains(&config.concentration)
        || !(0.0..=1.0).contains(&config.self_transition)
    {
        return Err(Error::InvalidConfig(
            "concentration and self_transition must lie in [0, 1]".into(),
        ));
    }
    let build = |class: ClassLabel| {
        let own = class_residues(class);
        let emission: Vec<Vec<f64>> = (0..2)
            .map(|state| {
                let weights: Vec<f64> = own
                    .clone()
                    .map(|r| {
                        let rank = r - own.start;
                        if state == 0 {
                            (7 - rank) as f64
                        } else {
                            (rank + 1) as f64
                        }
                    })
                    .collect();
                let total: f64 = weights.iter().sum();
                let off = (1.0 - config.concentration) / (ALPHABET_SIZE - own.len()) as f64;
                (0..ALPHABET_SIZE)
                    .map(|r| {
                        if own.contains(&r) {
                            config.concentration * weights[r - own.start] / total
                        } else {
                            off
                        }
                    })
                    .collect()
            })
            .collect();
        let stay = config.self_transition;
        Hmm::new(
            vec![0.5, 0.5],
            vec![vec![stay, 1.0 - stay], vec![1.0 - stay, stay]],
            emission,
        )
    };
    ClassModelSet::new(
        build(ClassLabel::Helix)?,
        build(ClassLabel::Strand)?,
        build(ClassLabel::Coil)?,
    )
}

/// Samples `count` chains of exactly `len` residues. Each chain is a run of
/// label segments; consecutive segments have different classes, and each
/// segment's residues come from that class's planted model.
pub fn generate_dataset(
    models: &ClassModelSet,
    config: &PlantedConfig,
    count: usize,
    len: usize,
    seed: u64,
) -> Result<Vec<LabeledRecord>> {
    if config.mean_run.is_nan() || config.mean_run < 1.0 {
        return Err(Error::InvalidConfig("mean_run must be at least 1".into()));
    }
    let extra = Geometric::new(1.0 / config.mean_run)
        .map_err(|e| Error::InvalidConfig(format!("run-length distribution: {e}")))?;
    let alphabet = AMINO_ALPHABET.as_bytes();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let mut residues = String::with_capacity(len);
            let mut labels = Vec::with_capacity(len);
            let mut class = ClassLabel::ALL[rng.random_range(0..3)];
            while labels.len() < len {
                let run = (1 + extra.sample(&mut rng) as usize).min(len - labels.len());
                let (_, symbols) = models.get(class).sample(run, &mut rng);
                residues.extend(symbols.iter().map(|&s| alphabet[s] as char));
                labels.extend(std::iter::repeat_n(class, run));
                let shift = rng.random_range(1..3);
                class = ClassLabel::ALL[(class.index() + shift) % 3];
            }
            LabeledRecord::new(
                format!("synthetic_{i}"),
                AminoSequence::new(&residues)?,
                StructureString::from(labels),
            )
        })
        .collect()
}
