//! Sliding-window classification with one HMM per structure class.
//!
//! Each residue with a complete `±half_width` neighbourhood is classified by
//! scoring that window under the helix, coil and strand models (Viterbi
//! max-path log-probability) and taking the best. Ties go to helix first,
//! then coil, then strand. Residues too close to either end get the
//! configured boundary label.

use crate::dssp::ClassLabel;
use crate::error::{Error, Result};
use crate::hmm::{sequence_score, Hmm};
use crate::par::Execution;
use crate::sequence::{AminoSequence, StructureString, ALPHABET_SIZE};

/// The three per-class models, all over the 21-letter residue alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassModelSet {
    helix: Hmm,
    strand: Hmm,
    coil: Hmm,
}

impl ClassModelSet {
    pub fn new(helix: Hmm, strand: Hmm, coil: Hmm) -> Result<Self> {
        for (class, model) in [
            (ClassLabel::Helix, &helix),
            (ClassLabel::Strand, &strand),
            (ClassLabel::Coil, &coil),
        ] {
            if model.alphabet_size() != ALPHABET_SIZE {
                return Err(Error::DimensionMismatch {
                    what: format!("alphabet of class {class} model"),
                    expected: ALPHABET_SIZE,
                    actual: model.alphabet_size(),
                });
            }
        }
        Ok(ClassModelSet {
            helix,
            strand,
            coil,
        })
    }

    pub fn get(&self, class: ClassLabel) -> &Hmm {
        match class {
            ClassLabel::Helix => &self.helix,
            ClassLabel::Strand => &self.strand,
            ClassLabel::Coil => &self.coil,
        }
    }

    pub fn helix(&self) -> &Hmm {
        &self.helix
    }

    pub fn strand(&self) -> &Hmm {
        &self.strand
    }

    pub fn coil(&self) -> &Hmm {
        &self.coil
    }
}

/// Log-scores of one window under each class model, and the winner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowScores {
    pub helix: f64,
    pub coil: f64,
    pub strand: f64,
    pub chosen: ClassLabel,
}

impl WindowScores {
    pub fn from_scores(helix: f64, coil: f64, strand: f64) -> Self {
        WindowScores {
            helix,
            coil,
            strand,
            chosen: choose_class(helix, coil, strand),
        }
    }
}

/// Argmax over the three scores, checked in the order helix, coil, strand.
pub fn choose_class(helix: f64, coil: f64, strand: f64) -> ClassLabel {
    let best = helix.max(coil).max(strand);
    if helix == best {
        ClassLabel::Helix
    } else if coil == best {
        ClassLabel::Coil
    } else {
        ClassLabel::Strand
    }
}

pub fn classify_window(models: &ClassModelSet, window: &AminoSequence) -> Result<WindowScores> {
    classify_symbols(models, &window.encode())
}

fn classify_symbols(models: &ClassModelSet, window: &[usize]) -> Result<WindowScores> {
    if window.is_empty() {
        return Err(Error::EmptyWindow);
    }
    Ok(WindowScores::from_scores(
        sequence_score(&models.helix, window)?,
        sequence_score(&models.coil, window)?,
        sequence_score(&models.strand, window)?,
    ))
}

#[derive(Debug, Clone, Copy)]
pub struct PredictConfig {
    /// Residues on each side of the centre; windows are `2 * half_width + 1` long.
    pub half_width: usize,
    /// Label for residues without a complete window.
    pub boundary_label: ClassLabel,
    pub execution: Execution,
}

impl Default for PredictConfig {
    fn default() -> Self {
        PredictConfig {
            half_width: 5,
            boundary_label: ClassLabel::Coil,
            execution: Execution::default(),
        }
    }
}

impl PredictConfig {
    pub fn window_len(&self) -> usize {
        2 * self.half_width + 1
    }
}

/// Full per-residue scores; `None` at boundary positions.
pub fn score_positions(
    models: &ClassModelSet,
    sequence: &AminoSequence,
    config: &PredictConfig,
) -> Result<Vec<Option<WindowScores>>> {
    if sequence.is_empty() {
        return Err(Error::EmptySequence);
    }
    if config.half_width == 0 {
        return Err(Error::InvalidConfig("half_width must be at least 1".into()));
    }
    let n = sequence.len();
    let w = config.half_width;
    let symbols = sequence.encode();
    config
        .execution
        .map_range(n, |i| {
            if i < w || i + w >= n {
                return Ok(None);
            }
            classify_symbols(models, &symbols[i - w..=i + w]).map(Some)
        })
        .into_iter()
        .collect()
}

/// Predicts one label per residue.
pub fn ssp_h(
    models: &ClassModelSet,
    sequence: &AminoSequence,
    config: &PredictConfig,
) -> Result<StructureString> {
    let labels = score_positions(models, sequence, config)?
        .into_iter()
        .map(|s| s.map_or(config.boundary_label, |s| s.chosen))
        .collect::<Vec<_>>();
    Ok(StructureString::from(labels))
}

/// [`ssp_h`] over many sequences, fanned out per record.
pub fn predict_all(
    models: &ClassModelSet,
    sequences: &[AminoSequence],
    config: &PredictConfig,
) -> Result<Vec<StructureString>> {
    let inner = PredictConfig {
        execution: Execution::Sequential,
        ..*config
    };
    config
        .execution
        .map(sequences, |seq| ssp_h(models, seq, &inner))
        .into_iter()
        .collect()
}
