//! Protein secondary structure prediction with three per-class hidden
//! Markov models.
//!
//! One discrete HMM each is trained for helix (H), strand (E) and coil (C).
//! To label a residue, the window of residues centred on it is scored under
//! every model with Viterbi decoding, and the class whose model gives the
//! most probable state path wins.
//!
//! ```
//! use ssph::hmm::Hmm;
//! use ssph::predictor::{ssp_h, ClassModelSet, PredictConfig};
//! use ssph::sequence::{AminoSequence, ALPHABET_SIZE};
//!
//! let models = ClassModelSet::new(
//!     Hmm::new_random(2, ALPHABET_SIZE, 0)?,
//!     Hmm::new_random(2, ALPHABET_SIZE, 1)?,
//!     Hmm::new_random(2, ALPHABET_SIZE, 2)?,
//! )?;
//! let seq = AminoSequence::from_raw("MKTAYIAKQRQISFVKSHFSRQ")?;
//! let labels = ssp_h(&models, &seq, &PredictConfig::default())?;
//! assert_eq!(labels.len(), seq.len());
//! # Ok::<(), ssph::Error>(())
//! ```
//!
//! ## Feature flags
//!
//! - `parallel` (default): batch loops run on rayon when
//!   [`Execution::Parallel`] is selected. Without it every loop is
//!   sequential. Output is identical either way.

pub mod cli;
pub mod dssp;
pub mod error;
pub mod eval;
pub mod hmm;
pub mod io;
pub mod logspace;
pub mod par;
pub mod predictor;
pub mod sequence;
pub mod synthetic;

pub use error::{Error, Result};
pub use par::Execution;
