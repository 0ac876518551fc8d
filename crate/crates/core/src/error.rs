use std::path::PathBuf;

use crate::dssp::ClassLabel;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("num_states and alphabet_size must both be at least 1 (got {num_states} and {alphabet_size})")]
    ZeroDimension {
        num_states: usize,
        alphabet_size: usize,
    },

    #[error("{what} has length {actual}, expected {expected}")]
    DimensionMismatch {
        what: String,
        expected: usize,
        actual: usize,
    },

    #[error("{what} is not a probability distribution: {reason}")]
    InvalidDistribution { what: String, reason: String },

    #[error("observation sequence is empty")]
    EmptyObservation,

    #[error("symbol {symbol} at position {position} is outside alphabet of size {alphabet_size}")]
    SymbolOutOfRange {
        position: usize,
        symbol: usize,
        alphabet_size: usize,
    },

    #[error("no training sequences supplied")]
    NoTrainingData,

    #[error("unknown DSSP code {code:?} at position {position}")]
    UnknownDsspCode { code: char, position: usize },

    #[error("invalid structure label {code:?} at position {position}")]
    InvalidLabel { code: char, position: usize },

    #[error("invalid residue {residue:?} at position {position}")]
    InvalidResidue { residue: char, position: usize },

    #[error("window is empty")]
    EmptyWindow,

    #[error("sequence is empty")]
    EmptySequence,

    #[error("line {line}: sequence data before any '>' header")]
    MissingHeader { line: usize },

    #[error("line {line}: record {id:?} has no sequence")]
    EmptyRecord { id: String, line: usize },

    #[error("line {line}: record {id:?} is malformed: {reason}")]
    MalformedRecord {
        id: String,
        line: usize,
        reason: String,
    },

    #[error("record {id:?}: sequence length {sequence} does not match label length {labels}")]
    LengthMismatch {
        id: String,
        sequence: usize,
        labels: usize,
    },

    #[error("model file line {line}: {reason}")]
    ModelFormat { line: usize, reason: String },

    #[error("confusion matrix has no residues")]
    NoResidues,

    #[error("class {0} has no training windows")]
    ClassHasNoData(ClassLabel),

    #[error("record mismatch at index {index}: prediction {predicted:?} vs truth {truth:?}")]
    RecordMismatch {
        index: usize,
        predicted: String,
        truth: String,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", path.display())]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn in_file(self, path: impl Into<PathBuf>) -> Self {
        Error::InFile {
            path: path.into(),
            source: Box::new(self),
        }
    }
}
