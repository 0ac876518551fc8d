//! Residue and label strings.

use std::fmt;
use std::str::FromStr;

use crate::dssp::ClassLabel;
use crate::error::{Error, Result};

/// The 20 canonical amino acids followed by the catch-all `X`. A residue's
/// symbol index is its position in this string.
pub const AMINO_ALPHABET: &str = "ACDEFGHIKLMNPQRSTVWYX";
pub const ALPHABET_SIZE: usize = 21;
pub const UNKNOWN_RESIDUE: char = 'X';

fn symbol_of(c: char) -> Option<u8> {
    AMINO_ALPHABET.find(c).map(|i| i as u8)
}

/// Validated residue string, stored as symbol indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AminoSequence {
    symbols: Vec<u8>,
}

impl AminoSequence {
    /// Strict constructor: every character must already be in
    /// [`AMINO_ALPHABET`].
    pub fn new(residues: &str) -> Result<Self> {
        residues
            .chars()
            .enumerate()
            .map(|(position, residue)| {
                symbol_of(residue).ok_or(Error::InvalidResidue { residue, position })
            })
            .collect::<Result<Vec<_>>>()
            .map(|symbols| AminoSequence { symbols })
    }

    /// Ingestion constructor: uppercases letters and folds any
    /// non-canonical letter (B, Z, J, U, O, ...) to `X`. Non-letters are
    /// rejected.
    pub fn from_raw(residues: &str) -> Result<Self> {
        residues
            .chars()
            .enumerate()
            .map(|(position, residue)| {
                if !residue.is_ascii_alphabetic() {
                    return Err(Error::InvalidResidue { residue, position });
                }
                Ok(symbol_of(residue.to_ascii_uppercase()).unwrap_or(ALPHABET_SIZE as u8 - 1))
            })
            .collect::<Result<Vec<_>>>()
            .map(|symbols| AminoSequence { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Symbol indices in `0..ALPHABET_SIZE`.
    pub fn encode(&self) -> Vec<usize> {
        self.symbols.iter().map(|&s| s as usize).collect()
    }

    pub fn slice(&self, start: usize, end: usize) -> AminoSequence {
        AminoSequence {
            symbols: self.symbols[start..end].to_vec(),
        }
    }
}

impl fmt::Display for AminoSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphabet = AMINO_ALPHABET.as_bytes();
        let s: String = self
            .symbols
            .iter()
            .map(|&i| alphabet[i as usize] as char)
            .collect();
        f.write_str(&s)
    }
}

impl FromStr for AminoSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AminoSequence::new(s)
    }
}

/// Per-residue three-state labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct StructureString {
    labels: Vec<ClassLabel>,
}

impl StructureString {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[ClassLabel] {
        &self.labels
    }

    pub fn uniform(label: ClassLabel, len: usize) -> Self {
        StructureString {
            labels: vec![label; len],
        }
    }
}

impl From<Vec<ClassLabel>> for StructureString {
    fn from(labels: Vec<ClassLabel>) -> Self {
        StructureString { labels }
    }
}

impl FromStr for StructureString {
    type Err = Error;

    /// Accepts only `H`, `E` and `C`; use
    /// [`reduce_dssp_string`](crate::dssp::reduce_dssp_string) for DSSP input.
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(position, code)| {
                ClassLabel::from_char(code).ok_or(Error::InvalidLabel { code, position })
            })
            .collect::<Result<Vec<_>>>()
            .map(StructureString::from)
    }
}

impl fmt::Display for StructureString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.labels.iter().map(|l| l.as_char()).collect();
        f.write_str(&s)
    }
}
