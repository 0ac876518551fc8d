//! Eight-state DSSP codes and their reduction to helix / strand / coil.

use std::fmt;

use crate::error::{Error, Result};
use crate::sequence::StructureString;

/// One DSSP secondary-structure code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DsspLabel {
    /// α-helix
    H,
    /// 3-10 helix
    G,
    /// π-helix
    I,
    /// extended strand
    E,
    /// isolated β-bridge
    B,
    /// turn
    T,
    /// bend
    S,
    /// coil
    C,
}

impl DsspLabel {
    pub const ALL: [DsspLabel; 8] = [
        DsspLabel::H,
        DsspLabel::G,
        DsspLabel::I,
        DsspLabel::E,
        DsspLabel::B,
        DsspLabel::T,
        DsspLabel::S,
        DsspLabel::C,
    ];

    /// Case-sensitive: lowercase codes are not DSSP codes.
    pub fn from_char(c: char) -> Option<Self> {
        Some(match c {
            'H' => DsspLabel::H,
            'G' => DsspLabel::G,
            'I' => DsspLabel::I,
            'E' => DsspLabel::E,
            'B' => DsspLabel::B,
            'T' => DsspLabel::T,
            'S' => DsspLabel::S,
            'C' => DsspLabel::C,
            _ => return None,
        })
    }

    pub fn as_char(self) -> char {
        match self {
            DsspLabel::H => 'H',
            DsspLabel::G => 'G',
            DsspLabel::I => 'I',
            DsspLabel::E => 'E',
            DsspLabel::B => 'B',
            DsspLabel::T => 'T',
            DsspLabel::S => 'S',
            DsspLabel::C => 'C',
        }
    }
}

/// Three-state secondary structure class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassLabel {
    Helix,
    Strand,
    Coil,
}

impl ClassLabel {
    /// Row/column order used by confusion matrices and model files.
    pub const ALL: [ClassLabel; 3] = [ClassLabel::Helix, ClassLabel::Strand, ClassLabel::Coil];

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'H' => Some(ClassLabel::Helix),
            'E' => Some(ClassLabel::Strand),
            'C' => Some(ClassLabel::Coil),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            ClassLabel::Helix => 'H',
            ClassLabel::Strand => 'E',
            ClassLabel::Coil => 'C',
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

pub fn reduce_dssp(label: DsspLabel) -> ClassLabel {
    match label {
        DsspLabel::H | DsspLabel::G | DsspLabel::I => ClassLabel::Helix,
        DsspLabel::E | DsspLabel::B => ClassLabel::Strand,
        DsspLabel::T | DsspLabel::S | DsspLabel::C => ClassLabel::Coil,
    }
}

/// Reduces a single character, rejecting anything outside the eight codes.
pub fn reduce_dssp_char(c: char) -> Result<ClassLabel> {
    DsspLabel::from_char(c)
        .map(reduce_dssp)
        .ok_or(Error::UnknownDsspCode {
            code: c,
            position: 0,
        })
}

/// Elementwise reduction; reports the first offending character.
///
/// A string already over `{H, E, C}` passes through unchanged, since those
/// three codes reduce to themselves.
pub fn reduce_dssp_string(labels: &str) -> Result<StructureString> {
    labels
        .chars()
        .enumerate()
        .map(|(position, code)| {
            DsspLabel::from_char(code)
                .map(reduce_dssp)
                .ok_or(Error::UnknownDsspCode { code, position })
        })
        .collect::<Result<Vec<_>>>()
        .map(StructureString::from)
}
