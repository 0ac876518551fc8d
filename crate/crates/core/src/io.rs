//! Text formats: FASTA input, labeled training sets, prediction files and
//! the `SSPH-HMM v1` model file.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use crate::dssp::{reduce_dssp_string, ClassLabel};
use crate::error::{Error, Result};
use crate::hmm::{check_distribution, Hmm};
use crate::predictor::ClassModelSet;
use crate::sequence::{AminoSequence, StructureString, ALPHABET_SIZE, AMINO_ALPHABET};

pub const MODEL_MAGIC: &str = "SSPH-HMM v1";
const FASTA_LINE_WIDTH: usize = 60;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FastaRecord {
    pub id: String,
    pub sequence: AminoSequence,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledRecord {
    pub id: String,
    pub sequence: AminoSequence,
    pub labels: StructureString,
}

impl LabeledRecord {
    pub fn new(
        id: impl Into<String>,
        sequence: AminoSequence,
        labels: StructureString,
    ) -> Result<Self> {
        let id = id.into();
        if sequence.len() != labels.len() {
            return Err(Error::LengthMismatch {
                id,
                sequence: sequence.len(),
                labels: labels.len(),
            });
        }
        Ok(LabeledRecord {
            id,
            sequence,
            labels,
        })
    }
}

/// An id with its label string, as found in prediction and truth files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelRecord {
    pub id: String,
    pub labels: StructureString,
}

/// Header followed by its data lines (blank lines dropped), with 1-based
/// line numbers.
struct Block<'a> {
    id: &'a str,
    header_line: usize,
    lines: Vec<(usize, &'a str)>,
}

fn blocks(text: &str) -> Result<Vec<Block<'_>>> {
    let mut out: Vec<Block<'_>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('>') {
            let id = header.trim();
            if id.is_empty() {
                return Err(Error::MalformedRecord {
                    id: String::new(),
                    line: line_no,
                    reason: "empty header".into(),
                });
            }
            out.push(Block {
                id,
                header_line: line_no,
                lines: Vec::new(),
            });
        } else {
            match out.last_mut() {
                Some(block) => block.lines.push((line_no, line)),
                None => return Err(Error::MissingHeader { line: line_no }),
            }
        }
    }
    Ok(out)
}

/// Parses FASTA. Wrapped sequence lines are joined, whitespace is dropped,
/// residues are uppercased and non-canonical letters become `X`.
pub fn parse_fasta(text: &str) -> Result<Vec<FastaRecord>> {
    blocks(text)?
        .into_iter()
        .map(|block| {
            if block.lines.is_empty() {
                return Err(Error::EmptyRecord {
                    id: block.id.to_string(),
                    line: block.header_line,
                });
            }
            let joined: String = block
                .lines
                .iter()
                .flat_map(|(_, l)| l.chars().filter(|c| !c.is_whitespace()))
                .collect();
            let sequence = AminoSequence::from_raw(&joined).map_err(|e| match e {
                Error::InvalidResidue { residue, position } => Error::MalformedRecord {
                    id: block.id.to_string(),
                    line: block.header_line,
                    reason: format!("invalid residue {residue:?} at position {position}"),
                },
                other => other,
            })?;
            Ok(FastaRecord {
                id: block.id.to_string(),
                sequence,
            })
        })
        .collect()
}

pub fn write_fasta(records: &[FastaRecord]) -> String {
    let mut out = String::new();
    for rec in records {
        out.push('>');
        out.push_str(&rec.id);
        out.push('\n');
        let residues = rec.sequence.to_string();
        for chunk in residues.as_bytes().chunks(FASTA_LINE_WIDTH) {
            out.push_str(std::str::from_utf8(chunk).expect("ascii residues"));
            out.push('\n');
        }
    }
    out
}

/// Three lines per record: `>id`, residues, labels. Labels may be DSSP
/// eight-state codes (reduced here) or already three-state.
pub fn parse_labeled_dataset(text: &str) -> Result<Vec<LabeledRecord>> {
    blocks(text)?
        .into_iter()
        .map(|block| {
            let [(seq_line, seq), (_, labels)] = block.lines[..] else {
                return Err(Error::MalformedRecord {
                    id: block.id.to_string(),
                    line: block.header_line,
                    reason: format!(
                        "expected a sequence line and a label line, found {} data lines",
                        block.lines.len()
                    ),
                });
            };
            let sequence = AminoSequence::from_raw(seq).map_err(|e| Error::MalformedRecord {
                id: block.id.to_string(),
                line: seq_line,
                reason: e.to_string(),
            })?;
            let labels = reduce_dssp_string(labels)?;
            LabeledRecord::new(block.id, sequence, labels)
        })
        .collect()
}

/// Reads prediction or truth files: each `>id` is followed by its label
/// line, optionally preceded by a residue line (the labeled-dataset layout).
pub fn parse_label_records(text: &str) -> Result<Vec<LabelRecord>> {
    blocks(text)?
        .into_iter()
        .map(|block| {
            let (labels, residues) = match block.lines[..] {
                [(_, labels)] => (labels, None),
                [(_, seq), (_, labels)] => (labels, Some(seq)),
                _ => {
                    return Err(Error::MalformedRecord {
                        id: block.id.to_string(),
                        line: block.header_line,
                        reason: format!("expected 1 or 2 data lines, found {}", block.lines.len()),
                    })
                }
            };
            let labels = reduce_dssp_string(labels)?;
            if let Some(seq) = residues {
                let seq = AminoSequence::from_raw(seq)?;
                LabeledRecord::new(block.id, seq, labels.clone())?;
            }
            Ok(LabelRecord {
                id: block.id.to_string(),
                labels,
            })
        })
        .collect()
}

pub fn write_label_records(records: &[LabelRecord]) -> String {
    let mut out = String::new();
    for rec in records {
        let _ = writeln!(out, ">{}\n{}", rec.id, rec.labels);
    }
    out
}

/// Serializes in the `SSPH-HMM v1` layout. `f64` `Display` prints the
/// shortest decimal that parses back to the same bits.
pub fn write_models(models: &ClassModelSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{MODEL_MAGIC}");
    let _ = writeln!(out, "alphabet {AMINO_ALPHABET}");
    for class in ClassLabel::ALL {
        let m = models.get(class);
        let _ = writeln!(out, "model {class}");
        let _ = writeln!(out, "states {}", m.num_states());
        write_row(&mut out, "initial", m.initial());
        for s in 0..m.num_states() {
            write_row(&mut out, "transition", m.transition_row(s));
        }
        for s in 0..m.num_states() {
            write_row(&mut out, "emission", m.emission_row(s));
        }
    }
    out
}

fn write_row(out: &mut String, key: &str, row: &[f64]) {
    out.push_str(key);
    for p in row {
        let _ = write!(out, " {p}");
    }
    out.push('\n');
}

struct ModelReader<'a> {
    lines: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
    last_line: usize,
}

impl<'a> ModelReader<'a> {
    fn next_line(&mut self, expecting: &str) -> Result<(usize, &'a str)> {
        match self.lines.next() {
            Some((i, line)) => {
                self.last_line = i + 1;
                Ok((i + 1, line))
            }
            None => Err(Error::ModelFormat {
                line: self.last_line + 1,
                reason: format!("unexpected end of file, expected {expecting}"),
            }),
        }
    }

    /// Reads `key v1 v2 ...` with exactly `count` values.
    fn keyed_row(&mut self, key: &str, count: usize) -> Result<(usize, Vec<f64>)> {
        let (line, text) = self.next_line(key)?;
        let mut fields = text.split(' ');
        if fields.next() != Some(key) {
            return Err(format_err(
                line,
                format!("expected '{key}' line, found {text:?}"),
            ));
        }
        let values = fields
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|_| format_err(line, format!("invalid number {f:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if values.len() != count {
            return Err(format_err(
                line,
                format!("'{key}' line has {} values, expected {count}", values.len()),
            ));
        }
        Ok((line, values))
    }

    fn exact(&mut self, expected: &str) -> Result<()> {
        let (line, text) = self.next_line(expected)?;
        if text != expected {
            return Err(format_err(
                line,
                format!("expected {expected:?}, found {text:?}"),
            ));
        }
        Ok(())
    }

    fn model(&mut self, class: ClassLabel) -> Result<Hmm> {
        self.exact(&format!("model {class}"))?;
        let (line, text) = self.next_line("states")?;
        let k: usize = text
            .strip_prefix("states ")
            .and_then(|v| v.parse().ok())
            .filter(|&k| k >= 1)
            .ok_or_else(|| {
                format_err(
                    line,
                    format!("expected 'states <k>' with k >= 1, found {text:?}"),
                )
            })?;

        let (line, initial) = self.keyed_row("initial", k)?;
        check_row(line, &format!("model {class} initial"), &initial)?;
        let mut transition = Vec::with_capacity(k * k);
        for s in 0..k {
            let (line, row) = self.keyed_row("transition", k)?;
            check_row(line, &format!("model {class} transition row {s}"), &row)?;
            transition.extend(row);
        }
        let mut emission = Vec::with_capacity(k * ALPHABET_SIZE);
        for s in 0..k {
            let (line, row) = self.keyed_row("emission", ALPHABET_SIZE)?;
            check_row(line, &format!("model {class} emission row {s}"), &row)?;
            emission.extend(row);
        }
        Hmm::from_flat(k, ALPHABET_SIZE, initial, transition, emission)
    }
}

fn format_err(line: usize, reason: String) -> Error {
    Error::ModelFormat { line, reason }
}

fn check_row(line: usize, what: &str, row: &[f64]) -> Result<()> {
    check_distribution(what, row).map_err(|e| format_err(line, e.to_string()))
}

pub fn read_models(text: &str) -> Result<ClassModelSet> {
    let mut reader = ModelReader {
        lines: text.lines().enumerate().peekable(),
        last_line: 0,
    };
    let (line, header) = reader.next_line("header")?;
    if header != MODEL_MAGIC {
        return Err(format_err(
            line,
            format!("unsupported header {header:?}, expected {MODEL_MAGIC:?}"),
        ));
    }
    reader.exact(&format!("alphabet {AMINO_ALPHABET}"))?;
    let helix = reader.model(ClassLabel::Helix)?;
    let strand = reader.model(ClassLabel::Strand)?;
    let coil = reader.model(ClassLabel::Coil)?;
    if let Some((i, extra)) = reader.lines.find(|(_, l)| !l.is_empty()) {
        return Err(format_err(i + 1, format!("trailing content {extra:?}")));
    }
    ClassModelSet::new(helix, strand, coil)
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes through a temporary file in the destination directory and renames
/// it into place, so a failed run never leaves a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(contents.as_bytes()).map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}
