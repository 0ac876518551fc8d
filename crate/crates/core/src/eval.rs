//! Residue-level scoring: confusion matrix, Q3 and per-class recall.

use std::fmt::Write as _;
use std::ops::AddAssign;

use crate::dssp::ClassLabel;
use crate::error::{Error, Result};
use crate::sequence::StructureString;

/// `counts[truth][predicted]`, indexed in H, E, C order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConfusionMatrix {
    pub counts: [[u64; 3]; 3],
}

impl ConfusionMatrix {
    pub fn get(&self, truth: ClassLabel, predicted: ClassLabel) -> u64 {
        self.counts[truth.index()][predicted.index()]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn correct(&self) -> u64 {
        (0..3).map(|i| self.counts[i][i]).sum()
    }

    pub fn row_total(&self, truth: ClassLabel) -> u64 {
        self.counts[truth.index()].iter().sum()
    }

    fn record(&mut self, truth: ClassLabel, predicted: ClassLabel) {
        self.counts[truth.index()][predicted.index()] += 1;
    }
}

impl AddAssign for ConfusionMatrix {
    fn add_assign(&mut self, rhs: Self) {
        for (row, other) in self.counts.iter_mut().zip(rhs.counts) {
            for (c, o) in row.iter_mut().zip(other) {
                *c += o;
            }
        }
    }
}

pub fn confusion(pred: &StructureString, truth: &StructureString) -> Result<ConfusionMatrix> {
    confusion_excluding_ends(pred, truth, 0)
}

/// Like [`confusion`] but skipping the first and last `trim` positions
/// (the residues a window of half-width `trim` never classifies).
pub fn confusion_excluding_ends(
    pred: &StructureString,
    truth: &StructureString,
    trim: usize,
) -> Result<ConfusionMatrix> {
    if pred.len() != truth.len() {
        return Err(Error::LengthMismatch {
            id: String::new(),
            sequence: truth.len(),
            labels: pred.len(),
        });
    }
    let n = pred.len();
    let mut m = ConfusionMatrix::default();
    for (i, (&p, &t)) in pred.labels().iter().zip(truth.labels()).enumerate() {
        if i >= trim && i + trim < n {
            m.record(t, p);
        }
    }
    Ok(m)
}

/// Fraction of residues on the diagonal.
pub fn q3(matrix: &ConfusionMatrix) -> Result<f64> {
    match matrix.total() {
        0 => Err(Error::NoResidues),
        total => Ok(matrix.correct() as f64 / total as f64),
    }
}

/// Recall per true class; `None` where that class never occurs in the truth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassRecall {
    pub helix: Option<f64>,
    pub strand: Option<f64>,
    pub coil: Option<f64>,
}

impl ClassRecall {
    pub fn get(&self, class: ClassLabel) -> Option<f64> {
        match class {
            ClassLabel::Helix => self.helix,
            ClassLabel::Strand => self.strand,
            ClassLabel::Coil => self.coil,
        }
    }
}

pub fn per_class_recall(matrix: &ConfusionMatrix) -> ClassRecall {
    let recall = |c: ClassLabel| match matrix.row_total(c) {
        0 => None,
        row => Some(matrix.get(c, c) as f64 / row as f64),
    };
    ClassRecall {
        helix: recall(ClassLabel::Helix),
        strand: recall(ClassLabel::Strand),
        coil: recall(ClassLabel::Coil),
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "undefined".to_string(), |v| format!("{v:.4}"))
}

/// Human-readable report.
pub fn format_report(matrix: &ConfusionMatrix) -> Result<String> {
    let q = q3(matrix)?;
    let recall = per_class_recall(matrix);
    let mut out = String::new();
    let _ = writeln!(out, "residues: {}", matrix.total());
    let _ = writeln!(out, "confusion (rows = truth, columns = predicted):");
    let _ = writeln!(out, "{:>6}{:>10}{:>10}{:>10}", "", "H", "E", "C");
    for t in ClassLabel::ALL {
        let _ = write!(out, "{:>6}", t.as_char());
        for p in ClassLabel::ALL {
            let _ = write!(out, "{:>10}", matrix.get(t, p));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "Q3: {q:.4}");
    for c in ClassLabel::ALL {
        let _ = writeln!(out, "recall {}: {}", c.as_char(), fmt_opt(recall.get(c)));
    }
    Ok(out)
}

/// Machine-readable report: one `key,value` or matrix row per line.
pub fn format_report_csv(matrix: &ConfusionMatrix) -> Result<String> {
    let q = q3(matrix)?;
    let recall = per_class_recall(matrix);
    let mut out = String::from("truth,pred_H,pred_E,pred_C\n");
    for t in ClassLabel::ALL {
        let row = &matrix.counts[t.index()];
        let _ = writeln!(out, "{},{},{},{}", t.as_char(), row[0], row[1], row[2]);
    }
    let _ = writeln!(out, "metric,value");
    let _ = writeln!(out, "q3,{q}");
    for c in ClassLabel::ALL {
        let v = recall
            .get(c)
            .map_or_else(|| "undefined".to_string(), |v| v.to_string());
        let _ = writeln!(out, "recall_{},{v}", c.as_char());
    }
    Ok(out)
}
