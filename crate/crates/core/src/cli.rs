//! The `train`, `predict` and `eval` pipeline steps behind the `ssph`
//! binary. Every output file is written atomically.

use std::path::{Path, PathBuf};

use crate::dssp::ClassLabel;
use crate::error::{Error, Result};
use crate::eval::{confusion_excluding_ends, format_report, format_report_csv, ConfusionMatrix};
use crate::hmm::{baum_welch, BaumWelchConfig, Hmm, LikelihoodTrace};
use crate::io::{
    parse_fasta, parse_label_records, parse_labeled_dataset, read_models, read_text, write_atomic,
    write_label_records, write_models, LabelRecord, LabeledRecord,
};
use crate::par::Execution;
use crate::predictor::{predict_all, ClassModelSet, PredictConfig};
use crate::sequence::ALPHABET_SIZE;

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub states: usize,
    pub half_width: usize,
    pub max_iters: usize,
    pub tol: f64,
    pub seed: u64,
    pub boundary_label: ClassLabel,
    pub include_boundary_in_eval: bool,
    pub pseudocount: f64,
    pub execution: Execution,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            states: 2,
            half_width: 5,
            max_iters: 100,
            tol: 1e-6,
            seed: 0,
            boundary_label: ClassLabel::Coil,
            include_boundary_in_eval: true,
            pseudocount: 1e-6,
            execution: Execution::default(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.states == 0 {
            return Err(Error::InvalidConfig("--states must be at least 1".into()));
        }
        if self.half_width == 0 {
            return Err(Error::InvalidConfig("--window must be at least 1".into()));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidConfig("--tol must be positive".into()));
        }
        Ok(())
    }

    pub fn predict_config(&self) -> PredictConfig {
        PredictConfig {
            half_width: self.half_width,
            boundary_label: self.boundary_label,
            execution: self.execution,
        }
    }

    fn baum_welch_config(&self) -> BaumWelchConfig {
        BaumWelchConfig {
            max_iters: self.max_iters,
            tol: self.tol,
            pseudocount: self.pseudocount,
            execution: self.execution,
        }
    }
}

/// Every complete window, grouped by the true label of its centre residue.
/// Indexed in H, E, C order.
pub fn class_windows(records: &[LabeledRecord], half_width: usize) -> [Vec<Vec<usize>>; 3] {
    let mut out: [Vec<Vec<usize>>; 3] = Default::default();
    for rec in records {
        let symbols = rec.sequence.encode();
        let n = symbols.len();
        for (i, label) in rec.labels.labels().iter().enumerate() {
            if i >= half_width && i + half_width < n {
                out[label.index()].push(symbols[i - half_width..=i + half_width].to_vec());
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct ClassTraining {
    pub class: ClassLabel,
    pub windows: usize,
    pub trace: LikelihoodTrace,
}

/// Trains one model per class on its centre-labelled windows. Class `c`
/// starts from a random model seeded with `seed + index(c)`.
pub fn train_models(
    records: &[LabeledRecord],
    config: &RunConfig,
) -> Result<(ClassModelSet, Vec<ClassTraining>)> {
    config.validate()?;
    let windows = class_windows(records, config.half_width);
    if let Some(class) = ClassLabel::ALL
        .into_iter()
        .find(|c| windows[c.index()].is_empty())
    {
        return Err(Error::ClassHasNoData(class));
    }
    let bw = config.baum_welch_config();
    let mut models = Vec::with_capacity(3);
    let mut reports = Vec::with_capacity(3);
    for class in ClassLabel::ALL {
        let data = &windows[class.index()];
        let init = Hmm::new_random(
            config.states,
            ALPHABET_SIZE,
            config.seed.wrapping_add(class.index() as u64),
        )?;
        let (model, trace) = baum_welch(&init, data, &bw)?;
        models.push(model);
        reports.push(ClassTraining {
            class,
            windows: data.len(),
            trace,
        });
    }
    let coil = models.pop().expect("three models");
    let strand = models.pop().expect("three models");
    let helix = models.pop().expect("three models");
    Ok((ClassModelSet::new(helix, strand, coil)?, reports))
}

pub fn cmd_train(
    config: &RunConfig,
    dataset: &Path,
    model_out: &Path,
) -> Result<Vec<ClassTraining>> {
    let text = read_text(dataset)?;
    let records = parse_labeled_dataset(&text).map_err(|e| e.in_file(dataset))?;
    let (models, reports) = train_models(&records, config)?;
    write_atomic(model_out, &write_models(&models))?;
    Ok(reports)
}

pub fn load_models(path: &Path) -> Result<ClassModelSet> {
    read_models(&read_text(path)?).map_err(|e| e.in_file(path))
}

pub fn cmd_predict(config: &RunConfig, model: &Path, fasta: &Path, out: &Path) -> Result<usize> {
    config.validate()?;
    let models = load_models(model)?;
    let records = parse_fasta(&read_text(fasta)?).map_err(|e| e.in_file(fasta))?;
    let sequences: Vec<_> = records.iter().map(|r| r.sequence.clone()).collect();
    let predicted = predict_all(&models, &sequences, &config.predict_config())?;
    let output: Vec<LabelRecord> = records
        .into_iter()
        .zip(predicted)
        .map(|(rec, labels)| LabelRecord { id: rec.id, labels })
        .collect();
    write_atomic(out, &write_label_records(&output))?;
    Ok(output.len())
}

/// Pools every record pair into one matrix. Records are matched by
/// position and must carry the same ids.
pub fn evaluate_records(
    predicted: &[LabelRecord],
    truth: &[LabelRecord],
    config: &RunConfig,
) -> Result<ConfusionMatrix> {
    let trim = if config.include_boundary_in_eval {
        0
    } else {
        config.half_width
    };
    let mut total = ConfusionMatrix::default();
    for index in 0..predicted.len().max(truth.len()) {
        let (p, t) = match (predicted.get(index), truth.get(index)) {
            (Some(p), Some(t)) if p.id == t.id => (p, t),
            (p, t) => {
                return Err(Error::RecordMismatch {
                    index,
                    predicted: p.map_or("<missing>".into(), |r| r.id.clone()),
                    truth: t.map_or("<missing>".into(), |r| r.id.clone()),
                })
            }
        };
        total += confusion_excluding_ends(&p.labels, &t.labels, trim).map_err(|_| {
            Error::LengthMismatch {
                id: p.id.clone(),
                sequence: t.labels.len(),
                labels: p.labels.len(),
            }
        })?;
    }
    Ok(total)
}

#[derive(Debug, Clone)]
pub struct EvalReport {
    pub matrix: ConfusionMatrix,
    pub text: String,
    pub csv: String,
}

pub fn cmd_eval(
    config: &RunConfig,
    predictions: &Path,
    truth: &Path,
    csv_out: Option<&PathBuf>,
) -> Result<EvalReport> {
    config.validate()?;
    let pred = parse_label_records(&read_text(predictions)?).map_err(|e| e.in_file(predictions))?;
    let truth_records = parse_label_records(&read_text(truth)?).map_err(|e| e.in_file(truth))?;
    let matrix = evaluate_records(&pred, &truth_records, config)?;
    let report = EvalReport {
        matrix,
        text: format_report(&matrix)?,
        csv: format_report_csv(&matrix)?,
    };
    if let Some(path) = csv_out {
        write_atomic(path, &report.csv)?;
    }
    Ok(report)
}
