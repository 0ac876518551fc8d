use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand};

use ssph::cli::{cmd_eval, cmd_predict, cmd_train, RunConfig};
use ssph::dssp::ClassLabel;
use ssph::Execution;

#[derive(Parser)]
#[command(
    name = "ssph",
    version,
    about = "Secondary structure prediction with per-class HMMs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train helix, strand and coil models from a labeled dataset.
    Train {
        /// Labeled dataset: ">id", residue line, label line per record.
        #[arg(long)]
        data: PathBuf,
        /// Model file to write.
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        opts: Options,
    },
    /// Predict per-residue labels for every record in a FASTA file.
    Predict {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[command(flatten)]
        opts: Options,
    },
    /// Compare predictions with ground truth.
    Eval {
        #[arg(long)]
        pred: PathBuf,
        #[arg(long)]
        truth: PathBuf,
        /// Also write the report as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        opts: Options,
    },
}

#[derive(Args)]
struct Options {
    /// Hidden states per class model.
    #[arg(long, default_value_t = 2)]
    states: usize,
    /// Window half-width; windows span 2*W+1 residues.
    #[arg(long = "window", default_value_t = 5)]
    half_width: usize,
    /// Maximum Baum-Welch iterations.
    #[arg(long, default_value_t = 100)]
    iters: usize,
    /// Baum-Welch convergence threshold on total log-likelihood.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Label for residues without a complete window (H, E or C).
    #[arg(long, default_value_t = 'C', value_parser = parse_class)]
    boundary_label: char,
    /// Score the first and last W residues in eval.
    #[arg(long, action = ArgAction::Set, default_value_t = true)]
    include_boundary_in_eval: bool,
    /// Run every loop on the calling thread.
    #[arg(long)]
    sequential: bool,
}

fn parse_class(s: &str) -> Result<char, String> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) if ClassLabel::from_char(c).is_some() => Ok(c),
        _ => Err(format!("expected one of H, E, C, got {s:?}")),
    }
}

impl Options {
    fn config(&self) -> RunConfig {
        RunConfig {
            states: self.states,
            half_width: self.half_width,
            max_iters: self.iters,
            tol: self.tol,
            seed: self.seed,
            boundary_label: ClassLabel::from_char(self.boundary_label).expect("validated by clap"),
            include_boundary_in_eval: self.include_boundary_in_eval,
            execution: if self.sequential {
                Execution::Sequential
            } else {
                Execution::default()
            },
            ..RunConfig::default()
        }
    }
}

fn run(cli: Cli) -> ssph::Result<()> {
    match cli.command {
        Command::Train { data, model, opts } => {
            for report in cmd_train(&opts.config(), &data, &model)? {
                println!(
                    "class {}: {} windows, {} iterations, log-likelihood {}",
                    report.class,
                    report.windows,
                    report.trace.len(),
                    report
                        .trace
                        .last()
                        .map_or_else(|| "n/a".to_string(), |ll| format!("{ll:.6}")),
                );
            }
        }
        Command::Predict {
            model,
            input,
            output,
            opts,
        } => {
            let n = cmd_predict(&opts.config(), &model, &input, &output)?;
            eprintln!("predicted {n} records");
        }
        Command::Eval {
            pred,
            truth,
            csv,
            opts,
        } => {
            let report = cmd_eval(&opts.config(), &pred, &truth, csv.as_ref())?;
            print!("{}", report.text);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
