//! Acceptance suite. Each criterion prints one PASS/FAIL line; the test
//! fails if any criterion fails.
//!
//! Run with `cargo test -p ssph-core --test acceptance -- --nocapture`.

mod common;

use std::time::{Duration, Instant};

use common::{enumerate_paths, random_obs, rng};
use rand::Rng;
use ssph::cli::{cmd_predict, cmd_train, train_models, RunConfig};
use ssph::dssp::{reduce_dssp, reduce_dssp_char, ClassLabel, DsspLabel};
use ssph::eval::{confusion, per_class_recall, q3, ConfusionMatrix};
use ssph::hmm::{
    backward_log_likelihood, baum_welch, forward_log_likelihood, viterbi, BaumWelchConfig, Hmm,
};
use ssph::io::{parse_fasta, read_models, write_fasta, write_models, FastaRecord};
use ssph::predictor::{classify_window, predict_all, ClassModelSet, WindowScores};
use ssph::sequence::{AminoSequence, ALPHABET_SIZE, AMINO_ALPHABET};
use ssph::synthetic::{generate_dataset, planted_models, PlantedConfig};

const ORACLE_TOL: f64 = 1e-10;
const FWD_BWD_TOL: f64 = 1e-8;
const EM_SLACK: f64 = 1e-9;
const DECODING_BUDGET: Duration = Duration::from_secs(10);
const RECOVERY_BUDGET: Duration = Duration::from_secs(60);
const MIN_Q3: f64 = 0.55;
const MIN_HELIX_RECALL: f64 = 0.55;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1);
    let cases = 2000;
    let (mut worst_max, mut worst_sum) = (0.0f64, 0.0f64);
    for case in 0..cases {
        let k = r.random_range(1..=3);
        let m = r.random_range(1..=5);
        let len = r.random_range(1..=8);
        let model = Hmm::new_random(k, m, r.random()).map_err(|e| e.to_string())?;
        let obs = random_obs(&mut r, m, len);
        let (max, _, sum) = enumerate_paths(&model, &obs);
        let v = viterbi(&model, &obs).map_err(|e| e.to_string())?;
        let f = forward_log_likelihood(&model, &obs).map_err(|e| e.to_string())?;
        let (dm, ds) = ((v.log_prob.exp() - max).abs(), (f.exp() - sum).abs());
        worst_max = worst_max.max(dm);
        worst_sum = worst_sum.max(ds);
        ensure(dm <= ORACLE_TOL && ds <= ORACLE_TOL, || {
            format!("case {case}: viterbi err {dm:e}, forward err {ds:e}")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < DECODING_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{cases} cases, max |err| viterbi {worst_max:.1e} forward {worst_sum:.1e}, {elapsed:.2?}"
    ))
}

fn forward_backward_agreement() -> Outcome {
    let mut r = rng(2);
    let cases = 1000;
    let mut worst = 0.0f64;
    for case in 0..cases {
        let k = r.random_range(1..=4);
        let m = r.random_range(1..=ALPHABET_SIZE);
        let len = r.random_range(1..=200);
        let model = Hmm::new_random(k, m, r.random()).map_err(|e| e.to_string())?;
        let obs = random_obs(&mut r, m, len);
        let f = forward_log_likelihood(&model, &obs).map_err(|e| e.to_string())?;
        let b = backward_log_likelihood(&model, &obs).map_err(|e| e.to_string())?;
        worst = worst.max((f - b).abs());
        ensure((f - b).abs() <= FWD_BWD_TOL, || {
            format!("case {case}: |{f} - {b}|")
        })?;
    }
    Ok(format!(
        "{cases} cases, max |forward - backward| {worst:.1e}"
    ))
}

fn em_monotonicity() -> Outcome {
    let mut r = rng(3);
    let runs = 120;
    let mut steps = 0;
    let mut worst_drop = 0.0f64;
    for run in 0..runs {
        let k = r.random_range(1..=3);
        let m = r.random_range(2..=6);
        let data: Vec<Vec<usize>> = (0..20).map(|_| random_obs(&mut r, m, 30)).collect();
        let init = Hmm::new_random(k, m, r.random()).map_err(|e| e.to_string())?;
        let cfg = BaumWelchConfig {
            max_iters: 50,
            tol: f64::MIN_POSITIVE,
            ..Default::default()
        };
        let (_, trace) = baum_welch(&init, &data, &cfg).map_err(|e| e.to_string())?;
        steps += trace.len();
        for w in trace.per_iteration_log_likelihood.windows(2) {
            worst_drop = worst_drop.max(w[0] - w[1]);
        }
        ensure(trace.is_non_decreasing(EM_SLACK), || {
            format!("run {run}: trace decreases {trace:?}")
        })?;
    }
    Ok(format!(
        "{runs} runs, {steps} iterations, largest decrease {worst_drop:.1e}"
    ))
}

fn worked_example_fixture() -> Outcome {
    let injected = WindowScores::from_scores(0.3f64.ln(), 0.6f64.ln(), 0.4f64.ln());
    ensure(injected.chosen == ClassLabel::Coil, || {
        format!("chose {}", injected.chosen)
    })?;
    let best = [injected.helix, injected.strand, injected.coil]
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max)
        .exp();
    ensure((best - 0.6).abs() < 1e-15, || {
        format!("max probability {best}")
    })?;

    // the same decision through real models scoring the window ACCTG
    let stub = |a: f64| {
        let rest = (0.7 - a) / 17.0;
        let row = AMINO_ALPHABET
            .chars()
            .map(|c| match c {
                'A' => a,
                'C' | 'T' | 'G' => 0.1,
                _ => rest,
            })
            .collect();
        Hmm::new(vec![1.0], vec![vec![1.0]], vec![row]).unwrap()
    };
    let models = ClassModelSet::new(stub(0.15), stub(0.2), stub(0.3)).map_err(|e| e.to_string())?;
    let window = AminoSequence::new("ACCTG").unwrap();
    let scores = classify_window(&models, &window).map_err(|e| e.to_string())?;
    ensure(scores.chosen == ClassLabel::Coil, || {
        format!("stub models chose {}", scores.chosen)
    })?;
    Ok("Max{0.3, 0.4, 0.6} = 0.6 -> C (injected and via stub models)".into())
}

fn dssp_reduction() -> Outcome {
    let expected = [
        ('H', 'H'),
        ('G', 'H'),
        ('I', 'H'),
        ('E', 'E'),
        ('B', 'E'),
        ('T', 'C'),
        ('S', 'C'),
        ('C', 'C'),
    ];
    for (code, class) in expected {
        let got = reduce_dssp_char(code).map_err(|e| e.to_string())?.as_char();
        ensure(got == class, || {
            format!("{code} -> {got}, expected {class}")
        })?;
        let label = DsspLabel::from_char(code).unwrap();
        ensure(reduce_dssp(label).as_char() == class, || {
            format!("{code} enum path")
        })?;
    }
    for c in ('\0'..='\u{7f}').filter(|c| !"HGIEBTSC".contains(*c)) {
        ensure(reduce_dssp_char(c).is_err(), || format!("{c:?} accepted"))?;
    }
    Ok("8/8 codes map as H,G,I->H  E,B->E  T,S,C->C; all other ASCII rejected".into())
}

fn synthetic_recovery() -> Outcome {
    let start = Instant::now();
    let planted_cfg = PlantedConfig::default();
    let planted = planted_models(&planted_cfg).map_err(|e| e.to_string())?;
    let data =
        generate_dataset(&planted, &planted_cfg, 200, 100, 2024).map_err(|e| e.to_string())?;
    let (train, test) = data.split_at(150);
    let cfg = RunConfig::default();
    let (models, _) = train_models(train, &cfg).map_err(|e| e.to_string())?;
    let seqs: Vec<_> = test.iter().map(|r| r.sequence.clone()).collect();
    let predicted =
        predict_all(&models, &seqs, &cfg.predict_config()).map_err(|e| e.to_string())?;
    let mut matrix = ConfusionMatrix::default();
    for (p, rec) in predicted.iter().zip(test) {
        matrix += confusion(p, &rec.labels).map_err(|e| e.to_string())?;
    }
    let q = q3(&matrix).map_err(|e| e.to_string())?;
    let recall = per_class_recall(&matrix);
    let helix = recall.helix.unwrap_or(0.0);
    let elapsed = start.elapsed();
    let summary = format!(
        "held-out Q3 {q:.3}, recall H {helix:.3} E {:.3} C {:.3}, {elapsed:.2?}",
        recall.strand.unwrap_or(f64::NAN),
        recall.coil.unwrap_or(f64::NAN)
    );
    ensure(
        q >= MIN_Q3 && helix >= MIN_HELIX_RECALL && elapsed < RECOVERY_BUDGET,
        || summary.clone(),
    )?;
    Ok(summary)
}

fn roundtrips() -> Outcome {
    let mut r = rng(7);
    for i in 0..100 {
        let mut model =
            || Hmm::new_random(r.random_range(1..=4), ALPHABET_SIZE, r.random()).unwrap();
        let set = ClassModelSet::new(model(), model(), model()).unwrap();
        let back = read_models(&write_models(&set)).map_err(|e| format!("set {i}: {e}"))?;
        for class in ClassLabel::ALL {
            let (a, b) = (set.get(class), back.get(class));
            let bits = |m: &Hmm| {
                let mut v: Vec<u64> = m.initial().iter().map(|x| x.to_bits()).collect();
                for s in 0..m.num_states() {
                    v.extend(m.transition_row(s).iter().map(|x| x.to_bits()));
                    v.extend(m.emission_row(s).iter().map(|x| x.to_bits()));
                }
                v
            };
            ensure(bits(a) == bits(b), || {
                format!("set {i} class {class} differs")
            })?;
        }
    }
    for i in 0..100 {
        let records: Vec<FastaRecord> = (0..r.random_range(0..6))
            .map(|j| {
                let len = r.random_range(1..150);
                let s: String = (0..len)
                    .map(|_| AMINO_ALPHABET.as_bytes()[r.random_range(0..ALPHABET_SIZE)] as char)
                    .collect();
                FastaRecord {
                    id: format!("rec{i}_{j}"),
                    sequence: AminoSequence::new(&s).unwrap(),
                }
            })
            .collect();
        let back = parse_fasta(&write_fasta(&records)).map_err(|e| format!("set {i}: {e}"))?;
        ensure(back == records, || format!("FASTA set {i} differs"))?;
    }
    Ok("100 model sets bit-identical, 100 FASTA sets identical".into())
}

fn end_to_end_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let planted_cfg = PlantedConfig::default();
    let planted = planted_models(&planted_cfg).map_err(|e| e.to_string())?;
    let data = generate_dataset(&planted, &planted_cfg, 30, 100, 5).map_err(|e| e.to_string())?;
    let labeled: String = data
        .iter()
        .map(|r| format!(">{}\n{}\n{}\n", r.id, r.sequence, r.labels))
        .collect();
    let fasta: String = data
        .iter()
        .map(|r| format!(">{}\n{}\n", r.id, r.sequence))
        .collect();
    let labeled_path = dir.path().join("train.txt");
    let fasta_path = dir.path().join("in.fa");
    std::fs::write(&labeled_path, labeled).unwrap();
    std::fs::write(&fasta_path, fasta).unwrap();

    let cfg = RunConfig {
        seed: 11,
        ..Default::default()
    };
    let mut outputs = Vec::new();
    for run in 0..2 {
        let model = dir.path().join(format!("model{run}.txt"));
        let pred = dir.path().join(format!("pred{run}.txt"));
        cmd_train(&cfg, &labeled_path, &model).map_err(|e| e.to_string())?;
        cmd_predict(&cfg, &model, &fasta_path, &pred).map_err(|e| e.to_string())?;
        outputs.push((
            std::fs::read(&model).unwrap(),
            std::fs::read(&pred).unwrap(),
        ));
    }
    ensure(outputs[0].0 == outputs[1].0, || "model files differ".into())?;
    ensure(outputs[0].1 == outputs[1].1, || {
        "prediction files differ".into()
    })?;
    Ok(format!(
        "model {} bytes and predictions {} bytes identical across runs",
        outputs[0].0.len(),
        outputs[0].1.len()
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("1 oracle equivalence (decoding)", oracle_equivalence),
        ("2 forward/backward agreement", forward_backward_agreement),
        ("3 EM monotonicity", em_monotonicity),
        ("4 worked-example fixture", worked_example_fixture),
        ("5 DSSP reduction", dssp_reduction),
        ("6 synthetic recovery", synthetic_recovery),
        ("7 round-trips", roundtrips),
        ("8 end-to-end determinism", end_to_end_determinism),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                println!("FAIL  {name}: {detail}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
