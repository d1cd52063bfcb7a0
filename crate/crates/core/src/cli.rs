//! Command-line front end. The `bandpitch` binary only parses arguments
//! and calls [`run`].

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::audio::{load_wav, mix_noise, resample, write_wav_f32};
use crate::bands::oracle_frame_labels;
use crate::classifier::{classify_track, load_weights};
use crate::decoder::decode_pitch_with_diagnostics;
use crate::dsp::FrameGeometry;
use crate::error::{Error, Result};
use crate::metrics::{evaluate, summarize, EvalReport, REPORT_CSV_HEADER};
use crate::track::{read_ground_truth, read_pitch_track};
use crate::PIPELINE_RATE;

#[derive(Debug, Parser)]
#[command(name = "bandpitch", version, about = "Band-classified autocorrelation pitch tracker")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Track f0 in a WAV file and write a CSV pitch track.
    Extract(ExtractArgs),
    /// Score estimated pitch tracks against references.
    Evaluate(EvaluateArgs),
    /// Add noise to a clean WAV at a given SNR.
    MixNoise(MixNoiseArgs),
    /// Print the header and tensor shapes of an HF0W model.
    InspectWeights(InspectArgs),
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("labels").required(true).args(["model", "oracle_truth"]))]
pub struct ExtractArgs {
    pub wav: PathBuf,
    /// HF0W classifier weights.
    #[arg(long)]
    pub model: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    /// Take band labels from a reference pitch CSV instead of the classifier.
    #[arg(long)]
    pub oracle_truth: Option<PathBuf>,
    /// Also write per-frame decoder internals next to the output.
    #[arg(long)]
    pub diagnostics: bool,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Estimated track CSV, or a directory of them.
    pub est: PathBuf,
    /// Reference track CSV, or a directory with the same file names.
    pub reference: PathBuf,
    /// Write the CSV report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MixNoiseArgs {
    pub clean: PathBuf,
    pub noise: PathBuf,
    #[arg(allow_negative_numbers = true)]
    pub snr_db: f64,
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    pub model: PathBuf,
}

/// Sidecar path for `--diagnostics`: `track.csv` becomes `track.diagnostics.csv`.
pub fn diagnostics_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.diagnostics.csv"))
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Extract(a) => cmd_extract(&a),
        Command::Evaluate(a) => cmd_evaluate(&a),
        Command::MixNoise(a) => cmd_mix_noise(&a),
        Command::InspectWeights(a) => cmd_inspect(&a),
    }
}

pub fn cmd_extract(a: &ExtractArgs) -> Result<()> {
    let buf = resample(&load_wav(&a.wav)?, PIPELINE_RATE)?;
    let labels = match (&a.oracle_truth, &a.model) {
        (Some(truth), _) => {
            let truth = read_ground_truth(truth)?;
            let geometry = FrameGeometry::for_rate(PIPELINE_RATE);
            oracle_frame_labels(&truth, geometry, geometry.frame_count(buf.len()))?
        }
        (None, Some(model)) => classify_track(&load_weights(model)?, &buf)?,
        (None, None) => unreachable!("clap requires --model or --oracle-truth"),
    };
    let decoded = decode_pitch_with_diagnostics(&buf, &labels)?;
    decoded.track.write_csv(&a.out)?;
    if a.diagnostics {
        decoded.write_diagnostics(diagnostics_path(&a.out))?;
    }
    let voiced = decoded.track.entries().iter().filter(|e| e.voiced).count();
    println!(
        "{}: {} frames, {} voiced -> {}",
        a.wav.display(),
        decoded.track.len(),
        voiced,
        a.out.display()
    );
    Ok(())
}

fn csv_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.is_file() && path.extension().is_some_and(|x| x.eq_ignore_ascii_case("csv")) {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Per-file reports for a file pair or a pair of directories matched by file name.
pub fn evaluate_paths(est: &Path, reference: &Path) -> Result<Vec<(String, EvalReport)>> {
    match (est.is_dir(), reference.is_dir()) {
        (false, false) => {
            let report = evaluate(&read_pitch_track(est)?, &read_pitch_track(reference)?)?;
            let name = est.file_name().unwrap_or_default().to_string_lossy().into_owned();
            Ok(vec![(name, report)])
        }
        (true, true) => {
            let files = csv_files(est)?;
            if files.is_empty() {
                return Err(Error::Empty("estimate directory"));
            }
            files
                .into_iter()
                .map(|path| {
                    let name = path.file_name().expect("listed file").to_string_lossy().into_owned();
                    let ref_path = reference.join(&name);
                    if !ref_path.is_file() {
                        return Err(Error::Unpaired(path));
                    }
                    let report = evaluate(&read_pitch_track(&path)?, &read_pitch_track(&ref_path)?)?;
                    Ok((name, report))
                })
                .collect()
        }
        _ => Err(Error::PathKinds(est.to_path_buf(), reference.to_path_buf())),
    }
}

pub fn cmd_evaluate(a: &EvaluateArgs) -> Result<()> {
    let reports = evaluate_paths(&a.est, &a.reference)?;
    let mut csv = format!("{REPORT_CSV_HEADER}\n");
    for (name, r) in &reports {
        csv.push_str(&r.csv_row(name));
        csv.push('\n');
    }
    if let [(_, r)] = reports.as_slice() {
        print!("{}", r.to_key_value());
    } else {
        let summary = summarize(&reports.iter().map(|(_, r)| *r).collect::<Vec<_>>());
        print!("{csv}");
        println!("{}", summary.csv_rows());
        csv.push_str(&summary.csv_rows());
        csv.push('\n');
    }
    if let Some(path) = &a.report {
        fs::write(path, csv).map_err(|e| Error::io(path, e))?;
    }
    Ok(())
}

pub fn cmd_mix_noise(a: &MixNoiseArgs) -> Result<()> {
    let mixed = mix_noise(&load_wav(&a.clean)?, &load_wav(&a.noise)?, a.snr_db)?;
    write_wav_f32(&mixed, &a.out)
}

pub fn cmd_inspect(a: &InspectArgs) -> Result<()> {
    let w = load_weights(&a.model)?;
    println!("input_lags={}", w.input_lags());
    println!("context={}", w.context());
    println!("channels={}", w.channels());
    println!("flatten_dim={}", w.flatten_dim());
    println!("parameters={}", w.parameter_count());
    for (name, t) in w.tensors() {
        let dims: Vec<String> = t.dims.iter().map(|d| d.to_string()).collect();
        println!("{name} [{}]", dims.join(", "));
    }
    Ok(())
}
