//! The `train`, `detect`, `eval` and `synth` subcommands.
//!
//! Each command writes its data output to the supplied writer and returns
//! errors to the caller; the binary maps them to exit codes and stderr.

use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use skinseg::{
    detection_rate, extract_features, load_model, save_model, BinaryMask, DetectionReport,
    HueFormulaMode, HueOverride, Segmenter, SkinFeature, TuningParams,
};

use crate::error::{CliError, Result};
use crate::io::{read_mask, read_rgb_image, write_mask_png};
use crate::manifest::read_manifest;
use crate::synth::{generate, write_dataset, SynthOutput, SynthSpec};

#[derive(Debug, Clone)]
pub struct TrainArgs {
    pub swatches: Vec<PathBuf>,
    pub label: String,
    pub hue_mode: HueFormulaMode,
    pub out: PathBuf,
}

/// How a trained model is applied at detection time.
#[derive(Debug, Clone, Copy, Default)]
pub struct DetectOptions {
    pub tuning: TuningParams,
    /// `None` uses the model's own hue mode.
    pub hue_mode: Option<HueFormulaMode>,
    pub allow_hue_mismatch: bool,
}

impl DetectOptions {
    pub fn segmenter(&self, sf: &SkinFeature) -> Result<Segmenter> {
        let policy = if self.allow_hue_mismatch {
            HueOverride::Allow
        } else {
            HueOverride::Forbid
        };
        let mode = self.hue_mode.unwrap_or(sf.hue_mode());
        Ok(Segmenter::with_hue_mode(sf, self.tuning, mode, policy)?)
    }
}

#[derive(Debug, Clone)]
pub struct DetectArgs {
    pub image: PathBuf,
    pub model: PathBuf,
    pub options: DetectOptions,
    pub out: PathBuf,
}

#[derive(Debug, Clone)]
pub struct EvalArgs {
    pub manifest: PathBuf,
    pub model: PathBuf,
    pub options: DetectOptions,
}

fn load(path: &Path) -> Result<SkinFeature> {
    load_model(path).map_err(|source| CliError::Model {
        path: path.to_owned(),
        source,
    })
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io("<stdout>", e))
}

pub fn train(args: &TrainArgs, out: &mut dyn Write) -> Result<SkinFeature> {
    if args.swatches.is_empty() {
        return Err(CliError::Usage(
            "train needs at least one swatch image".into(),
        ));
    }
    let mut images = Vec::with_capacity(args.swatches.len());
    let mut failures = Vec::new();
    for path in &args.swatches {
        match read_rgb_image(path) {
            Ok(img) => images.push(img),
            Err(e) => failures.push(e.to_string()),
        }
    }
    if !failures.is_empty() {
        return Err(CliError::Inputs(failures));
    }

    let sf = extract_features(&images, &args.label, args.hue_mode)?;
    save_model(&sf, &args.out).map_err(|source| CliError::Model {
        path: args.out.clone(),
        source,
    })?;

    let (m, v) = (sf.mean(), sf.var());
    emit(
        out,
        &format!(
            "label\t{}\nhue_mode\t{}\npixel_count\t{}\n\
             mean_h\t{}\nmean_cb\t{}\nmean_cr\t{}\nvar_h\t{}\nvar_cb\t{}\nvar_cr\t{}\n",
            sf.label(),
            sf.hue_mode(),
            sf.pixel_count(),
            m.h,
            m.cb,
            m.cr,
            v.h,
            v.cb,
            v.cr
        ),
    )?;
    Ok(sf)
}

pub fn detect(args: &DetectArgs) -> Result<BinaryMask> {
    let sf = load(&args.model)?;
    let segmenter = args.options.segmenter(&sf)?;
    let image = read_rgb_image(&args.image)?;
    let mask = segmenter.segment(&image);
    write_mask_png(&args.out, &mask)?;
    Ok(mask)
}

pub fn eval(args: &EvalArgs, out: &mut dyn Write) -> Result<DetectionReport> {
    let sf = load(&args.model)?;
    let segmenter = args.options.segmenter(&sf)?;
    let entries = read_manifest(&args.manifest)?;

    let rates: Vec<Result<(String, f64)>> = entries
        .par_iter()
        .map(|entry| {
            let score = || -> Result<f64> {
                let image = read_rgb_image(&entry.image)?;
                let truth = read_mask(&entry.mask)?;
                Ok(detection_rate(&segmenter.segment(&image), &truth)?)
            };
            score()
                .map(|rate| (entry.id.clone(), rate))
                .map_err(|e| CliError::Pair {
                    image: entry.image.clone(),
                    mask: entry.mask.clone(),
                    source: Box::new(e),
                })
        })
        .collect();
    let per_image = rates.into_iter().collect::<Result<Vec<_>>>()?;

    let report = DetectionReport::new(per_image)?;
    emit(out, &report.to_string())?;
    Ok(report)
}

pub fn synth(spec: &SynthSpec, out_dir: &Path, out: &mut dyn Write) -> Result<SynthOutput> {
    let dataset = generate(spec)?;
    let written = write_dataset(&dataset, out_dir)?;
    emit(
        out,
        &format!(
            "wrote {} images, {} masks, {} and {}\n",
            written.images.len(),
            written.masks.len(),
            written.swatch.display(),
            written.manifest.display()
        ),
    )?;
    Ok(written)
}
