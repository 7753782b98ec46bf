use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use skinseg::{HueFormulaMode, TuningParams};
use skinseg_cli::commands::{self, DetectArgs, DetectOptions, EvalArgs, TrainArgs};
use skinseg_cli::synth::{Cluster, SynthSpec};
use skinseg_cli::{CliError, EXIT_USAGE};

/// Trainable skin detection with hue/chrominance interval statistics.
#[derive(Debug, Parser)]
#[command(name = "skinseg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Train a model from images containing only skin pixels.
    Train {
        #[arg(required = true, value_name = "SWATCH")]
        swatches: Vec<PathBuf>,
        #[arg(long, default_value = "skin")]
        label: String,
        #[arg(long, default_value = "compact")]
        hue_mode: HueFormulaMode,
        #[arg(long)]
        out: PathBuf,
    },
    /// Segment one image into a skin mask (PNG, skin = 255).
    Detect {
        image: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        tuning: TuningFlags,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score a model against a manifest of image/ground-truth pairs.
    Eval {
        manifest: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        tuning: TuningFlags,
    },
    /// Write a seeded synthetic dataset, its manifest and a skin swatch.
    Synth {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 64)]
        width: usize,
        #[arg(long, default_value_t = 64)]
        height: usize,
        /// R,G,B
        #[arg(long, default_value = "200,120,100", value_parser = parse_triple)]
        skin_center: [u8; 3],
        /// One value for all channels, or R,G,B
        #[arg(long, default_value = "10", value_parser = parse_triple)]
        skin_spread: [u8; 3],
        #[arg(long, default_value = "40,160,60", value_parser = parse_triple)]
        bg_center: [u8; 3],
        #[arg(long, default_value = "10", value_parser = parse_triple)]
        bg_spread: [u8; 3],
        /// Fraction of each image covered by the skin rectangle.
        #[arg(long, default_value_t = 0.25)]
        coverage: f64,
        #[arg(long, default_value_t = 64)]
        swatch_width: usize,
        #[arg(long, default_value_t = 64)]
        swatch_height: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct TuningFlags {
    /// Interval half-width multiplier applied to each channel variance.
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    /// Lower bound on every channel's half-width.
    #[arg(long, default_value_t = 0.0)]
    min_halfwidth: f64,
    /// Hue formula for conversion; defaults to the model's.
    #[arg(long)]
    hue_mode: Option<HueFormulaMode>,
    /// Permit a hue mode different from the one the model was trained with.
    #[arg(long)]
    allow_hue_mismatch: bool,
}

impl TuningFlags {
    fn options(&self) -> Result<DetectOptions, CliError> {
        Ok(DetectOptions {
            tuning: TuningParams::new(self.k, self.min_halfwidth)?,
            hue_mode: self.hue_mode,
            allow_hue_mismatch: self.allow_hue_mismatch,
        })
    }
}

fn parse_triple(s: &str) -> Result<[u8; 3], String> {
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<u8>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    match parts[..] {
        [v] => Ok([v; 3]),
        [r, g, b] => Ok([r, g, b]),
        _ => Err("expected one value or R,G,B".into()),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Train {
            swatches,
            label,
            hue_mode,
            out: model,
        } => {
            let args = TrainArgs {
                swatches,
                label,
                hue_mode,
                out: model,
            };
            commands::train(&args, &mut out)?;
        }
        Command::Detect {
            image,
            model,
            tuning,
            out: mask,
        } => {
            let args = DetectArgs {
                image,
                model,
                options: tuning.options()?,
                out: mask,
            };
            commands::detect(&args)?;
        }
        Command::Eval {
            manifest,
            model,
            tuning,
        } => {
            let args = EvalArgs {
                manifest,
                model,
                options: tuning.options()?,
            };
            commands::eval(&args, &mut out)?;
        }
        Command::Synth {
            seed,
            count,
            width,
            height,
            skin_center,
            skin_spread,
            bg_center,
            bg_spread,
            coverage,
            swatch_width,
            swatch_height,
            out: dir,
        } => {
            let spec = SynthSpec {
                seed,
                count,
                width,
                height,
                skin: Cluster {
                    center: skin_center,
                    spread: skin_spread,
                },
                background: Cluster {
                    center: bg_center,
                    spread: bg_spread,
                },
                coverage,
                swatch_width,
                swatch_height,
            };
            commands::synth(&spec, &dir, &mut out)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
