//! Seeded synthetic skin/background datasets with exact ground truth.
//!
//! Every image is a background cluster with one axis-aligned skin
//! rectangle. Pixels are drawn independently per channel as
//! `clamp(center + offset, 0, 255)`, with `offset` uniform over the
//! integers `-spread..=spread`.
//!
//! Randomness comes from xoshiro256++ seeded through SplitMix64 (the
//! generator state is four successive SplitMix64 outputs of `seed`). An
//! integer uniform on `0..n` is `(x · n) >> 64` for the next 64-bit output
//! `x`. Draw order:
//!
//! 1. for each image in index order: rectangle left column `0..=W−rw`,
//!    then top row `0..=H−rh`, then every pixel row-major, each pixel
//!    drawing R, G, B in that order;
//! 2. the swatch: every pixel row-major, R, G, B.
//!
//! The rectangle is `rw = round(W·√coverage)` by `rh = round(H·√coverage)`.
//!
//! Output tree:
//!
//! ```text
//! <out>/manifest.tsv
//! <out>/images/0000.png ...
//! <out>/masks/0000.png ...
//! <out>/swatch.png
//! ```

use std::path::{Path, PathBuf};

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use skinseg::{BinaryMask, RgbImage, RgbPixel};

use crate::error::{CliError, Result};
use crate::io::{write_mask_png, write_rgb_png};
use crate::manifest::format_manifest;

pub const MANIFEST_NAME: &str = "manifest.tsv";
pub const SWATCH_NAME: &str = "swatch.png";

/// A color cluster: per-channel center and half-range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cluster {
    pub center: [u8; 3],
    pub spread: [u8; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub seed: u64,
    pub count: usize,
    pub width: usize,
    pub height: usize,
    pub skin: Cluster,
    pub background: Cluster,
    /// Fraction of each image covered by the skin rectangle, in `[0, 1]`.
    pub coverage: f64,
    pub swatch_width: usize,
    pub swatch_height: usize,
}

impl Default for SynthSpec {
    fn default() -> Self {
        Self {
            seed: 42,
            count: 50,
            width: 64,
            height: 64,
            skin: Cluster {
                center: [200, 120, 100],
                spread: [10; 3],
            },
            background: Cluster {
                center: [40, 160, 60],
                spread: [10; 3],
            },
            coverage: 0.25,
            swatch_width: 64,
            swatch_height: 64,
        }
    }
}

impl SynthSpec {
    pub fn validate(&self) -> Result<()> {
        let usage = |m: &str| Err(CliError::Usage(m.to_owned()));
        if self.count == 0 {
            return usage("image count must be at least 1");
        }
        if self.width == 0 || self.height == 0 || self.swatch_width == 0 || self.swatch_height == 0
        {
            return usage("image and swatch dimensions must be positive");
        }
        if !(0.0..=1.0).contains(&self.coverage) {
            return usage("coverage must lie in [0, 1]");
        }
        Ok(())
    }

    /// Skin rectangle size `(width, height)`.
    pub fn rect_size(&self) -> (usize, usize) {
        let side = self.coverage.sqrt();
        let w = ((self.width as f64) * side).round() as usize;
        let h = ((self.height as f64) * side).round() as usize;
        (w.min(self.width), h.min(self.height))
    }
}

/// Axis-aligned skin region of one image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rect {
    pub left: usize,
    pub top: usize,
    pub width: usize,
    pub height: usize,
}

impl Rect {
    pub fn contains(&self, row: usize, col: usize) -> bool {
        (self.top..self.top + self.height).contains(&row)
            && (self.left..self.left + self.width).contains(&col)
    }
}

#[derive(Debug, Clone)]
pub struct Sample {
    pub image: RgbImage,
    pub truth: BinaryMask,
    pub rect: Rect,
}

#[derive(Debug, Clone)]
pub struct Dataset {
    pub samples: Vec<Sample>,
    pub swatch: RgbImage,
}

struct Draw(Xoshiro256PlusPlus);

impl Draw {
    /// Uniform on `0..n`, `n >= 1`.
    fn below(&mut self, n: u64) -> u64 {
        ((u128::from(self.0.next_u64()) * u128::from(n)) >> 64) as u64
    }

    fn pixel(&mut self, cluster: &Cluster) -> RgbPixel {
        let mut ch = [0u8; 3];
        for (out, (&c, &s)) in ch
            .iter_mut()
            .zip(cluster.center.iter().zip(&cluster.spread))
        {
            let offset = self.below(2 * u64::from(s) + 1) as i32 - i32::from(s);
            *out = (i32::from(c) + offset).clamp(0, 255) as u8;
        }
        RgbPixel::from(ch)
    }
}

/// Generates the dataset in memory. Identical specs give identical data.
pub fn generate(spec: &SynthSpec) -> Result<Dataset> {
    spec.validate()?;
    let mut rng = Draw(Xoshiro256PlusPlus::seed_from_u64(spec.seed));
    let (rw, rh) = spec.rect_size();

    let mut samples = Vec::with_capacity(spec.count);
    for _ in 0..spec.count {
        let left = rng.below((spec.width - rw + 1) as u64) as usize;
        let top = rng.below((spec.height - rh + 1) as u64) as usize;
        let rect = Rect {
            left,
            top,
            width: rw,
            height: rh,
        };
        let image = RgbImage::from_fn(spec.width, spec.height, |row, col| {
            if rect.contains(row, col) {
                rng.pixel(&spec.skin)
            } else {
                rng.pixel(&spec.background)
            }
        })?;
        let truth =
            BinaryMask::from_fn(spec.width, spec.height, |row, col| rect.contains(row, col))?;
        samples.push(Sample { image, truth, rect });
    }
    let swatch = RgbImage::from_fn(spec.swatch_width, spec.swatch_height, |_, _| {
        rng.pixel(&spec.skin)
    })?;
    Ok(Dataset { samples, swatch })
}

/// Paths of a dataset written by [`write_dataset`].
#[derive(Debug, Clone)]
pub struct SynthOutput {
    pub manifest: PathBuf,
    pub swatch: PathBuf,
    pub images: Vec<PathBuf>,
    pub masks: Vec<PathBuf>,
}

pub fn write_dataset(dataset: &Dataset, out: &Path) -> Result<SynthOutput> {
    let images_dir = out.join("images");
    let masks_dir = out.join("masks");
    for dir in [out, &images_dir, &masks_dir] {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }

    let names: Vec<(String, String)> = (0..dataset.samples.len())
        .map(|i| (format!("images/{i:04}.png"), format!("masks/{i:04}.png")))
        .collect();
    let mut images = Vec::new();
    let mut masks = Vec::new();
    for (sample, (image_name, mask_name)) in dataset.samples.iter().zip(&names) {
        let image_path = out.join(image_name);
        let mask_path = out.join(mask_name);
        write_rgb_png(&image_path, &sample.image)?;
        write_mask_png(&mask_path, &sample.truth)?;
        images.push(image_path);
        masks.push(mask_path);
    }

    let swatch = out.join(SWATCH_NAME);
    write_rgb_png(&swatch, &dataset.swatch)?;

    let manifest = out.join(MANIFEST_NAME);
    let text = format_manifest(names.iter().map(|(i, m)| (i.as_str(), m.as_str())));
    std::fs::write(&manifest, text).map_err(|e| CliError::io(&manifest, e))?;

    Ok(SynthOutput {
        manifest,
        swatch,
        images,
        masks,
    })
}
