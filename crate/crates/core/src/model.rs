//! Training: pure-skin swatches → [`SkinFeature`], and its JSON model file.
//!
//! All swatch pixels are pooled into one population, visited row-major,
//! swatch by swatch in input order. Means use the divisor `N`, and so do the
//! variances (population variance). Sums are compensated, so reordering the
//! pixels changes the result by at most a few ulps. A channel that is
//! constant over the population gets exactly that constant as its mean and
//! exactly `0` as its variance.
//!
//! Model file layout (`format_version` 1):
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "label": "light",
//!   "hue_mode": "compact",
//!   "pixel_count": 1024,
//!   "mean": { "h": 45.4, "cb": 107.3, "cr": 164.5 },
//!   "var": { "h": 0.1, "cb": 11.0, "cr": 12.2 }
//! }
//! ```
//!
//! Numbers are written in shortest round-trip form, so a load reproduces
//! every statistic bit for bit.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::colorspace::{rgb_to_hybrid, HueFormulaMode, HybridPixel};
use crate::sum::CompensatedSum;
use crate::{Error, ModelError, Result, RgbImage};

pub const FORMAT_VERSION: u64 = 1;

/// Lower and upper bounds of `Cb`/`Cr` means accepted in a model.
pub const CHROMA_RANGE: (f64, f64) = (16.0, 240.0);

/// One value per classifier channel.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Channels {
    pub h: f64,
    pub cb: f64,
    pub cr: f64,
}

impl Channels {
    pub const fn new(h: f64, cb: f64, cr: f64) -> Self {
        Self { h, cb, cr }
    }

    fn iter(&self) -> [(&'static str, f64); 3] {
        [("h", self.h), ("cb", self.cb), ("cr", self.cr)]
    }
}

/// Trained skin statistics: per-channel means and population variances.
#[derive(Debug, Clone, PartialEq)]
pub struct SkinFeature {
    label: String,
    hue_mode: HueFormulaMode,
    pixel_count: u64,
    mean: Channels,
    var: Channels,
}

impl SkinFeature {
    pub fn new(
        label: impl Into<String>,
        hue_mode: HueFormulaMode,
        pixel_count: u64,
        mean: Channels,
        var: Channels,
    ) -> Result<Self, ModelError> {
        let sf = Self {
            label: label.into(),
            hue_mode,
            pixel_count,
            mean,
            var,
        };
        sf.validate()?;
        Ok(sf)
    }

    fn validate(&self) -> Result<(), ModelError> {
        let bad = |msg: String| Err(ModelError::InvariantViolated(msg));
        if self.pixel_count == 0 {
            return bad("pixel_count must be at least 1".into());
        }
        for (name, v) in self.var.iter() {
            if !v.is_finite() || v < 0.0 {
                return bad(format!("var.{name} = {v} must be finite and >= 0"));
            }
        }
        for (name, m) in self.mean.iter() {
            if !m.is_finite() {
                return bad(format!("mean.{name} = {m} must be finite"));
            }
        }
        let hue_max = self.hue_mode.hue_max();
        if !(0.0..=hue_max).contains(&self.mean.h) {
            return bad(format!(
                "mean.h = {} outside [0, {hue_max}] for hue mode {}",
                self.mean.h, self.hue_mode
            ));
        }
        let (lo, hi) = CHROMA_RANGE;
        for (name, m) in [("cb", self.mean.cb), ("cr", self.mean.cr)] {
            if !(lo..=hi).contains(&m) {
                return bad(format!("mean.{name} = {m} outside [{lo}, {hi}]"));
            }
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn hue_mode(&self) -> HueFormulaMode {
        self.hue_mode
    }

    pub fn pixel_count(&self) -> u64 {
        self.pixel_count
    }

    pub fn mean(&self) -> Channels {
        self.mean
    }

    pub fn var(&self) -> Channels {
        self.var
    }

    /// The six-element feature vector `(mean_h, mean_cb, mean_cr, var_h, var_cb, var_cr)`.
    pub fn as_vector(&self) -> [f64; 6] {
        [
            self.mean.h,
            self.mean.cb,
            self.mean.cr,
            self.var.h,
            self.var.cb,
            self.var.cr,
        ]
    }

    pub fn to_json(&self) -> String {
        let file = ModelFile {
            format_version: FORMAT_VERSION,
            label: &self.label,
            hue_mode: self.hue_mode,
            pixel_count: self.pixel_count,
            mean: self.mean,
            var: self.var,
        };
        let mut s = serde_json::to_string_pretty(&file).expect("model serialization cannot fail");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let raw: RawModelFile = serde_json::from_str(text)?;
        let version = raw
            .format_version
            .ok_or(ModelError::MissingField("format_version"))?;
        if version != FORMAT_VERSION {
            return Err(ModelError::UnsupportedVersion(version));
        }
        let label = raw.label.ok_or(ModelError::MissingField("label"))?;
        let hue_mode = raw.hue_mode.ok_or(ModelError::MissingField("hue_mode"))?;
        let pixel_count = raw
            .pixel_count
            .ok_or(ModelError::MissingField("pixel_count"))?;
        let mean = raw.mean.ok_or(ModelError::MissingField("mean"))?;
        let var = raw.var.ok_or(ModelError::MissingField("var"))?;
        let mean = Channels {
            h: mean.h.ok_or(ModelError::MissingField("mean.h"))?,
            cb: mean.cb.ok_or(ModelError::MissingField("mean.cb"))?,
            cr: mean.cr.ok_or(ModelError::MissingField("mean.cr"))?,
        };
        let var = Channels {
            h: var.h.ok_or(ModelError::MissingField("var.h"))?,
            cb: var.cb.ok_or(ModelError::MissingField("var.cb"))?,
            cr: var.cr.ok_or(ModelError::MissingField("var.cr"))?,
        };
        Self::new(label, hue_mode, pixel_count, mean, var)
    }
}

#[derive(Serialize)]
struct ModelFile<'a> {
    format_version: u64,
    label: &'a str,
    hue_mode: HueFormulaMode,
    pixel_count: u64,
    mean: Channels,
    var: Channels,
}

#[derive(Deserialize)]
struct RawModelFile {
    format_version: Option<u64>,
    label: Option<String>,
    hue_mode: Option<HueFormulaMode>,
    pixel_count: Option<u64>,
    mean: Option<RawChannels>,
    var: Option<RawChannels>,
}

#[derive(Deserialize)]
struct RawChannels {
    h: Option<f64>,
    cb: Option<f64>,
    cr: Option<f64>,
}

struct ChannelStats {
    min: f64,
    max: f64,
    sum: CompensatedSum,
}

impl ChannelStats {
    fn new() -> Self {
        Self {
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
            sum: CompensatedSum::default(),
        }
    }

    fn push(&mut self, x: f64) {
        self.min = self.min.min(x);
        self.max = self.max.max(x);
        self.sum.add(x);
    }

    fn mean(&self, n: f64) -> f64 {
        if self.min == self.max {
            self.min
        } else {
            (self.sum.value() / n).clamp(self.min, self.max)
        }
    }

    fn constant(&self) -> bool {
        self.min == self.max
    }
}

/// Trains a model from pure-skin swatch images.
///
/// Every pixel of every swatch is treated as skin. Fails with
/// [`Error::EmptySwatchSet`] when `swatches` is empty.
pub fn extract_features(
    swatches: &[RgbImage],
    label: &str,
    mode: HueFormulaMode,
) -> Result<SkinFeature> {
    if swatches.is_empty() {
        return Err(Error::EmptySwatchSet);
    }
    let population: Vec<_> = swatches
        .iter()
        .flat_map(|img| img.pixels().iter().map(move |&p| rgb_to_hybrid(p, mode)))
        .collect();
    features_from_samples(&population, label, mode)
}

/// Statistics of already-converted channel samples, in the given order.
pub fn features_from_samples(
    population: &[HybridPixel],
    label: &str,
    mode: HueFormulaMode,
) -> Result<SkinFeature> {
    if population.is_empty() {
        return Err(Error::EmptySwatchSet);
    }
    let n = population.len() as f64;

    let (mut h, mut cb, mut cr) = (
        ChannelStats::new(),
        ChannelStats::new(),
        ChannelStats::new(),
    );
    for p in population {
        h.push(p.h);
        cb.push(p.cb);
        cr.push(p.cr);
    }
    let mean = Channels::new(h.mean(n), cb.mean(n), cr.mean(n));

    let (mut sh, mut scb, mut scr) = (
        CompensatedSum::default(),
        CompensatedSum::default(),
        CompensatedSum::default(),
    );
    for p in population {
        sh.add((p.h - mean.h).powi(2));
        scb.add((p.cb - mean.cb).powi(2));
        scr.add((p.cr - mean.cr).powi(2));
    }
    let variance = |stats: &ChannelStats, sq: CompensatedSum| {
        if stats.constant() {
            0.0
        } else {
            sq.value() / n
        }
    };
    let var = Channels::new(variance(&h, sh), variance(&cb, scb), variance(&cr, scr));

    Ok(SkinFeature::new(
        label,
        mode,
        population.len() as u64,
        mean,
        var,
    )?)
}

pub fn save_model(sf: &SkinFeature, path: impl AsRef<Path>) -> Result<(), ModelError> {
    let path = path.as_ref();
    fs::write(path, sf.to_json()).map_err(|source| ModelError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn load_model(path: impl AsRef<Path>) -> Result<SkinFeature, ModelError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| ModelError::Io {
        path: path.to_owned(),
        source,
    })?;
    SkinFeature::from_json(&text)
}
