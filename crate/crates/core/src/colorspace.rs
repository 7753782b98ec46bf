//! RGB → HSV and RGB → YCbCr conversion.
//!
//! Hue is computed with the arccos form of the HSV transform and scaled to
//! degrees with the fixed factor [`RAD_TO_DEG`] (57.32, not `180/π`). Two
//! hue variants exist, selected by [`HueFormulaMode`]:
//!
//! * `Compact`: `acos(0.5·(2R−G−B) / √((R−G)² + (R−B)²)) · 57.32`, no wrap.
//!   Pure green and pure blue both map to ≈120.05 under this form.
//! * `Standard`: the textbook discriminant `(R−G)² + (R−B)(G−B)` with
//!   `H = 360 − θ` when `B > G`.
//!
//! Achromatic pixels (`R = G = B`) get `H = 0`, and black gets `S = 0`.
//! YCbCr is the full-precision affine map with offset `(16, 128, 128)`;
//! nothing is rounded or clamped.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{RgbImage, RgbPixel};

/// Radian to degree factor used by the hue formula.
pub const RAD_TO_DEG: f64 = 57.32;

/// Largest hue either formula can produce, `π · 57.32`, in `Compact` mode.
pub const COMPACT_HUE_MAX: f64 = std::f64::consts::PI * RAD_TO_DEG;

/// Largest hue in `Standard` mode (the `360 − θ` wrap).
pub const STANDARD_HUE_MAX: f64 = 360.0;

const YCBCR_MATRIX: [[f64; 3]; 3] = [
    [0.2568, 0.5041, 0.0980],
    [-0.1482, -0.2910, 0.4392],
    [0.4392, -0.3678, -0.0714],
];
const YCBCR_OFFSET: [f64; 3] = [16.0, 128.0, 128.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HueFormulaMode {
    #[default]
    Compact,
    Standard,
}

impl HueFormulaMode {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Compact => "compact",
            Self::Standard => "standard",
        }
    }

    /// Upper bound of the hue range this mode produces.
    pub fn hue_max(self) -> f64 {
        match self {
            Self::Compact => COMPACT_HUE_MAX,
            Self::Standard => STANDARD_HUE_MAX,
        }
    }
}

impl fmt::Display for HueFormulaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for HueFormulaMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "compact" => Ok(Self::Compact),
            "standard" => Ok(Self::Standard),
            other => Err(format!(
                "unknown hue mode `{other}` (expected `compact` or `standard`)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsvPixel {
    /// Degrees.
    pub h: f64,
    pub s: f64,
    pub v: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YCbCrPixel {
    pub y: f64,
    pub cb: f64,
    pub cr: f64,
}

/// The three channels the classifier reads: hue, `Cb` and `Cr`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HybridPixel {
    pub h: f64,
    pub cb: f64,
    pub cr: f64,
}

fn hue(r: f64, g: f64, b: f64, mode: HueFormulaMode) -> f64 {
    let rg = r - g;
    let rb = r - b;
    let discriminant = match mode {
        HueFormulaMode::Compact => rg * rg + rb * rb,
        HueFormulaMode::Standard => rg * rg + rb * (g - b),
    };
    if discriminant <= 0.0 {
        return 0.0;
    }
    let cos = (0.5 * (rg + rb) / discriminant.sqrt()).clamp(-1.0, 1.0);
    let theta = cos.acos() * RAD_TO_DEG;
    match mode {
        HueFormulaMode::Standard if b > g => STANDARD_HUE_MAX - theta,
        _ => theta,
    }
}

pub fn rgb_to_hsv(p: RgbPixel, mode: HueFormulaMode) -> HsvPixel {
    let (r, g, b) = (f64::from(p.r), f64::from(p.g), f64::from(p.b));
    let max = p.r.max(p.g).max(p.b);
    let min = p.r.min(p.g).min(p.b);
    let s = if max == 0 {
        0.0
    } else {
        f64::from(max - min) / f64::from(max)
    };
    HsvPixel {
        h: hue(r, g, b, mode),
        s,
        v: f64::from(max) / 255.0,
    }
}

pub fn rgb_to_ycbcr(p: RgbPixel) -> YCbCrPixel {
    let rgb = [f64::from(p.r), f64::from(p.g), f64::from(p.b)];
    let row = |i: usize| {
        let m = &YCBCR_MATRIX[i];
        m[0] * rgb[0] + m[1] * rgb[1] + m[2] * rgb[2] + YCBCR_OFFSET[i]
    };
    YCbCrPixel {
        y: row(0),
        cb: row(1),
        cr: row(2),
    }
}

pub fn rgb_to_hybrid(p: RgbPixel, mode: HueFormulaMode) -> HybridPixel {
    let ycc = rgb_to_ycbcr(p);
    HybridPixel {
        h: rgb_to_hsv(p, mode).h,
        cb: ycc.cb,
        cr: ycc.cr,
    }
}

/// Hue, `Cb` and `Cr` planes of one image, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridPlanes {
    pub width: usize,
    pub height: usize,
    pub h: Vec<f64>,
    pub cb: Vec<f64>,
    pub cr: Vec<f64>,
}

impl HybridPlanes {
    pub fn get(&self, row: usize, col: usize) -> HybridPixel {
        let i = row * self.width + col;
        HybridPixel {
            h: self.h[i],
            cb: self.cb[i],
            cr: self.cr[i],
        }
    }

    fn from_pixels(width: usize, height: usize, px: Vec<HybridPixel>) -> Self {
        Self {
            width,
            height,
            h: px.iter().map(|p| p.h).collect(),
            cb: px.iter().map(|p| p.cb).collect(),
            cr: px.iter().map(|p| p.cr).collect(),
        }
    }
}

pub fn convert_image(img: &RgbImage, mode: HueFormulaMode) -> HybridPlanes {
    let px = img
        .pixels()
        .iter()
        .map(|&p| rgb_to_hybrid(p, mode))
        .collect();
    HybridPlanes::from_pixels(img.width(), img.height(), px)
}

/// Row-parallel [`convert_image`]; the result is bit-identical.
pub fn convert_image_par(img: &RgbImage, mode: HueFormulaMode) -> HybridPlanes {
    let px = img
        .pixels()
        .par_iter()
        .with_min_len(img.width())
        .map(|&p| rgb_to_hybrid(p, mode))
        .collect();
    HybridPlanes::from_pixels(img.width(), img.height(), px)
}
