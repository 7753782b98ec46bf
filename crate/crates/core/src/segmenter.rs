//! Per-pixel interval classification.
//!
//! A pixel is skin when its hue, `Cb` and `Cr` each fall inside the closed
//! interval `[mean − w, mean + w]` of the corresponding channel, where
//! `w = max(k · var, min_halfwidth)`. With the defaults (`k = 1`,
//! `min_halfwidth = 0`) the half-width is the trained variance itself.
//!
//! A channel trained with zero variance only admits exact matches unless a
//! positive `min_halfwidth` is given.

use rayon::prelude::*;

use crate::colorspace::{rgb_to_hsv, rgb_to_ycbcr, HueFormulaMode, HybridPixel};
use crate::model::SkinFeature;
use crate::{BinaryMask, Error, Result, RgbImage, RgbPixel};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TuningParams {
    k: f64,
    min_halfwidth: f64,
}

impl Default for TuningParams {
    fn default() -> Self {
        Self {
            k: 1.0,
            min_halfwidth: 0.0,
        }
    }
}

impl TuningParams {
    pub fn new(k: f64, min_halfwidth: f64) -> Result<Self> {
        for (name, value) in [("k", k), ("min_halfwidth", min_halfwidth)] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidTuning { name, value });
            }
        }
        Ok(Self { k, min_halfwidth })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn min_halfwidth(&self) -> f64 {
        self.min_halfwidth
    }

    fn halfwidth(&self, var: f64) -> f64 {
        (self.k * var).max(self.min_halfwidth)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    fn new(mean: f64, halfwidth: f64) -> Self {
        Self {
            lo: mean - halfwidth,
            hi: mean + halfwidth,
        }
    }

    #[inline]
    fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// What to do when the requested hue mode differs from the model's.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HueOverride {
    #[default]
    Forbid,
    Allow,
}

/// A model and tuning resolved into three closed intervals, ready to apply.
#[derive(Debug, Clone)]
pub struct Segmenter {
    mode: HueFormulaMode,
    h: Interval,
    cb: Interval,
    cr: Interval,
}

impl Segmenter {
    /// Uses the hue mode the model was trained with.
    pub fn new(sf: &SkinFeature, params: TuningParams) -> Self {
        let (mean, var) = (sf.mean(), sf.var());
        Self {
            mode: sf.hue_mode(),
            h: Interval::new(mean.h, params.halfwidth(var.h)),
            cb: Interval::new(mean.cb, params.halfwidth(var.cb)),
            cr: Interval::new(mean.cr, params.halfwidth(var.cr)),
        }
    }

    /// Converts with `mode` instead of the model's own hue mode. A differing
    /// mode is a configuration error unless `policy` is [`HueOverride::Allow`].
    pub fn with_hue_mode(
        sf: &SkinFeature,
        params: TuningParams,
        mode: HueFormulaMode,
        policy: HueOverride,
    ) -> Result<Self> {
        if mode != sf.hue_mode() && policy == HueOverride::Forbid {
            return Err(Error::HueModeMismatch {
                model: sf.hue_mode(),
                requested: mode,
            });
        }
        Ok(Self {
            mode,
            ..Self::new(sf, params)
        })
    }

    pub fn hue_mode(&self) -> HueFormulaMode {
        self.mode
    }

    #[inline]
    pub fn classify(&self, p: HybridPixel) -> bool {
        self.h.contains(p.h) && self.cb.contains(p.cb) && self.cr.contains(p.cr)
    }

    /// Same result as `classify(rgb_to_hybrid(p, mode))`; hue is only
    /// computed once both chroma tests pass.
    #[inline]
    pub fn classify_rgb(&self, p: RgbPixel) -> bool {
        let ycc = rgb_to_ycbcr(p);
        self.cb.contains(ycc.cb)
            && self.cr.contains(ycc.cr)
            && self.h.contains(rgb_to_hsv(p, self.mode).h)
    }

    pub fn segment(&self, img: &RgbImage) -> BinaryMask {
        let bits = img.pixels().iter().map(|&p| self.classify_rgb(p)).collect();
        BinaryMask::new(img.width(), img.height(), bits)
            .expect("dimensions come from a valid image")
    }

    /// Row-parallel [`Segmenter::segment`]; the result is bit-identical.
    pub fn segment_par(&self, img: &RgbImage) -> BinaryMask {
        let bits = img
            .pixels()
            .par_iter()
            .with_min_len(img.width())
            .map(|&p| self.classify_rgb(p))
            .collect();
        BinaryMask::new(img.width(), img.height(), bits)
            .expect("dimensions come from a valid image")
    }
}

pub fn classify_pixel(sf: &SkinFeature, h: f64, cb: f64, cr: f64, params: TuningParams) -> bool {
    Segmenter::new(sf, params).classify(HybridPixel { h, cb, cr })
}

pub fn segment_image(img: &RgbImage, sf: &SkinFeature, params: TuningParams) -> BinaryMask {
    Segmenter::new(sf, params).segment(img)
}
