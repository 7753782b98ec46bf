//! Pixel-accuracy scoring and dataset summaries.
//!
//! The detection rate is `100 · (N_SS + N_DD) / (n · m)`: skin pixels
//! predicted as skin plus non-skin pixels predicted as non-skin, over the
//! full pixel count. Dataset summaries report the mean rate and the sample
//! standard deviation (divisor `count − 1`) of the per-image rates.

use std::fmt;

use crate::{BinaryMask, Error, Result};

/// Percentage of pixels on which `predicted` and `truth` agree.
pub fn detection_rate(predicted: &BinaryMask, truth: &BinaryMask) -> Result<f64> {
    if !predicted.same_dims(truth) {
        return Err(Error::DimensionMismatch {
            left_width: predicted.width(),
            left_height: predicted.height(),
            right_width: truth.width(),
            right_height: truth.height(),
        });
    }
    let (mut skin_skin, mut non_non) = (0usize, 0usize);
    for (&p, &t) in predicted.bits().iter().zip(truth.bits()) {
        match (t, p) {
            (true, true) => skin_skin += 1,
            (false, false) => non_non += 1,
            _ => {}
        }
    }
    Ok(100.0 * (skin_skin + non_non) as f64 / truth.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    /// Sample standard deviation; 0 for a single rate.
    pub std: f64,
    pub count: usize,
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let noun = if self.count == 1 { "image" } else { "images" };
        write!(
            f,
            "{:.2} ± {:.2} ({} {noun})",
            self.mean, self.std, self.count
        )
    }
}

pub fn summarize(rates: &[f64]) -> Result<Summary> {
    if rates.is_empty() {
        return Err(Error::EmptyRates);
    }
    let n = rates.len() as f64;
    let mean = rates.iter().sum::<f64>() / n;
    let std = if rates.len() == 1 {
        0.0
    } else {
        (rates.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    };
    Ok(Summary {
        mean,
        std,
        count: rates.len(),
    })
}

/// Per-image rates in evaluation order plus their summary.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionReport {
    pub per_image: Vec<(String, f64)>,
    pub summary: Summary,
}

impl DetectionReport {
    pub fn new(per_image: Vec<(String, f64)>) -> Result<Self> {
        let rates: Vec<f64> = per_image.iter().map(|(_, r)| *r).collect();
        let summary = summarize(&rates)?;
        Ok(Self { per_image, summary })
    }

    pub fn image_count(&self) -> usize {
        self.per_image.len()
    }
}

impl fmt::Display for DetectionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (id, rate) in &self.per_image {
            writeln!(f, "{id}\t{rate:.4}")?;
        }
        writeln!(f, "{}", self.summary)
    }
}
