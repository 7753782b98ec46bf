//! Trainable skin detection in a hybrid hue/chrominance color space.
//!
//! Training reduces a set of pure-skin swatches to six numbers: the mean and
//! population variance of the HSV hue channel and the YCbCr `Cb`/`Cr`
//! channels ([`SkinFeature`]). Detection marks a pixel as skin when each of
//! its three channel values lies inside `mean ± k·var` for that channel
//! ([`segment_image`]). [`detection_rate`] scores a mask against ground
//! truth as plain pixel accuracy.
//!
//! ```
//! use skinseg::{extract_features, segment_image, HueFormulaMode, RgbImage, RgbPixel, TuningParams};
//!
//! let swatch = RgbImage::filled(4, 4, RgbPixel::new(200, 120, 100)).unwrap();
//! let model = extract_features(&[swatch.clone()], "demo", HueFormulaMode::Compact).unwrap();
//! let mask = segment_image(&swatch, &model, TuningParams::default());
//! assert_eq!(mask.count_skin(), 16);
//! ```

pub mod colorspace;
mod error;
pub mod image;
pub mod metrics;
pub mod model;
pub mod segmenter;
mod sum;

pub use colorspace::{
    convert_image, convert_image_par, rgb_to_hsv, rgb_to_hybrid, rgb_to_ycbcr, HsvPixel,
    HueFormulaMode, HybridPixel, HybridPlanes, YCbCrPixel,
};
pub use error::{Error, ModelError, Result};
pub use image::{BinaryMask, RgbImage, RgbPixel};
pub use metrics::{detection_rate, summarize, DetectionReport, Summary};
pub use model::{
    extract_features, features_from_samples, load_model, save_model, Channels, SkinFeature,
};
pub use segmenter::{classify_pixel, segment_image, HueOverride, Segmenter, TuningParams};
