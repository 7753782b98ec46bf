//! Fixtures shared by the pipeline benchmarks.

use skinseg::{extract_features, HueFormulaMode, RgbImage, RgbPixel, SkinFeature};

/// A VGA frame with a smooth color sweep plus a hashed texture, so every
/// branch of the hue formula is exercised.
pub fn vga_frame() -> RgbImage {
    RgbImage::from_fn(640, 480, |row, col| {
        let hash = (row as u32).wrapping_mul(73_856_093) ^ (col as u32).wrapping_mul(19_349_663);
        RgbPixel::new(
            (col * 255 / 639) as u8,
            (row * 255 / 479) as u8,
            (hash >> 24) as u8,
        )
    })
    .expect("non-empty")
}

pub fn skin_swatch() -> RgbImage {
    RgbImage::from_fn(64, 64, |row, col| {
        RgbPixel::new(
            190 + (row % 21) as u8,
            110 + (col % 21) as u8,
            90 + ((row + col) % 21) as u8,
        )
    })
    .expect("non-empty")
}

pub fn trained_model(mode: HueFormulaMode) -> SkinFeature {
    extract_features(&[skin_swatch()], "bench", mode).expect("non-empty swatch")
}
