//! Raster containers: 8-bit RGB input images and binary skin masks.
//!
//! Both are stored row-major; `(row, col)` addresses the pixel in row `row`
//! (0-based, top to bottom) and column `col` (0-based, left to right).

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RgbPixel {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl RgbPixel {
    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        Self { r, g, b }
    }
}

impl From<[u8; 3]> for RgbPixel {
    fn from([r, g, b]: [u8; 3]) -> Self {
        Self { r, g, b }
    }
}

/// A non-empty rectangular raster of RGB pixels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    width: usize,
    height: usize,
    pixels: Vec<RgbPixel>,
}

fn check_dims(width: usize, height: usize) -> Result<usize> {
    if width == 0 || height == 0 {
        return Err(Error::EmptyImage { width, height });
    }
    width
        .checked_mul(height)
        .ok_or(Error::EmptyImage { width, height })
}

impl RgbImage {
    pub fn new(width: usize, height: usize, pixels: Vec<RgbPixel>) -> Result<Self> {
        let expected = check_dims(width, height)?;
        if pixels.len() != expected {
            return Err(Error::PixelCount {
                expected,
                actual: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// Builds an image from interleaved `RGBRGB...` bytes.
    pub fn from_raw(width: usize, height: usize, data: &[u8]) -> Result<Self> {
        let expected = check_dims(width, height)?;
        if data.len() != expected * 3 {
            return Err(Error::PixelCount {
                expected,
                actual: data.len() / 3,
            });
        }
        let pixels = data
            .chunks_exact(3)
            .map(|c| RgbPixel::new(c[0], c[1], c[2]))
            .collect();
        Self::new(width, height, pixels)
    }

    pub fn filled(width: usize, height: usize, pixel: RgbPixel) -> Result<Self> {
        let n = check_dims(width, height)?;
        Self::new(width, height, vec![pixel; n])
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> RgbPixel,
    ) -> Result<Self> {
        let n = check_dims(width, height)?;
        let mut pixels = Vec::with_capacity(n);
        for row in 0..height {
            for col in 0..width {
                pixels.push(f(row, col));
            }
        }
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    /// Always false; images are non-empty by construction.
    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[RgbPixel] {
        &self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> RgbPixel {
        self.pixels[row * self.width + col]
    }

    pub fn set(&mut self, row: usize, col: usize, pixel: RgbPixel) {
        self.pixels[row * self.width + col] = pixel;
    }

    pub fn rows(&self) -> std::slice::ChunksExact<'_, RgbPixel> {
        self.pixels.chunks_exact(self.width)
    }

    /// Interleaved `RGBRGB...` bytes, row-major.
    pub fn to_raw(&self) -> Vec<u8> {
        self.pixels.iter().flat_map(|p| [p.r, p.g, p.b]).collect()
    }
}

/// Per-pixel skin (`true`) / non-skin (`false`) labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl BinaryMask {
    pub fn new(width: usize, height: usize, bits: Vec<bool>) -> Result<Self> {
        let expected = check_dims(width, height)?;
        if bits.len() != expected {
            return Err(Error::PixelCount {
                expected,
                actual: bits.len(),
            });
        }
        Ok(Self {
            width,
            height,
            bits,
        })
    }

    pub fn filled(width: usize, height: usize, skin: bool) -> Result<Self> {
        let n = check_dims(width, height)?;
        Self::new(width, height, vec![skin; n])
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self> {
        let n = check_dims(width, height)?;
        let mut bits = Vec::with_capacity(n);
        for row in 0..height {
            for col in 0..width {
                bits.push(f(row, col));
            }
        }
        Self::new(width, height, bits)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.width + col]
    }

    pub fn count_skin(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn complement(&self) -> Self {
        Self {
            width: self.width,
            height: self.height,
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    pub fn same_dims(&self, other: &Self) -> bool {
        self.width == other.width && self.height == other.height
    }

    /// True when every skin pixel of `self` is also skin in `other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.same_dims(other) && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    /// 8-bit grayscale rendering: skin = 255, non-skin = 0.
    pub fn to_gray_bytes(&self) -> Vec<u8> {
        self.bits.iter().map(|&b| if b { 255 } else { 0 }).collect()
    }

    /// Reads a grayscale raster with the rule `value >= 128` → skin.
    pub fn from_gray_bytes(width: usize, height: usize, data: &[u8]) -> Result<Self> {
        Self::new(width, height, data.iter().map(|&v| v >= 128).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_dimensions() {
        assert!(matches!(
            RgbImage::new(0, 3, vec![]),
            Err(Error::EmptyImage { .. })
        ));
        assert!(matches!(
            BinaryMask::filled(3, 0, false),
            Err(Error::EmptyImage { .. })
        ));
    }

    #[test]
    fn rejects_wrong_pixel_count() {
        let err = RgbImage::new(2, 2, vec![RgbPixel::default(); 3]).unwrap_err();
        assert!(matches!(
            err,
            Error::PixelCount {
                expected: 4,
                actual: 3
            }
        ));
    }

    #[test]
    fn row_major_addressing() {
        let img = RgbImage::from_fn(3, 2, |r, c| RgbPixel::new(r as u8, c as u8, 0)).unwrap();
        assert_eq!(img.get(1, 2), RgbPixel::new(1, 2, 0));
        assert_eq!(img.pixels()[5], RgbPixel::new(1, 2, 0));
        assert_eq!(RgbImage::from_raw(3, 2, &img.to_raw()).unwrap(), img);
    }

    #[test]
    fn gray_threshold_at_128() {
        let m = BinaryMask::from_gray_bytes(4, 1, &[0, 127, 128, 255]).unwrap();
        assert_eq!(m.bits(), &[false, false, true, true]);
        assert_eq!(m.to_gray_bytes(), vec![0, 0, 255, 255]);
    }

    #[test]
    fn subset_and_complement() {
        let a = BinaryMask::new(2, 1, vec![true, false]).unwrap();
        let all = BinaryMask::filled(2, 1, true).unwrap();
        assert!(a.is_subset_of(&all));
        assert!(!all.is_subset_of(&a));
        assert_eq!(a.complement().bits(), &[false, true]);
    }
}
