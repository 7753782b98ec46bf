//! Image and mask files.
//!
//! Inputs may be PNG (8-bit RGB or RGBA, alpha dropped) or binary PPM
//! (`P6`, maxval 255); the format is sniffed from the file contents. Masks
//! are written as 8-bit grayscale PNG holding only 0 and 255, and read back
//! with the rule `value >= 128` → skin.

use std::io::Cursor;
use std::path::Path;

use image::{DynamicImage, ImageFormat, ImageReader};
use skinseg::{BinaryMask, RgbImage};

use crate::error::{CliError, Result};

fn decode(path: &Path) -> Result<DynamicImage> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    let image_err = |source| CliError::Image {
        path: path.to_owned(),
        source,
    };
    ImageReader::new(Cursor::new(bytes))
        .with_guessed_format()
        .map_err(|e| CliError::io(path, e))?
        .decode()
        .map_err(image_err)
}

pub fn read_rgb_image(path: impl AsRef<Path>) -> Result<RgbImage> {
    let path = path.as_ref();
    let rgb = decode(path)?.into_rgb8();
    let (w, h) = rgb.dimensions();
    Ok(RgbImage::from_raw(w as usize, h as usize, rgb.as_raw())?)
}

pub fn read_mask(path: impl AsRef<Path>) -> Result<BinaryMask> {
    let path = path.as_ref();
    let gray = decode(path)?.into_luma8();
    let (w, h) = gray.dimensions();
    Ok(BinaryMask::from_gray_bytes(
        w as usize,
        h as usize,
        gray.as_raw(),
    )?)
}

fn save(path: &Path, img: DynamicImage, format: ImageFormat) -> Result<()> {
    img.save_with_format(path, format)
        .map_err(|source| CliError::Image {
            path: path.to_owned(),
            source,
        })
}

pub fn write_mask_png(path: impl AsRef<Path>, mask: &BinaryMask) -> Result<()> {
    let gray = image::GrayImage::from_raw(
        mask.width() as u32,
        mask.height() as u32,
        mask.to_gray_bytes(),
    )
    .expect("buffer length matches dimensions");
    save(path.as_ref(), gray.into(), ImageFormat::Png)
}

pub fn write_rgb_png(path: impl AsRef<Path>, img: &RgbImage) -> Result<()> {
    save(path.as_ref(), to_dynamic(img), ImageFormat::Png)
}

/// Binary `P6` PPM.
pub fn write_rgb_ppm(path: impl AsRef<Path>, img: &RgbImage) -> Result<()> {
    use image::codecs::pnm::{PnmEncoder, PnmSubtype, SampleEncoding};
    use image::ImageEncoder;

    let path = path.as_ref();
    let mut bytes = Vec::new();
    PnmEncoder::new(&mut bytes)
        .with_subtype(PnmSubtype::Pixmap(SampleEncoding::Binary))
        .write_image(
            &img.to_raw(),
            img.width() as u32,
            img.height() as u32,
            image::ExtendedColorType::Rgb8,
        )
        .map_err(|source| CliError::Image {
            path: path.to_owned(),
            source,
        })?;
    std::fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

fn to_dynamic(img: &RgbImage) -> DynamicImage {
    image::RgbImage::from_raw(img.width() as u32, img.height() as u32, img.to_raw())
        .expect("buffer length matches dimensions")
        .into()
}
