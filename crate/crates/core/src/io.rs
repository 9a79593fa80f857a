//! Number formatting for CSV output and 8-bit PGM image files.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

/// Decimal float with 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// A grayscale image read from or written to disk, values in `0..=255`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    /// Row-major pixels.
    pub pixels: Vec<u8>,
}

fn pgm_error(path: &Path, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        row: 0,
        message: message.into(),
    }
}

/// Parses a binary (`P5`) PGM with maxval at most 255.
pub fn parse_pgm(bytes: &[u8], path: &Path) -> Result<GrayImage> {
    let mut pos = 0;
    let mut token = || -> Option<String> {
        loop {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b'#' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
                continue;
            }
            break;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        (pos > start).then(|| String::from_utf8_lossy(&bytes[start..pos]).into_owned())
    };
    if token().as_deref() != Some("P5") {
        return Err(pgm_error(path, "not a binary PGM (expected magic P5)"));
    }
    let mut number = |what: &str| -> Result<usize> {
        token()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| pgm_error(path, format!("missing or invalid {what}")))
    };
    let width = number("width")?;
    let height = number("height")?;
    let maxval = number("maxval")?;
    if width == 0 || height == 0 {
        return Err(pgm_error(path, "image has no pixels"));
    }
    if maxval == 0 || maxval > 255 {
        return Err(pgm_error(path, format!("maxval {maxval} unsupported (8-bit only)")));
    }
    // Exactly one whitespace byte separates the header from the raster.
    let start = pos + 1;
    let len = width * height;
    if bytes.len() < start + len {
        return Err(pgm_error(path, format!("raster truncated: need {len} bytes")));
    }
    let mut pixels = bytes[start..start + len].to_vec();
    if maxval != 255 {
        for p in &mut pixels {
            *p = ((*p as usize * 255 + maxval / 2) / maxval).min(255) as u8;
        }
    }
    Ok(GrayImage { width, height, pixels })
}

pub fn encode_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width, img.height).into_bytes();
    out.extend_from_slice(&img.pixels);
    out
}

pub fn read_pgm(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    parse_pgm(&fs::read(path)?, path)
}

pub fn write_pgm(img: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(&encode_pgm(img))?;
    Ok(())
}

/// Reads a PGM, or a PNG when built with the `png` feature.
pub fn read_image(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    if is_png(path) {
        return read_png(path);
    }
    read_pgm(path)
}

/// Writes a PGM, or a PNG when the extension asks for one and the `png` feature is on.
pub fn write_image(img: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if is_png(path) {
        return write_png(img, path);
    }
    write_pgm(img, path)
}

fn is_png(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("png"))
}

#[cfg(feature = "png")]
fn read_png(path: &Path) -> Result<GrayImage> {
    let img = image::open(path)
        .map_err(|e| pgm_error(path, e.to_string()))?
        .into_luma8();
    Ok(GrayImage {
        width: img.width() as usize,
        height: img.height() as usize,
        pixels: img.into_raw(),
    })
}

#[cfg(feature = "png")]
fn write_png(img: &GrayImage, path: &Path) -> Result<()> {
    image::save_buffer(
        path,
        &img.pixels,
        img.width as u32,
        img.height as u32,
        image::ExtendedColorType::L8,
    )
    .map_err(|e| pgm_error(path, e.to_string()))
}

#[cfg(not(feature = "png"))]
fn read_png(path: &Path) -> Result<GrayImage> {
    Err(Error::Unsupported(format!(
        "{}: PNG support requires building with the `png` feature",
        path.display()
    )))
}

#[cfg(not(feature = "png"))]
fn write_png(_img: &GrayImage, path: &Path) -> Result<()> {
    read_png(path).map(|_| ())
}
