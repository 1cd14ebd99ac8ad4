//! In-memory sRGB raster with PNG and binary PPM (P6) input and output.
//!
//! Pixels are stored as normalized `f64` sRGB. 8-bit sources are divided by
//! 255 and 16-bit sources by 65535 on load; writers quantize back to 8 bits.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use thiserror::Error;

use crate::{color, Srgb};

#[derive(Debug, Error)]
pub enum RasterError {
    #[error("failed to read {path}: {source}")]
    Read {
        path: String,
        source: image::ImageError,
    },
    #[error("failed to write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("pixel buffer length {len} does not match {width}x{height}")]
    DimensionMismatch { width: u32, height: u32, len: usize },
    #[error("image has zero width or height")]
    Empty,
}

/// Rectangular grid of normalized sRGB pixels, row-major from the top left.
#[derive(Debug, Clone, PartialEq)]
pub struct Raster {
    width: u32,
    height: u32,
    pixels: Vec<Srgb>,
}

impl Raster {
    pub fn new(width: u32, height: u32, pixels: Vec<Srgb>) -> Result<Self, RasterError> {
        if width == 0 || height == 0 {
            return Err(RasterError::Empty);
        }
        if pixels.len() != (width as usize) * (height as usize) {
            return Err(RasterError::DimensionMismatch {
                width,
                height,
                len: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: u32, height: u32, color: Srgb) -> Result<Self, RasterError> {
        Self::new(
            width,
            height,
            vec![color; (width as usize) * (height as usize)],
        )
    }

    pub fn from_fn(
        width: u32,
        height: u32,
        mut f: impl FnMut(u32, u32) -> Srgb,
    ) -> Result<Self, RasterError> {
        if width == 0 || height == 0 {
            return Err(RasterError::Empty);
        }
        let mut pixels = Vec::with_capacity((width as usize) * (height as usize));
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixel(&self, x: u32, y: u32) -> Srgb {
        self.pixels[(y as usize) * (self.width as usize) + (x as usize)]
    }

    pub fn pixels(&self) -> &[Srgb] {
        &self.pixels
    }

    /// Loads a PNG or PPM image. 8-bit channels are normalized by 255,
    /// 16-bit channels by 65535; alpha is dropped.
    pub fn load(path: &Path) -> Result<Self, RasterError> {
        let img = image::open(path).map_err(|source| RasterError::Read {
            path: path.display().to_string(),
            source,
        })?;
        // u8 -> u16 widening multiplies by 257, so v/65535 == v8/255 exactly
        let rgb = img.to_rgb16();
        let (width, height) = (rgb.width(), rgb.height());
        let pixels = rgb
            .pixels()
            .map(|p| Srgb::from_u16(p.0[0], p.0[1], p.0[2]))
            .collect();
        Self::new(width, height, pixels)
    }

    fn quantize(v: f64) -> u8 {
        (v.clamp(0.0, 1.0) * 255.0).round() as u8
    }

    /// Serializes as a binary PPM (P6, maxval 255). The byte layout is
    /// stable, which lets golden tests compare frames exactly.
    pub fn encode_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.reserve(self.pixels.len() * 3);
        for p in &self.pixels {
            out.push(Self::quantize(p.r));
            out.push(Self::quantize(p.g));
            out.push(Self::quantize(p.b));
        }
        out
    }

    pub fn save_ppm(&self, path: &Path) -> Result<(), RasterError> {
        let wrap = |source| RasterError::Write {
            path: path.display().to_string(),
            source,
        };
        let mut w = BufWriter::new(File::create(path).map_err(wrap)?);
        w.write_all(&self.encode_ppm()).map_err(wrap)?;
        w.flush().map_err(wrap)
    }

    pub fn save_png(&self, path: &Path) -> Result<(), RasterError> {
        let mut img = image::RgbImage::new(self.width, self.height);
        for (x, y, p) in img.enumerate_pixels_mut() {
            let c = self.pixel(x, y);
            *p = image::Rgb([
                Self::quantize(c.r),
                Self::quantize(c.g),
                Self::quantize(c.b),
            ]);
        }
        img.save(path).map_err(|source| match source {
            image::ImageError::IoError(source) => RasterError::Write {
                path: path.display().to_string(),
                source,
            },
            other => RasterError::Read {
                path: path.display().to_string(),
                source: other,
            },
        })
    }

    fn quantize16(v: f64) -> u16 {
        (v.clamp(0.0, 1.0) * 65535.0).round() as u16
    }

    /// 16-bit variant of [`Raster::save_png`] for precision-sensitive
    /// pipelines.
    pub fn save_png16(&self, path: &Path) -> Result<(), RasterError> {
        let mut img = image::ImageBuffer::<image::Rgb<u16>, Vec<u16>>::new(self.width, self.height);
        for (x, y, p) in img.enumerate_pixels_mut() {
            let c = self.pixel(x, y);
            *p = image::Rgb([
                Self::quantize16(c.r),
                Self::quantize16(c.g),
                Self::quantize16(c.b),
            ]);
        }
        img.save(path).map_err(|source| match source {
            image::ImageError::IoError(source) => RasterError::Write {
                path: path.display().to_string(),
                source,
            },
            other => RasterError::Read {
                path: path.display().to_string(),
                source: other,
            },
        })
    }
}

/// Widely used reference colors for synthetic test imagery.
pub fn srgb8(r: u8, g: u8, b: u8) -> Srgb {
    Srgb::from_u8(r, g, b)
}

/// Convenience: CIELAB of a flat sRGB color, matching what a measurement
/// over a uniform region returns.
pub fn lab_of(color: Srgb) -> crate::Lab {
    color::srgb_to_lab(color)
}
