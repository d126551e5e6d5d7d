//! Normalized grayscale images and the pixelwise algebra used by the
//! detection pipelines.
//!
//! Intensities live on `[0, 1]`. A binary image is the special case where
//! every pixel is exactly `0.0` (background) or `1.0` (foreground).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Row-major grid of intensities on `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl Image {
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage { width, height });
        }
        let expected = width * height;
        if data.len() != expected {
            return Err(Error::BufferLength {
                width,
                height,
                expected,
                actual: data.len(),
            });
        }
        if let Some((index, &value)) = data
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(Error::PixelRange { index, value });
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    /// Image filled with a single intensity.
    pub fn filled(width: usize, height: usize, value: f64) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn zeros(width: usize, height: usize) -> Result<Self> {
        Self::filled(width, height, 0.0)
    }

    /// Builds an image from a closure over `(row, col)`. Values are clamped to `[0, 1]`.
    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height);
        for r in 0..height {
            for c in 0..width {
                data.push(f(r, c).clamp(0.0, 1.0));
            }
        }
        Self::new(width, height, data)
    }

    /// Decodes 8-bit samples (`v / 255`).
    pub fn from_u8(width: usize, height: usize, samples: &[u8]) -> Result<Self> {
        Self::new(
            width,
            height,
            samples.iter().map(|&s| f64::from(s) / 255.0).collect(),
        )
    }

    /// Encodes each intensity as `round(v * 255)`.
    pub fn to_u8(&self) -> Vec<u8> {
        self.data.iter().map(|&v| quantize(v)).collect()
    }

    pub(crate) fn from_raw_unchecked(width: usize, height: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), width * height);
        Self {
            width,
            height,
            data,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn pixels(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.width + col]
    }

    /// Pixel read with a constant outside the image.
    #[inline]
    pub(crate) fn get_padded(&self, row: isize, col: isize, pad: f64) -> f64 {
        if row < 0 || col < 0 || row as usize >= self.height || col as usize >= self.width {
            pad
        } else {
            self.data[row as usize * self.width + col as usize]
        }
    }

    pub fn is_binary(&self) -> bool {
        self.data.iter().all(|&v| v == 0.0 || v == 1.0)
    }

    fn check_same_dims(&self, other: &Image) -> Result<()> {
        if self.dimensions() != other.dimensions() {
            return Err(Error::DimensionMismatch {
                left: self.dimensions(),
                right: other.dimensions(),
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Image, f: impl Fn(f64, f64) -> f64) -> Result<Image> {
        self.check_same_dims(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Image::from_raw_unchecked(self.width, self.height, data))
    }
}

pub(crate) fn quantize(v: f64) -> u8 {
    (v * 255.0).round().clamp(0.0, 255.0) as u8
}

/// Clamped difference `max(a - b, 0)`; set difference on binary images.
pub fn img_sub(a: &Image, b: &Image) -> Result<Image> {
    a.zip_with(b, |x, y| (x - y).max(0.0))
}

/// Saturating sum `min(a + b, 1)`; set union on binary images.
pub fn img_add(a: &Image, b: &Image) -> Result<Image> {
    a.zip_with(b, |x, y| (x + y).min(1.0))
}

pub fn complement(img: &Image) -> Image {
    let data = img.data.iter().map(|&v| 1.0 - v).collect();
    Image::from_raw_unchecked(img.width, img.height, data)
}

/// Number of strictly positive pixels.
pub fn pixel_count(img: &Image) -> usize {
    img.data.iter().filter(|&&v| v > 0.0).count()
}

/// How a grayscale image is split into foreground and background.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Threshold {
    /// Otsu's method over a 256-bin histogram.
    #[default]
    Otsu,
    /// Foreground iff intensity >= value.
    Fixed { value: f64 },
}

impl Threshold {
    pub fn fixed(value: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::Threshold(format!(
                "fixed value {value} outside [0, 1]"
            )));
        }
        Ok(Threshold::Fixed { value })
    }
}

impl std::str::FromStr for Threshold {
    type Err = Error;

    /// Parses `otsu` or `fixed:<v>`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "otsu" => Ok(Threshold::Otsu),
            other => {
                let value = other
                    .strip_prefix("fixed:")
                    .ok_or_else(|| Error::Threshold(format!("unknown threshold `{other}`")))?;
                let value: f64 = value
                    .parse()
                    .map_err(|_| Error::Threshold(format!("bad fixed value `{value}`")))?;
                Threshold::fixed(value)
            }
        }
    }
}

impl std::fmt::Display for Threshold {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Threshold::Otsu => f.write_str("otsu"),
            Threshold::Fixed { value } => write!(f, "fixed:{value}"),
        }
    }
}

/// 256-bin histogram, bin = `round(v * 255)`.
pub fn histogram(img: &Image) -> [u64; 256] {
    let mut hist = [0u64; 256];
    for &v in img.pixels() {
        hist[quantize(v) as usize] += 1;
    }
    hist
}

/// Otsu split bin: pixels in bins `>= t` are foreground.
///
/// Returns `None` when no split has positive between-class variance (a
/// single occupied bin). Near-ties (relative 1e-12) go to the lowest bin.
pub fn otsu_level(img: &Image) -> Option<u8> {
    let hist = histogram(img);
    let total = img.pixels().len() as f64;
    let sum_total: f64 = hist
        .iter()
        .enumerate()
        .map(|(i, &h)| i as f64 * h as f64)
        .sum();

    let mut best: Option<(u8, f64)> = None;
    let mut w_bg = 0.0;
    let mut sum_bg = 0.0;
    // Candidate t puts bins [0, t) in background.
    for t in 1..256usize {
        w_bg += hist[t - 1] as f64;
        sum_bg += (t - 1) as f64 * hist[t - 1] as f64;
        let w_fg = total - w_bg;
        if w_bg == 0.0 || w_fg == 0.0 {
            continue;
        }
        let mean_bg = sum_bg / w_bg;
        let mean_fg = (sum_total - sum_bg) / w_fg;
        let between = w_bg * w_fg * (mean_bg - mean_fg).powi(2) / (total * total);
        if between > 0.0 && best.is_none_or(|(_, v)| between > v * (1.0 + 1e-12)) {
            best = Some((t as u8, between));
        }
    }
    best.map(|(t, _)| t)
}

/// Binary image: `1.0` where the pixel reaches the effective threshold.
pub fn binarize(img: &Image, threshold: Threshold) -> Image {
    let data = match threshold {
        Threshold::Fixed { value } => img
            .pixels()
            .iter()
            .map(|&v| if v >= value { 1.0 } else { 0.0 })
            .collect(),
        Threshold::Otsu => match otsu_level(img) {
            Some(level) => img
                .pixels()
                .iter()
                .map(|&v| if quantize(v) >= level { 1.0 } else { 0.0 })
                .collect(),
            None => vec![0.0; img.pixels().len()],
        },
    };
    Image::from_raw_unchecked(img.width, img.height, data)
}
