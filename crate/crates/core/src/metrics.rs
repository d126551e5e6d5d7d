//! Pixel-count classification and PSNR/MSE quality metrics.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::image::Image;
use crate::pipelines::{DetectionMethod, ResidualResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    DefectFree,
    Defective,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::DefectFree => "DefectFree",
            Verdict::Defective => "Defective",
        })
    }
}

/// `delta_d = reference - test`; a test tile with more residual pixels than
/// the reference is defective.
pub fn classify(reference_count: usize, test_count: usize) -> (i64, Verdict) {
    classify_with_tolerance(reference_count, test_count, 0)
}

/// As [`classify`], but `|delta_d| <= tolerance` is always defect-free.
pub fn classify_with_tolerance(
    reference_count: usize,
    test_count: usize,
    tolerance: u64,
) -> (i64, Verdict) {
    let delta = reference_count as i64 - test_count as i64;
    let verdict = if delta < -(tolerance as i64) {
        Verdict::Defective
    } else {
        Verdict::DefectFree
    };
    (delta, verdict)
}

/// Mean squared difference on the `[0, 1]` scale.
pub fn mse(a: &Image, b: &Image) -> Result<f64> {
    if a.dimensions() != b.dimensions() {
        return Err(Error::DimensionMismatch {
            left: a.dimensions(),
            right: b.dimensions(),
        });
    }
    let sum: f64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    Ok(sum / a.pixels().len() as f64)
}

/// Peak signal-to-noise ratio in dB; `Infinite` for identical images.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Psnr {
    Finite(f64),
    Infinite,
}

impl Psnr {
    pub fn as_f64(self) -> f64 {
        match self {
            Psnr::Finite(v) => v,
            Psnr::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Psnr::Infinite)
    }
}

impl fmt::Display for Psnr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Psnr::Finite(v) => write!(f, "{v}"),
            Psnr::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Psnr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Psnr::Finite(v) => s.serialize_f64(*v),
            Psnr::Infinite => s.serialize_str("Infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for Psnr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(Psnr::Finite(v)),
            Repr::Text(t) if t == "Infinite" || t == "inf" => Ok(Psnr::Infinite),
            Repr::Text(t) => Err(serde::de::Error::custom(format!("bad psnr `{t}`"))),
        }
    }
}

/// `10 * log10(max_i² / mse)`.
pub fn psnr(mse_value: f64, max_i: f64) -> Result<Psnr> {
    if mse_value.is_nan() || mse_value < 0.0 {
        return Err(Error::NegativeMse(mse_value));
    }
    if max_i.is_nan() || max_i <= 0.0 {
        return Err(Error::MaxIntensity(max_i));
    }
    if mse_value == 0.0 {
        return Ok(Psnr::Infinite);
    }
    Ok(Psnr::Finite(10.0 * (max_i * max_i / mse_value).log10()))
}

/// One report row: a test tile inspected by one method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InspectionRecord {
    pub tile: String,
    pub method: DetectionMethod,
    pub reference_count: usize,
    pub test_count: usize,
    pub delta_d: i64,
    pub verdict: Verdict,
    pub mse: f64,
    pub psnr_db: Psnr,
    pub elapsed_seconds: f64,
    pub elementary_ops: u64,
}

/// Combines reference and test results for one method.
///
/// `metric_pair` is the `(reference, test)` image pair PSNR/MSE are computed on.
pub fn build_record(
    tile: impl Into<String>,
    method: DetectionMethod,
    reference: &ResidualResult,
    test: &ResidualResult,
    metric_pair: (&Image, &Image),
    count_tolerance: u64,
) -> Result<InspectionRecord> {
    let (delta_d, verdict) = classify_with_tolerance(reference.count, test.count, count_tolerance);
    let mse = mse(metric_pair.0, metric_pair.1)?;
    Ok(InspectionRecord {
        tile: tile.into(),
        method,
        reference_count: reference.count,
        test_count: test.count,
        delta_d,
        verdict,
        mse,
        psnr_db: psnr(mse, 1.0)?,
        elapsed_seconds: test.elapsed_seconds,
        elementary_ops: test.elementary_ops,
    })
}
