//! The four residual-based defect detectors.
//!
//! Each detector turns a tile image into a residual image whose foreground
//! pixel count feeds the classifier. Results also carry wall-clock time and
//! the number of erode/dilate kernel passes executed.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::{binarize, img_add, img_sub, pixel_count, Image, Threshold};
use crate::morph;
use crate::se::StructuringElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetectionMethod {
    /// Dilated smoothed image minus the smoothed image.
    #[serde(rename = "dilation")]
    DilationPipeline,
    /// Eroded smoothed image combined with the smoothed image.
    #[serde(rename = "erosion")]
    ErosionPipeline,
    /// Simple morphological edge extraction: dilation minus input.
    Smee,
    /// Input minus its erosion.
    #[serde(rename = "boundary")]
    BoundaryExtraction,
}

impl DetectionMethod {
    pub const ALL: [DetectionMethod; 4] = [
        DetectionMethod::DilationPipeline,
        DetectionMethod::ErosionPipeline,
        DetectionMethod::Smee,
        DetectionMethod::BoundaryExtraction,
    ];

    /// Short name used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            DetectionMethod::DilationPipeline => "dilation",
            DetectionMethod::ErosionPipeline => "erosion",
            DetectionMethod::Smee => "smee",
            DetectionMethod::BoundaryExtraction => "boundary",
        }
    }

    /// Kernel passes the method always performs.
    pub fn kernel_passes(self) -> u64 {
        match self {
            DetectionMethod::DilationPipeline | DetectionMethod::ErosionPipeline => 7,
            DetectionMethod::Smee | DetectionMethod::BoundaryExtraction => 1,
        }
    }
}

impl fmt::Display for DetectionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DetectionMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DetectionMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown method `{s}`")))
    }
}

/// How the erosion pipeline combines the smoothed image with its erosion.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErosionVariant {
    /// Saturating sum of the erosion and the smoothed image. With the origin
    /// in the element this equals the smoothed image.
    #[default]
    Literal,
    /// Smoothed image minus its erosion (inner boundary).
    Difference,
}

impl FromStr for ErosionVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(ErosionVariant::Literal),
            "difference" => Ok(ErosionVariant::Difference),
            _ => Err(Error::Config(format!("unknown erosion variant `{s}`"))),
        }
    }
}

impl fmt::Display for ErosionVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErosionVariant::Literal => "literal",
            ErosionVariant::Difference => "difference",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PipelineOptions {
    pub erosion_variant: ErosionVariant,
    /// Binarize before SMEE and boundary extraction too.
    pub binarize_all: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualResult {
    pub method: DetectionMethod,
    pub residual: Image,
    pub count: usize,
    pub elapsed_seconds: f64,
    pub elementary_ops: u64,
}

/// Counts erode/dilate passes as they run.
#[derive(Debug, Default)]
struct Kernel {
    passes: u64,
}

impl Kernel {
    fn dilate(&mut self, img: &Image, se: &StructuringElement) -> Image {
        self.passes += 1;
        morph::dilate(img, se)
    }

    fn erode(&mut self, img: &Image, se: &StructuringElement) -> Image {
        self.passes += 1;
        morph::erode(img, se)
    }

    fn open(&mut self, img: &Image, se: &StructuringElement) -> Image {
        let e = self.erode(img, se);
        self.dilate(&e, se)
    }

    fn close(&mut self, img: &Image, se: &StructuringElement) -> Image {
        let d = self.dilate(img, se);
        self.erode(&d, se)
    }

    fn smooth(&mut self, img: &Image, se: &StructuringElement) -> Image {
        let a = self.close(img, se);
        let b = self.open(&a, se);
        self.close(&b, se)
    }
}

/// Close, open, close: the shared prefix of the dilation and erosion pipelines.
pub fn smooth(img: &Image, se: &StructuringElement) -> Image {
    Kernel::default().smooth(img, se)
}

fn require_origin(se: &StructuringElement) -> Result<()> {
    if se.origin_is_set() {
        Ok(())
    } else {
        Err(Error::OriginNotSet)
    }
}

fn timed(
    method: DetectionMethod,
    body: impl FnOnce(&mut Kernel) -> Result<Image>,
) -> Result<ResidualResult> {
    let mut kernel = Kernel::default();
    let start = Instant::now();
    let residual = body(&mut kernel)?;
    let count = pixel_count(&residual);
    let elapsed_seconds = start.elapsed().as_secs_f64();
    Ok(ResidualResult {
        method,
        residual,
        count,
        elapsed_seconds,
        elementary_ops: kernel.passes,
    })
}

/// External ring of the smoothed binary image.
pub fn dilation_pipeline(
    img: &Image,
    se: &StructuringElement,
    threshold: Threshold,
) -> Result<ResidualResult> {
    require_origin(se)?;
    timed(DetectionMethod::DilationPipeline, |k| {
        let smoothed = k.smooth(&binarize(img, threshold), se);
        let dilated = k.dilate(&smoothed, se);
        img_sub(&dilated, &smoothed)
    })
}

pub fn erosion_pipeline(
    img: &Image,
    se: &StructuringElement,
    threshold: Threshold,
    variant: ErosionVariant,
) -> Result<ResidualResult> {
    require_origin(se)?;
    timed(DetectionMethod::ErosionPipeline, |k| {
        let smoothed = k.smooth(&binarize(img, threshold), se);
        let eroded = k.erode(&smoothed, se);
        match variant {
            ErosionVariant::Literal => img_add(&eroded, &smoothed),
            ErosionVariant::Difference => img_sub(&smoothed, &eroded),
        }
    })
}

pub fn smee(img: &Image, se: &StructuringElement) -> Result<ResidualResult> {
    timed(DetectionMethod::Smee, |k| img_sub(&k.dilate(img, se), img))
}

pub fn boundary_extraction(img: &Image, se: &StructuringElement) -> Result<ResidualResult> {
    timed(DetectionMethod::BoundaryExtraction, |k| {
        img_sub(img, &k.erode(img, se))
    })
}

pub fn run_method(
    method: DetectionMethod,
    img: &Image,
    se: &StructuringElement,
    threshold: Threshold,
    opts: &PipelineOptions,
) -> Result<ResidualResult> {
    let start = Instant::now();
    let mut result = match method {
        DetectionMethod::DilationPipeline => dilation_pipeline(img, se, threshold),
        DetectionMethod::ErosionPipeline => {
            erosion_pipeline(img, se, threshold, opts.erosion_variant)
        }
        DetectionMethod::Smee if opts.binarize_all => smee(&binarize(img, threshold), se),
        DetectionMethod::Smee => smee(img, se),
        DetectionMethod::BoundaryExtraction if opts.binarize_all => {
            boundary_extraction(&binarize(img, threshold), se)
        }
        DetectionMethod::BoundaryExtraction => boundary_extraction(img, se),
    }?;
    result.elapsed_seconds = start.elapsed().as_secs_f64();
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::complement;

    fn square3() -> StructuringElement {
        StructuringElement::square(3).unwrap()
    }

    fn rect(w: usize, h: usize, r0: usize, c0: usize, rh: usize, rw: usize) -> Image {
        Image::from_fn(w, h, |r, c| {
            f64::from(u8::from(
                (r0..r0 + rh).contains(&r) && (c0..c0 + rw).contains(&c),
            ))
        })
        .unwrap()
    }

    #[test]
    fn smooth_examples() {
        let se = square3();
        let b = rect(9, 9, 3, 3, 3, 3);
        assert_eq!(smooth(&b, &se), b);
        let empty = Image::zeros(9, 9).unwrap();
        assert_eq!(smooth(&empty, &se), empty);
        assert_eq!(pixel_count(&smooth(&rect(9, 9, 4, 4, 1, 1), &se)), 0);
    }

    #[test]
    fn dilation_ring_around_rectangle() {
        let img = rect(12, 12, 4, 4, 4, 4);
        let res = dilation_pipeline(&img, &square3(), Threshold::Otsu).unwrap();
        assert_eq!(res.count, 6 * 6 - 4 * 4);
        assert_eq!(
            res.residual,
            img_sub(&rect(12, 12, 3, 3, 6, 6), &img).unwrap()
        );
        assert_eq!(res.elementary_ops, 7);
    }

    #[test]
    fn erosion_literal_is_smoothed_block() {
        let img = rect(9, 9, 3, 3, 3, 3);
        let res =
            erosion_pipeline(&img, &square3(), Threshold::Otsu, ErosionVariant::Literal).unwrap();
        assert_eq!(res.residual, img);
        assert_eq!(res.count, 9);

        let diff = erosion_pipeline(
            &img,
            &square3(),
            Threshold::Otsu,
            ErosionVariant::Difference,
        )
        .unwrap();
        assert_eq!(diff.count, 8);
        assert_eq!(diff.elementary_ops, 7);
    }

    #[test]
    fn smee_and_boundary_examples() {
        let se = square3();
        let res = smee(&rect(5, 5, 2, 2, 1, 1), &se).unwrap();
        assert_eq!(res.count, 8);
        assert_eq!(res.residual.get(2, 2), 0.0);

        let res = boundary_extraction(&rect(7, 7, 2, 2, 3, 3), &se).unwrap();
        assert_eq!(res.count, 8);
        assert_eq!(res.residual.get(3, 3), 0.0);

        let ones = Image::filled(6, 6, 1.0).unwrap();
        assert_eq!(boundary_extraction(&ones, &se).unwrap().count, 0);
        let grey = Image::filled(6, 6, 0.37).unwrap();
        assert_eq!(smee(&grey, &se).unwrap().count, 0);
    }

    #[test]
    fn empty_inputs_yield_empty_residuals() {
        let empty = Image::zeros(8, 8).unwrap();
        for method in DetectionMethod::ALL {
            let res = run_method(
                method,
                &empty,
                &square3(),
                Threshold::Otsu,
                &Default::default(),
            )
            .unwrap();
            assert_eq!(res.count, 0, "{method}");
            assert_eq!(res.elementary_ops, method.kernel_passes());
        }
    }

    #[test]
    fn origin_must_be_set_for_smoothing_pipelines() {
        let se = StructuringElement::from_rows(&["101"], (0, 1)).unwrap();
        let img = Image::zeros(4, 4).unwrap();
        assert!(matches!(
            dilation_pipeline(&img, &se, Threshold::Otsu),
            Err(Error::OriginNotSet)
        ));
        assert!(matches!(
            erosion_pipeline(&img, &se, Threshold::Otsu, ErosionVariant::Literal),
            Err(Error::OriginNotSet)
        ));
        assert!(smee(&img, &se).is_ok());
    }

    #[test]
    fn binarize_all_affects_grayscale_methods() {
        let img =
            Image::from_fn(8, 8, |r, c| if r < 4 { 0.2 } else { 0.8 } + 0.01 * c as f64).unwrap();
        let se = square3();
        let plain = run_method(
            DetectionMethod::Smee,
            &img,
            &se,
            Threshold::Otsu,
            &Default::default(),
        )
        .unwrap();
        let opts = PipelineOptions {
            binarize_all: true,
            ..Default::default()
        };
        let bin = run_method(DetectionMethod::Smee, &img, &se, Threshold::Otsu, &opts).unwrap();
        assert!(bin.residual.is_binary());
        assert!(!plain.residual.is_binary());
        // Binary SMEE is the one-pixel band just above the step.
        assert_eq!(bin.count, 8);
        let inverted = complement(&img);
        let bin = run_method(
            DetectionMethod::BoundaryExtraction,
            &inverted,
            &se,
            Threshold::Otsu,
            &opts,
        )
        .unwrap();
        assert_eq!(bin.count, 8);
    }

    #[test]
    fn method_names_round_trip() {
        for m in DetectionMethod::ALL {
            assert_eq!(m.name().parse::<DetectionMethod>().unwrap(), m);
            assert_eq!(
                serde_json::to_string(&m).unwrap(),
                format!("\"{}\"", m.name())
            );
        }
        assert!("canny".parse::<DetectionMethod>().is_err());
    }
}
