//! Morphological surface-defect detection for tile images.
//!
//! A test tile is compared with a defect-free reference tile by running a
//! residual-producing morphological detector on both and comparing the
//! number of foreground pixels left in each residual. Four detectors are
//! provided:
//!
//! - **dilation**: close/open/close smoothing of the binarized tile, then
//!   the ring added by one more dilation;
//! - **erosion**: the same smoothing, combined with its erosion;
//! - **smee**: dilation minus the input (simple morphological edge extraction);
//! - **boundary**: input minus its erosion.
//!
//! ```
//! use tileguard::{classify, pipelines, Image, StructuringElement, Verdict};
//!
//! let se = StructuringElement::square(3).unwrap();
//! let reference = Image::filled(32, 32, 0.8).unwrap();
//! let mut pixels = reference.pixels().to_vec();
//! pixels[16 * 32 + 16] = 0.0;
//! let test = Image::new(32, 32, pixels).unwrap();
//!
//! let r = pipelines::smee(&reference, &se).unwrap();
//! let t = pipelines::smee(&test, &se).unwrap();
//! assert_eq!(classify(r.count, t.count), (-1, Verdict::Defective));
//! ```

pub mod batch;
pub mod error;
pub mod image;
pub mod io;
pub mod metrics;
pub mod morph;
pub mod pipelines;
pub mod report;
pub mod se;
pub mod synth;

pub use crate::batch::{inspect, FixtureSpec, RunConfig};
pub use crate::error::{Error, Result};
pub use crate::image::{binarize, complement, img_add, img_sub, pixel_count, Image, Threshold};
pub use crate::io::{load_image, save_image};
pub use crate::metrics::{build_record, classify, mse, psnr, InspectionRecord, Psnr, Verdict};
pub use crate::morph::{close, dilate, erode, open};
pub use crate::pipelines::{run_method, DetectionMethod, PipelineOptions, ResidualResult};
pub use crate::report::{emit_plot_data, Report};
pub use crate::se::{SeShape, StructuringElement};
pub use crate::synth::{generate_reference, inject_defect, DefectSpec, TileSpec};
