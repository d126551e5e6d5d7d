//! Flat-SE dilation and erosion and their compositions.
//!
//! Dilation is the neighborhood maximum over the reflected element,
//! `out(p) = max_{s in B} in(p - s)`, and erosion the neighborhood minimum
//! `out(p) = min_{s in B} in(p + s)`, with offsets `s` taken relative to the
//! origin. The pair is adjoint, so opening and closing are idempotent for
//! any element shape. For symmetric elements both windows coincide.
//!
//! Outside the image dilation reads background (`0.0`) and erosion reads
//! foreground (`1.0`).

use crate::image::Image;
use crate::se::StructuringElement;

const DILATE_PAD: f64 = 0.0;
const ERODE_PAD: f64 = 1.0;

fn window_reduce(
    img: &Image,
    offsets: &[(isize, isize)],
    pad: f64,
    init: f64,
    fold: impl Fn(f64, f64) -> f64,
) -> Image {
    let (w, h) = img.dimensions();
    let mut out = Vec::with_capacity(w * h);
    for r in 0..h as isize {
        for c in 0..w as isize {
            let v = offsets.iter().fold(init, |acc, &(dr, dc)| {
                fold(acc, img.get_padded(r + dr, c + dc, pad))
            });
            out.push(v);
        }
    }
    Image::from_raw_unchecked(w, h, out)
}

pub fn dilate(img: &Image, se: &StructuringElement) -> Image {
    let offsets: Vec<_> = se.offsets().into_iter().map(|(r, c)| (-r, -c)).collect();
    window_reduce(img, &offsets, DILATE_PAD, 0.0, f64::max)
}

pub fn erode(img: &Image, se: &StructuringElement) -> Image {
    window_reduce(img, &se.offsets(), ERODE_PAD, 1.0, f64::min)
}

/// Erosion followed by dilation.
pub fn open(img: &Image, se: &StructuringElement) -> Image {
    dilate(&erode(img, se), se)
}

/// Dilation followed by erosion.
pub fn close(img: &Image, se: &StructuringElement) -> Image {
    erode(&dilate(img, se), se)
}
