#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tileguard::{Image, StructuringElement};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_binary(rng: &mut impl Rng, w: usize, h: usize, density: f64) -> Image {
    Image::from_fn(w, h, |_, _| f64::from(u8::from(rng.random_bool(density)))).unwrap()
}

pub fn random_gray(rng: &mut impl Rng, w: usize, h: usize) -> Image {
    let samples: Vec<u8> = (0..w * h).map(|_| rng.random()).collect();
    Image::from_u8(w, h, &samples).unwrap()
}

/// Random mask up to `max`×`max` with a random origin; `origin_set` forces the origin cell on.
pub fn random_se(rng: &mut impl Rng, max: usize, origin_set: bool) -> StructuringElement {
    let w = rng.random_range(1..=max);
    let h = rng.random_range(1..=max);
    let origin = (rng.random_range(0..h), rng.random_range(0..w));
    let mut mask: Vec<bool> = (0..w * h).map(|_| rng.random_bool(0.5)).collect();
    if origin_set {
        mask[origin.0 * w + origin.1] = true;
    } else if !mask.iter().any(|&m| m) {
        mask[rng.random_range(0..w * h)] = true;
    }
    StructuringElement::new(w, h, mask, origin).unwrap()
}

fn at(img: &Image, r: isize, c: isize, pad: f64) -> f64 {
    if r < 0 || c < 0 || r >= img.height() as isize || c >= img.width() as isize {
        pad
    } else {
        img.get(r as usize, c as usize)
    }
}

/// Window maximum over the element reflected through its origin.
pub fn dilate_oracle(img: &Image, se: &StructuringElement) -> Image {
    let (or, oc) = se.origin();
    Image::from_fn(img.width(), img.height(), |r, c| {
        let mut best = 0.0f64;
        for i in 0..se.height() {
            for j in 0..se.width() {
                if se.contains(i, j) {
                    let rr = r as isize - (i as isize - or as isize);
                    let cc = c as isize - (j as isize - oc as isize);
                    best = best.max(at(img, rr, cc, 0.0));
                }
            }
        }
        best
    })
    .unwrap()
}

/// Window minimum over the element, foreground outside the image.
pub fn erode_oracle(img: &Image, se: &StructuringElement) -> Image {
    let (or, oc) = se.origin();
    Image::from_fn(img.width(), img.height(), |r, c| {
        let mut best = 1.0f64;
        for i in 0..se.height() {
            for j in 0..se.width() {
                if se.contains(i, j) {
                    let rr = r as isize + (i as isize - or as isize);
                    let cc = c as isize + (j as isize - oc as isize);
                    best = best.min(at(img, rr, cc, 1.0));
                }
            }
        }
        best
    })
    .unwrap()
}

/// Minkowski sum by stamping: every input pixel pushes its value onto its translates.
pub fn dilate_by_stamping(img: &Image, se: &StructuringElement) -> Image {
    let (w, h) = img.dimensions();
    let (or, oc) = se.origin();
    let mut out = vec![0.0f64; w * h];
    for r in 0..h {
        for c in 0..w {
            let v = img.get(r, c);
            for i in 0..se.height() {
                for j in 0..se.width() {
                    if !se.contains(i, j) {
                        continue;
                    }
                    let rr = r as isize + i as isize - or as isize;
                    let cc = c as isize + j as isize - oc as isize;
                    if rr >= 0 && cc >= 0 && (rr as usize) < h && (cc as usize) < w {
                        let k = rr as usize * w + cc as usize;
                        out[k] = out[k].max(v);
                    }
                }
            }
        }
    }
    Image::new(w, h, out).unwrap()
}

pub fn leq(a: &Image, b: &Image) -> bool {
    a.pixels().iter().zip(b.pixels()).all(|(x, y)| x <= y)
}

pub fn rect(w: usize, h: usize, r0: usize, c0: usize, rh: usize, rw: usize) -> Image {
    Image::from_fn(w, h, |r, c| {
        f64::from(u8::from(
            (r0..r0 + rh).contains(&r) && (c0..c0 + rw).contains(&c),
        ))
    })
    .unwrap()
}
