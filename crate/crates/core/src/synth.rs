//! Seeded synthetic tiles and defect injection.
//!
//! Noise comes from a `ChaCha8Rng` seeded with `TileSpec::seed`; each pixel
//! draws one uniform `f64` in row-major order, so a spec always renders to
//! the same bytes regardless of platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::Image;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Pattern {
    Plain,
    /// Grout lines on every row and column that is a multiple of `spacing`.
    Grid {
        spacing: usize,
        intensity: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TileSpec {
    pub width: usize,
    pub height: usize,
    pub base_intensity: f64,
    #[serde(default = "plain")]
    pub pattern: Pattern,
    #[serde(default)]
    pub noise_amplitude: f64,
    #[serde(default)]
    pub seed: u64,
}

fn plain() -> Pattern {
    Pattern::Plain
}

impl TileSpec {
    pub fn plain(width: usize, height: usize, base_intensity: f64) -> Self {
        Self {
            width,
            height,
            base_intensity,
            pattern: Pattern::Plain,
            noise_amplitude: 0.0,
            seed: 0,
        }
    }

    fn validate(&self) -> Result<()> {
        let unit = 0.0..=1.0;
        if self.width == 0 || self.height == 0 {
            return Err(Error::TileSpec("dimensions must be positive".into()));
        }
        if !unit.contains(&self.base_intensity) || !unit.contains(&self.noise_amplitude) {
            return Err(Error::TileSpec("intensities must lie in [0, 1]".into()));
        }
        if let Pattern::Grid { spacing, intensity } = self.pattern {
            if spacing == 0 || !unit.contains(&intensity) {
                return Err(Error::TileSpec(format!(
                    "bad grid spacing {spacing} / intensity {intensity}"
                )));
            }
        }
        Ok(())
    }
}

pub fn generate_reference(spec: &TileSpec) -> Result<Image> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let amp = spec.noise_amplitude;
    Image::from_fn(spec.width, spec.height, |r, c| {
        let base = match spec.pattern {
            Pattern::Grid { spacing, intensity } if r % spacing == 0 || c % spacing == 0 => {
                intensity
            }
            _ => spec.base_intensity,
        };
        if amp > 0.0 {
            base + amp * (2.0 * rng.random::<f64>() - 1.0)
        } else {
            base
        }
    })
}

/// Defect geometry; coordinates are `(row, col)` in pixels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DefectKind {
    /// Break in the tile: a polyline of the given thickness.
    Crack {
        vertices: Vec<(usize, usize)>,
        thickness: f64,
    },
    /// Isolated pinpoint: exactly one pixel.
    Pinhole { at: (usize, usize) },
    /// Water-drop mark: filled disk.
    Blob {
        center: (usize, usize),
        radius: usize,
    },
    /// Colour discontinuity: filled disk.
    Spot {
        center: (usize, usize),
        radius: usize,
    },
}

impl DefectKind {
    pub fn name(&self) -> &'static str {
        match self {
            DefectKind::Crack { .. } => "crack",
            DefectKind::Pinhole { .. } => "pinhole",
            DefectKind::Blob { .. } => "blob",
            DefectKind::Spot { .. } => "spot",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DefectSpec {
    #[serde(flatten)]
    pub kind: DefectKind,
    pub intensity: f64,
    #[serde(default)]
    pub seed: u64,
}

/// Which defect class [`DefectSpec::random`] should place.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefectClass {
    Crack,
    Pinhole,
    Blob,
    Spot,
}

impl DefectSpec {
    /// Seeded placement of a defect of `class` well inside a `width`×`height` tile.
    ///
    /// Panics if either dimension is below 3.
    pub fn random(
        class: DefectClass,
        width: usize,
        height: usize,
        intensity: f64,
        seed: u64,
    ) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let margin = (width.min(height) / 8).max(1);
        let point = |rng: &mut ChaCha8Rng| {
            (
                rng.random_range(margin..height - margin),
                rng.random_range(margin..width - margin),
            )
        };
        let kind = match class {
            DefectClass::Crack => {
                let n = rng.random_range(2..=4);
                let vertices = (0..n).map(|_| point(&mut rng)).collect();
                DefectKind::Crack {
                    vertices,
                    thickness: 1.0 + rng.random::<f64>() * 2.0,
                }
            }
            DefectClass::Pinhole => DefectKind::Pinhole {
                at: point(&mut rng),
            },
            DefectClass::Blob | DefectClass::Spot => {
                let radius = rng.random_range(1..=margin.max(1));
                let center = point(&mut rng);
                if class == DefectClass::Blob {
                    DefectKind::Blob { center, radius }
                } else {
                    DefectKind::Spot { center, radius }
                }
            }
        };
        Self {
            kind,
            intensity,
            seed,
        }
    }

    /// Pixels covered by the defect, as `(row, col)`, within a `width`×`height` tile.
    pub fn footprint(&self, width: usize, height: usize) -> Result<Vec<(usize, usize)>> {
        let in_bounds = |(r, c): (usize, usize)| r < height && c < width;
        match &self.kind {
            DefectKind::Pinhole { at } => {
                if !in_bounds(*at) {
                    return Err(Error::DefectBounds(format!("pinhole {at:?}")));
                }
                Ok(vec![*at])
            }
            DefectKind::Blob { center, radius } | DefectKind::Spot { center, radius } => {
                let (cr, cc) = *center;
                if cr < *radius || cc < *radius || cr + radius >= height || cc + radius >= width {
                    return Err(Error::DefectBounds(format!(
                        "disk at {center:?} radius {radius} exceeds {width}x{height}"
                    )));
                }
                let r2 = (radius * radius) as isize;
                let mut px = Vec::new();
                for r in cr - radius..=cr + radius {
                    for c in cc - radius..=cc + radius {
                        let (dr, dc) = (r as isize - cr as isize, c as isize - cc as isize);
                        if dr * dr + dc * dc <= r2 {
                            px.push((r, c));
                        }
                    }
                }
                Ok(px)
            }
            DefectKind::Crack {
                vertices,
                thickness,
            } => {
                if vertices.is_empty() {
                    return Err(Error::DefectBounds("crack without vertices".into()));
                }
                if let Some(v) = vertices.iter().find(|&&v| !in_bounds(v)) {
                    return Err(Error::DefectBounds(format!("crack vertex {v:?}")));
                }
                if !(thickness.is_finite() && *thickness > 0.0) {
                    return Err(Error::DefectBounds(format!("crack thickness {thickness}")));
                }
                Ok(rasterize_polyline(vertices, *thickness, width, height))
            }
        }
    }
}

/// Pixels whose centre lies within `thickness / 2` of any segment.
fn rasterize_polyline(
    vertices: &[(usize, usize)],
    thickness: f64,
    width: usize,
    height: usize,
) -> Vec<(usize, usize)> {
    let half = thickness / 2.0;
    let pad = half.ceil() as isize;
    let pts: Vec<(f64, f64)> = vertices
        .iter()
        .map(|&(r, c)| (r as f64, c as f64))
        .collect();
    let segments: Vec<_> = if pts.len() == 1 {
        vec![(pts[0], pts[0])]
    } else {
        pts.windows(2).map(|w| (w[0], w[1])).collect()
    };

    let rmin = vertices.iter().map(|v| v.0).min().unwrap() as isize - pad;
    let rmax = vertices.iter().map(|v| v.0).max().unwrap() as isize + pad;
    let cmin = vertices.iter().map(|v| v.1).min().unwrap() as isize - pad;
    let cmax = vertices.iter().map(|v| v.1).max().unwrap() as isize + pad;

    let mut px = Vec::new();
    for r in rmin.max(0)..=rmax.min(height as isize - 1) {
        for c in cmin.max(0)..=cmax.min(width as isize - 1) {
            let p = (r as f64, c as f64);
            if segments
                .iter()
                .any(|&(a, b)| segment_distance(p, a, b) <= half + 1e-9)
            {
                px.push((r as usize, c as usize));
            }
        }
    }
    px
}

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0)
    };
    let (qx, qy) = (a.0 + t * dx, a.1 + t * dy);
    ((p.0 - qx).powi(2) + (p.1 - qy).powi(2)).sqrt()
}

/// Copy of `base` with the defect footprint set to the defect intensity.
pub fn inject_defect(base: &Image, defect: &DefectSpec) -> Result<Image> {
    if !(0.0..=1.0).contains(&defect.intensity) {
        return Err(Error::DefectBounds(format!(
            "intensity {} outside [0, 1]",
            defect.intensity
        )));
    }
    let (w, h) = base.dimensions();
    let mut data = base.pixels().to_vec();
    for (r, c) in defect.footprint(w, h)? {
        data[r * w + c] = defect.intensity;
    }
    Image::new(w, h, data)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn changed(a: &Image, b: &Image) -> usize {
        a.pixels()
            .iter()
            .zip(b.pixels())
            .filter(|(x, y)| x != y)
            .count()
    }

    #[test]
    fn plain_reference_is_constant() {
        let img = generate_reference(&TileSpec::plain(64, 64, 0.8)).unwrap();
        assert!(img.pixels().iter().all(|&v| v == 0.8));
    }

    #[test]
    fn generation_is_deterministic() {
        let spec = TileSpec {
            noise_amplitude: 0.05,
            seed: 42,
            pattern: Pattern::Grid {
                spacing: 8,
                intensity: 0.3,
            },
            ..TileSpec::plain(40, 30, 0.7)
        };
        let a = generate_reference(&spec).unwrap();
        let b = generate_reference(&spec).unwrap();
        assert_eq!(a, b);
        let other = generate_reference(&TileSpec { seed: 43, ..spec }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn grid_line_count_matches_closed_form() {
        for (w, h, s) in [(64, 64, 8), (37, 23, 8), (10, 5, 3), (9, 9, 1)] {
            let spec = TileSpec {
                pattern: Pattern::Grid {
                    spacing: s,
                    intensity: 0.2,
                },
                ..TileSpec::plain(w, h, 0.9)
            };
            let img = generate_reference(&spec).unwrap();
            let lines = img.pixels().iter().filter(|&&v| v == 0.2).count();
            // Enumerate line cells independently of the renderer.
            let mut expected = 0;
            for r in 0..h {
                for c in 0..w {
                    if r % s == 0 || c % s == 0 {
                        expected += 1;
                    }
                }
            }
            let (nc, nr) = (w.div_ceil(s), h.div_ceil(s));
            assert_eq!(expected, nc * h + nr * w - nc * nr);
            assert_eq!(lines, expected, "{w}x{h} spacing {s}");
        }
    }

    #[test]
    fn pinhole_changes_one_pixel() {
        let base = generate_reference(&TileSpec::plain(32, 32, 0.8)).unwrap();
        let d = DefectSpec {
            kind: DefectKind::Pinhole { at: (10, 10) },
            intensity: 0.0,
            seed: 0,
        };
        let out = inject_defect(&base, &d).unwrap();
        assert_eq!(changed(&base, &out), 1);
        assert_eq!(out.get(10, 10), 0.0);
    }

    #[test]
    fn blob_matches_disk_enumeration() {
        let base = generate_reference(&TileSpec::plain(32, 32, 0.8)).unwrap();
        let d = DefectSpec {
            kind: DefectKind::Blob {
                center: (12, 15),
                radius: 3,
            },
            intensity: 0.1,
            seed: 0,
        };
        let out = inject_defect(&base, &d).unwrap();
        let mut expected = 0;
        for x in -3i32..=3 {
            for y in -3i32..=3 {
                if x * x + y * y <= 9 {
                    expected += 1;
                }
            }
        }
        assert_eq!(expected, 29);
        assert_eq!(changed(&base, &out), expected);
    }

    #[test]
    fn same_intensity_defect_is_invisible() {
        let base = generate_reference(&TileSpec::plain(16, 16, 0.5)).unwrap();
        let d = DefectSpec {
            kind: DefectKind::Spot {
                center: (8, 8),
                radius: 2,
            },
            intensity: 0.5,
            seed: 0,
        };
        assert_eq!(changed(&base, &inject_defect(&base, &d).unwrap()), 0);
    }

    #[test]
    fn crack_rasterization() {
        let base = Image::filled(20, 20, 1.0).unwrap();
        let horizontal = DefectSpec {
            kind: DefectKind::Crack {
                vertices: vec![(5, 2), (5, 11)],
                thickness: 1.0,
            },
            intensity: 0.0,
            seed: 0,
        };
        assert_eq!(
            changed(&base, &inject_defect(&base, &horizontal).unwrap()),
            10
        );

        let thick = DefectSpec {
            kind: DefectKind::Crack {
                vertices: vec![(5, 2), (5, 11)],
                thickness: 3.0,
            },
            intensity: 0.0,
            seed: 0,
        };
        // Rows 4..=6 over cols 1..=12: the caps reach (4,1) at distance sqrt(2) <= 1.5.
        assert_eq!(changed(&base, &inject_defect(&base, &thick).unwrap()), 36);

        let bent = DefectSpec {
            kind: DefectKind::Crack {
                vertices: vec![(2, 2), (2, 8), (14, 8)],
                thickness: 1.0,
            },
            intensity: 0.0,
            seed: 0,
        };
        assert_eq!(
            changed(&base, &inject_defect(&base, &bent).unwrap()),
            7 + 12
        );
    }

    #[test]
    fn out_of_bounds_geometry_is_rejected() {
        let base = Image::zeros(10, 10).unwrap();
        let cases = [
            DefectKind::Pinhole { at: (10, 0) },
            DefectKind::Blob {
                center: (1, 5),
                radius: 2,
            },
            DefectKind::Spot {
                center: (5, 8),
                radius: 2,
            },
            DefectKind::Crack {
                vertices: vec![(0, 0), (3, 12)],
                thickness: 1.0,
            },
        ];
        for kind in cases {
            let d = DefectSpec {
                kind,
                intensity: 1.0,
                seed: 0,
            };
            assert!(matches!(
                inject_defect(&base, &d),
                Err(Error::DefectBounds(_))
            ));
        }
    }

    #[test]
    fn random_defects_fit_and_are_seeded() {
        for class in [
            DefectClass::Crack,
            DefectClass::Pinhole,
            DefectClass::Blob,
            DefectClass::Spot,
        ] {
            for seed in 0..20 {
                let a = DefectSpec::random(class, 128, 96, 0.0, seed);
                assert_eq!(a, DefectSpec::random(class, 128, 96, 0.0, seed));
                assert!(!a.footprint(128, 96).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn spec_serialization_shape() {
        let d = DefectSpec {
            kind: DefectKind::Blob {
                center: (4, 5),
                radius: 2,
            },
            intensity: 0.0,
            seed: 9,
        };
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"blob","center":[4,5],"radius":2,"intensity":0.0,"seed":9}"#
        );
        let back: DefectSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
    }
}
