//! Flat structuring elements.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Boolean probe mask with a designated origin cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuringElement {
    width: usize,
    height: usize,
    mask: Vec<bool>,
    origin: (usize, usize),
}

impl StructuringElement {
    /// `mask` is row-major, `origin` is `(row, col)`.
    pub fn new(
        width: usize,
        height: usize,
        mask: Vec<bool>,
        origin: (usize, usize),
    ) -> Result<Self> {
        if width == 0 || height == 0 || mask.len() != width * height {
            return Err(Error::StructuringElement(format!(
                "mask of {} cells does not fit {width}x{height}",
                mask.len()
            )));
        }
        if !mask.iter().any(|&m| m) {
            return Err(Error::StructuringElement("mask has no set cell".into()));
        }
        if origin.0 >= height || origin.1 >= width {
            return Err(Error::StructuringElement(format!(
                "origin {origin:?} outside {width}x{height} mask"
            )));
        }
        Ok(Self {
            width,
            height,
            mask,
            origin,
        })
    }

    /// Parses rows like `["010", "111", "010"]` with `1`/`#` as set cells.
    pub fn from_rows(rows: &[&str], origin: (usize, usize)) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::StructuringElement("ragged rows".into()));
        }
        let mask = rows
            .iter()
            .flat_map(|r| r.chars().map(|c| c == '1' || c == '#'))
            .collect();
        Self::new(width, height, mask, origin)
    }

    /// `k`×`k` square, centered. `k` must be odd.
    pub fn square(k: usize) -> Result<Self> {
        check_odd(k)?;
        Self::new(k, k, vec![true; k * k], (k / 2, k / 2))
    }

    /// Plus-shaped element with arms spanning `k` cells. `k` must be odd.
    pub fn cross(k: usize) -> Result<Self> {
        check_odd(k)?;
        let c = k / 2;
        let mask = (0..k * k).map(|i| i / k == c || i % k == c).collect();
        Self::new(k, k, mask, (c, c))
    }

    /// Discrete disk: cells with `dx² + dy² <= r²` in a `(2r+1)²` box.
    pub fn disk(radius: usize) -> Result<Self> {
        let k = 2 * radius + 1;
        let r = radius as isize;
        let mask = (0..k * k)
            .map(|i| {
                let dy = (i / k) as isize - r;
                let dx = (i % k) as isize - r;
                dx * dx + dy * dy <= r * r
            })
            .collect();
        Self::new(k, k, mask, (radius, radius))
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn origin(&self) -> (usize, usize) {
        self.origin
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.mask[row * self.width + col]
    }

    pub fn origin_is_set(&self) -> bool {
        self.contains(self.origin.0, self.origin.1)
    }

    pub fn cell_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    /// Offsets `(row - origin_row, col - origin_col)` of the set cells.
    pub fn offsets(&self) -> Vec<(isize, isize)> {
        let (or, oc) = (self.origin.0 as isize, self.origin.1 as isize);
        (0..self.height)
            .flat_map(|r| (0..self.width).map(move |c| (r, c)))
            .filter(|&(r, c)| self.contains(r, c))
            .map(|(r, c)| (r as isize - or, c as isize - oc))
            .collect()
    }

    /// Point reflection through the origin.
    pub fn reflect(&self) -> Self {
        let mut mask = vec![false; self.mask.len()];
        for r in 0..self.height {
            for c in 0..self.width {
                mask[(self.height - 1 - r) * self.width + (self.width - 1 - c)] =
                    self.contains(r, c);
            }
        }
        Self {
            width: self.width,
            height: self.height,
            mask,
            origin: (
                self.height - 1 - self.origin.0,
                self.width - 1 - self.origin.1,
            ),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let mut a = self.offsets();
        let mut b: Vec<_> = a.iter().map(|&(r, c)| (-r, -c)).collect();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}

fn check_odd(k: usize) -> Result<()> {
    if k == 0 || k.is_multiple_of(2) {
        return Err(Error::StructuringElement(format!(
            "size must be a positive odd number, got {k}"
        )));
    }
    Ok(())
}

/// Textual SE description: `square:k`, `cross:k` or `disk:r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum SeShape {
    Square(usize),
    Cross(usize),
    Disk(usize),
}

impl SeShape {
    pub fn build(self) -> Result<StructuringElement> {
        match self {
            SeShape::Square(k) => StructuringElement::square(k),
            SeShape::Cross(k) => StructuringElement::cross(k),
            SeShape::Disk(r) => StructuringElement::disk(r),
        }
    }
}

impl Default for SeShape {
    fn default() -> Self {
        SeShape::Square(3)
    }
}

impl FromStr for SeShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, size) = s
            .split_once(':')
            .ok_or_else(|| Error::StructuringElement(format!("expected kind:size, got `{s}`")))?;
        let size: usize = size
            .parse()
            .map_err(|_| Error::StructuringElement(format!("bad size in `{s}`")))?;
        let shape = match kind {
            "square" => SeShape::Square(size),
            "cross" => SeShape::Cross(size),
            "disk" => SeShape::Disk(size),
            _ => {
                return Err(Error::StructuringElement(format!("unknown shape `{kind}`")));
            }
        };
        shape.build()?;
        Ok(shape)
    }
}

impl TryFrom<String> for SeShape {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SeShape> for String {
    fn from(s: SeShape) -> String {
        s.to_string()
    }
}

impl fmt::Display for SeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeShape::Square(k) => write!(f, "square:{k}"),
            SeShape::Cross(k) => write!(f, "cross:{k}"),
            SeShape::Disk(r) => write!(f, "disk:{r}"),
        }
    }
}
