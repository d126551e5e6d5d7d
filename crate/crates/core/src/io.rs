//! PGM (P2/P5) and PNG grayscale image files.
//!
//! Samples are mapped to `[0, 1]` by dividing by the file's maximum value.
//! Colour PNGs are reduced to luma with weights 0.299/0.587/0.114.
//! Writing picks the format from the extension and stores `round(v * 255)`.

use std::fs;
use std::io::Cursor;
use std::path::Path;

use crate::error::{Error, Result};
use crate::image::Image;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormat {
    Pgm,
    Png,
}

impl ImageFormat {
    pub fn from_path(path: &Path) -> Option<Self> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "pgm" | "pnm" => Some(ImageFormat::Pgm),
            "png" => Some(ImageFormat::Png),
            _ => None,
        }
    }
}

pub fn load_image(path: impl AsRef<Path>) -> Result<Image> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    if bytes.starts_with(b"\x89PNG") {
        decode_png(path, &bytes)
    } else if bytes.starts_with(b"P2") || bytes.starts_with(b"P5") {
        decode_pgm(path, &bytes)
    } else if bytes.first() == Some(&b'P') {
        Err(Error::MalformedHeader {
            path: path.into(),
            reason: format!(
                "unsupported netpbm magic `{}`",
                String::from_utf8_lossy(&bytes[..bytes.len().min(2)])
            ),
        })
    } else {
        Err(Error::UnsupportedFormat(path.into()))
    }
}

pub fn save_image(img: &Image, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes = match ImageFormat::from_path(path) {
        Some(ImageFormat::Pgm) => encode_pgm(img),
        Some(ImageFormat::Png) => encode_png(img)?,
        None => return Err(Error::UnsupportedFormat(path.into())),
    };
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Binary PGM, maxval 255.
pub fn encode_pgm(img: &Image) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend(img.to_u8());
    out
}

pub fn encode_png(img: &Image) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    {
        let mut enc = png::Encoder::new(&mut out, img.width() as u32, img.height() as u32);
        enc.set_color(png::ColorType::Grayscale);
        enc.set_depth(png::BitDepth::Eight);
        let mut writer = enc.write_header()?;
        writer.write_image_data(&img.to_u8())?;
    }
    Ok(out)
}

struct HeaderCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl HeaderCursor<'_> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&b| b != b'\n') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self) -> Option<u64> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()?
            .parse()
            .ok()
    }
}

pub(crate) fn decode_pgm(path: &Path, bytes: &[u8]) -> Result<Image> {
    let malformed = |reason: &str| Error::MalformedHeader {
        path: path.into(),
        reason: reason.into(),
    };
    let ascii = &bytes[..2] == b"P2";
    let mut cur = HeaderCursor { bytes, pos: 2 };
    let width = cur.number().ok_or_else(|| malformed("missing width"))? as usize;
    let height = cur.number().ok_or_else(|| malformed("missing height"))? as usize;
    let maxval = cur.number().ok_or_else(|| malformed("missing maxval"))?;
    if width == 0 || height == 0 {
        return Err(malformed("zero dimension"));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(Error::UnsupportedBitDepth {
            path: path.into(),
            detail: format!("maxval {maxval}"),
        });
    }
    let n = width
        .checked_mul(height)
        .ok_or_else(|| malformed("dimensions overflow"))?;
    let scale = maxval as f64;
    let mut data = Vec::with_capacity(n);

    if ascii {
        for _ in 0..n {
            cur.skip_space_and_comments();
            if cur.pos >= bytes.len() {
                return Err(Error::Truncated {
                    path: path.into(),
                    offset: cur.pos,
                });
            }
            let v = cur
                .number()
                .ok_or_else(|| malformed(&format!("bad sample at byte offset {}", cur.pos)))?;
            if v > maxval {
                return Err(malformed(&format!("sample {v} exceeds maxval {maxval}")));
            }
            data.push(v as f64 / scale);
        }
    } else {
        // Exactly one whitespace byte separates maxval from the raster.
        if !bytes.get(cur.pos).is_some_and(u8::is_ascii_whitespace) {
            return Err(malformed("missing whitespace after maxval"));
        }
        let start = cur.pos + 1;
        let sample_bytes = if maxval < 256 { 1 } else { 2 };
        let need = n * sample_bytes;
        let raster = &bytes[start.min(bytes.len())..];
        if raster.len() < need {
            return Err(Error::Truncated {
                path: path.into(),
                offset: start + raster.len(),
            });
        }
        for i in 0..n {
            let v = if sample_bytes == 1 {
                u64::from(raster[i])
            } else {
                u64::from(u16::from_be_bytes([raster[2 * i], raster[2 * i + 1]]))
            };
            if v > maxval {
                return Err(malformed(&format!("sample {v} exceeds maxval {maxval}")));
            }
            data.push(v as f64 / scale);
        }
    }
    Image::new(width, height, data)
}

fn decode_png(path: &Path, bytes: &[u8]) -> Result<Image> {
    let mut decoder = png::Decoder::new(Cursor::new(bytes));
    decoder.set_transformations(png::Transformations::EXPAND);
    let mut reader = decoder.read_info()?;
    let (color, depth) = reader.output_color_type();
    if depth != png::BitDepth::Eight {
        return Err(Error::UnsupportedBitDepth {
            path: path.into(),
            detail: format!("{depth:?} png"),
        });
    }
    let size = reader
        .output_buffer_size()
        .ok_or_else(|| Error::MalformedHeader {
            path: path.into(),
            reason: "png too large".into(),
        })?;
    let mut buf = vec![0; size];
    let info = reader.next_frame(&mut buf)?;
    let (w, h) = (info.width as usize, info.height as usize);
    let channels = color.samples();
    let luma = |px: &[u8]| match px.len() {
        1 | 2 => f64::from(px[0]) / 255.0,
        _ => {
            (0.299 * f64::from(px[0]) + 0.587 * f64::from(px[1]) + 0.114 * f64::from(px[2])) / 255.0
        }
    };
    let mut data = Vec::with_capacity(w * h);
    for row in buf[..info.buffer_size()].chunks_exact(info.line_size) {
        data.extend(
            row[..w * channels]
                .chunks_exact(channels)
                .map(|px| luma(px).clamp(0.0, 1.0)),
        );
    }
    Image::new(w, h, data)
}
