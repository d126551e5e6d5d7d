//! Loads a PGM/PNG image, binarizes it with Otsu's method and writes the
//! result next to it. Without an argument a demo image is written first.
//!
//! ```bash
//! cargo run -p tileguard --example image_io -- path/to/tile.png
//! ```

use std::path::PathBuf;

use tileguard::image::otsu_level;
use tileguard::{binarize, load_image, pixel_count, save_image, Image, Threshold};

fn main() -> tileguard::Result<()> {
    let input = match std::env::args().nth(1) {
        Some(p) => PathBuf::from(p),
        None => {
            let path = std::env::temp_dir().join("tileguard-demo.png");
            let demo = Image::from_fn(64, 48, |r, c| {
                if (r as f64 - 24.0).hypot(c as f64 - 32.0) < 14.0 {
                    0.8
                } else {
                    0.2
                }
            })?;
            save_image(&demo, &path)?;
            path
        }
    };

    let img = load_image(&input)?;
    let bin = binarize(&img, Threshold::Otsu);
    let out = input.with_extension("binary.pgm");
    save_image(&bin, &out)?;
    println!(
        "{}: {}x{}, otsu bin {:?}, {} foreground pixels -> {}",
        input.display(),
        img.width(),
        img.height(),
        otsu_level(&img),
        pixel_count(&bin),
        out.display()
    );
    Ok(())
}
