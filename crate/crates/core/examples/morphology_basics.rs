//! Dilation, erosion, opening and closing on a small binary image.
//!
//! ```bash
//! cargo run -p tileguard --example morphology_basics
//! ```

use tileguard::{close, dilate, erode, open, Image, StructuringElement};

fn show(title: &str, img: &Image) {
    println!("{title}:");
    for r in 0..img.height() {
        let row: String = (0..img.width())
            .map(|c| if img.get(r, c) > 0.0 { '#' } else { '.' })
            .collect();
        println!("  {row}");
    }
}

fn main() -> tileguard::Result<()> {
    let rows = [
        "............",
        ".####.......",
        ".####...#...",
        ".##.#.......",
        ".####..###..",
        "......#####.",
        "..#...#####.",
        "......####..",
        "............",
    ];
    let img = Image::from_fn(12, rows.len(), |r, c| {
        f64::from(u8::from(rows[r].as_bytes()[c] == b'#'))
    })?;
    let se = StructuringElement::square(3)?;

    show("input", &img);
    show("dilate", &dilate(&img, &se));
    show("erode", &erode(&img, &se));
    show("open (specks removed)", &open(&img, &se));
    show("close (hole filled)", &close(&img, &se));

    let cross = StructuringElement::cross(3)?;
    show("dilate with cross:3", &dilate(&img, &cross));
    Ok(())
}
