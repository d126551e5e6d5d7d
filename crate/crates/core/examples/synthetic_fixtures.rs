//! Renders the fixture set described in `examples/data/tiles.json`.
//!
//! ```bash
//! cargo run -p tileguard --example synthetic_fixtures -- /tmp/tiles
//! ```

use std::path::PathBuf;

use tileguard::batch::generate_fixtures;
use tileguard::FixtureSpec;

fn main() -> tileguard::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("tileguard-fixtures"));
    let spec_path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/tiles.json");
    let spec = FixtureSpec::load(spec_path)?;
    for path in generate_fixtures(&spec, &out)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
