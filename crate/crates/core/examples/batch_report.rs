//! Generates a fixture corpus, inspects it against the reference and writes
//! JSON/CSV reports plus the plot tables.
//!
//! ```bash
//! cargo run -p tileguard --release --example batch_report -- /tmp/tileguard-run
//! ```

use std::path::PathBuf;

use tileguard::batch::{generate_fixtures, inspect_and_write, RunConfig};
use tileguard::report::{emit_plot_data, ReportFormat};
use tileguard::FixtureSpec;

fn main() -> tileguard::Result<()> {
    let root = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("tileguard-run"));
    let tiles = root.join("tiles");
    let spec = FixtureSpec::load(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/data/tiles.json"
    ))?;
    let written = generate_fixtures(&spec, &tiles)?;
    let reference = written[0].clone();

    let mut cfg = RunConfig::new(&reference, written[1..].to_vec());
    cfg.out = Some(root.join("report.json"));
    let report = inspect_and_write(&cfg)?;
    report.write(ReportFormat::Csv, root.join("report.csv"))?;
    emit_plot_data(&report.records, root.join("plots"))?;

    for r in &report.records {
        println!(
            "{:<40} {:<9} delta_d={:>6} {}",
            r.tile,
            r.method.name(),
            r.delta_d,
            r.verdict
        );
    }
    println!("exit code would be {}", report.exit_code());
    println!("outputs in {}", root.display());
    Ok(())
}
