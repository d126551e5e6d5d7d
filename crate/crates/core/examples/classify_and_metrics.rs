//! Pixel-count classification and PSNR/MSE for a set of defect tiles.
//!
//! ```bash
//! cargo run -p tileguard --example classify_and_metrics
//! ```

use tileguard::synth::DefectClass;
use tileguard::{
    build_record, generate_reference, inject_defect, psnr, run_method, DefectSpec, DetectionMethod,
    PipelineOptions, StructuringElement, Threshold, TileSpec,
};

fn main() -> tileguard::Result<()> {
    let base = generate_reference(&TileSpec::plain(96, 96, 1.0))?;
    let se = StructuringElement::square(3)?;
    let opts = PipelineOptions::default();

    let classes = [
        ("crack", DefectClass::Crack),
        ("pinhole", DefectClass::Pinhole),
        ("blob", DefectClass::Blob),
        ("spot", DefectClass::Spot),
    ];
    println!(
        "{:<8} {:<9} {:>6} {:>6} {:>7} {:<11} {:>10} {:>9}",
        "defect", "method", "R1", "D1", "delta", "verdict", "mse", "psnr_db"
    );
    for (seed, (name, class)) in classes.into_iter().enumerate() {
        let tile = inject_defect(&base, &DefectSpec::random(class, 96, 96, 0.0, seed as u64))?;
        for method in DetectionMethod::ALL {
            let r = run_method(method, &base, &se, Threshold::Otsu, &opts)?;
            let t = run_method(method, &tile, &se, Threshold::Otsu, &opts)?;
            let rec = build_record(name, method, &r, &t, (&r.residual, &t.residual), 0)?;
            println!(
                "{:<8} {:<9} {:>6} {:>6} {:>7} {:<11} {:>10.6} {:>9}",
                name,
                method.name(),
                rec.reference_count,
                rec.test_count,
                rec.delta_d,
                rec.verdict.to_string(),
                rec.mse,
                format!("{:.4}", rec.psnr_db.as_f64()),
            );
        }
    }

    // The same MSE expressed against an 8-bit peak.
    println!("psnr(0.01, max 1) = {}", psnr(0.01, 1.0)?);
    println!(
        "psnr(0.01 * 255^2, max 255) = {}",
        psnr(0.01 * 255.0 * 255.0, 255.0)?
    );
    Ok(())
}
