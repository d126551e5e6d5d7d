//! Runs the four detectors on a synthetic cracked tile and prints residual
//! counts, kernel passes and timings.
//!
//! ```bash
//! cargo run -p tileguard --release --example detection_methods
//! ```

use tileguard::pipelines::{ErosionVariant, PipelineOptions};
use tileguard::synth::DefectKind;
use tileguard::{
    generate_reference, inject_defect, run_method, DefectSpec, DetectionMethod, StructuringElement,
    Threshold, TileSpec,
};

fn main() -> tileguard::Result<()> {
    let spec = TileSpec {
        noise_amplitude: 0.03,
        seed: 11,
        ..TileSpec::plain(256, 256, 0.8)
    };
    let reference = generate_reference(&spec)?;
    let crack = DefectSpec {
        kind: DefectKind::Crack {
            vertices: vec![(30, 40), (120, 140), (220, 150)],
            thickness: 2.5,
        },
        intensity: 0.1,
        seed: 0,
    };
    let cracked = inject_defect(&reference, &crack)?;
    let se = StructuringElement::square(3)?;

    for variant in [ErosionVariant::Literal, ErosionVariant::Difference] {
        let opts = PipelineOptions {
            erosion_variant: variant,
            binarize_all: false,
        };
        println!("erosion variant: {variant}");
        println!(
            "  {:<10} {:>9} {:>9} {:>5} {:>10}",
            "method", "ref", "test", "ops", "secs"
        );
        for method in DetectionMethod::ALL {
            let r = run_method(method, &reference, &se, Threshold::Otsu, &opts)?;
            let t = run_method(method, &cracked, &se, Threshold::Otsu, &opts)?;
            println!(
                "  {:<10} {:>9} {:>9} {:>5} {:>10.5}",
                method.name(),
                r.count,
                t.count,
                t.elementary_ops,
                t.elapsed_seconds
            );
        }
    }
    Ok(())
}
