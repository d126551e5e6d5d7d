use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tileguard::batch::{generate_fixtures, inspect_and_write, FixtureSpec, RunConfig};
use tileguard::pipelines::{DetectionMethod, ErosionVariant, PipelineOptions};
use tileguard::report::{emit_plot_data, load_records, MetricPair, ReportFormat};
use tileguard::{SeShape, Threshold};

#[derive(Parser)]
#[command(
    name = "tileguard",
    version,
    about = "Morphological tile defect inspection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare test tiles against a defect-free reference tile.
    Inspect {
        #[arg(long)]
        reference: PathBuf,
        /// Test images or directories of images.
        #[arg(long = "test", required = true, num_args = 1..)]
        tests: Vec<PathBuf>,
        /// all, dilation, erosion, smee or boundary; repeatable or comma separated.
        #[arg(long = "method", default_value = "all", value_delimiter = ',')]
        methods: Vec<String>,
        #[arg(long, default_value = "square:3")]
        se: SeShape,
        /// otsu or fixed:<v>
        #[arg(long, default_value = "otsu")]
        threshold: Threshold,
        #[arg(long, default_value = "literal")]
        erosion_variant: ErosionVariant,
        #[arg(long, default_value = "residual")]
        metric_pair: MetricPair,
        /// Treat |delta_d| <= k as defect-free.
        #[arg(long, default_value_t = 0)]
        count_tolerance: u64,
        /// Binarize the input for SMEE and boundary extraction as well.
        #[arg(long)]
        binarize_all: bool,
        #[arg(long, default_value = "json")]
        format: ReportFormat,
        /// Report path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dump_residuals: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Render synthetic reference and defective tiles from a JSON spec.
    Generate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write psnr.csv, mse.csv and time.csv from a report.
    Plotdata {
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_methods(names: &[String]) -> tileguard::Result<Vec<DetectionMethod>> {
    let mut out = Vec::new();
    for name in names {
        if name == "all" {
            out.extend(DetectionMethod::ALL);
        } else {
            out.push(name.parse()?);
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> tileguard::Result<u8> {
    match cli.command {
        Command::Inspect {
            reference,
            tests,
            methods,
            se,
            threshold,
            erosion_variant,
            metric_pair,
            count_tolerance,
            binarize_all,
            format,
            out,
            dump_residuals,
            jobs,
        } => {
            let cfg = RunConfig {
                methods: parse_methods(&methods)?,
                se,
                threshold,
                options: PipelineOptions {
                    erosion_variant,
                    binarize_all,
                },
                metric_pair,
                count_tolerance,
                format,
                out,
                dump_residuals,
                jobs,
                ..RunConfig::new(reference, tests)
            };
            let report = inspect_and_write(&cfg)?;
            if cfg.out.is_none() {
                print!("{}", report.render(cfg.format)?);
            }
            Ok(report.exit_code() as u8)
        }
        Command::Generate { spec, out } => {
            for path in generate_fixtures(&FixtureSpec::load(spec)?, out)? {
                println!("{}", path.display());
            }
            Ok(0)
        }
        Command::Plotdata { report, out } => {
            for path in emit_plot_data(&load_records(report)?, out)? {
                println!("{}", path.display());
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("tileguard: {e}");
            ExitCode::from(2)
        }
    }
}
