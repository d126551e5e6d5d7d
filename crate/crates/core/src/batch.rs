//! Reference-vs-test tile inspection and fixture generation.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::{Image, Threshold};
use crate::io::{load_image, save_image, ImageFormat};
use crate::metrics::{build_record, InspectionRecord};
use crate::pipelines::{run_method, DetectionMethod, PipelineOptions, ResidualResult};
use crate::report::{MetricPair, Report, ReportFormat, ReportSettings};
use crate::se::{SeShape, StructuringElement};
use crate::synth::{generate_reference, inject_defect, DefectSpec, TileSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub reference: PathBuf,
    /// Test images, or directories scanned (non-recursively) for `.pgm`/`.png` files.
    pub tests: Vec<PathBuf>,
    pub methods: Vec<DetectionMethod>,
    pub se: SeShape,
    pub threshold: Threshold,
    pub options: PipelineOptions,
    pub metric_pair: MetricPair,
    pub count_tolerance: u64,
    pub format: ReportFormat,
    pub out: Option<PathBuf>,
    pub dump_residuals: Option<PathBuf>,
    /// Worker threads; 0 picks the rayon default.
    pub jobs: usize,
}

impl RunConfig {
    pub fn new(reference: impl Into<PathBuf>, tests: Vec<PathBuf>) -> Self {
        Self {
            reference: reference.into(),
            tests,
            methods: DetectionMethod::ALL.to_vec(),
            se: SeShape::default(),
            threshold: Threshold::Otsu,
            options: PipelineOptions::default(),
            metric_pair: MetricPair::Residual,
            count_tolerance: 0,
            format: ReportFormat::Json,
            out: None,
            dump_residuals: None,
            jobs: 0,
        }
    }

    fn validate(&self) -> Result<StructuringElement> {
        if self.methods.is_empty() {
            return Err(Error::Config("no detection method selected".into()));
        }
        if self.tests.is_empty() {
            return Err(Error::Config("no test images given".into()));
        }
        self.se.build()
    }

    fn settings(&self) -> ReportSettings {
        ReportSettings {
            se: self.se,
            threshold: self.threshold.to_string(),
            erosion_variant: self.options.erosion_variant,
            binarize_all: self.options.binarize_all,
            metric_pair: self.metric_pair,
            count_tolerance: self.count_tolerance,
        }
    }
}

/// Expands directories into their image files, sorted by path.
pub fn collect_test_paths(inputs: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let mut found: Vec<PathBuf> = fs::read_dir(input)
                .map_err(|e| Error::io(input, e))?
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|p| p.is_file() && ImageFormat::from_path(p).is_some())
                .collect();
            found.sort();
            out.extend(found);
        } else {
            out.push(input.clone());
        }
    }
    Ok(out)
}

fn metric_image<'a>(pair: MetricPair, input: &'a Image, result: &'a ResidualResult) -> &'a Image {
    match pair {
        MetricPair::Residual => &result.residual,
        MetricPair::Input => input,
    }
}

fn dump_name(tile: &str, method: DetectionMethod) -> String {
    let stem: String = tile
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect();
    format!("{stem}_{}.pgm", method.name())
}

/// Runs every selected method on the reference and each test tile.
///
/// Records are sorted by tile path, then method name.
pub fn inspect(cfg: &RunConfig) -> Result<Report> {
    let se = cfg.validate()?;
    let mut methods = cfg.methods.clone();
    methods.sort_by_key(|m| m.name());
    methods.dedup();

    let reference = load_image(&cfg.reference)?;
    let ref_results = methods
        .iter()
        .map(|&m| run_method(m, &reference, &se, cfg.threshold, &cfg.options))
        .collect::<Result<Vec<_>>>()?;

    if let Some(dir) = &cfg.dump_residuals {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        for r in &ref_results {
            save_image(
                &r.residual,
                dir.join(format!("reference_{}.pgm", r.method.name())),
            )?;
        }
    }

    let tiles = collect_test_paths(&cfg.tests)?;
    let inspect_tile = |path: &PathBuf| -> Result<Vec<InspectionRecord>> {
        let tile = path.display().to_string();
        let image = load_image(path)?;
        if image.dimensions() != reference.dimensions() {
            return Err(Error::DimensionMismatch {
                left: reference.dimensions(),
                right: image.dimensions(),
            });
        }
        methods
            .iter()
            .zip(&ref_results)
            .map(|(&method, ref_result)| {
                let result = run_method(method, &image, &se, cfg.threshold, &cfg.options)?;
                if let Some(dir) = &cfg.dump_residuals {
                    save_image(&result.residual, dir.join(dump_name(&tile, method)))?;
                }
                build_record(
                    tile.clone(),
                    method,
                    ref_result,
                    &result,
                    (
                        metric_image(cfg.metric_pair, &reference, ref_result),
                        metric_image(cfg.metric_pair, &image, &result),
                    ),
                    cfg.count_tolerance,
                )
            })
            .collect()
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let per_tile: Vec<Result<Vec<InspectionRecord>>> =
        pool.install(|| tiles.par_iter().map(inspect_tile).collect());

    let mut records = Vec::new();
    for r in per_tile {
        records.extend(r?);
    }
    records.sort_by(|a, b| (&a.tile, a.method.name()).cmp(&(&b.tile, b.method.name())));

    Ok(Report {
        reference: cfg.reference.display().to_string(),
        settings: cfg.settings(),
        records,
    })
}

/// [`inspect`], then writes the report to `cfg.out` (when set).
pub fn inspect_and_write(cfg: &RunConfig) -> Result<Report> {
    let report = inspect(cfg)?;
    if let Some(out) = &cfg.out {
        report.write(cfg.format, out)?;
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FixtureFormat {
    #[default]
    Pgm,
    Png,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedDefect {
    pub name: String,
    pub defect: DefectSpec,
}

/// Contents of a `tileguard generate --spec` file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureSpec {
    pub reference: TileSpec,
    #[serde(default)]
    pub defects: Vec<NamedDefect>,
    #[serde(default)]
    pub format: FixtureFormat,
}

impl FixtureSpec {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// Writes `reference.<ext>` plus one `<name>.<ext>` per defect into `dir`.
pub fn generate_fixtures(spec: &FixtureSpec, dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    for d in &spec.defects {
        let ok = !d.name.is_empty()
            && d.name != "reference"
            && d.name
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_');
        if !ok {
            return Err(Error::Config(format!("bad defect name `{}`", d.name)));
        }
    }
    let ext = match spec.format {
        FixtureFormat::Pgm => "pgm",
        FixtureFormat::Png => "png",
    };
    let base = generate_reference(&spec.reference)?;
    let defective = spec
        .defects
        .iter()
        .map(|d| Ok((d.name.as_str(), inject_defect(&base, &d.defect)?)))
        .collect::<Result<Vec<_>>>()?;

    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    for (name, img) in
        std::iter::once(("reference", &base)).chain(defective.iter().map(|(n, i)| (*n, i)))
    {
        let path = dir.join(format!("{name}.{ext}"));
        save_image(img, &path)?;
        written.push(path);
    }
    Ok(written)
}
