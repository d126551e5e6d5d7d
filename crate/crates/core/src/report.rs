//! Inspection reports and plot-ready CSV tables.
//!
//! JSON reports are UTF-8 with keys in a fixed order:
//!
//! ```text
//! { "reference": str,
//!   "settings": { "se", "threshold", "erosion_variant", "binarize_all",
//!                 "metric_pair", "count_tolerance" },
//!   "records": [ { "tile", "method", "reference_count", "test_count",
//!                  "delta_d", "verdict", "mse", "psnr_db",
//!                  "elapsed_seconds", "elementary_ops" } ] }
//! ```
//!
//! CSV reports carry one header row with the record keys in the same order.
//! `psnr_db` is a number, or the string `"Infinite"` for identical images.
//! `elapsed_seconds` is the only field that varies between identical runs;
//! [`Report::masked`] zeroes it for golden-file comparison.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{InspectionRecord, Psnr, Verdict};
use crate::pipelines::{DetectionMethod, ErosionVariant};
use crate::se::SeShape;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricPair {
    /// Reference residual vs test residual, per method.
    #[default]
    Residual,
    /// Reference input vs test input.
    Input,
}

impl std::str::FromStr for MetricPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "residual" => Ok(MetricPair::Residual),
            "input" => Ok(MetricPair::Input),
            _ => Err(Error::Config(format!("unknown metric pair `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(Error::Config(format!("unknown report format `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportSettings {
    pub se: SeShape,
    pub threshold: String,
    pub erosion_variant: ErosionVariant,
    pub binarize_all: bool,
    pub metric_pair: MetricPair,
    pub count_tolerance: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub reference: String,
    pub settings: ReportSettings,
    pub records: Vec<InspectionRecord>,
}

impl Report {
    pub fn any_defective(&self) -> bool {
        self.records.iter().any(|r| r.verdict == Verdict::Defective)
    }

    /// 0 when every record is defect-free, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.any_defective())
    }

    /// Copy with every `elapsed_seconds` set to zero.
    pub fn masked(&self) -> Report {
        let mut out = self.clone();
        for r in &mut out.records {
            r.elapsed_seconds = 0.0;
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_csv(&self) -> Result<String> {
        records_to_csv(&self.records)
    }

    pub fn render(&self, format: ReportFormat) -> Result<String> {
        match format {
            ReportFormat::Json => self.to_json(),
            ReportFormat::Csv => self.to_csv(),
        }
    }

    pub fn write(&self, format: ReportFormat, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.render(format)?).map_err(|e| Error::io(path, e))
    }

    pub fn load_json(path: impl AsRef<Path>) -> Result<Report> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}

pub fn records_to_csv(records: &[InspectionRecord]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    w.write_record(RECORD_COLUMNS)?;
    for r in records {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv writer emits utf-8"))
}

pub const RECORD_COLUMNS: [&str; 10] = [
    "tile",
    "method",
    "reference_count",
    "test_count",
    "delta_d",
    "verdict",
    "mse",
    "psnr_db",
    "elapsed_seconds",
    "elementary_ops",
];

pub fn records_from_csv(text: &str) -> Result<Vec<InspectionRecord>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    rdr.deserialize().map(|r| r.map_err(Error::from)).collect()
}

/// Loads records from a JSON report, or a CSV report when the path ends in `.csv`.
pub fn load_records(path: impl AsRef<Path>) -> Result<Vec<InspectionRecord>> {
    let path = path.as_ref();
    if path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
    {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        records_from_csv(&text)
    } else {
        Ok(Report::load_json(path)?.records)
    }
}

/// The three plot tables, as `(file name, csv text)`.
///
/// Rows are tiles in first-seen order and columns are the methods present,
/// in [`DetectionMethod::ALL`] order. Missing cells are empty.
pub fn plot_tables(records: &[InspectionRecord]) -> Result<Vec<(&'static str, String)>> {
    if records.is_empty() {
        return Err(Error::EmptyRecords);
    }
    let mut tiles: Vec<&str> = Vec::new();
    for r in records {
        if !tiles.contains(&r.tile.as_str()) {
            tiles.push(&r.tile);
        }
    }
    let methods: Vec<DetectionMethod> = DetectionMethod::ALL
        .into_iter()
        .filter(|m| records.iter().any(|r| r.method == *m))
        .collect();

    let table = |value: &dyn Fn(&InspectionRecord) -> String| -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["tile".to_string()];
        header.extend(methods.iter().map(|m| m.name().to_string()));
        w.write_record(&header)?;
        for tile in &tiles {
            let mut row = vec![tile.to_string()];
            for m in &methods {
                let cell = records
                    .iter()
                    .find(|r| r.tile == *tile && r.method == *m)
                    .map(value)
                    .unwrap_or_default();
                row.push(cell);
            }
            w.write_record(&row)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv writer emits utf-8"))
    };

    Ok(vec![
        (
            "psnr.csv",
            table(&|r| match r.psnr_db {
                Psnr::Finite(v) => v.to_string(),
                Psnr::Infinite => "inf".into(),
            })?,
        ),
        ("mse.csv", table(&|r| r.mse.to_string())?),
        ("time.csv", table(&|r| r.elapsed_seconds.to_string())?),
    ])
}

/// Writes `psnr.csv`, `mse.csv` and `time.csv` into `dir`.
pub fn emit_plot_data(records: &[InspectionRecord], dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    let tables = plot_tables(records)?;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    tables
        .into_iter()
        .map(|(name, text)| {
            let path = dir.join(name);
            fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
            Ok(path)
        })
        .collect()
}
