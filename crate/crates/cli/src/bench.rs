//! Corpus benchmarking: every method on every image, summarized as one table
//! per metric with a trailing `Average` row.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use histeq::pnm::{load_pnm, save_pnm, PnmEncoding, PnmImage};
use histeq::{ColorMode, Method, MethodSpec, MetricReport};
use rayon::prelude::*;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReportFormat {
    Csv,
    Markdown,
}

impl ReportFormat {
    fn extension(self) -> &'static str {
        match self {
            ReportFormat::Csv => "csv",
            ReportFormat::Markdown => "md",
        }
    }
}

/// The four report tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Ambe,
    Psnr,
    Ssim,
    Entropy,
}

impl Metric {
    pub const ALL: [Metric; 4] = [Metric::Ambe, Metric::Psnr, Metric::Ssim, Metric::Entropy];

    pub fn file_stem(self) -> &'static str {
        match self {
            Metric::Ambe => "ambe",
            Metric::Psnr => "psnr",
            Metric::Ssim => "ssim",
            Metric::Entropy => "entropy",
        }
    }

    fn value(self, r: &MetricReport) -> f64 {
        match self {
            Metric::Ambe => r.ambe,
            Metric::Psnr => r.psnr,
            Metric::Ssim => r.ssim,
            Metric::Entropy => r.entropy_out,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub corpus_dir: PathBuf,
    pub methods: Vec<MethodSpec>,
    pub output_dir: PathBuf,
    pub formats: Vec<ReportFormat>,
    pub color: ColorMode,
}

impl BenchConfig {
    pub fn new(corpus_dir: impl Into<PathBuf>, output_dir: impl Into<PathBuf>) -> Self {
        Self {
            corpus_dir: corpus_dir.into(),
            methods: Method::ALL.into_iter().map(MethodSpec::new).collect(),
            output_dir: output_dir.into(),
            formats: vec![ReportFormat::Csv],
            color: ColorMode::PerChannel,
        }
    }
}

/// Methods in report column order, one entry per method.
pub fn canonical_methods(methods: &[MethodSpec]) -> Vec<MethodSpec> {
    let mut out: Vec<MethodSpec> = Vec::new();
    for spec in methods {
        if !out.iter().any(|s| s.method == spec.method) {
            out.push(*spec);
        }
    }
    out.sort_by_key(|s| s.method);
    out
}

/// A corpus image and the file it came from.
#[derive(Debug, Clone)]
pub struct CorpusImage {
    pub name: String,
    pub file_name: String,
    pub image: PnmImage,
}

/// Loads every decodable file of `dir` in file-name order. Undecodable files
/// are returned as warnings.
pub fn load_corpus(dir: &Path) -> Result<(Vec<CorpusImage>, Vec<String>), CliError> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::io(dir, e))?;
    let mut paths = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| CliError::io(dir, e))?;
        let path = entry.path();
        let hidden = entry.file_name().to_string_lossy().starts_with('.');
        if path.is_file() && !hidden {
            paths.push(path);
        }
    }
    paths.sort();

    let mut images = Vec::new();
    let mut warnings = Vec::new();
    for path in paths {
        let loaded = std::fs::read(&path)
            .map_err(|e| e.to_string())
            .and_then(|bytes| load_pnm(&bytes).map_err(|e| e.to_string()));
        match loaded {
            Ok(image) => images.push(CorpusImage {
                name: path.file_stem().unwrap().to_string_lossy().into_owned(),
                file_name: path.file_name().unwrap().to_string_lossy().into_owned(),
                image,
            }),
            Err(e) => warnings.push(format!("skipping {}: {e}", path.display())),
        }
    }
    Ok((images, warnings))
}

/// Metric reports for every (image, method) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchResults {
    pub methods: Vec<MethodSpec>,
    pub images: Vec<String>,
    /// `rows[i][j]`: image `i`, method `j`.
    pub rows: Vec<Vec<MetricReport>>,
}

fn format_value(v: f64) -> String {
    if v.is_infinite() && v > 0.0 {
        "inf".to_string()
    } else {
        format!("{v:.2}")
    }
}

impl BenchResults {
    fn columns(&self, metric: Metric) -> Vec<String> {
        let mut cols = vec!["Images".to_string()];
        if metric == Metric::Entropy {
            cols.push("Original".to_string());
        }
        cols.extend(self.methods.iter().map(MethodSpec::label));
        cols
    }

    fn row_values(&self, metric: Metric, row: &[MetricReport]) -> Vec<f64> {
        let mut vals = Vec::with_capacity(row.len() + 1);
        if metric == Metric::Entropy {
            vals.push(row.first().map_or(0.0, |r| r.entropy_in));
        }
        vals.extend(row.iter().map(|r| metric.value(r)));
        vals
    }

    /// Table cells: header, one row per image, then the column means.
    pub fn table(&self, metric: Metric) -> Vec<Vec<String>> {
        let mut table = vec![self.columns(metric)];
        let mut sums: Vec<f64> = Vec::new();
        for (name, row) in self.images.iter().zip(&self.rows) {
            let vals = self.row_values(metric, row);
            sums.resize(vals.len(), 0.0);
            for (s, v) in sums.iter_mut().zip(&vals) {
                *s += v;
            }
            let mut cells = vec![name.clone()];
            cells.extend(vals.into_iter().map(format_value));
            table.push(cells);
        }
        let n = self.images.len() as f64;
        let mut avg = vec!["Average".to_string()];
        avg.extend(sums.into_iter().map(|s| format_value(s / n)));
        table.push(avg);
        table
    }

    /// Mean of one metric per method column.
    pub fn averages(&self, metric: Metric) -> Vec<f64> {
        (0..self.methods.len())
            .map(|j| {
                self.rows.iter().map(|r| metric.value(&r[j])).sum::<f64>() / self.rows.len() as f64
            })
            .collect()
    }

    pub fn render(&self, metric: Metric, format: ReportFormat) -> String {
        let table = self.table(metric);
        let mut out = String::new();
        match format {
            ReportFormat::Csv => {
                for row in table {
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
            }
            ReportFormat::Markdown => {
                for (i, row) in table.iter().enumerate() {
                    let _ = writeln!(out, "| {} |", row.join(" | "));
                    if i == 0 {
                        let _ = writeln!(out, "|{}", "---|".repeat(row.len()));
                    }
                }
            }
        }
        out
    }
}

/// Enhances one image with every method, returning outputs and metrics.
pub fn evaluate(
    image: &PnmImage,
    methods: &[MethodSpec],
    color: ColorMode,
) -> Vec<(PnmImage, MetricReport)> {
    let input = image.metric_plane();
    methods
        .iter()
        .map(|spec| {
            let out = image.enhance(spec, color);
            let report = MetricReport::compute(&input, &out.metric_plane())
                .expect("enhancement preserves shape");
            (out, report)
        })
        .collect()
}

/// Benchmarks already-loaded images without touching the file system.
pub fn bench_images(
    images: &[CorpusImage],
    methods: &[MethodSpec],
    color: ColorMode,
) -> BenchResults {
    let methods = canonical_methods(methods);
    let rows = images
        .par_iter()
        .map(|img| {
            evaluate(&img.image, &methods, color)
                .into_iter()
                .map(|(_, r)| r)
                .collect()
        })
        .collect();
    BenchResults {
        images: images.iter().map(|i| i.name.clone()).collect(),
        methods,
        rows,
    }
}

#[derive(Debug, Clone)]
pub struct BenchSummary {
    pub results: BenchResults,
    pub warnings: Vec<String>,
    pub report_files: Vec<PathBuf>,
}

/// Loads the corpus, writes every enhanced image under
/// `output_dir/<method>/` and the four metric reports into `output_dir`.
pub fn run_bench(config: &BenchConfig) -> Result<BenchSummary, CliError> {
    if config.methods.is_empty() {
        return Err(CliError::Usage("at least one method is required".into()));
    }
    let (images, warnings) = load_corpus(&config.corpus_dir)?;
    if images.is_empty() {
        return Err(CliError::NoImages(config.corpus_dir.clone()));
    }
    let methods = canonical_methods(&config.methods);
    let out = &config.output_dir;
    for spec in &methods {
        let dir = out.join(spec.method.slug());
        std::fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    }

    let rows = images
        .par_iter()
        .map(|img| {
            let mut reports = Vec::with_capacity(methods.len());
            for (spec, (enhanced, report)) in
                methods
                    .iter()
                    .zip(evaluate(&img.image, &methods, config.color))
            {
                let path = out.join(spec.method.slug()).join(&img.file_name);
                std::fs::write(&path, save_pnm(&enhanced, PnmEncoding::Binary))
                    .map_err(|e| CliError::io(&path, e))?;
                reports.push(report);
            }
            Ok(reports)
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let results = BenchResults {
        images: images.into_iter().map(|i| i.name).collect(),
        methods,
        rows,
    };
    let mut report_files = Vec::new();
    for metric in Metric::ALL {
        for &format in &config.formats {
            let path = out.join(format!("{}.{}", metric.file_stem(), format.extension()));
            std::fs::write(&path, results.render(metric, format))
                .map_err(|e| CliError::io(&path, e))?;
            report_files.push(path);
        }
    }
    Ok(BenchSummary {
        results,
        warnings,
        report_files,
    })
}
