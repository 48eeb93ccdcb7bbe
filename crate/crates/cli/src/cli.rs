//! Argument parsing and the four subcommands.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use histeq::equalize::{PminRule, DEFAULT_RECURSION};
use histeq::pnm::{load_pnm, save_pnm, PnmEncoding, PnmImage};
use histeq::{ColorMode, Method, MethodSpec, MetricReport, RswheOptions};

use crate::bench::{run_bench, BenchConfig, ReportFormat};
use crate::corpus::{write_corpus, CorpusSpec};
use crate::error::CliError;
use crate::histdump;

#[derive(Debug, Parser)]
#[command(
    name = "histeq",
    version,
    about = "Histogram-equalization contrast enhancement"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enhance one image and print its metrics as a CSV line
    /// (ambe,psnr,ssim,entropy_in,entropy_out).
    Enhance(EnhanceArgs),
    /// Run methods over a directory of images and write metric reports.
    Bench(BenchArgs),
    /// Dump input/output histograms and the lookup table as CSV.
    Histdump(HistdumpArgs),
    /// Write a seeded synthetic corpus of PGM images.
    GenCorpus(GenCorpusArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    He,
    Bbhe,
    Dsihe,
    Rmshe,
    Rsihe,
    Mmbebhe,
    #[value(name = "rswhe-m")]
    RswheM,
    #[value(name = "rswhe-d")]
    RswheD,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::He => Method::He,
            MethodArg::Bbhe => Method::Bbhe,
            MethodArg::Dsihe => Method::Dsihe,
            MethodArg::Rmshe => Method::Rmshe,
            MethodArg::Rsihe => Method::Rsihe,
            MethodArg::Mmbebhe => Method::Mmbebhe,
            MethodArg::RswheM => Method::RswheMean,
            MethodArg::RswheD => Method::RswheMedian,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ColorArg {
    PerChannel,
    Luma,
}

impl From<ColorArg> for ColorMode {
    fn from(c: ColorArg) -> Self {
        match c {
            ColorArg::PerChannel => ColorMode::PerChannel,
            ColorArg::Luma => ColorMode::Luma,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PminArg {
    Occupied,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Markdown,
}

/// Parameters shared by every method-driven command.
#[derive(Debug, Clone, Args)]
pub struct MethodParams {
    /// Recursion depth for rmshe, rsihe and the rswhe variants.
    #[arg(long = "r", default_value_t = DEFAULT_RECURSION)]
    pub recursion: u32,
    /// Override of the RSWHE beta constant.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Bins defining p_min for RSWHE weighting.
    #[arg(long, value_enum, default_value_t = PminArg::Occupied)]
    pub pmin: PminArg,
}

impl MethodParams {
    fn spec(&self, method: MethodArg) -> Result<MethodSpec, CliError> {
        if let Some(b) = self.beta {
            if !(b.is_finite() && b >= 0.0) {
                return Err(CliError::Usage(format!(
                    "--beta must be a non-negative number, got {b}"
                )));
            }
        }
        let pmin = match self.pmin {
            PminArg::Occupied => PminRule::Occupied,
            PminArg::All => PminRule::AllBins,
        };
        Ok(MethodSpec::new(method.into())
            .with_recursion(self.recursion)
            .with_rswhe(RswheOptions {
                beta: self.beta,
                pmin,
            }))
    }
}

#[derive(Debug, Args)]
pub struct EnhanceArgs {
    #[arg(long, value_enum)]
    pub method: MethodArg,
    #[command(flatten)]
    pub params: MethodParams,
    #[arg(long, value_enum, default_value_t = ColorArg::PerChannel)]
    pub color: ColorArg,
    /// Write plain (ASCII) instead of raw Netpbm.
    #[arg(long)]
    pub plain: bool,
    pub input: PathBuf,
    pub output: Option<PathBuf>,
    /// Output file, alternative to the positional argument.
    #[arg(long = "out")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Directory of PGM/PPM images.
    pub corpus: PathBuf,
    /// Methods to run (repeatable); defaults to all eight.
    #[arg(long, value_enum)]
    pub method: Vec<MethodArg>,
    #[command(flatten)]
    pub params: MethodParams,
    #[arg(long, value_enum, default_value_t = ColorArg::PerChannel)]
    pub color: ColorArg,
    /// Report formats (repeatable); defaults to csv.
    #[arg(long, value_enum)]
    pub format: Vec<FormatArg>,
    /// Directory receiving reports and enhanced images.
    #[arg(long = "out", default_value = "bench-out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct HistdumpArgs {
    #[arg(long, value_enum)]
    pub method: MethodArg,
    #[command(flatten)]
    pub params: MethodParams,
    pub input: PathBuf,
    pub output: Option<PathBuf>,
    #[arg(long = "out")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenCorpusArgs {
    #[arg(long = "out")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    /// Width and height in pixels.
    #[arg(long, default_value_t = 256)]
    pub size: usize,
    #[arg(long, default_value_t = 256)]
    pub levels: u32,
}

/// Replaces every `@file` argument by the whitespace-separated tokens of the
/// file's lines. Blank lines and lines starting with `#` are skipped.
pub fn expand_arg_files(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let mut out = Vec::with_capacity(args.len());
    for (i, arg) in args.into_iter().enumerate() {
        match arg.to_str().and_then(|s| s.strip_prefix('@')) {
            Some(path) if i > 0 && !path.is_empty() => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                out.extend(
                    text.lines()
                        .map(str::trim)
                        .filter(|l| !l.is_empty() && !l.starts_with('#'))
                        .flat_map(str::split_whitespace)
                        .map(OsString::from),
                );
            }
            _ => out.push(arg),
        }
    }
    Ok(out)
}

fn output_path(positional: Option<PathBuf>, flag: Option<PathBuf>) -> Result<PathBuf, CliError> {
    match (positional, flag) {
        (Some(p), None) | (None, Some(p)) => Ok(p),
        (Some(_), Some(_)) => Err(CliError::Usage(
            "give the output either positionally or with --out, not both".into(),
        )),
        (None, None) => Err(CliError::Usage("an output path is required".into())),
    }
}

fn read_image(path: &Path) -> Result<PnmImage, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    load_pnm(&bytes).map_err(|source| CliError::Decode {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
    }
    std::fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

fn format_metric(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".into()
    } else {
        format!("{v:.2}")
    }
}

/// One CSV line: `ambe,psnr,ssim,entropy_in,entropy_out`.
pub fn report_line(r: &MetricReport) -> String {
    [r.ambe, r.psnr, r.ssim, r.entropy_in, r.entropy_out]
        .map(format_metric)
        .join(",")
}

fn enhance(args: EnhanceArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let spec = args.params.spec(args.method)?;
    let output = output_path(args.output, args.out)?;
    let input = read_image(&args.input)?;
    let enhanced = input.enhance(&spec, args.color.into());
    let encoding = if args.plain {
        PnmEncoding::Ascii
    } else {
        PnmEncoding::Binary
    };
    write_file(&output, &save_pnm(&enhanced, encoding))?;
    let report = MetricReport::compute(&input.metric_plane(), &enhanced.metric_plane())
        .expect("enhancement preserves shape");
    let _ = writeln!(stdout, "{}", report_line(&report));
    Ok(())
}

fn bench(args: BenchArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let methods = if args.method.is_empty() {
        vec![
            MethodArg::He,
            MethodArg::Bbhe,
            MethodArg::Dsihe,
            MethodArg::Rmshe,
            MethodArg::Rsihe,
            MethodArg::Mmbebhe,
            MethodArg::RswheM,
            MethodArg::RswheD,
        ]
    } else {
        args.method
    };
    let formats = if args.format.is_empty() {
        vec![ReportFormat::Csv]
    } else {
        let mut f: Vec<ReportFormat> = args
            .format
            .iter()
            .map(|f| match f {
                FormatArg::Csv => ReportFormat::Csv,
                FormatArg::Markdown => ReportFormat::Markdown,
            })
            .collect();
        f.dedup();
        f
    };
    let config = BenchConfig {
        corpus_dir: args.corpus,
        methods: methods
            .into_iter()
            .map(|m| args.params.spec(m))
            .collect::<Result<_, _>>()?,
        output_dir: args.out,
        formats,
        color: args.color.into(),
    };
    let summary = run_bench(&config)?;
    for w in &summary.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    let _ = writeln!(
        stdout,
        "bench: {} images, {} methods, {} warnings, reports in {}",
        summary.results.images.len(),
        summary.results.methods.len(),
        summary.warnings.len(),
        config.output_dir.display()
    );
    Ok(())
}

fn histdump(args: HistdumpArgs) -> Result<(), CliError> {
    let spec = args.params.spec(args.method)?;
    let output = output_path(args.output, args.out)?;
    let input = read_image(&args.input)?;
    write_file(&output, histdump::dump(&input, &spec).as_bytes())
}

fn gen_corpus(args: GenCorpusArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    if args.size == 0 || args.count == 0 || !(2..=65536).contains(&args.levels) {
        return Err(CliError::Usage(
            "--size and --count must be positive and --levels in [2, 65536]".into(),
        ));
    }
    let spec = CorpusSpec {
        seed: args.seed,
        count: args.count,
        width: args.size,
        height: args.size,
        levels: args.levels,
    };
    let files = write_corpus(&args.out, &spec)?;
    let _ = writeln!(
        stdout,
        "wrote {} images to {}",
        files.len(),
        args.out.display()
    );
    Ok(())
}

/// Runs the command line and returns the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args = match expand_arg_files(args.into_iter().map(Into::into).collect()) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Enhance(a) => enhance(a, stdout),
        Command::Bench(a) => bench(a, stdout, stderr),
        Command::Histdump(a) => histdump(a),
        Command::GenCorpus(a) => gen_corpus(a, stdout),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arg_files_expand_in_place() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("flags.txt");
        std::fs::write(&path, "# defaults\n--method rmshe\n\n--r 3\n").unwrap();
        let args = vec![
            OsString::from("histeq"),
            OsString::from("enhance"),
            OsString::from(format!("@{}", path.display())),
            OsString::from("in.pgm"),
        ];
        let expanded = expand_arg_files(args).unwrap();
        assert_eq!(
            expanded,
            ["histeq", "enhance", "--method", "rmshe", "--r", "3", "in.pgm"].map(OsString::from)
        );
    }

    #[test]
    fn usage_errors_exit_with_three() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            ["histeq", "enhance", "--method", "clahe", "a", "b"],
            &mut out,
            &mut err,
        );
        assert_eq!(code, 3);
        let code = run(
            [
                "histeq", "enhance", "--method", "rswhe-m", "--beta", "-1", "a", "b",
            ],
            &mut out,
            &mut err,
        );
        assert_eq!(code, 3);
        assert_eq!(run(["histeq", "--help"], &mut out, &mut err), 0);
    }

    #[test]
    fn report_line_formatting() {
        let r = MetricReport {
            ambe: 0.0,
            psnr: f64::INFINITY,
            ssim: 1.0,
            entropy_in: 7.123,
            entropy_out: 6.999,
        };
        assert_eq!(report_line(&r), "0.00,inf,1.00,7.12,7.00");
    }
}
