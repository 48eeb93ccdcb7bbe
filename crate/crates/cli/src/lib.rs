//! Command-line front end and corpus benchmarking for the `histeq` methods.

pub mod bench;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod histdump;

pub use bench::{run_bench, BenchConfig, BenchResults, Metric, ReportFormat};
pub use cli::run;
pub use corpus::{generate, write_corpus, CorpusSpec};
pub use error::CliError;
