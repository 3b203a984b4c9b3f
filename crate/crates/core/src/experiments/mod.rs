//! Runnable experiments: the Huffman counterexample, single-symbol scaling
//! of LZW against assembly, and assembly index against LZW size over
//! rearrangements of a string.

mod comparison;
mod counterexample;
mod report;
mod sampling;
mod scaling;
mod stats;

use thiserror::Error;

pub use comparison::{
    measure, run_comparison, summarize, ComparisonRecord, ExperimentConfig, ExperimentReport, MetricSummary,
    SamplingMode, SizeMetric, DEFAULT_BASE, DEFAULT_SAMPLES,
};
pub use counterexample::{counterexample_suite, Check, CounterexampleReport};
pub use report::{histogram_svg, records_csv, summary_json, RECORDS_HEADER};
pub use sampling::{
    enumerate_distinct_rearrangements, multiset_permutation_count, sample_rearrangements, Rearrangements,
    DEFAULT_SEED, GENERATOR, MAX_ENUMERATION,
};
pub use scaling::{scaling_table, ScalingRow, ScalingTable, MAX_SCALING_STEPS, PUBLISHED_LZW_LENGTHS};
pub use stats::{difference_histogram, pearson, Bin, DifferenceSummary, Moments, StatsError};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("{count} distinct arrangements exceed the enumeration limit of {max}")]
    TooManyArrangements { count: u128, max: u128 },
    #[error("assembly index of {string} is not exact (between {lower} and {upper}); raise the length cap")]
    Inexact { string: String, lower: usize, upper: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
