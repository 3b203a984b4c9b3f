//! Assembly index against LZW size over rearrangements of one string.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::sampling::{enumerate_distinct_rearrangements, sample_rearrangements, DEFAULT_SEED, GENERATOR};
use super::stats::{difference_histogram, pearson, DifferenceSummary};
use super::ExperimentError;
use crate::assembly::{assembly_index, DEFAULT_LENGTH_CAP};
use crate::compression::{assign_codes, build_huffman_tree, huffman_encode, lzw_compress, shannon_entropy, FrequencyTable};
use crate::string::AssemblyString;

pub const DEFAULT_BASE: &str = "zbzbczbzbczbzbc";
pub const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplingMode {
    /// Independent uniform shuffles, repeats allowed.
    Sampled,
    /// Every distinct arrangement exactly once.
    ExhaustiveDistinct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SizeMetric {
    LzwBytes,
    LzwCodes,
}

impl SizeMetric {
    pub const ALL: [SizeMetric; 2] = [SizeMetric::LzwBytes, SizeMetric::LzwCodes];

    pub fn of(self, r: &ComparisonRecord) -> usize {
        match self {
            SizeMetric::LzwBytes => r.lzw_bytes,
            SizeMetric::LzwCodes => r.lzw_codes,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SizeMetric::LzwBytes => "lzw_bytes",
            SizeMetric::LzwCodes => "lzw_codes",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    #[serde(serialize_with = "as_text")]
    pub base: AssemblyString,
    pub samples: usize,
    pub seed: u64,
    pub mode: SamplingMode,
    pub size_metric: SizeMetric,
    /// Thread count for the measurement phase; never changes results.
    pub workers: usize,
    pub length_cap: usize,
}

fn as_text<S: serde::Serializer>(s: &AssemblyString, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&s.to_string())
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            base: AssemblyString::from_text(DEFAULT_BASE).expect("non-empty"),
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            mode: SamplingMode::Sampled,
            size_metric: SizeMetric::LzwBytes,
            workers: 1,
            length_cap: DEFAULT_LENGTH_CAP,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.workers == 0 {
            return Err(ExperimentError::InvalidConfig("workers must be at least 1".into()));
        }
        if self.mode == SamplingMode::Sampled && self.samples == 0 {
            return Err(ExperimentError::InvalidConfig("samples must be at least 1".into()));
        }
        if self.base.len() > self.length_cap {
            return Err(ExperimentError::InvalidConfig(format!(
                "base string length {} exceeds the assembly length cap {}",
                self.base.len(),
                self.length_cap
            )));
        }
        Ok(())
    }
}

/// Every measure for one string.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRecord {
    pub string: String,
    pub assembly_index: usize,
    pub lzw_codes: usize,
    pub lzw_bytes: usize,
    pub huffman_bits: usize,
    pub entropy: f64,
}

pub fn measure(s: &AssemblyString, length_cap: usize) -> Result<ComparisonRecord, ExperimentError> {
    let a = assembly_index(s, length_cap);
    if !a.exact {
        return Err(ExperimentError::Inexact { string: s.to_string(), lower: a.lower, upper: a.upper });
    }
    let lzw = lzw_compress(s);
    let table = FrequencyTable::from(s);
    let book = assign_codes(&build_huffman_tree(&table));
    let huffman_bits = huffman_encode(s.symbols(), &book).expect("codebook covers its own string").len();
    Ok(ComparisonRecord {
        string: s.to_string(),
        assembly_index: a.index,
        lzw_codes: lzw.code_count(),
        lzw_bytes: lzw.byte_size(),
        huffman_bits,
        entropy: shannon_entropy(&table),
    })
}

/// Correlation and difference distribution against one size metric.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricSummary {
    pub metric: SizeMetric,
    /// `None` when undefined (fewer than two records or a constant column).
    pub pearson_r: Option<f64>,
    /// Distribution of `assembly_index - metric`.
    pub difference: DifferenceSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub generator: &'static str,
    pub config: ExperimentConfig,
    pub record_count: usize,
    /// Correlation against the configured metric.
    pub pearson_r: Option<f64>,
    pub primary: MetricSummary,
    pub metrics: Vec<MetricSummary>,
    pub assembly_index_min: usize,
    pub assembly_index_max: usize,
    #[serde(skip)]
    pub records: Vec<ComparisonRecord>,
    pub wall_time_secs: f64,
}

/// Runs the comparison. Strings are generated serially from the seed, then
/// measured in parallel and kept in generation order.
pub fn run_comparison(config: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    config.validate()?;
    let started = Instant::now();
    let strings: Vec<AssemblyString> = match config.mode {
        SamplingMode::Sampled => sample_rearrangements(&config.base, config.samples, config.seed),
        SamplingMode::ExhaustiveDistinct => enumerate_distinct_rearrangements(&config.base)?.collect(),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| ExperimentError::InvalidConfig(e.to_string()))?;
    let records: Vec<ComparisonRecord> =
        pool.install(|| strings.par_iter().map(|s| measure(s, config.length_cap)).collect::<Result<_, _>>())?;

    let metrics: Vec<MetricSummary> = SizeMetric::ALL.iter().map(|&m| summarize(&records, m)).collect();
    let primary = metrics.iter().find(|m| m.metric == config.size_metric).expect("all metrics summarized").clone();
    Ok(ExperimentReport {
        generator: GENERATOR,
        config: config.clone(),
        record_count: records.len(),
        pearson_r: primary.pearson_r,
        primary,
        metrics,
        assembly_index_min: records.iter().map(|r| r.assembly_index).min().unwrap_or(0),
        assembly_index_max: records.iter().map(|r| r.assembly_index).max().unwrap_or(0),
        records,
        wall_time_secs: started.elapsed().as_secs_f64(),
    })
}

pub fn summarize(records: &[ComparisonRecord], metric: SizeMetric) -> MetricSummary {
    let a: Vec<f64> = records.iter().map(|r| r.assembly_index as f64).collect();
    let m: Vec<f64> = records.iter().map(|r| metric.of(r) as f64).collect();
    let diffs: Vec<i64> = records.iter().map(|r| r.assembly_index as i64 - metric.of(r) as i64).collect();
    MetricSummary { metric, pearson_r: pearson(&a, &m).ok(), difference: difference_histogram(&diffs, 1) }
}
