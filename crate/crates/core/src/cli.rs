use std::collections::BTreeMap;
use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use stringasm::assembly::{
    assembly_equation, assembly_index, oracle_assembly_index, AssemblyError, Ensemble, DEFAULT_LENGTH_CAP,
    ORACLE_MAX_LEN,
};
use stringasm::compression::{
    assign_codes, build_frequency_table, build_huffman_tree, huffman_decode, huffman_encode, lzw_compress_with_dictionary,
    lzw_decompress, shannon_entropy, BitString, CodeBook, CodecError, CompressedStream, HuffmanTree,
};
use stringasm::experiments::{
    counterexample_suite, histogram_svg, records_csv, run_comparison, scaling_table, summary_json,
    ExperimentConfig, ExperimentError, SamplingMode, SizeMetric, DEFAULT_BASE, DEFAULT_SAMPLES, DEFAULT_SEED,
};
use stringasm::{AssemblyString, Symbol};

const INPUT_ERROR: u8 = 2;
const GUARD_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "stringasm", version, about = "Assembly index of strings and the compression measures it is compared with")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact assembly index of a string.
    Index {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        cap: Cap,
        /// Print the join path that achieves the index.
        #[arg(long)]
        witness: bool,
        /// Cross-check against the brute-force oracle (strings up to 16 symbols).
        #[arg(long)]
        oracle_check: bool,
        /// Report bounds instead of failing when the string is longer than the cap.
        #[arg(long)]
        allow_inexact: bool,
    },
    /// Minimal join path for a string, one step per line.
    Path {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        cap: Cap,
    },
    /// Evaluate the assembly equation over an ensemble file (CSV or JSON).
    Assembly {
        file: PathBuf,
        #[command(flatten)]
        cap: Cap,
    },
    /// Huffman coding.
    Huffman {
        #[command(subcommand)]
        action: HuffmanAction,
    },
    /// LZW compression.
    Lzw {
        #[command(subcommand)]
        action: LzwAction,
    },
    /// Shannon entropy of the symbol frequencies.
    Entropy {
        #[command(flatten)]
        input: Input,
    },
    /// Run an experiment and write its report.
    Experiment {
        #[command(subcommand)]
        which: Experiment,
    },
}

#[derive(Args)]
struct Input {
    /// The string; each Unicode scalar value is one symbol.
    text: String,
    /// Treat each UTF-8 byte of the argument as one symbol.
    #[arg(long)]
    bytes: bool,
}

impl Input {
    fn parse(&self) -> Result<AssemblyString, Failure> {
        let s = if self.bytes {
            AssemblyString::from_bytes(self.text.as_bytes())
        } else {
            AssemblyString::from_text(&self.text)
        };
        s.map_err(Failure::input)
    }
}

#[derive(Args)]
struct Cap {
    /// Longest string searched exactly.
    #[arg(long = "cap", default_value_t = DEFAULT_LENGTH_CAP)]
    value: usize,
}

#[derive(Subcommand)]
enum HuffmanAction {
    /// Encode a string with the code built from its own frequencies.
    Encode {
        #[command(flatten)]
        input: Input,
        /// Also print the code book as JSON.
        #[arg(long)]
        show_tree: bool,
    },
    /// Decode a bit string ("0"/"1" characters) with a JSON code book.
    Decode {
        bits: String,
        /// Code book as inline JSON or a path to a JSON file.
        #[arg(long)]
        book: String,
        /// `bits` is the packed form in hex (pad-length byte first).
        #[arg(long)]
        packed: bool,
    },
}

#[derive(Subcommand)]
enum LzwAction {
    /// Compress a string; prints the codes and a JSON stream for decoding.
    Encode {
        #[command(flatten)]
        input: Input,
        /// Also print the final dictionary as JSON.
        #[arg(long)]
        show_dict: bool,
    },
    /// Decompress a JSON stream given inline or as a file path.
    Decode { stream: String },
}

#[derive(Subcommand)]
enum Experiment {
    /// Assembly index against LZW size over rearrangements of a string.
    Permutations {
        #[arg(long, default_value = DEFAULT_BASE)]
        base: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Every distinct arrangement once instead of random samples.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, value_enum, default_value_t = Metric::Bytes)]
        metric: Metric,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        cap: Cap,
        /// Directory for records.csv and summary.json.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write histogram.svg (needs --out).
        #[arg(long, requires = "out")]
        svg: bool,
    },
    /// Longest single-symbol string per step, LZW against assembly.
    Scaling {
        #[arg(long, default_value_t = 5)]
        steps: usize,
        /// Directory for scaling.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The Huffman counterexample checks; exits 3 if any fails.
    Counterexamples {
        /// Directory for counterexamples.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Metric {
    Bytes,
    Codes,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(e: impl Display) -> Self {
        Self { code: INPUT_ERROR, message: e.to_string() }
    }

    fn guard(e: impl Display) -> Self {
        Self { code: GUARD_ERROR, message: e.to_string() }
    }
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::TooManyArrangements { .. } | ExperimentError::Inexact { .. } => Failure::guard(e),
            _ => Failure::input(e),
        }
    }
}

impl From<CodecError> for Failure {
    fn from(e: CodecError) -> Self {
        Failure::input(e)
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Index { input, cap, witness, oracle_check, allow_inexact } => {
            index(&input.parse()?, cap.value, witness, oracle_check, allow_inexact)
        }
        Command::Path { input, cap } => path(&input.parse()?, cap.value),
        Command::Assembly { file, cap } => assembly(&file, cap.value),
        Command::Huffman { action } => match action {
            HuffmanAction::Encode { input, show_tree } => huffman_enc(&input.parse()?, show_tree),
            HuffmanAction::Decode { bits, book, packed } => huffman_dec(&bits, &book, packed),
        },
        Command::Lzw { action } => match action {
            LzwAction::Encode { input, show_dict } => lzw_enc(&input.parse()?, show_dict),
            LzwAction::Decode { stream } => lzw_dec(&stream),
        },
        Command::Entropy { input } => entropy(&input.parse()?),
        Command::Experiment { which } => experiment(which),
    }
}

fn index(s: &AssemblyString, cap: usize, witness: bool, oracle_check: bool, allow_inexact: bool) -> Result<(), Failure> {
    let r = assembly_index(s, cap);
    if !r.exact {
        if !allow_inexact {
            return Err(Failure::guard(AssemblyError::Inexact {
                object: s.to_string(),
                cap,
                lower: r.lower,
                upper: r.upper,
            }));
        }
        println!("a <= {} (inexact: length {} exceeds cap {cap})", r.index, s.len());
        println!("bounds: {} <= a <= {}", r.lower, r.upper);
    } else if oracle_check {
        match oracle_assembly_index(s) {
            Ok(o) if o == r.index => println!("a = {} (exact, oracle agrees)", r.index),
            Ok(o) => {
                println!("a = {} (exact, oracle disagrees: {o})", r.index);
                return Err(Failure::guard(format!("search found {} but the oracle found {o}", r.index)));
            }
            Err(_) => println!("a = {} (exact, oracle skipped: longer than {ORACLE_MAX_LEN})", r.index),
        }
    } else {
        println!("a = {} (exact)", r.index);
    }
    if r.exact {
        println!("bounds: {} <= a <= {}", r.lower, r.upper);
    }
    if witness {
        print!("{}", r.witness);
    }
    Ok(())
}

fn path(s: &AssemblyString, cap: usize) -> Result<(), Failure> {
    let r = assembly_index(s, cap);
    if !r.exact {
        return Err(Failure::guard(AssemblyError::Inexact { object: s.to_string(), cap, lower: r.lower, upper: r.upper }));
    }
    r.witness.validate(s).map_err(Failure::guard)?;
    println!("{} joins", r.index);
    print!("{}", r.witness);
    Ok(())
}

fn assembly(file: &Path, cap: usize) -> Result<(), Failure> {
    let text = fs::read_to_string(file).map_err(|e| Failure::input(format!("{}: {e}", file.display())))?;
    let ensemble = Ensemble::parse(&text).map_err(|e| Failure::input(format!("{}: {e}", file.display())))?;
    let guard = |e: AssemblyError| match e {
        AssemblyError::Inexact { .. } => Failure::guard(e),
        other => Failure::input(other),
    };
    let terms = ensemble.terms(cap).map_err(guard)?;
    let total = assembly_equation(&ensemble, cap).map_err(guard)?;
    println!("object\tcopies\ta\tterm");
    for t in &terms {
        println!("{}\t{}\t{}\t{}", t.object, t.copies, t.assembly_index, t.term);
    }
    println!("N = {}", ensemble.total());
    println!("A = {total}");
    Ok(())
}

fn huffman_enc(s: &AssemblyString, show_tree: bool) -> Result<(), Failure> {
    let table = build_frequency_table(s.symbols())?;
    let book = assign_codes(&build_huffman_tree(&table));
    let bits = huffman_encode(s.symbols(), &book)?;
    println!("bits: {bits}");
    println!("packed: {}", hex(&bits.to_packed()));
    if show_tree {
        println!("codebook: {}", to_json(&book)?);
    }
    Ok(())
}

fn huffman_dec(bits: &str, book: &str, packed: bool) -> Result<(), Failure> {
    let map: BTreeMap<String, String> = serde_json::from_str(&inline_or_file(book)?).map_err(Failure::input)?;
    let book = CodeBook::from_json_map(&map)?;
    let tree = HuffmanTree::from_codebook(&book)?;
    let bits: BitString = if packed { BitString::from_packed(&unhex(bits)?)? } else { bits.parse()? };
    println!("{}", huffman_decode(&bits, &tree)?);
    Ok(())
}

/// JSON form of a [`CompressedStream`], with the alphabet as text.
#[derive(Serialize, Deserialize)]
struct StreamJson {
    alphabet: Vec<String>,
    codes: Vec<u32>,
    final_dict_size: usize,
}

fn lzw_enc(s: &AssemblyString, show_dict: bool) -> Result<(), Failure> {
    let (stream, dict) = lzw_compress_with_dictionary(s);
    let codes: Vec<String> = stream.codes.iter().map(u32::to_string).collect();
    println!("codes: {}", codes.join(" "));
    println!(
        "count: {}, dictionary: {}, width: {} bits, packed: {} bytes",
        stream.code_count(),
        stream.final_dict_size,
        stream.bit_width(),
        stream.byte_size()
    );
    let json = StreamJson {
        alphabet: stream.alphabet.iter().map(|s| s.raw_text()).collect(),
        codes: stream.codes.clone(),
        final_dict_size: stream.final_dict_size,
    };
    println!("stream: {}", to_json(&json)?);
    if show_dict {
        println!("dictionary: {}", to_json(&dict.to_json_map())?);
    }
    Ok(())
}

fn lzw_dec(stream: &str) -> Result<(), Failure> {
    let json: StreamJson = serde_json::from_str(&inline_or_file(stream)?).map_err(Failure::input)?;
    let alphabet = json
        .alphabet
        .iter()
        .map(|a| {
            let mut chars = a.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => Ok(Symbol::from_char(c)),
                _ => Err(Failure::input(format!("alphabet entry {a:?} is not a single symbol"))),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let stream = CompressedStream { alphabet, codes: json.codes, final_dict_size: json.final_dict_size };
    println!("{}", lzw_decompress(&stream)?);
    Ok(())
}

fn entropy(s: &AssemblyString) -> Result<(), Failure> {
    let table = build_frequency_table(s.symbols())?;
    let counts: Vec<String> = table.iter().map(|(sym, c)| format!("{sym}:{c}")).collect();
    println!("H = {} bits/symbol", shannon_entropy(&table));
    println!("counts: {}", counts.join(" "));
    Ok(())
}

fn experiment(which: Experiment) -> Result<(), Failure> {
    match which {
        Experiment::Permutations { base, samples, seed, exhaustive, metric, workers, cap, out, svg } => {
            let config = ExperimentConfig {
                base: AssemblyString::from_text(&base).map_err(Failure::input)?,
                samples,
                seed,
                mode: if exhaustive { SamplingMode::ExhaustiveDistinct } else { SamplingMode::Sampled },
                size_metric: match metric {
                    Metric::Bytes => SizeMetric::LzwBytes,
                    Metric::Codes => SizeMetric::LzwCodes,
                },
                workers,
                length_cap: cap.value,
            };
            let report = run_comparison(&config)?;
            for m in &report.metrics {
                let r = m.pearson_r.map_or_else(|| "undefined".to_string(), |r| format!("{r:.4}"));
                let skew = m.difference.moments.skewness.map_or_else(|| "n/a".to_string(), |v| format!("{v:.3}"));
                let kurt = m.difference.moments.excess_kurtosis.map_or_else(|| "n/a".to_string(), |v| format!("{v:.3}"));
                println!(
                    "pearson_r({}) = {r}, a - {} mean {:.3} sd {:.3} skew {skew} excess kurtosis {kurt}",
                    m.metric.name(),
                    m.metric.name(),
                    m.difference.moments.mean,
                    m.difference.moments.std_dev,
                );
            }
            println!(
                "records = {}, a in {}..={}, seed = {seed}",
                report.record_count, report.assembly_index_min, report.assembly_index_max
            );
            if let Some(dir) = out {
                fs::create_dir_all(&dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
                write(&dir.join("records.csv"), &records_csv(&report.records)?)?;
                write(&dir.join("summary.json"), &summary_json(&report)?)?;
                if svg {
                    let title = format!("a - {} over {} strings", report.primary.metric.name(), report.record_count);
                    write(&dir.join("histogram.svg"), &histogram_svg(&report.primary.difference, &title))?;
                }
            }
            Ok(())
        }
        Experiment::Scaling { steps, out } => {
            let table = scaling_table(steps)?;
            println!("steps\tlzw_closed\tlzw_measured\tlzw_published\tassembly\tverified\tratio");
            for r in &table.rows {
                let published = match (r.lzw_published, r.lzw_published_agrees) {
                    (Some(p), Some(true)) => p.to_string(),
                    (Some(p), _) => format!("{p} (differs)"),
                    _ => "-".to_string(),
                };
                println!(
                    "{}\t{}\t{}\t{published}\t{}\t{}\t{:.4}",
                    r.steps, r.lzw_closed_form, r.lzw_measured, r.assembly_longest, r.assembly_verified, r.ratio
                );
            }
            if let Some(step) = table.ratio_increasing_from {
                println!("assembly/lzw ratio increases from step {step}");
            }
            if let Some(dir) = out {
                fs::create_dir_all(&dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
                write(&dir.join("scaling.json"), &(to_json_pretty(&table)? + "\n"))?;
            }
            if !(table.closed_form_holds && table.assembly_law_holds) {
                return Err(Failure::guard("a scaling law failed to hold"));
            }
            Ok(())
        }
        Experiment::Counterexamples { out } => {
            let report = counterexample_suite();
            for c in &report.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                println!("{status} {}: expected {}, got {}", c.name, c.expected, c.actual);
            }
            if let Some(dir) = out {
                fs::create_dir_all(&dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
                write(&dir.join("counterexamples.json"), &(to_json_pretty(&report)? + "\n"))?;
            }
            if !report.all_passed {
                return Err(Failure::guard("counterexample checks failed"));
            }
            Ok(())
        }
    }
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn inline_or_file(arg: &str) -> Result<String, Failure> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        Ok(arg.to_string())
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::input(format!("{arg}: {e}")))
    }
}

fn to_json(v: &impl Serialize) -> Result<String, Failure> {
    serde_json::to_string(v).map_err(Failure::input)
}

fn to_json_pretty(v: &impl Serialize) -> Result<String, Failure> {
    serde_json::to_string_pretty(v).map_err(Failure::input)
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn unhex(text: &str) -> Result<Vec<u8>, Failure> {
    let text = text.trim();
    if text.len() % 2 != 0 || !text.is_ascii() {
        return Err(Failure::input(format!("{text:?} is not an even-length hex string")));
    }
    (0..text.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(&text[i..i + 2], 16).map_err(|e| Failure::input(format!("bad hex: {e}"))))
        .collect()
}
