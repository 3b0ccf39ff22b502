//! Command-line workflows: split raw text into condition/resultant
//! annotations, convert between annotation formats, score predictions,
//! build process graphs, and count labels per corpus split.
//!
//! Conventions shared by every subcommand: `-i`/`-o` take file paths
//! with `-` meaning the standard streams; diagnostics go to standard
//! error, data to standard output or the `-o` file; exit code 0 means
//! success, 1 an I/O failure, and 2 malformed data.

use crate::config::{ConfigError, FileConfig};
use crate::corpus::{
    corpus_stats, from_iob, read_doccano, read_iob, render_stats_json, render_stats_table, to_iob,
    write_doccano, write_iob, write_predictions, CorpusError, ParseMode,
};
use crate::eval::{
    exact_match_score, render_report_json, render_report_table, EvalError, IdAlignment,
    DEFAULT_EVAL_LABELS,
};
use crate::graph::{annotated_to_result, build_graph, export_dot, export_json};
use crate::linguistics::Lexicons;
use crate::model::{AnnotatedSentence, SplitResult};
use crate::splitter::{Splitter, SplitterOptions};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

/// Model name stamped on prediction records.
pub const PREDICTION_MODEL: &str = "rule-based";

/// Sentences handled per parallel batch; bounds memory while keeping
/// output order identical for any worker count.
const BATCH_LINES: usize = 512;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Filesystem or stream problem; exit code 1.
    #[error("{0}")]
    Io(String),
    /// Malformed or inconsistent data; exit code 2.
    #[error("{0}")]
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

impl From<CorpusError> for CliError {
    fn from(err: CorpusError) -> Self {
        match err {
            CorpusError::Io(e) => CliError::Io(e.to_string()),
            other => CliError::Data(other.to_string()),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(err: ConfigError) -> Self {
        match err {
            ConfigError::Io(e) => CliError::Io(e.to_string()),
            other => CliError::Data(other.to_string()),
        }
    }
}

impl From<EvalError> for CliError {
    fn from(err: EvalError) -> Self {
        CliError::Data(err.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "condsplit",
    version,
    about = "Split conditional sentences in procedural text"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Split sentences into condition and resultant clause annotations
    Split(SplitArgs),
    /// Convert between Doccano JSONL and IOB token-tag files
    Convert(ConvertArgs),
    /// Score predictions against gold annotations (exact span match)
    Evaluate(EvaluateArgs),
    /// Build a process graph from annotated sentences
    Graph(GraphArgs),
    /// Count labels per corpus split
    Stats(StatsArgs),
}

#[derive(Debug, Args)]
pub struct IoArgs {
    /// Input path; "-" reads standard input
    #[arg(short = 'i', long = "input", default_value = "-")]
    pub input: PathBuf,
    /// Output path; "-" writes standard output
    #[arg(short = 'o', long = "output", default_value = "-")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct StrictnessArgs {
    /// Abort on the first malformed record (default)
    #[arg(long, conflicts_with = "lenient")]
    pub strict: bool,
    /// Skip malformed records with a warning on standard error
    #[arg(long)]
    pub lenient: bool,
}

impl StrictnessArgs {
    fn parse_mode(&self) -> ParseMode {
        if self.lenient {
            ParseMode::Lenient
        } else {
            ParseMode::Strict
        }
    }

    fn alignment(&self) -> IdAlignment {
        if self.lenient {
            IdAlignment::Lenient
        } else {
            IdAlignment::Strict
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SplitInput {
    /// One sentence per line
    Text,
    /// Doccano JSONL; the text fields are re-split
    Doccano,
}

#[derive(Debug, Args)]
pub struct SplitArgs {
    #[command(flatten)]
    pub io: IoArgs,
    /// Input format
    #[arg(long, value_enum, default_value_t = SplitInput::Text)]
    pub format: SplitInput,
    #[command(flatten)]
    pub strictness: StrictnessArgs,
    /// Recognize non-lexical condition patterns too
    #[arg(long)]
    pub extended_patterns: bool,
    /// Directory with lexicon override files
    #[arg(long, value_name = "PATH")]
    pub lexicon_dir: Option<PathBuf>,
    /// TOML configuration file; explicit flags override it
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Worker threads; output order is stable for any value
    #[arg(long, default_value = "1")]
    pub jobs: NonZeroUsize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConvertTarget {
    /// Read Doccano JSONL, write IOB token-tag lines
    Iob,
    /// Read IOB token-tag lines, write Doccano JSONL
    Doccano,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[command(flatten)]
    pub io: IoArgs,
    /// Target format
    #[arg(long, value_enum)]
    pub format: ConvertTarget,
    #[command(flatten)]
    pub strictness: StrictnessArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Table,
    Json,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Gold annotations (Doccano JSONL)
    #[arg(long, value_name = "PATH")]
    pub gold: PathBuf,
    #[command(flatten)]
    pub io: IoArgs,
    /// Report rendering
    #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
    pub report: ReportFormat,
    #[command(flatten)]
    pub strictness: StrictnessArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dot,
    Json,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[command(flatten)]
    pub io: IoArgs,
    /// Output format
    #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
    pub format: GraphFormat,
    #[command(flatten)]
    pub strictness: StrictnessArgs,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Annotated corpus files, one per split (repeatable); the split
    /// name is the file stem
    #[arg(short = 'i', long = "input", value_name = "PATH", required = true)]
    pub inputs: Vec<PathBuf>,
    /// Output path; "-" writes standard output
    #[arg(short = 'o', long = "output", default_value = "-")]
    pub output: PathBuf,
    /// Report rendering
    #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
    pub report: ReportFormat,
    #[command(flatten)]
    pub strictness: StrictnessArgs,
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Split(args) => cmd_split(args),
        Command::Convert(args) => cmd_convert(args),
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Graph(args) => cmd_graph(args),
        Command::Stats(args) => cmd_stats(args),
    }
}

fn io_error(path: &Path, err: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {err}", path.display()))
}

fn with_path(path: &Path, err: CorpusError) -> CliError {
    match CliError::from(err) {
        CliError::Io(m) => CliError::Io(format!("{}: {m}", path.display())),
        CliError::Data(m) => CliError::Data(format!("{}: {m}", path.display())),
    }
}

fn open_input(path: &Path) -> Result<Box<dyn BufRead>, CliError> {
    if path == Path::new("-") {
        Ok(Box::new(BufReader::new(std::io::stdin())))
    } else {
        let file = std::fs::File::open(path).map_err(|e| io_error(path, e))?;
        Ok(Box::new(BufReader::new(file)))
    }
}

fn open_output(path: &Path) -> Result<Box<dyn Write>, CliError> {
    if path == Path::new("-") {
        Ok(Box::new(BufWriter::new(std::io::stdout())))
    } else {
        let file = std::fs::File::create(path).map_err(|e| io_error(path, e))?;
        Ok(Box::new(BufWriter::new(file)))
    }
}

fn read_corpus(path: &Path, mode: ParseMode) -> Result<Vec<AnnotatedSentence>, CliError> {
    let reader = open_input(path)?;
    let report = read_doccano(reader, mode).map_err(|e| with_path(path, e))?;
    for (line, reason) in &report.skipped {
        eprintln!(
            "condsplit: warning: {}:{line}: skipped: {reason}",
            path.display()
        );
    }
    Ok(report.sentences)
}

fn build_splitter(
    config_path: Option<&Path>,
    extended_flag: bool,
    lexicon_flag: Option<&Path>,
) -> Result<Splitter, CliError> {
    let config = match config_path {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let options = SplitterOptions {
        extended_patterns: extended_flag || config.extended_patterns,
        weak_cue_policy: config.weak_cue_policy,
    };
    let lexicon_dir = lexicon_flag.map(Path::to_path_buf).or(config.lexicon_dir);
    let lexicons = match lexicon_dir {
        Some(dir) => {
            // Absent individual files fall back to the embedded lists,
            // so a mistyped directory must fail loudly here instead.
            if !dir.is_dir() {
                return Err(CliError::Io(format!(
                    "{}: lexicon directory not found",
                    dir.display()
                )));
            }
            Lexicons::from_dir(&dir).map_err(|e| io_error(&dir, e))?
        }
        None => Lexicons::default(),
    };
    Ok(Splitter::with_lexicons(options, lexicons))
}

fn cmd_split(args: SplitArgs) -> Result<(), CliError> {
    let splitter = build_splitter(
        args.config.as_deref(),
        args.extended_patterns,
        args.lexicon_dir.as_deref(),
    )?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.get())
        .build()
        .map_err(|e| CliError::Data(format!("cannot build thread pool: {e}")))?;
    let strict = !args.strictness.lenient;
    let mut out = open_output(&args.io.output)?;
    match args.format {
        SplitInput::Text => {
            let reader = open_input(&args.io.input)?;
            let mut batch: Vec<(i64, String)> = Vec::with_capacity(BATCH_LINES);
            for (number, line) in reader.lines().enumerate() {
                let line = line.map_err(|e| io_error(&args.io.input, e))?;
                if line.trim().is_empty() {
                    continue;
                }
                // Ids are 1-based input line numbers for traceability.
                batch.push((number as i64 + 1, line));
                if batch.len() == BATCH_LINES {
                    split_batch(&splitter, &pool, &batch, strict, &mut out)?;
                    batch.clear();
                }
            }
            split_batch(&splitter, &pool, &batch, strict, &mut out)?;
        }
        SplitInput::Doccano => {
            let sentences = read_corpus(&args.io.input, args.strictness.parse_mode())?;
            let items: Vec<(i64, String)> = sentences.into_iter().map(|s| (s.id, s.text)).collect();
            for chunk in items.chunks(BATCH_LINES) {
                split_batch(&splitter, &pool, chunk, strict, &mut out)?;
            }
        }
    }
    out.flush().map_err(|e| io_error(&args.io.output, e))
}

fn split_batch(
    splitter: &Splitter,
    pool: &rayon::ThreadPool,
    batch: &[(i64, String)],
    strict: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let results: Vec<Result<AnnotatedSentence, String>> = pool.install(|| {
        batch
            .par_iter()
            .map(|(id, text)| {
                splitter
                    .split(text)
                    .map(|(result, _)| result.to_annotated(*id, text))
                    .map_err(|e| format!("sentence {id}: {e}"))
            })
            .collect()
    });
    let mut kept = Vec::with_capacity(results.len());
    for result in results {
        match result {
            Ok(sentence) => kept.push(sentence),
            Err(message) if strict => return Err(CliError::Data(message)),
            Err(message) => eprintln!("condsplit: warning: skipped: {message}"),
        }
    }
    write_predictions(&kept, PREDICTION_MODEL, &mut *out).map_err(|e| CliError::Io(e.to_string()))
}

fn cmd_convert(args: ConvertArgs) -> Result<(), CliError> {
    let mut out = open_output(&args.io.output)?;
    match args.format {
        ConvertTarget::Iob => {
            let sentences = read_corpus(&args.io.input, args.strictness.parse_mode())?;
            let mut sequences = Vec::with_capacity(sentences.len());
            for sentence in &sentences {
                match to_iob(sentence) {
                    Ok(seq) => sequences.push(seq),
                    Err(e) if args.strictness.lenient => {
                        eprintln!("condsplit: warning: sentence {}: skipped: {e}", sentence.id);
                    }
                    Err(e) => return Err(CliError::Data(format!("sentence {}: {e}", sentence.id))),
                }
            }
            write_iob(&sequences, &mut out).map_err(|e| CliError::Io(e.to_string()))?;
        }
        ConvertTarget::Doccano => {
            let reader = open_input(&args.io.input)?;
            let sequences = read_iob(reader).map_err(|e| with_path(&args.io.input, e))?;
            let mut sentences = Vec::with_capacity(sequences.len());
            for (index, seq) in sequences.iter().enumerate() {
                let text = seq.joined_text();
                let mut sentence = from_iob(seq, &text)
                    .map_err(|e| CliError::Data(format!("sequence {}: {e}", index + 1)))?;
                sentence.id = index as i64 + 1;
                sentences.push(sentence);
            }
            write_doccano(&sentences, &mut out).map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    out.flush().map_err(|e| io_error(&args.io.output, e))
}

fn cmd_evaluate(args: EvaluateArgs) -> Result<(), CliError> {
    let gold = read_corpus(&args.gold, args.strictness.parse_mode())?;
    let pred = read_corpus(&args.io.input, args.strictness.parse_mode())?;
    let scored = exact_match_score(
        &gold,
        &pred,
        &DEFAULT_EVAL_LABELS,
        args.strictness.alignment(),
    )?;
    if !scored.gold_only.is_empty() || !scored.pred_only.is_empty() {
        eprintln!(
            "condsplit: warning: unaligned sentence ids ignored ({} gold-only, {} prediction-only)",
            scored.gold_only.len(),
            scored.pred_only.len()
        );
    }
    let rendered = match args.report {
        ReportFormat::Table => render_report_table(&scored.report),
        ReportFormat::Json => {
            let mut text = serde_json::to_string_pretty(&render_report_json(&scored.report))
                .expect("report serializes");
            text.push('\n');
            text
        }
    };
    let mut out = open_output(&args.io.output)?;
    out.write_all(rendered.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| io_error(&args.io.output, e))
}

fn cmd_graph(args: GraphArgs) -> Result<(), CliError> {
    let sentences = read_corpus(&args.io.input, args.strictness.parse_mode())?;
    let items: Vec<(String, SplitResult)> = sentences
        .iter()
        .map(|s| (s.text.clone(), annotated_to_result(s)))
        .collect();
    let graph = build_graph(&items);
    let rendered = match args.format {
        GraphFormat::Dot => export_dot(&graph),
        GraphFormat::Json => {
            let mut text = export_json(&graph);
            text.push('\n');
            text
        }
    };
    let mut out = open_output(&args.io.output)?;
    out.write_all(rendered.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| io_error(&args.io.output, e))
}

fn split_name(path: &Path) -> String {
    if path == Path::new("-") {
        return "stdin".to_string();
    }
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn cmd_stats(args: StatsArgs) -> Result<(), CliError> {
    let mut splits = Vec::with_capacity(args.inputs.len());
    for path in &args.inputs {
        let sentences = read_corpus(path, args.strictness.parse_mode())?;
        splits.push((split_name(path), sentences));
    }
    let stats = corpus_stats(&splits);
    let rendered = match args.report {
        ReportFormat::Table => render_stats_table(&stats),
        ReportFormat::Json => {
            let mut text =
                serde_json::to_string_pretty(&render_stats_json(&stats)).expect("stats serialize");
            text.push('\n');
            text
        }
    };
    let mut out = open_output(&args.output)?;
    out.write_all(rendered.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| io_error(&args.output, e))
}
