//! Doccano-style JSONL: one JSON object per line with fields `id`,
//! `text`, and `labels` (an array of `[start, end, "Label"]` triples).
//! Unknown fields are ignored on read. Sentence-level labels
//! ("No Condition", "Only-Condition") are stored as a single
//! whole-sentence triple.
//!
//! Prediction files use the same schema plus an optional `model` field
//! naming the system that produced them.

use super::CorpusError;
use crate::model::{char_len, validate_sentence, AnnotatedSentence, Label};
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

/// Strict aborts on the first bad line; lenient skips bad lines and
/// reports them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    #[default]
    Strict,
    Lenient,
}

/// Outcome of a lenient (or clean strict) read.
#[derive(Debug, Default)]
pub struct ReadReport {
    pub sentences: Vec<AnnotatedSentence>,
    /// (line number, reason) for every skipped line; empty in strict
    /// mode since the first problem aborts.
    pub skipped: Vec<(usize, String)>,
}

#[derive(Deserialize)]
struct RawRecord {
    id: i64,
    text: String,
    labels: Vec<(usize, usize, String)>,
}

#[derive(Serialize)]
struct RawOut<'a> {
    id: i64,
    text: &'a str,
    labels: Vec<(usize, usize, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    model: Option<&'a str>,
}

/// Read a JSONL annotation stream. Line numbers are 1-based.
pub fn read_doccano<R: BufRead>(reader: R, mode: ParseMode) -> Result<ReadReport, CorpusError> {
    let mut report = ReadReport::default();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match parse_line(&line) {
            Ok(sentence) => report.sentences.push(sentence),
            Err(message) => match mode {
                ParseMode::Strict => {
                    return Err(CorpusError::Line {
                        line: line_no,
                        message,
                    })
                }
                ParseMode::Lenient => report.skipped.push((line_no, message)),
            },
        }
    }
    Ok(report)
}

fn parse_line(line: &str) -> Result<AnnotatedSentence, String> {
    let raw: RawRecord = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let mut spans = Vec::new();
    let mut sentence_label = None;
    for (start, end, name) in raw.labels {
        let label: Label = name.parse().map_err(|e| format!("{e}"))?;
        if label.is_sentence_level() {
            if sentence_label.is_some() {
                return Err("more than one sentence-level label".to_string());
            }
            sentence_label = Some(label);
        } else {
            spans.push(crate::model::ClauseSpan::new(start, end, label));
        }
    }
    if sentence_label.is_some() && !spans.is_empty() {
        return Err("sentence-level label combined with clause spans".to_string());
    }
    let sentence = match sentence_label {
        Some(label) => AnnotatedSentence::with_sentence_label(raw.id, &raw.text, label),
        None => AnnotatedSentence::new(raw.id, &raw.text, spans),
    };
    let violations = validate_sentence(&sentence);
    if let Some(first) = violations.first() {
        return Err(format!("invalid annotation: {first}"));
    }
    Ok(sentence)
}

/// Write sentences as JSONL annotation records.
pub fn write_doccano<W: Write>(sentences: &[AnnotatedSentence], writer: W) -> std::io::Result<()> {
    write_records(sentences, None, writer)
}

/// Write sentences as prediction records carrying the producing
/// model's name.
pub fn write_predictions<W: Write>(
    sentences: &[AnnotatedSentence],
    model: &str,
    writer: W,
) -> std::io::Result<()> {
    write_records(sentences, Some(model), writer)
}

fn write_records<W: Write>(
    sentences: &[AnnotatedSentence],
    model: Option<&str>,
    mut writer: W,
) -> std::io::Result<()> {
    for sentence in sentences {
        let labels = match sentence.sentence_label {
            Some(label) => vec![(0, char_len(&sentence.text), label.to_string())],
            None => sentence
                .spans
                .iter()
                .map(|s| (s.start, s.end, s.label.to_string()))
                .collect(),
        };
        let record = RawOut {
            id: sentence.id,
            text: &sentence.text,
            labels,
            model,
        };
        serde_json::to_writer(&mut writer, &record)?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}
