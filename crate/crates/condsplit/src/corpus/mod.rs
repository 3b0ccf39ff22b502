//! Annotation corpus I/O: the Doccano-style JSONL span format, the
//! two-column IOB token-tag format, and per-split label statistics.
//!
//! JSONL is the persistence format; IOB is an interchange format for
//! sequence-tagging tools. Character offsets everywhere count Unicode
//! scalar values, not bytes.

pub mod doccano;
pub mod iob;
pub mod stats;

pub use doccano::{read_doccano, write_doccano, write_predictions, ParseMode, ReadReport};
pub use iob::{from_iob, read_iob, to_iob, write_iob, IobSequence, IobTag};
pub use stats::{corpus_stats, render_stats_json, render_stats_table, CorpusStats, LabelCounts};

use crate::linguistics::TokenizeError;
use thiserror::Error;

/// Errors raised while reading or converting corpora.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    /// Parse or validation failure tied to an input line.
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    /// A span boundary falls strictly inside a token, so the sentence
    /// has no faithful IOB rendering.
    #[error(
        "token {token:?} [{token_start},{token_end}) straddles span boundary [{span_start},{span_end})"
    )]
    TokenStraddlesSpan {
        token: String,
        token_start: usize,
        token_end: usize,
        span_start: usize,
        span_end: usize,
    },
    /// An I- tag without a matching B-/I- tag directly before it.
    #[error("token {index}: tag {tag} cannot follow {prev}")]
    IllegalTransition {
        index: usize,
        prev: String,
        tag: String,
    },
    #[error("sentence text contains no tokens")]
    EmptyText,
}

impl From<TokenizeError> for CorpusError {
    fn from(_: TokenizeError) -> Self {
        CorpusError::EmptyText
    }
}

impl CorpusError {
    /// Attach a line number to errors that lack one, for streaming
    /// readers that discover conversion problems mid-file.
    pub(crate) fn at_line(self, line: usize) -> CorpusError {
        match self {
            CorpusError::Io(e) => CorpusError::Io(e),
            CorpusError::Line { .. } => self,
            other => CorpusError::Line {
                line,
                message: other.to_string(),
            },
        }
    }
}
